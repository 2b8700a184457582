#include "perfectchain/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace perfectchain {

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

nlohmann::ordered_json exact_value(const BigRational& q) {
  if (q.get_den() == 1 && q.get_num().fits_slong_p()) return q.get_num().get_si();
  return to_string(q);
}

BigRational exact_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return BigRational(BigInt(j.get<long>()));
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw std::invalid_argument("exact entry must be an integer or a \"p/q\" string");
}

}  // namespace

nlohmann::ordered_json matrix_to_json(const JacobiMatrix& m, const ExactJacobi* exact) {
  nlohmann::ordered_json j;
  j["n"] = m.order();
  j["diag"] = std::vector<double>(m.diag().begin(), m.diag().end());
  j["offdiag"] = std::vector<double>(m.offdiag().begin(), m.offdiag().end());
  if (exact) {
    auto d = nlohmann::ordered_json::array();
    auto b = nlohmann::ordered_json::array();
    for (const auto& a : exact->diag) d.push_back(exact_value(a));
    for (const auto& bsq : exact->offdiag_sq) b.push_back(exact_value(bsq));
    j["diag_exact"] = std::move(d);
    j["offdiag_sq_exact"] = std::move(b);
  }
  return j;
}

ParsedMatrix matrix_from_json(const nlohmann::json& j) {
  try {
    const auto n = j.at("n").get<std::size_t>();
    auto diag = j.at("diag").get<std::vector<double>>();
    auto off = j.at("offdiag").get<std::vector<double>>();
    if (diag.size() != n) throw std::invalid_argument("matrix JSON: diag length differs from n");
    std::optional<ExactJacobi> exact;
    if (j.contains("diag_exact") || j.contains("offdiag_sq_exact")) {
      ExactJacobi e;
      for (const auto& v : j.at("diag_exact")) e.diag.push_back(exact_from_json(v));
      for (const auto& v : j.at("offdiag_sq_exact")) e.offdiag_sq.push_back(exact_from_json(v));
      if (e.diag.size() != n || e.offdiag_sq.size() + 1 != n)
        throw std::invalid_argument("matrix JSON: exact arrays have wrong length");
      exact = std::move(e);
    }
    return {JacobiMatrix(std::move(diag), std::move(off)), std::move(exact)};
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("matrix JSON: ") + e.what());
  } catch (const std::domain_error& e) {
    throw std::invalid_argument(std::string("matrix JSON: ") + e.what());
  }
}

nlohmann::ordered_json design_to_json(const ChainDesign& d) {
  nlohmann::ordered_json j;
  j["n"] = d.n;
  j["masses"] = d.masses;
  j["springs"] = d.springs;
  j["omega"] = d.omega;
  return j;
}

nlohmann::ordered_json magic_to_json(const MagicDesign& d) {
  nlohmann::ordered_json j;
  j["n"] = d.n;
  auto masses = nlohmann::ordered_json::array();
  auto springs = nlohmann::ordered_json::array();
  for (const auto& m : d.masses) masses.push_back(to_string(m));
  for (const auto& k : d.springs) springs.push_back(to_string(k));
  j["masses"] = std::move(masses);
  j["springs"] = std::move(springs);
  j["omega_squared"] = d.omega_squared.get_num().get_str() + "/" + d.omega_squared.get_den().get_str();
  return j;
}

void write_magic_csv(std::ostream& os, const std::vector<MagicDesign>& table) {
  os << "n,omega_squared,i,M,K\n";
  for (const auto& d : table) {
    const std::string w2 = to_string(d.omega_squared);
    for (std::size_t i = 0; i < d.n; ++i) {
      os << d.n << ',' << w2 << ',' << i + 1 << ',' << to_string(d.masses[i]) << ',';
      if (i < d.springs.size()) os << to_string(d.springs[i]);
      os << '\n';
    }
  }
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  os << "t,i,q,qdot,u\n";
  for (const auto& s : traj.states) {
    const auto u = physical_displacements(traj.design, s);
    for (std::size_t i = 0; i < s.q.size(); ++i)
      os << format_double(s.t) << ',' << i + 1 << ',' << format_double(s.q[i]) << ','
         << format_double(s.qdot[i]) << ',' << format_double(u[i]) << '\n';
  }
}

std::vector<ProfileRow> parameter_profile(std::size_t n, double m1) {
  const double pi = std::numbers::pi;
  const double omega = default_omega(n);
  const double half_w2 = omega * omega / 2.0;
  const double span = static_cast<double>(n - 1);
  const auto a = build_theorem1(n);
  const auto chain = design_chain(n, m1, omega);

  std::vector<ProfileRow> rows;
  for (std::size_t k = 0; k < n; ++k) {
    const double x = static_cast<double>(k) / span;
    rows.push_back({"a", k + 1, x, half_w2 * a.diag()[k], 2.0 * pi * pi * x * (1.0 - x)});
  }
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double x = (static_cast<double>(k) + 0.5) / span;
    rows.push_back({"b", k + 1, x, half_w2 * a.offdiag()[k], pi * pi * x * (1.0 - x)});
  }
  for (std::size_t k = 0; k < n; ++k)
    rows.push_back({"M", k + 1, static_cast<double>(k) / span, chain.masses[k], std::nullopt});
  for (std::size_t k = 0; k + 1 < n; ++k)
    rows.push_back(
        {"K", k + 1, (static_cast<double>(k) + 0.5) / span, chain.springs[k], std::nullopt});
  return rows;
}

void write_profile_csv(std::ostream& os, const std::vector<ProfileRow>& rows) {
  os << "quantity,i,x,value,parabola\n";
  for (const auto& r : rows) {
    os << r.quantity << ',' << r.i << ',' << format_double(r.x) << ',' << format_double(r.value)
       << ',';
    if (r.parabola) os << format_double(*r.parabola);
    os << '\n';
  }
}

namespace {

// Fixed-precision coordinates keep the SVG byte-stable.
std::string px(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 2);
  return std::string(buf, res.ptr);
}

void svg_open(std::ostream& os, double w, double h) {
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << px(w) << "\" height=\"" << px(h)
     << "\" viewBox=\"0 0 " << px(w) << ' ' << px(h) << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

}  // namespace

void write_trajectory_svg(std::ostream& os, const Trajectory& traj) {
  const std::size_t n = traj.design.n;
  const double strip = 60.0, margin = 40.0, width = 800.0;
  const double height = margin * 2 + strip * static_cast<double>(traj.states.size());
  double umax = 0.0;
  std::vector<std::vector<double>> us;
  for (const auto& s : traj.states) {
    us.push_back(physical_displacements(traj.design, s));
    for (double u : us.back()) umax = std::max(umax, std::abs(u));
  }
  if (umax == 0.0) umax = 1.0;
  const double dx = n > 1 ? (width - 2 * margin) / static_cast<double>(n - 1) : 0.0;

  svg_open(os, width, height);
  for (std::size_t r = 0; r < traj.states.size(); ++r) {
    const double base = margin + strip * (static_cast<double>(r) + 0.5);
    os << "<text x=\"4\" y=\"" << px(base + 4) << "\" font-size=\"10\">t="
       << format_double(traj.states[r].t) << "</text>\n";
    os << "<line x1=\"" << px(margin) << "\" y1=\"" << px(base) << "\" x2=\""
       << px(width - margin) << "\" y2=\"" << px(base) << "\" stroke=\"#bbb\"/>\n";
    for (std::size_t i = 0; i < n; ++i) {
      const double x = margin + dx * static_cast<double>(i);
      const double y = base - 0.45 * strip * us[r][i] / umax;
      os << "<line x1=\"" << px(x) << "\" y1=\"" << px(base) << "\" x2=\"" << px(x)
         << "\" y2=\"" << px(y) << "\" stroke=\"black\"/>"
         << "<circle cx=\"" << px(x) << "\" cy=\"" << px(y) << "\" r=\"1.5\"/>\n";
    }
  }
  os << "</svg>\n";
}

void write_profile_svg(std::ostream& os, const std::vector<ProfileRow>& rows, std::size_t n) {
  const double width = 800.0, height = 500.0, margin = 50.0;
  double ymax = 0.0;
  for (const auto& r : rows) {
    ymax = std::max(ymax, r.value);
    if (r.parabola) ymax = std::max(ymax, *r.parabola);
  }
  if (ymax <= 0.0) ymax = 1.0;
  auto sx = [&](double x) { return margin + x * (width - 2 * margin); };
  auto sy = [&](double y) { return height - margin - y / ymax * (height - 2 * margin); };

  svg_open(os, width, height);
  os << "<text x=\"" << px(margin) << "\" y=\"20\" font-size=\"12\">n=" << n
     << ": a~ (red circles), b~ (red open), M (blue squares), K (blue open)</text>\n";
  os << "<line x1=\"" << px(margin) << "\" y1=\"" << px(sy(0)) << "\" x2=\"" << px(width - margin)
     << "\" y2=\"" << px(sy(0)) << "\" stroke=\"black\"/>\n";

  // Limit parabolas sampled on a fixed grid.
  for (double peak : {2.0, 1.0}) {
    os << "<polyline fill=\"none\" stroke=\"black\" points=\"";
    for (int s = 0; s <= 100; ++s) {
      const double x = s / 100.0;
      os << px(sx(x)) << ',' << px(sy(peak * std::numbers::pi * std::numbers::pi * x * (1 - x)))
         << ' ';
    }
    os << "\"/>\n";
  }
  for (const auto& r : rows) {
    const bool matrix = r.quantity == "a" || r.quantity == "b";
    const bool site = r.quantity == "a" || r.quantity == "M";
    const char* color = matrix ? "#c00" : "#00c";
    const char* fill = site ? color : "none";
    if (matrix)
      os << "<circle cx=\"" << px(sx(r.x)) << "\" cy=\"" << px(sy(r.value)) << "\" r=\"3\" fill=\""
         << fill << "\" stroke=\"" << color << "\"/>\n";
    else
      os << "<rect x=\"" << px(sx(r.x) - 3) << "\" y=\"" << px(sy(r.value) - 3)
         << "\" width=\"6\" height=\"6\" fill=\"" << fill << "\" stroke=\"" << color << "\"/>\n";
  }
  os << "</svg>\n";
}

std::vector<std::string> read_number_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    const auto e = line.find_last_not_of(" \t\r");
    out.push_back(line.substr(b, e - b + 1));
  }
  return out;
}

}  // namespace perfectchain
