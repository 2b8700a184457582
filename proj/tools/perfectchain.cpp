// perfectchain: build, invert, and verify the 2k^2 Jacobi matrix and the
// dispersionless mass-spring chains derived from it.
//
// Exit codes: 0 success, 1 verification or numerical failure, 2 usage or
// input error.

#include "perfectchain/chain.hpp"
#include "perfectchain/dynamics.hpp"
#include "perfectchain/eigensolve.hpp"
#include "perfectchain/inverse.hpp"
#include "perfectchain/io.hpp"
#include "perfectchain/jacobi.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace pc = perfectchain;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  long n = 0;
  std::string n_range;
  std::optional<double> omega;
  std::optional<double> m1;
  std::string mode = "float";
  std::string out;
  std::string format;
  double tol = 1e-10;
  double dt = 1e-3;
  std::optional<double> t_end;
  std::optional<double> interval;
  std::string integrator = "modal";
  std::string spectrum_file;
  std::string weights = "auto";
  std::string matrix_file;
};

std::size_t require_n(long n, long min) {
  if (n < min) throw UsageError("--n must be at least " + std::to_string(min));
  return static_cast<std::size_t>(n);
}

// Writes to --out when given, stdout otherwise.
void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw UsageError("cannot write " + o.out);
  f << text;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write " + path);
  f << text;
}

std::string matrix_csv(const pc::JacobiMatrix& m, const pc::ExactJacobi* exact) {
  std::ostringstream os;
  os << "i,a,b";
  if (exact) os << ",a_exact,b_sq_exact";
  os << '\n';
  for (std::size_t i = 0; i < m.order(); ++i) {
    os << i + 1 << ',' << pc::format_double(m.diag()[i]) << ',';
    if (i + 1 < m.order()) os << pc::format_double(m.offdiag()[i]);
    if (exact) {
      os << ',' << pc::to_string(exact->diag[i]) << ',';
      if (i + 1 < m.order()) os << pc::to_string(exact->offdiag_sq[i]);
    }
    os << '\n';
  }
  return os.str();
}

std::string render_matrix(const Options& o, const pc::JacobiMatrix& m, const pc::ExactJacobi* exact) {
  if (o.format.empty() || o.format == "json") return matrix_to_json(m, exact).dump(2) + "\n";
  if (o.format == "csv") return matrix_csv(m, exact);
  throw UsageError("matrix output supports --format json or csv");
}

int cmd_build(const Options& o) {
  const auto n = require_n(o.n, 1);
  const auto exact = pc::build_theorem1_exact(n);
  emit(o, render_matrix(o, pc::build_theorem1(n), &exact));
  return kExitOk;
}

// --- verify ---------------------------------------------------------------

struct Check {
  std::string name;
  bool pass;
  double residual;
  double threshold;
  std::string note;
};

class CheckList {
 public:
  void add(std::string name, double residual, double threshold, std::string note = {}) {
    const bool pass = std::isfinite(residual) && residual <= threshold;
    checks_.push_back({std::move(name), pass, residual, threshold, std::move(note)});
  }
  void add_exact(std::string name, bool pass, std::string note = {}) {
    checks_.push_back({std::move(name), pass, pass ? 0.0 : 1.0, 0.0, std::move(note)});
  }
  void skip(std::string name, std::string why) { skipped_.emplace_back(std::move(name), std::move(why)); }

  bool all_pass() const {
    return std::all_of(checks_.begin(), checks_.end(), [](const Check& c) { return c.pass; });
  }

  std::string report() const {
    std::ostringstream os;
    for (const auto& c : checks_) {
      os << (c.pass ? "PASS " : "FAIL ") << c.name << " residual=" << pc::format_double(c.residual)
         << " threshold=" << pc::format_double(c.threshold);
      if (!c.note.empty()) os << " (" << c.note << ")";
      os << '\n';
    }
    for (const auto& [name, why] : skipped_) os << "SKIP " << name << " (" << why << ")\n";
    os << (all_pass() ? "all checks passed\n" : "verification FAILED\n");
    return os.str();
  }

 private:
  std::vector<Check> checks_;
  std::vector<std::pair<std::string, std::string>> skipped_;
};

int cmd_verify(const Options& o) {
  std::optional<pc::ParsedMatrix> parsed;
  if (!o.matrix_file.empty()) {
    std::ifstream in(o.matrix_file);
    if (!in) throw UsageError("cannot open " + o.matrix_file);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw UsageError(o.matrix_file + ": " + e.what());
    }
    parsed = pc::matrix_from_json(j);
  }
  const auto n = parsed ? parsed->matrix.order() : require_n(o.n, 1);
  if (parsed && o.n != 0 && static_cast<std::size_t>(o.n) != n)
    throw UsageError("--n disagrees with the order of --matrix");
  if (!(o.tol > 0.0)) throw UsageError("--tol must be positive");

  const pc::JacobiMatrix m = parsed ? parsed->matrix : pc::build_theorem1(n);
  const double scale = std::max(1.0, 2.0 * static_cast<double>(n - 1) * static_cast<double>(n - 1));
  CheckList checks;

  const auto ql = pc::eigenvalues(m);
  double spec_err = 0.0;
  for (std::size_t k = 0; k < n; ++k)
    spec_err = std::max(spec_err, std::abs(ql[k] - 2.0 * static_cast<double>(k * k)));
  checks.add("spectrum-2k^2", spec_err, o.tol * scale, "QL eigenvalues vs 2k^2");

  const auto bis = pc::eigenvalues_bisection(m);
  double agree = 0.0;
  for (std::size_t k = 0; k < n; ++k) agree = std::max(agree, std::abs(ql[k] - bis[k]));
  checks.add("bisection-agreement", agree, o.tol * m.inf_norm(), "QL vs Sturm bisection");

  checks.add_exact("persymmetry", pc::is_persymmetric(m, o.tol * m.inf_norm()));

  const auto reference = pc::build_theorem1_exact(n);
  if (parsed && parsed->exact) {
    checks.add_exact("closed-form-entries-exact", *parsed->exact == reference);
  }
  {
    const auto ref = pc::build_theorem1(n);
    double dev = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      dev = std::max(dev, std::abs(m.diag()[i] - ref.diag()[i]) / scale);
    for (std::size_t i = 0; i + 1 < n; ++i)
      dev = std::max(dev, std::abs(m.offdiag()[i] - ref.offdiag()[i]) / scale);
    checks.add("closed-form-entries", dev, o.tol, "relative to 2(n-1)^2");
  }

  const auto fact = pc::verify_factorization(n);
  checks.add_exact("factorization-HH^T", fact.ok(),
                   fact.ok() ? std::to_string(fact.identities_checked) + " integer identities"
                             : fact.failure->identity + " at i=" + std::to_string(fact.failure->index));

  {
    const auto spectrum = pc::square_integer_spectrum(n);
    const auto rebuilt = pc::deboor_golub(spectrum, pc::persymmetric_weights(spectrum));
    double dev = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      dev = std::max(dev, std::abs(rebuilt.diag()[i] - m.diag()[i]) / scale);
    for (std::size_t i = 0; i + 1 < n; ++i)
      dev = std::max(dev, std::abs(rebuilt.offdiag()[i] - m.offdiag()[i]) / scale);
    checks.add("inverse-round-trip", dev, 10.0 * o.tol, "de Boor-Golub from 2k^2");
  }

  if (n >= 2) {
    const auto exact_design = pc::design_chain_exact(n, 1, 2);
    checks.add_exact("chain-matrix-exact", pc::dynamical_matrix_exact(exact_design) == reference,
                     "M1 = 1, omega^2 = 2");

    const double omega = o.omega.value_or(pc::default_omega(n));
    const double m1 = o.m1.value_or(pc::default_first_mass(n));
    const auto design = pc::design_chain(n, m1, omega);
    const auto dyn = pc::dynamical_matrix(design);
    const double half_w2 = omega * omega / 2.0;
    double dev = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      dev = std::max(dev, std::abs(dyn.diag()[i] - half_w2 * m.diag()[i]) / (half_w2 * scale));
    for (std::size_t i = 0; i + 1 < n; ++i)
      dev = std::max(dev, std::abs(dyn.offdiag()[i] - half_w2 * m.offdiag()[i]) / (half_w2 * scale));
    checks.add("chain-matrix", dev, o.tol);

    const auto q0 = pc::pulse_initial_state(n);
    const pc::ModalPropagator prop(design);
    const auto half = prop.propagate(q0, M_PI / omega);
    const auto mirror = pc::mirror_fidelity(q0, half);
    checks.add("mirror-fidelity", std::abs(1.0 - mirror.fidelity), o.tol);
    checks.add("mirror-max-deviation", mirror.max_deviation, 100.0 * o.tol);
  } else {
    checks.skip("chain-matrix", "n = 1 has no springs");
    checks.skip("mirror", "n = 1 has no springs");
  }

  emit(o, checks.report());
  return checks.all_pass() ? kExitOk : kExitFailed;
}

// --- invert ---------------------------------------------------------------

int cmd_invert(const Options& o) {
  if (o.spectrum_file.empty()) throw UsageError("invert needs --spectrum FILE");
  const auto lines = pc::read_number_lines(o.spectrum_file);
  if (lines.empty()) throw UsageError("spectrum file is empty");

  std::vector<pc::BigRational> exact_spec;
  for (const auto& l : lines) exact_spec.push_back(pc::parse_rational(l));
  std::vector<std::size_t> order(lines.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return exact_spec[a] < exact_spec[b]; });

  std::vector<std::string> weight_lines;
  if (o.weights != "auto") {
    weight_lines = pc::read_number_lines(o.weights);
    if (weight_lines.size() != lines.size())
      throw UsageError("weights file must have one entry per eigenvalue");
  }

  if (o.mode == "exact") {
    std::vector<pc::BigRational> spec;
    for (auto i : order) spec.push_back(exact_spec[i]);
    pc::ExactWeights w;
    if (weight_lines.empty()) {
      w = pc::persymmetric_weights_exact(spec);
    } else {
      for (auto i : order) w.weights.push_back(pc::parse_rational(weight_lines[i]));
    }
    for (std::size_t i = 1; i < spec.size(); ++i)
      if (spec[i] == spec[i - 1]) throw UsageError("duplicate eigenvalue " + pc::to_string(spec[i]));
    const auto m = pc::deboor_golub_exact(spec, w);
    emit(o, render_matrix(o, m.to_float(), &m));
    return kExitOk;
  }
  if (o.mode != "float") throw UsageError("--mode must be float or exact");

  std::vector<double> spec;
  for (auto i : order) spec.push_back(std::stod(lines[i]));
  for (std::size_t i = 1; i < spec.size(); ++i)
    if (spec[i] == spec[i - 1]) throw UsageError("duplicate eigenvalue " + pc::format_double(spec[i]));
  pc::FloatWeights w;
  if (weight_lines.empty()) {
    w = pc::persymmetric_weights(spec);
  } else {
    for (auto i : order) w.weights.push_back(std::stod(weight_lines[i]));
  }
  emit(o, render_matrix(o, pc::deboor_golub(spec, w), nullptr));
  return kExitOk;
}

// --- magic / design -------------------------------------------------------

std::pair<std::size_t, std::size_t> parse_range(const std::string& text) {
  try {
    std::size_t pos = 0;
    if (auto dots = text.find(".."); dots != std::string::npos) {
      const long lo = std::stol(text.substr(0, dots), &pos);
      if (pos != dots) throw UsageError("bad range");
      const std::string rest = text.substr(dots + 2);
      const long hi = std::stol(rest, &pos);
      if (pos != rest.size()) throw UsageError("bad range");
      if (lo < 2 || hi < lo) throw UsageError("range must satisfy 2 <= lo <= hi");
      return {static_cast<std::size_t>(lo), static_cast<std::size_t>(hi)};
    }
    const long v = std::stol(text, &pos);
    if (pos != text.size()) throw UsageError("bad --n");
    if (v < 2) throw UsageError("--n must be at least 2");
    return {static_cast<std::size_t>(v), static_cast<std::size_t>(v)};
  } catch (const std::logic_error&) {
    throw UsageError("--n expects an integer or a range lo..hi, got '" + text + "'");
  }
}

int cmd_magic(const Options& o) {
  const auto [lo, hi] = parse_range(o.n_range);
  std::vector<pc::MagicDesign> table;
  for (std::size_t n = lo; n <= hi; ++n) table.push_back(pc::magic_design(n));
  if (o.format.empty() || o.format == "csv") {
    std::ostringstream os;
    pc::write_magic_csv(os, table);
    emit(o, os.str());
  } else if (o.format == "json") {
    auto j = nlohmann::ordered_json::array();
    for (const auto& d : table) j.push_back(pc::magic_to_json(d));
    emit(o, j.dump(2) + "\n");
  } else {
    throw UsageError("magic supports --format csv or json");
  }
  return kExitOk;
}

int cmd_design(const Options& o) {
  const auto n = require_n(o.n, 2);
  const double omega = o.omega.value_or(pc::default_omega(n));
  const double m1 = o.m1.value_or(pc::default_first_mass(n));
  if (!o.format.empty() && o.format != "json") throw UsageError("design supports --format json");
  emit(o, pc::design_to_json(pc::design_chain(n, m1, omega)).dump(2) + "\n");
  return kExitOk;
}

// --- simulate / profile ---------------------------------------------------

std::string svg_companion_csv(const std::string& out) {
  const auto dot = out.rfind('.');
  return (dot == std::string::npos ? out : out.substr(0, dot)) + ".csv";
}

int cmd_simulate(const Options& o) {
  const auto n = require_n(o.n, 2);
  const double omega = o.omega.value_or(pc::default_omega(n));
  const double m1 = o.m1.value_or(pc::default_first_mass(n));
  if (!(omega > 0.0) || !(m1 > 0.0)) throw UsageError("--omega and --m1 must be positive");
  const double t_end = o.t_end.value_or(M_PI / omega);
  if (!(t_end >= 0.0)) throw UsageError("--t-end must be nonnegative");
  const double interval = o.interval.value_or(t_end > 0.0 ? t_end / 10.0 : 1.0);

  const auto design = pc::design_chain(n, m1, omega);
  const auto q0 = pc::pulse_initial_state(n);
  pc::Trajectory traj;
  if (o.integrator == "modal")
    traj = pc::snapshot_series(design, q0, t_end, interval);
  else if (o.integrator == "verlet")
    traj = pc::integrate_verlet(design, q0, t_end, o.dt, t_end > 0.0 ? interval : 0.0);
  else
    throw UsageError("--integrator must be modal or verlet");

  std::ostringstream csv;
  pc::write_trajectory_csv(csv, traj);
  if (o.format.empty() || o.format == "csv") {
    emit(o, csv.str());
  } else if (o.format == "svg") {
    std::ostringstream svg;
    pc::write_trajectory_svg(svg, traj);
    emit(o, svg.str());
    if (!o.out.empty()) write_file(svg_companion_csv(o.out), csv.str());
  } else {
    throw UsageError("simulate supports --format csv or svg");
  }
  return kExitOk;
}

int cmd_profile(const Options& o) {
  const auto n = require_n(o.n, 2);
  const double m1 = o.m1.value_or(pc::default_first_mass(n));
  if (!(m1 > 0.0)) throw UsageError("--m1 must be positive");
  const auto rows = pc::parameter_profile(n, m1);
  std::ostringstream csv;
  pc::write_profile_csv(csv, rows);
  if (o.format.empty() || o.format == "csv") {
    emit(o, csv.str());
  } else if (o.format == "svg") {
    std::ostringstream svg;
    pc::write_profile_svg(svg, rows, n);
    emit(o, svg.str());
    if (!o.out.empty()) write_file(svg_companion_csv(o.out), csv.str());
  } else {
    throw UsageError("profile supports --format csv or svg");
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Persymmetric Jacobi matrices with spectrum 2k^2 and perfect mass-spring chains"};
  app.require_subcommand(1);
  Options o;

  const std::vector<std::string> modes{"float", "exact"};
  auto add_out = [&](CLI::App* c, std::vector<std::string> formats) {
    c->add_option("--out", o.out, "Output file (default stdout)");
    c->add_option("--format", o.format, "Output format")->check(CLI::IsMember(formats));
  };

  auto* build = app.add_subcommand("build", "Emit the order-n matrix with eigenvalues 2k^2");
  build->add_option("--n", o.n, "Matrix order")->required();
  build->add_option("--mode", o.mode, "float or exact")->check(CLI::IsMember(modes));
  add_out(build, {"json", "csv"});

  auto* verify = app.add_subcommand("verify", "Run the invariant checks; exit 1 on any failure");
  verify->add_option("--n", o.n, "Matrix order");
  verify->add_option("--matrix", o.matrix_file, "Check this matrix JSON instead of the built one");
  verify->add_option("--tol", o.tol, "Base tolerance (default 1e-10)");
  verify->add_option("--omega", o.omega, "Frequency spacing (default pi/(n-1))");
  verify->add_option("--m1", o.m1, "First mass (default sqrt((n-1)/pi))");
  verify->add_option("--out", o.out, "Report file (default stdout)");

  auto* invert = app.add_subcommand("invert", "Reconstruct the persymmetric matrix from a spectrum");
  invert->add_option("--spectrum", o.spectrum_file, "One eigenvalue per line")->required();
  invert->add_option("--weights", o.weights, "auto or a file with one weight per eigenvalue");
  invert->add_option("--mode", o.mode, "float or exact")->check(CLI::IsMember(modes));
  add_out(invert, {"json", "csv"});

  auto* magic = app.add_subcommand("magic", "Coprime integer masses and springs");
  magic->add_option("--n", o.n_range, "Chain length or range lo..hi")->required();
  add_out(magic, {"csv", "json"});

  auto* design = app.add_subcommand("design", "Chain masses and springs for given M1 and omega");
  design->add_option("--n", o.n, "Chain length")->required();
  design->add_option("--omega", o.omega, "Frequency spacing (default pi/(n-1))");
  design->add_option("--m1", o.m1, "First mass (default sqrt((n-1)/pi))");
  add_out(design, {"json"});

  auto* simulate = app.add_subcommand("simulate", "Snapshots of a pulse launched from mass 1");
  simulate->add_option("--n", o.n, "Chain length")->required();
  simulate->add_option("--omega", o.omega, "Frequency spacing (default pi/(n-1))");
  simulate->add_option("--m1", o.m1, "First mass (default sqrt((n-1)/pi))");
  simulate->add_option("--t-end", o.t_end, "End time (default pi/omega)");
  simulate->add_option("--interval", o.interval, "Snapshot interval (default t_end/10)");
  simulate->add_option("--integrator", o.integrator, "modal or verlet")
      ->check(CLI::IsMember({"modal", "verlet"}));
  simulate->add_option("--dt", o.dt, "Verlet time step (default 1e-3)");
  add_out(simulate, {"csv", "svg"});

  auto* profile = app.add_subcommand("profile", "Matrix and chain parameter profiles");
  profile->add_option("--n", o.n, "Chain length")->required();
  profile->add_option("--m1", o.m1, "First mass (default sqrt((n-1)/pi))");
  add_out(profile, {"csv", "svg"});

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*build) return cmd_build(o);
    if (*verify) return cmd_verify(o);
    if (*invert) return cmd_invert(o);
    if (*magic) return cmd_magic(o);
    if (*design) return cmd_design(o);
    if (*simulate) return cmd_simulate(o);
    if (*profile) return cmd_profile(o);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << '\n';
    return kExitFailed;
  }
  return kExitUsage;
}
