#include "perfectchain/chain.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace perfectchain {

namespace {

void require_chain_args(std::size_t n, bool m1_positive, bool omega_positive) {
  if (n < 2) throw std::domain_error("chain design needs n >= 2 (a single mass has no springs)");
  if (!m1_positive) throw std::domain_error("chain design: M1 must be positive");
  if (!omega_positive) throw std::domain_error("chain design: omega must be positive");
}

}  // namespace

double default_omega(std::size_t n) {
  if (n < 2) throw std::domain_error("default omega needs n >= 2");
  return std::numbers::pi / static_cast<double>(n - 1);
}

double default_first_mass(std::size_t n) {
  if (n < 2) throw std::domain_error("default M1 needs n >= 2");
  return std::sqrt(static_cast<double>(n - 1) / std::numbers::pi);
}

ChainDesign ExactChainDesign::to_float() const {
  ChainDesign d;
  d.n = n;
  for (const auto& m : masses) d.masses.push_back(to_double(m));
  for (const auto& k : springs) d.springs.push_back(to_double(k));
  d.omega = std::sqrt(to_double(omega_squared));
  return d;
}

ChainDesign design_chain(std::size_t n, double m1, double omega) {
  require_chain_args(n, m1 > 0.0, omega > 0.0);
  const double nd = static_cast<double>(n);
  ChainDesign d;
  d.n = n;
  d.omega = omega;
  d.masses.resize(n);
  d.springs.resize(n - 1);
  d.masses[0] = m1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double i = static_cast<double>(k + 1);
    d.masses[k + 1] = d.masses[k] * (2.0 * i - 1.0) / i * (nd - i) / (2.0 * nd - 2.0 * i - 1.0);
    d.springs[k] = d.masses[k] * omega * omega / 2.0 * (2.0 * i - 1.0) * (nd - i);
  }
  return d;
}

ExactChainDesign design_chain_exact(std::size_t n, const BigRational& m1,
                                    const BigRational& omega_squared) {
  require_chain_args(n, m1 > 0, omega_squared > 0);
  const long nn = static_cast<long>(n);
  ExactChainDesign d;
  d.n = n;
  d.omega_squared = omega_squared;
  d.masses.push_back(m1);
  for (long i = 1; i < nn; ++i) {
    const BigRational& mi = d.masses.back();
    BigRational k = mi * omega_squared / 2 * ((2 * i - 1) * (nn - i));
    BigRational next = mi * make_rational(BigInt(2 * i - 1) * (nn - i), BigInt(i) * (2 * nn - 2 * i - 1));
    d.springs.push_back(std::move(k));
    d.masses.push_back(std::move(next));
  }
  return d;
}

ExactChainDesign design_chain_closed_form_exact(std::size_t n, const BigRational& m1,
                                                const BigRational& omega_squared) {
  require_chain_args(n, m1 > 0, omega_squared > 0);
  const auto nn = static_cast<std::int64_t>(n);
  ExactChainDesign d;
  d.n = n;
  d.omega_squared = omega_squared;
  for (std::int64_t i = 1; i <= nn; ++i) {
    const BigInt c = binomial(nn - 1, i - 1);
    d.masses.push_back(BigRational(m1 * make_rational(c * c, binomial(2 * nn - 2, 2 * i - 2))));
  }
  const BigRational lead = m1 * omega_squared * BigInt((nn - 1) * (nn - 1));
  for (std::int64_t i = 1; i < nn; ++i) {
    const BigInt c = binomial(nn - 2, i - 1);
    d.springs.push_back(BigRational(lead * make_rational(c * c, binomial(2 * nn - 2, 2 * i - 1))));
  }
  return d;
}

ChainDesign design_chain_closed_form(std::size_t n, double m1, double omega) {
  require_chain_args(n, m1 > 0.0, omega > 0.0);
  // Binomial ratios are formed exactly, then scaled by the real parameters.
  const auto unit = design_chain_closed_form_exact(n, 1, 2);
  ChainDesign d;
  d.n = n;
  d.omega = omega;
  for (const auto& m : unit.masses) d.masses.push_back(m1 * to_double(m));
  for (const auto& k : unit.springs) d.springs.push_back(m1 * omega * omega / 2.0 * to_double(k));
  return d;
}

MagicDesign magic_design(std::size_t n) {
  // M_1 = 1 and omega^2 = 2 give K_i / M_i = (2i-1)(n-i).  Clearing the mass
  // denominators with scale alpha leaves alpha * K_i integral; dividing that
  // spring column by its gcd g keeps the chain perfect with omega^2 = 2/g.
  const auto unit = design_chain_exact(n, 1, 2);
  auto masses = normalize_to_coprime_integers(unit.masses);
  std::vector<BigRational> scaled_springs;
  for (const auto& k : unit.springs) scaled_springs.push_back(BigRational(k * masses.scale));
  auto springs = normalize_to_coprime_integers(scaled_springs);
  MagicDesign md;
  md.n = n;
  md.masses = std::move(masses.integers);
  md.springs = std::move(springs.integers);
  md.omega_squared = BigRational(2 * springs.scale);
  return md;
}

JacobiMatrix dynamical_matrix(const ChainDesign& d) {
  if (d.masses.size() != d.n || d.springs.size() + 1 != d.n)
    throw std::domain_error("dynamical_matrix: inconsistent design");
  std::vector<double> a(d.n), b(d.n - 1);
  for (std::size_t i = 0; i < d.n; ++i) {
    double k = 0.0;
    if (i > 0) k += d.springs[i - 1];
    if (i + 1 < d.n) k += d.springs[i];
    a[i] = k / d.masses[i];
  }
  for (std::size_t i = 0; i + 1 < d.n; ++i)
    b[i] = d.springs[i] / std::sqrt(d.masses[i] * d.masses[i + 1]);
  return {std::move(a), std::move(b)};
}

ExactJacobi dynamical_matrix_exact(const ExactChainDesign& d) {
  if (d.masses.size() != d.n || d.springs.size() + 1 != d.n)
    throw std::domain_error("dynamical_matrix: inconsistent design");
  ExactJacobi m;
  for (std::size_t i = 0; i < d.n; ++i) {
    BigRational k = 0;
    if (i > 0) k += d.springs[i - 1];
    if (i + 1 < d.n) k += d.springs[i];
    m.diag.push_back(BigRational(k / d.masses[i]));
  }
  for (std::size_t i = 0; i + 1 < d.n; ++i)
    m.offdiag_sq.push_back(BigRational(d.springs[i] * d.springs[i] / (d.masses[i] * d.masses[i + 1])));
  return m;
}

namespace {

template <typename T, typename Eq>
bool monotone_and_mirrored(const std::vector<T>& masses, const std::vector<T>& springs, Eq eq) {
  const std::size_t n = masses.size();
  if (n < 3) throw std::domain_error("monotonicity_check needs n >= 3");
  if (springs.size() + 1 != n) return false;
  for (std::size_t i = 0; i < n; ++i)
    if (!eq(masses[i], masses[n - 1 - i])) return false;
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (!eq(springs[i], springs[n - 2 - i])) return false;
  // 1-based i with 2(i+1) < n.
  for (std::size_t i = 1; 2 * (i + 1) < n; ++i) {
    if (!(masses[i] < masses[i - 1])) return false;
    if (!(springs[i] > springs[i - 1])) return false;
  }
  return true;
}

}  // namespace

bool monotonicity_check(const ChainDesign& d, double rel_tol) {
  double scale = 0.0;
  for (double m : d.masses) scale = std::max(scale, std::abs(m));
  for (double k : d.springs) scale = std::max(scale, std::abs(k));
  const double tol = rel_tol * scale;
  return monotone_and_mirrored(d.masses, d.springs,
                               [tol](double x, double y) { return std::abs(x - y) <= tol; });
}

bool monotonicity_check(const ExactChainDesign& d) {
  return monotone_and_mirrored(d.masses, d.springs,
                               [](const BigRational& x, const BigRational& y) { return x == y; });
}

AsymptoticsReport asymptotic_report(std::size_t n) {
  if (n < 4) throw std::domain_error("asymptotic_report needs n >= 4");
  const auto nn = static_cast<std::int64_t>(n);
  const std::int64_t mid = (nn + 1) / 2;  // ceil(n/2), 1-based
  const double pi = std::numbers::pi;
  const double nd = static_cast<double>(n);

  AsymptoticsReport r;
  r.n = n;
  const BigInt cm = binomial(nn - 1, mid - 1);
  r.mass_ratio = to_double(make_rational(cm * cm, binomial(2 * nn - 2, 2 * mid - 2)));
  r.mass_ratio_stirling = 2.0 / std::sqrt(pi * nd);
  r.mass_ratio_rel_dev = std::abs(r.mass_ratio - r.mass_ratio_stirling) / r.mass_ratio_stirling;

  const BigInt ck = binomial(nn - 2, mid - 1);
  r.spring_ratio = to_double(make_rational(ck * ck * binomial(2 * nn - 2, 1),
                                           binomial(2 * nn - 2, 2 * mid - 1)));
  r.spring_ratio_stirling = std::sqrt(nd / pi);
  r.spring_ratio_rel_dev =
      std::abs(r.spring_ratio - r.spring_ratio_stirling) / r.spring_ratio_stirling;

  const double omega = default_omega(n);
  const double half_w2 = omega * omega / 2.0;
  const auto a = build_theorem1(n);
  r.peak_a = 2.0 * pi * pi / 4.0;
  r.peak_b = pi * pi / 4.0;
  for (std::size_t k = 1; k + 1 < n; ++k) {
    const double x = static_cast<double>(k) / (nd - 1.0);
    r.max_dev_a = std::max(r.max_dev_a, std::abs(half_w2 * a.diag()[k] - 2.0 * pi * pi * x * (1.0 - x)));
  }
  for (std::size_t k = 1; k + 2 < n; ++k) {
    const double x = static_cast<double>(k) / (nd - 1.0);
    r.max_dev_b = std::max(r.max_dev_b, std::abs(half_w2 * a.offdiag()[k] - pi * pi * x * (1.0 - x)));
  }
  return r;
}

}  // namespace perfectchain
