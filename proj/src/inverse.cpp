#include "perfectchain/inverse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace perfectchain {

namespace {

template <typename T>
void require_distinct(std::span<const T> spectrum) {
  if (spectrum.empty()) throw std::domain_error("weights: empty spectrum");
  std::vector<T> sorted(spectrum.begin(), spectrum.end());
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i] == sorted[i - 1])
      throw std::domain_error("weights: duplicate eigenvalue; the inverse problem is ill-posed");
}

}  // namespace

FloatWeights persymmetric_weights(std::span<const double> spectrum) {
  require_distinct(spectrum);
  const std::size_t n = spectrum.size();
  std::vector<double> logw(n, 0.0);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t q = 0; q < n; ++q)
      if (q != k) logw[k] -= std::log(std::abs(spectrum[k] - spectrum[q]));
  const double top = *std::max_element(logw.begin(), logw.end());
  FloatWeights w;
  w.weights.resize(n);
  double sum = 0.0;
  for (std::size_t k = 0; k < n; ++k) sum += (w.weights[k] = std::exp(logw[k] - top));
  for (double& x : w.weights) x /= sum;
  return w;
}

ExactWeights persymmetric_weights_exact(std::span<const BigRational> spectrum) {
  require_distinct(spectrum);
  const std::size_t n = spectrum.size();
  ExactWeights w;
  BigRational sum = 0;
  for (std::size_t k = 0; k < n; ++k) {
    BigRational prod = 1;
    for (std::size_t q = 0; q < n; ++q)
      if (q != k) prod *= abs(spectrum[k] - spectrum[q]);
    BigRational wk = 1 / prod;
    sum += wk;
    w.weights.push_back(std::move(wk));
  }
  for (auto& x : w.weights) x /= sum;
  return w;
}

ExactWeights square_integer_weights(std::size_t n) {
  if (n == 0) throw std::domain_error("square_integer_weights: n must be positive");
  const auto m = static_cast<std::int64_t>(n - 1);
  BigInt four_m = 1;
  four_m <<= static_cast<mp_bitcnt_t>(2 * m);
  ExactWeights w;
  w.weights.push_back(make_rational(binomial(2 * m, m), four_m));
  for (std::int64_t k = 1; k <= m; ++k)
    w.weights.push_back(make_rational(2 * binomial(2 * m, m + k), four_m));
  return w;
}

std::vector<double> square_integer_spectrum(std::size_t n) {
  std::vector<double> s(n);
  for (std::size_t k = 0; k < n; ++k) s[k] = 2.0 * static_cast<double>(k) * static_cast<double>(k);
  return s;
}

std::vector<BigRational> square_integer_spectrum_exact(std::size_t n) {
  std::vector<BigRational> s;
  s.reserve(n);
  for (std::size_t k = 0; k < n; ++k) s.emplace_back(BigInt(2) * k * k);
  return s;
}

JacobiMatrix deboor_golub(std::span<const double> spectrum, const FloatWeights& weights) {
  DbgState<double> st(spectrum, weights.weights);
  while (!st.done()) st.advance();
  std::vector<double> b;
  b.reserve(st.offdiag_sq().size());
  for (double bsq : st.offdiag_sq()) b.push_back(std::sqrt(bsq));
  return {std::vector<double>(st.diag().begin(), st.diag().end()), std::move(b)};
}

ExactJacobi deboor_golub_exact(std::span<const BigRational> spectrum, const ExactWeights& weights) {
  DbgState<BigRational> st(spectrum, weights.weights);
  while (!st.done()) st.advance();
  return {std::vector<BigRational>(st.diag().begin(), st.diag().end()),
          std::vector<BigRational>(st.offdiag_sq().begin(), st.offdiag_sq().end())};
}

namespace {

// Truncated power series in x with rational coefficients.
using Series = std::vector<BigRational>;

Series multiply(const Series& a, const Series& b, std::size_t len) {
  Series c(len, BigRational(0));
  for (std::size_t i = 0; i < a.size() && i < len; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size() && i + j < len; ++j) c[i + j] += a[i] * b[j];
  }
  return c;
}

}  // namespace

std::vector<BigRational> characteristic_moments(std::size_t m, std::size_t max_order) {
  const std::size_t len = max_order + 1;

  // cosh(x/2) = sum_j x^{2j} / (4^j (2j)!)
  Series base(len, BigRational(0));
  BigInt fact = 1;
  BigInt four = 1;
  for (std::size_t p = 0; p < len; ++p) {
    if (p > 0) fact *= static_cast<unsigned long>(p);
    if (p % 2 == 0) {
      base[p] = make_rational(1, four * fact);
      four *= 4;
    }
  }

  // cosh^{2m}(x/2) by binary powering.
  Series result(len, BigRational(0));
  result[0] = 1;
  Series power = base;
  for (std::size_t e = 2 * m; e > 0; e >>= 1) {
    if (e & 1) result = multiply(result, power, len);
    if (e > 1) power = multiply(power, power, len);
  }

  // <<k^{2l}>> = (2l)! [x^{2l}]
  std::vector<BigRational> moments;
  BigInt f = 1;
  for (std::size_t p = 0; p < len; ++p) {
    if (p > 0) f *= static_cast<unsigned long>(p);
    if (p % 2 == 0) moments.push_back(BigRational(result[p] * f));
  }
  return moments;
}

FirstEntries analytic_first_entries(std::size_t n) {
  if (n == 0) throw std::domain_error("analytic_first_entries: n must be positive");
  const BigInt m = static_cast<unsigned long>(n - 1);
  FirstEntries e;
  e.a1 = m;
  if (n >= 2) {
    e.b1_sq = BigInt(m * (2 * m - 1));
    e.t1 = BigInt(m * (2 * m - 1) * (5 * m - 4));
    e.a2 = BigInt(m + 4 * (m - 1));
  }
  return e;
}

}  // namespace perfectchain
