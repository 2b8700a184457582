#ifndef PERFECTCHAIN_INVERSE_HPP
#define PERFECTCHAIN_INVERSE_HPP

// Reconstruction of a Jacobi matrix from its spectrum (de Boor-Golub).
//
// The monic polynomials chi_i orthogonal under
//     <f, g> = sum_k w_k f(lambda_k) g(lambda_k)
// obey chi_{i+1} = (lambda - a_{i+1}) chi_i - b_i^2 chi_{i-1}, with
//     a_{i+1} = <lambda chi_i, chi_i> / <chi_i, chi_i>,
//     b_i^2   = <chi_i, chi_i> / <chi_{i-1}, chi_{i-1}>.
// Polynomials are carried only as their values on the spectrum nodes.
//
// With w_k proportional to prod_{q != k} 1/|lambda_k - lambda_q| the
// reconstructed matrix is persymmetric.

#include "perfectchain/exact.hpp"
#include "perfectchain/jacobi.hpp"

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace perfectchain {

/// Thrown when <chi_i, chi_i> is non-positive or non-finite.
class BreakdownError : public std::runtime_error {
 public:
  BreakdownError(const std::string& what, std::size_t step)
      : std::runtime_error(what), step_(step) {}
  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

template <typename T>
struct WeightVector {
  std::vector<T> weights;  // w_0..w_m, one per spectrum node
  std::size_t m() const { return weights.size() - 1; }
};

using FloatWeights = WeightVector<double>;
using ExactWeights = WeightVector<BigRational>;

/// Persymmetric weights for arbitrary distinct nodes, normalized to unit sum.
/// Accumulated in the log domain so large n neither underflows nor overflows.
FloatWeights persymmetric_weights(std::span<const double> spectrum);
ExactWeights persymmetric_weights_exact(std::span<const BigRational> spectrum);

/// Weights for the spectrum {2k^2}, k = 0..n-1, from the binomial form:
/// w_k = 2 C(2m, m+k) / 4^m for k >= 1 and w_0 = C(2m, m) / 4^m.  This is
/// the law of k^2 under the symmetric distribution C(2m, m+k) / 4^m on
/// k = -m..m, so the weights sum to one.
ExactWeights square_integer_weights(std::size_t n);

/// Spectrum {2k^2}, k = 0..n-1.
std::vector<double> square_integer_spectrum(std::size_t n);
std::vector<BigRational> square_integer_spectrum_exact(std::size_t n);

namespace detail {

inline bool positive_finite(double v) { return v > 0.0 && std::isfinite(v); }
inline bool positive_finite(const BigRational& v) { return v > 0; }

}  // namespace detail

/// Step-by-step state of the recursion.  After construction step() == 0
/// and a_1 has been emitted; each advance() emits b_i^2 and a_{i+1}.
template <typename T>
class DbgState {
 public:
  DbgState(std::span<const T> spectrum, std::span<const T> weights)
      : nodes_(spectrum.begin(), spectrum.end()), weights_(weights.begin(), weights.end()) {
    if (nodes_.empty()) throw std::domain_error("de Boor-Golub: empty spectrum");
    if (weights_.size() != nodes_.size())
      throw std::domain_error("de Boor-Golub: weights and spectrum differ in length");
    for (const auto& w : weights_)
      if (!detail::positive_finite(w))
        throw std::domain_error("de Boor-Golub: weights must be positive");
    chi_.assign(nodes_.size(), T(1));
    chi_prev_.assign(nodes_.size(), T(0));
    emit_diagonal();
    renormalize();
  }

  std::size_t step() const { return step_; }
  std::size_t order() const { return nodes_.size(); }
  bool done() const { return diag_.size() == nodes_.size(); }

  /// chi_i and chi_{i-1} evaluated at the nodes.
  std::span<const T> chi() const { return chi_; }
  std::span<const T> chi_prev() const { return chi_prev_; }
  /// s_j = <chi_j, chi_j>, t_j = <lambda chi_j, chi_j> for j = 0..step().
  /// In floating point chi_{j} is stored divided by sqrt(s_{j-1}), so s_j
  /// and t_j are relative to that normalization (s_j == b_j^2 for j >= 1).
  std::span<const T> s() const { return s_; }
  std::span<const T> t() const { return t_; }
  std::span<const T> diag() const { return diag_; }
  std::span<const T> offdiag_sq() const { return offdiag_sq_; }

  void advance() {
    if (done()) throw std::logic_error("de Boor-Golub: iteration already complete");
    const T& a = diag_.back();
    const T bsq_prev = offdiag_sq_.empty() ? T(0) : offdiag_sq_.back();
    for (std::size_t k = 0; k < nodes_.size(); ++k) {
      T next = (nodes_[k] - a) * chi_[k] - bsq_prev * chi_prev_[k];
      chi_prev_[k] = std::move(chi_[k]);
      chi_[k] = std::move(next);
    }
    ++step_;
    if constexpr (std::is_floating_point_v<T>) reorthogonalize();
    emit_diagonal();
    offdiag_sq_.push_back(T(s_.back() / s_ref_));
    renormalize();
  }

 private:
  void emit_diagonal() {
    T s(0), t(0);
    for (std::size_t k = 0; k < nodes_.size(); ++k) {
      T wc2 = weights_[k] * chi_[k] * chi_[k];
      t += nodes_[k] * wc2;
      s += wc2;
    }
    if (!detail::positive_finite(s))
      throw BreakdownError("de Boor-Golub breakdown: <chi_i, chi_i> not positive at step " +
                               std::to_string(step_),
                           step_);
    diag_.push_back(T(t / s));
    s_.push_back(std::move(s));
    t_.push_back(std::move(t));
  }

  // Floating point: rescale chi_i and chi_{i-1} together so <chi_i, chi_i>
  // becomes one.  The recursion is linear, so a common factor is harmless;
  // without it s_i = prod b_j^2 overflows a double for moderate n.
  void renormalize() {
    if constexpr (std::is_floating_point_v<T>) {
      const T c = T(1) / std::sqrt(s_.back());
      for (auto& v : chi_) v *= c;
      for (auto& v : chi_prev_) v *= c;
      s_ref_ = T(1);
      basis_.push_back(chi_);
    } else {
      s_ref_ = s_.back();
    }
  }

  // Floating point only: the weighted node vectors of chi_0..chi_i are the
  // Lanczos vectors of diag(spectrum), and lose orthogonality the same way.
  // Two classical Gram-Schmidt passes against all earlier (normalized)
  // vectors restore it; in exact arithmetic the projections are all zero.
  void reorthogonalize() {
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& p : basis_) {
        T dot(0);
        for (std::size_t k = 0; k < nodes_.size(); ++k) dot += weights_[k] * chi_[k] * p[k];
        for (std::size_t k = 0; k < nodes_.size(); ++k) chi_[k] -= dot * p[k];
      }
    }
  }

  std::vector<T> nodes_;
  std::vector<T> weights_;
  std::vector<std::vector<T>> basis_;
  std::vector<T> chi_, chi_prev_;
  std::vector<T> s_, t_;
  std::vector<T> diag_, offdiag_sq_;
  T s_ref_ = T(1);
  std::size_t step_ = 0;
};

JacobiMatrix deboor_golub(std::span<const double> spectrum, const FloatWeights& weights);
ExactJacobi deboor_golub_exact(std::span<const BigRational> spectrum, const ExactWeights& weights);

/// <<k^{2l}>> for l = 0..max_order/2 under the symmetric binomial law with
/// characteristic function cosh^{2m}(x/2), from exact power-series
/// arithmetic.
std::vector<BigRational> characteristic_moments(std::size_t m, std::size_t max_order);

struct FirstEntries {
  BigInt a1;
  std::optional<BigInt> b1_sq;  // absent for n == 1
  std::optional<BigInt> a2;
  std::optional<BigInt> t1;
};

/// a_1 = m, b_1^2 = m(2m-1), t_1 = m(2m-1)(5m-4), a_2 = m + 4(m-1), m = n-1.
FirstEntries analytic_first_entries(std::size_t n);

}  // namespace perfectchain

#endif  // PERFECTCHAIN_INVERSE_HPP
