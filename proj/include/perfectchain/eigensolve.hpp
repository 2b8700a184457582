#ifndef PERFECTCHAIN_EIGENSOLVE_HPP
#define PERFECTCHAIN_EIGENSOLVE_HPP

// Forward eigenproblem for symmetric tridiagonal matrices.
//
// Two independent eigenvalue algorithms are kept: Sturm-sequence bisection
// (slow, robust, used as the reference) and implicit-shift QL (default).
// Eigenvectors come from inverse iteration on the QL eigenvalues.

#include "perfectchain/jacobi.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace perfectchain {

class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, std::size_t order, double worst_width)
      : std::runtime_error(what), order_(order), worst_width_(worst_width) {}
  std::size_t order() const { return order_; }
  double worst_width() const { return worst_width_; }

 private:
  std::size_t order_;
  double worst_width_;
};

enum class EigenMethod { QL, Bisection };

struct EigenSystem {
  std::vector<double> eigenvalues;  // ascending
  /// Column-major n x n; column k is the unit eigenvector for eigenvalue k.
  std::vector<double> eigenvectors;
  std::size_t n = 0;
  /// Set when some eigenvalue gap is below 1e3 * eps * ||m||_inf.
  bool degenerate_cluster = false;

  double vector(std::size_t k, std::size_t i) const { return eigenvectors[k * n + i]; }
  std::span<const double> column(std::size_t k) const {
    return std::span<const double>(eigenvectors).subspan(k * n, n);
  }
};

/// Number of eigenvalues strictly below x.
std::size_t sturm_count(const JacobiMatrix& m, double x);

/// Gershgorin interval [lo, hi] containing the spectrum.
std::pair<double, double> gershgorin_bounds(const JacobiMatrix& m);

std::vector<double> eigenvalues(const JacobiMatrix& m, double rel_tol = 1e-13,
                                EigenMethod method = EigenMethod::QL);
std::vector<double> eigenvalues_bisection(const JacobiMatrix& m, double rel_tol = 1e-13);
std::vector<double> eigenvalues_ql(const JacobiMatrix& m);

/// Eigenvalues plus orthonormal eigenvectors of the realized matrix (the
/// sign convention of m is honored).  Each vector's largest-magnitude
/// component is positive; among components tied within 1e-9 relative the
/// lowest index decides.
EigenSystem eigensystem(const JacobiMatrix& m, double rel_tol = 1e-10);

}  // namespace perfectchain

#endif  // PERFECTCHAIN_EIGENSOLVE_HPP
