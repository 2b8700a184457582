#ifndef PERFECTCHAIN_JACOBI_HPP
#define PERFECTCHAIN_JACOBI_HPP

#include "perfectchain/exact.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace perfectchain {

/// Sign placed on the off-diagonal when the matrix is realized.
/// Negative is the mass-spring / Jacobi convention; Positive is the shifted
/// complement 2n^2 I - A.
enum class OffDiagSign { Negative, Positive };

/// Real symmetric tridiagonal matrix stored as its diagonal and the
/// magnitudes of its off-diagonal.  Off-diagonal magnitudes are strictly
/// positive.
class JacobiMatrix {
 public:
  JacobiMatrix(std::vector<double> diag, std::vector<double> offdiag,
               OffDiagSign sign = OffDiagSign::Negative);

  std::size_t order() const { return diag_.size(); }
  std::span<const double> diag() const { return diag_; }
  /// Magnitudes b_1..b_{n-1}.
  std::span<const double> offdiag() const { return offdiag_; }
  OffDiagSign sign() const { return sign_; }

  /// Off-diagonal entry as it appears in the realized matrix at (i, i+1).
  double signed_offdiag(std::size_t i) const {
    return sign_ == OffDiagSign::Negative ? -offdiag_[i] : offdiag_[i];
  }

  /// max row sum of |entries|.
  double inf_norm() const;
  double trace() const;

  /// Row-major n x n realization.  Only for test oracles and small n.
  std::vector<double> dense() const;

  JacobiMatrix with_sign(OffDiagSign s) const { return {diag_, offdiag_, s}; }

 private:
  std::vector<double> diag_;
  std::vector<double> offdiag_;
  OffDiagSign sign_;
};

/// Exact counterpart: rational diagonal and rational squared off-diagonal.
/// Every identity in this library is polynomial in b_i^2, so this is
/// sufficient for exact comparisons.
struct ExactJacobi {
  std::vector<BigRational> diag;
  std::vector<BigRational> offdiag_sq;

  std::size_t order() const { return diag.size(); }
  JacobiMatrix to_float(OffDiagSign sign = OffDiagSign::Negative) const;
  friend bool operator==(const ExactJacobi&, const ExactJacobi&) = default;
};

/// Matrix with eigenvalues 2k^2, k = 0..n-1:
///   a_i = n-1 + 4(i-1)(n-i),  b_i^2 = i(2i-1)(n-i)(2n-2i-1).
JacobiMatrix build_theorem1(std::size_t n);
ExactJacobi build_theorem1_exact(std::size_t n);

bool is_persymmetric(const JacobiMatrix& m, double tol);
bool is_persymmetric(const ExactJacobi& m);

/// Takes signed off-diagonal entries and returns the similar matrix with
/// |b_i|.  A zero off-diagonal decouples the matrix and is rejected.
JacobiMatrix sign_normalize(std::vector<double> diag, std::span<const double> signed_offdiag);

/// C(n+1) = 2n^2 I - A(n+1), realized with +b_i.
JacobiMatrix build_shifted_complement(std::size_t n);
ExactJacobi build_shifted_complement_exact(std::size_t n);

/// Lower bidiagonal H of order n+1 with C(n+1) = H H^T.
struct BidiagonalFactor {
  std::vector<double> hdiag;   // h_1..h_{n+1}
  std::vector<double> subdiag; // r_1..r_n
  std::vector<BigInt> hdiag_sq;
  std::vector<BigInt> subdiag_sq;

  std::size_t order() const { return hdiag.size(); }
};

BidiagonalFactor build_bidiagonal_factor(std::size_t n);

struct FactorizationFailure {
  std::string identity;
  std::size_t index;  // 1-based
};

struct FactorizationReport {
  std::size_t n = 0;
  std::size_t identities_checked = 0;
  std::optional<FactorizationFailure> failure;

  bool ok() const { return !failure.has_value(); }
};

/// Checks, in integer arithmetic, the three identities that carry the
/// inductive step from A(n) to A(n+1):
///   diag(H H^T) == c_i,
///   (h_i r_i)^2 == b_i(n+1)^2,
///   2n^2 I - H^T H == A(n) (+) [2n^2].
FactorizationReport verify_factorization(std::size_t n);

/// Same check against caller-supplied squared factor entries; used to make
/// sure the checker actually detects corrupted factors.
FactorizationReport verify_factorization(std::size_t n, std::span<const BigInt> hdiag_sq,
                                         std::span<const BigInt> subdiag_sq);

}  // namespace perfectchain

#endif  // PERFECTCHAIN_JACOBI_HPP
