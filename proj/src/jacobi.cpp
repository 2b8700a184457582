#include "perfectchain/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace perfectchain {

JacobiMatrix::JacobiMatrix(std::vector<double> diag, std::vector<double> offdiag,
                           OffDiagSign sign)
    : diag_(std::move(diag)), offdiag_(std::move(offdiag)), sign_(sign) {
  if (diag_.empty()) throw std::domain_error("Jacobi matrix of order 0");
  if (offdiag_.size() + 1 != diag_.size())
    throw std::domain_error("Jacobi matrix: off-diagonal length must be order - 1");
  for (double b : offdiag_)
    if (!(b > 0.0) || !std::isfinite(b))
      throw std::domain_error("Jacobi matrix: off-diagonal magnitudes must be positive");
  for (double a : diag_)
    if (!std::isfinite(a)) throw std::domain_error("Jacobi matrix: non-finite diagonal");
}

double JacobiMatrix::inf_norm() const {
  const std::size_t n = order();
  double norm = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = std::abs(diag_[i]);
    if (i > 0) row += offdiag_[i - 1];
    if (i + 1 < n) row += offdiag_[i];
    norm = std::max(norm, row);
  }
  return norm;
}

double JacobiMatrix::trace() const {
  double t = 0.0;
  for (double a : diag_) t += a;
  return t;
}

std::vector<double> JacobiMatrix::dense() const {
  const std::size_t n = order();
  std::vector<double> m(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    m[i * n + i] = diag_[i];
    if (i + 1 < n) {
      m[i * n + i + 1] = signed_offdiag(i);
      m[(i + 1) * n + i] = signed_offdiag(i);
    }
  }
  return m;
}

JacobiMatrix ExactJacobi::to_float(OffDiagSign sign) const {
  std::vector<double> d, b;
  d.reserve(diag.size());
  b.reserve(offdiag_sq.size());
  for (const auto& a : diag) d.push_back(to_double(a));
  for (const auto& bsq : offdiag_sq) b.push_back(std::sqrt(to_double(bsq)));
  return {std::move(d), std::move(b), sign};
}

namespace {

// Entries of A(n) as integers; i is 1-based.
BigInt theorem1_diag(long n, long i) { return BigInt(n - 1) + BigInt(4) * (i - 1) * (n - i); }

BigInt theorem1_offdiag_sq(long n, long i) {
  BigInt v = i;
  v *= 2 * i - 1;
  v *= n - i;
  v *= 2 * n - 2 * i - 1;
  return v;
}

void require_positive_order(std::size_t n) {
  if (n == 0) throw std::domain_error("matrix order must be at least 1");
}

}  // namespace

ExactJacobi build_theorem1_exact(std::size_t n) {
  require_positive_order(n);
  const long nn = static_cast<long>(n);
  ExactJacobi m;
  for (long i = 1; i <= nn; ++i) m.diag.emplace_back(theorem1_diag(nn, i));
  for (long i = 1; i < nn; ++i) m.offdiag_sq.emplace_back(theorem1_offdiag_sq(nn, i));
  return m;
}

JacobiMatrix build_theorem1(std::size_t n) {
  require_positive_order(n);
  const double nd = static_cast<double>(n);
  std::vector<double> a(n), b(n - 1);
  for (std::size_t k = 0; k < n; ++k) {
    const double i = static_cast<double>(k + 1);
    a[k] = nd - 1.0 + 4.0 * (i - 1.0) * (nd - i);
  }
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double i = static_cast<double>(k + 1);
    b[k] = std::sqrt(i * (2.0 * i - 1.0) * (nd - i) * (2.0 * nd - 2.0 * i - 1.0));
  }
  return {std::move(a), std::move(b)};
}

bool is_persymmetric(const JacobiMatrix& m, double tol) {
  const auto a = m.diag();
  const auto b = m.offdiag();
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i)
    if (std::abs(a[i] - a[n - 1 - i]) > tol) return false;
  for (std::size_t i = 0; i < b.size(); ++i)
    if (std::abs(b[i] - b[b.size() - 1 - i]) > tol) return false;
  return true;
}

bool is_persymmetric(const ExactJacobi& m) {
  return std::equal(m.diag.begin(), m.diag.end(), m.diag.rbegin()) &&
         std::equal(m.offdiag_sq.begin(), m.offdiag_sq.end(), m.offdiag_sq.rbegin());
}

JacobiMatrix sign_normalize(std::vector<double> diag, std::span<const double> signed_offdiag) {
  std::vector<double> b;
  b.reserve(signed_offdiag.size());
  for (std::size_t i = 0; i < signed_offdiag.size(); ++i) {
    if (signed_offdiag[i] == 0.0)
      throw std::domain_error("sign_normalize: zero off-diagonal at index " +
                              std::to_string(i + 1) + " decouples the matrix");
    b.push_back(std::abs(signed_offdiag[i]));
  }
  return {std::move(diag), std::move(b)};
}

ExactJacobi build_shifted_complement_exact(std::size_t n) {
  require_positive_order(n);
  const long nn = static_cast<long>(n);
  ExactJacobi c;
  for (long i = 1; i <= nn + 1; ++i) {
    const long t = nn + 2 - 2 * i;
    c.diag.emplace_back(BigInt(nn) * (nn - 1) + BigInt(t) * t);
  }
  for (long i = 1; i <= nn; ++i) c.offdiag_sq.emplace_back(theorem1_offdiag_sq(nn + 1, i));
  return c;
}

JacobiMatrix build_shifted_complement(std::size_t n) {
  return build_shifted_complement_exact(n).to_float(OffDiagSign::Positive);
}

BidiagonalFactor build_bidiagonal_factor(std::size_t n) {
  require_positive_order(n);
  const long nn = static_cast<long>(n);
  BidiagonalFactor h;
  for (long i = 1; i <= nn + 1; ++i) {
    BigInt hsq = BigInt(nn + 1 - i) * (2 * nn - 2 * i + 1);
    h.hdiag.push_back(std::sqrt(hsq.get_d()));
    h.hdiag_sq.push_back(std::move(hsq));
  }
  for (long i = 1; i <= nn; ++i) {
    BigInt rsq = BigInt(i) * (2 * i - 1);
    h.subdiag.push_back(std::sqrt(rsq.get_d()));
    h.subdiag_sq.push_back(std::move(rsq));
  }
  return h;
}

FactorizationReport verify_factorization(std::size_t n) {
  const auto h = build_bidiagonal_factor(n);
  return verify_factorization(n, h.hdiag_sq, h.subdiag_sq);
}

FactorizationReport verify_factorization(std::size_t n, std::span<const BigInt> hsq,
                                         std::span<const BigInt> rsq) {
  require_positive_order(n);
  if (hsq.size() != n + 1 || rsq.size() != n)
    throw std::domain_error("verify_factorization: factor has wrong order");

  FactorizationReport rep;
  rep.n = n;
  const auto c = build_shifted_complement_exact(n);  // order n+1
  const auto a = build_theorem1_exact(n);            // order n
  const BigInt corner = BigInt(2) * n * n;
  auto fail = [&](const char* what, std::size_t i) {
    rep.failure = FactorizationFailure{what, i};
    return rep;
  };

  // (H H^T)_{ii} = h_i^2 + r_{i-1}^2,  (H H^T)_{i+1,i} = r_i h_i.
  for (std::size_t i = 0; i <= n; ++i) {
    BigInt d = hsq[i];
    if (i > 0) d += rsq[i - 1];
    ++rep.identities_checked;
    if (BigRational(d) != c.diag[i]) return fail("diag(HH^T) == c_i", i + 1);
  }
  for (std::size_t i = 0; i < n; ++i) {
    ++rep.identities_checked;
    if (BigRational(hsq[i] * rsq[i]) != c.offdiag_sq[i])
      return fail("(h_i r_i)^2 == b_i^2", i + 1);
  }

  // 2n^2 I - H^T H: diagonal 2n^2 - h_i^2 - r_i^2 (r_{n+1} = 0),
  // off-diagonal magnitude r_i h_{i+1}.
  for (std::size_t i = 0; i <= n; ++i) {
    BigInt d = corner - hsq[i];
    if (i < n) d -= rsq[i];
    const BigInt expected = i < n ? BigInt(a.diag[i].get_num()) : corner;
    ++rep.identities_checked;
    if (d != expected) return fail("diag(2n^2 I - H^T H) == [a(n), 2n^2]", i + 1);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const BigInt off = rsq[i] * hsq[i + 1];
    const BigInt expected = i + 1 < n ? BigInt(a.offdiag_sq[i].get_num()) : BigInt(0);
    ++rep.identities_checked;
    if (off != expected) return fail("offdiag(2n^2 I - H^T H) == [b(n), 0]", i + 1);
  }
  return rep;
}

}  // namespace perfectchain
