#include "perfectchain/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace perfectchain {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Floor used when a Sturm or LU pivot is exactly zero.
double pivot_floor(const JacobiMatrix& m) {
  const double norm = m.inf_norm();
  return norm > 0.0 ? kEps * norm : std::numeric_limits<double>::min();
}

}  // namespace

std::pair<double, double> gershgorin_bounds(const JacobiMatrix& m) {
  const auto a = m.diag();
  const auto b = m.offdiag();
  const std::size_t n = a.size();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < n; ++i) {
    double r = 0.0;
    if (i > 0) r += b[i - 1];
    if (i + 1 < n) r += b[i];
    lo = std::min(lo, a[i] - r);
    hi = std::max(hi, a[i] + r);
  }
  return {lo, hi};
}

std::size_t sturm_count(const JacobiMatrix& m, double x) {
  const auto a = m.diag();
  const auto b = m.offdiag();
  const double floor = pivot_floor(m);
  std::size_t count = 0;
  double d = a[0] - x;
  if (d == 0.0) d = floor;
  if (d < 0.0) ++count;
  for (std::size_t i = 1; i < a.size(); ++i) {
    d = (a[i] - x) - b[i - 1] * b[i - 1] / d;
    if (d == 0.0) d = floor;
    if (d < 0.0) ++count;
  }
  return count;
}

std::vector<double> eigenvalues_bisection(const JacobiMatrix& m, double rel_tol) {
  if (!(rel_tol > 0.0)) throw std::domain_error("eigenvalues: rel_tol must be positive");
  const std::size_t n = m.order();
  if (n == 1) return {m.diag()[0]};

  const double norm = m.inf_norm();
  const double width = std::max(rel_tol, 4.0 * kEps) * norm;
  auto [glo, ghi] = gershgorin_bounds(m);
  glo -= 2.0 * kEps * norm;
  ghi += 2.0 * kEps * norm;

  constexpr int kMaxIter = 2000;
  std::vector<double> out(n);
  double worst = 0.0;
  bool failed = false;
  double lo = glo;
  for (std::size_t k = 0; k < n; ++k) {
    // Invariant: count(lo) <= k < count(hi).
    lo = std::max(lo, glo);
    double hi = ghi;
    int iter = 0;
    while (hi - lo > width) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (sturm_count(m, mid) > k)
        hi = mid;
      else
        lo = mid;
      if (++iter > kMaxIter) {
        failed = true;
        break;
      }
    }
    worst = std::max(worst, hi - lo);
    out[k] = 0.5 * (lo + hi);
  }
  if (failed) {
    std::ostringstream os;
    os << "bisection did not converge (order " << n << ", interval width " << worst << ")";
    throw SolverError(os.str(), n, worst);
  }
  return out;
}

std::vector<double> eigenvalues_ql(const JacobiMatrix& m) {
  const std::size_t n = m.order();
  std::vector<double> d(m.diag().begin(), m.diag().end());
  std::vector<double> e(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) e[i] = m.signed_offdiag(i);

  const int max_iter = 60;
  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t mm;
    do {
      for (mm = l; mm + 1 < n; ++mm) {
        const double dd = std::abs(d[mm]) + std::abs(d[mm + 1]);
        if (std::abs(e[mm]) <= kEps * dd) break;
      }
      if (mm != l) {
        if (iter++ == max_iter) {
          std::ostringstream os;
          os << "QL iteration did not converge (order " << n << ", residual off-diagonal "
             << std::abs(e[l]) << ")";
          throw SolverError(os.str(), n, std::abs(e[l]));
        }
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[mm] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        bool underflow = false;
        for (std::size_t ii = mm; ii-- > l;) {
          double f = s * e[ii];
          const double b = c * e[ii];
          r = std::hypot(f, g);
          e[ii + 1] = r;
          if (r == 0.0) {
            d[ii + 1] -= p;
            e[mm] = 0.0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[ii + 1] - p;
          r = (d[ii] - g) * s + 2.0 * c * b;
          p = s * r;
          d[ii + 1] = g + p;
          g = c * r - b;
        }
        if (underflow) continue;
        d[l] -= p;
        e[l] = g;
        e[mm] = 0.0;
      }
    } while (mm != l);
  }
  std::sort(d.begin(), d.end());
  return d;
}

std::vector<double> eigenvalues(const JacobiMatrix& m, double rel_tol, EigenMethod method) {
  if (!(rel_tol > 0.0)) throw std::domain_error("eigenvalues: rel_tol must be positive");
  if (method == EigenMethod::Bisection) return eigenvalues_bisection(m, rel_tol);
  return eigenvalues_ql(m);
}

namespace {

// LU factorization with partial pivoting of T - shift*I, kept for repeated
// solves during inverse iteration.  U has two superdiagonals.
class ShiftedTridiagonalLU {
 public:
  ShiftedTridiagonalLU(const JacobiMatrix& m, double shift, double floor)
      : n_(m.order()), u0_(n_), u1_(n_, 0.0), u2_(n_, 0.0), mult_(n_, 0.0), swap_(n_, false) {
    std::vector<double> d(n_), e(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) d[i] = m.diag()[i] - shift;
    for (std::size_t i = 0; i + 1 < n_; ++i) e[i] = m.signed_offdiag(i);
    for (std::size_t i = 0; i + 1 < n_; ++i) {
      const double sub = m.signed_offdiag(i);  // e[] holds the modified superdiagonal
      if (std::abs(d[i]) >= std::abs(sub)) {
        const double piv = std::abs(d[i]) < floor ? (std::signbit(d[i]) ? -floor : floor) : d[i];
        u0_[i] = piv;
        u1_[i] = e[i];
        mult_[i] = sub / piv;
        d[i + 1] -= mult_[i] * e[i];
      } else {
        swap_[i] = true;
        u0_[i] = sub;
        u1_[i] = d[i + 1];
        u2_[i] = i + 2 < n_ ? e[i + 1] : 0.0;
        mult_[i] = d[i] / sub;
        const double next_d = e[i] - mult_[i] * d[i + 1];
        if (i + 2 < n_) e[i + 1] = -mult_[i] * e[i + 1];
        d[i + 1] = next_d;
      }
    }
    u0_[n_ - 1] = d[n_ - 1];
    // Pivots below the floor (including exact zeros) become +-floor so the
    // solve stays finite; a perturbation of eps * ||m|| is within the
    // accuracy of the shift anyway.
    for (auto& p : u0_)
      if (std::abs(p) < floor) p = std::signbit(p) ? -floor : floor;
  }

  void solve(std::vector<double>& y) const {
    for (std::size_t i = 0; i + 1 < n_; ++i) {
      if (swap_[i]) std::swap(y[i], y[i + 1]);
      y[i + 1] -= mult_[i] * y[i];
    }
    for (std::size_t i = n_; i-- > 0;) {
      double v = y[i];
      if (i + 1 < n_) v -= u1_[i] * y[i + 1];
      if (i + 2 < n_) v -= u2_[i] * y[i + 2];
      y[i] = v / u0_[i];
    }
  }

 private:
  std::size_t n_;
  std::vector<double> u0_, u1_, u2_, mult_;
  std::vector<bool> swap_;
};

double norm2(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double residual(const JacobiMatrix& m, double lambda, std::span<const double> v) {
  const std::size_t n = m.order();
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double r = (m.diag()[i] - lambda) * v[i];
    if (i > 0) r += m.signed_offdiag(i - 1) * v[i - 1];
    if (i + 1 < n) r += m.signed_offdiag(i) * v[i + 1];
    s += r * r;
  }
  return std::sqrt(s);
}

}  // namespace

EigenSystem eigensystem(const JacobiMatrix& m, double rel_tol) {
  if (!(rel_tol > 0.0)) throw std::domain_error("eigensystem: rel_tol must be positive");
  const std::size_t n = m.order();
  EigenSystem es;
  es.n = n;
  es.eigenvalues = eigenvalues_ql(m);
  es.eigenvectors.assign(n * n, 0.0);

  const double norm = m.inf_norm();
  // A zero matrix has every vector as eigenvector; any finite floor works.
  const double floor = norm > 0.0 ? kEps * norm : 1.0;
  for (std::size_t k = 1; k < n; ++k)
    if (es.eigenvalues[k] - es.eigenvalues[k - 1] < 1e3 * kEps * norm) es.degenerate_cluster = true;

  const double cluster = 1e-3 * norm;
  const double target = rel_tol * norm;
  constexpr int kMaxIter = 8;
  std::vector<double> y(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double lambda = es.eigenvalues[k];
    ShiftedTridiagonalLU lu(m, lambda, floor);
    for (std::size_t i = 0; i < n; ++i)
      y[i] = 1.0 + 0.5 * std::sin(0.7 * static_cast<double>(i + 1) + 0.3 * static_cast<double>(k));

    double res = std::numeric_limits<double>::infinity();
    for (int it = 0; it < kMaxIter; ++it) {
      lu.solve(y);
      for (std::size_t j = 0; j < k; ++j) {
        if (lambda - es.eigenvalues[j] > cluster) continue;
        const auto vj = es.column(j);
        double dot = 0.0;
        for (std::size_t i = 0; i < n; ++i) dot += vj[i] * y[i];
        for (std::size_t i = 0; i < n; ++i) y[i] -= dot * vj[i];
      }
      const double nrm = norm2(y);
      if (!(nrm > 0.0) || !std::isfinite(nrm))
        throw SolverError("inverse iteration broke down", n, 0.0);
      for (double& x : y) x /= nrm;
      res = residual(m, lambda, y);
      if (it >= 1 && res <= target) break;
    }
    if (!(res <= target)) {
      std::ostringstream os;
      os << "inverse iteration residual " << res << " exceeds " << target << " (order " << n
         << ")";
      throw SolverError(os.str(), n, res);
    }

    double big = 0.0;
    for (double x : y) big = std::max(big, std::abs(x));
    for (double x : y) {
      if (std::abs(x) >= (1.0 - 1e-9) * big) {
        if (x < 0.0)
          for (double& z : y) z = -z;
        break;
      }
    }
    std::copy(y.begin(), y.end(), es.eigenvectors.begin() + static_cast<std::ptrdiff_t>(k * n));
  }
  return es;
}

}  // namespace perfectchain
