#ifndef PERFECTCHAIN_CHAIN_HPP
#define PERFECTCHAIN_CHAIN_HPP

// Free-ended mass-spring chains whose dynamical matrix M^{-1/2} K M^{-1/2}
// equals (omega^2 / 2) times the 2k^2 matrix, so the normal-mode frequencies
// are omega * k.

#include "perfectchain/exact.hpp"
#include "perfectchain/jacobi.hpp"

#include <cstddef>
#include <vector>

namespace perfectchain {

struct ChainDesign {
  std::size_t n = 0;
  std::vector<double> masses;   // M_1..M_n
  std::vector<double> springs;  // K_1..K_{n-1}, K_i couples masses i and i+1
  double omega = 0.0;           // frequency spacing
};

struct ExactChainDesign {
  std::size_t n = 0;
  std::vector<BigRational> masses;
  std::vector<BigRational> springs;
  BigRational omega_squared;

  ChainDesign to_float() const;
  friend bool operator==(const ExactChainDesign&, const ExactChainDesign&) = default;
};

struct MagicDesign {
  std::size_t n = 0;
  std::vector<BigInt> masses;
  std::vector<BigInt> springs;
  BigRational omega_squared;
};

/// Default frequency spacing: transfer time pi/omega equal to n - 1.
double default_omega(std::size_t n);
/// Default first mass sqrt((n-1)/pi).
double default_first_mass(std::size_t n);

/// Mass recursion M_{i+1} = M_i (2i-1)/i (n-i)/(2n-2i-1) and
/// K_i = M_i omega^2/2 (2i-1)(n-i).  Requires n >= 2, M1 > 0, omega > 0.
ChainDesign design_chain(std::size_t n, double m1, double omega);
ExactChainDesign design_chain_exact(std::size_t n, const BigRational& m1,
                                    const BigRational& omega_squared);

/// Binomial closed form of the same design:
///   M_i = M_1 C(n-1, i-1)^2 / C(2n-2, 2i-2),
///   K_i = M_1 omega^2 (n-1)^2 C(n-2, i-1)^2 / C(2n-2, 2i-1).
ChainDesign design_chain_closed_form(std::size_t n, double m1, double omega);
ExactChainDesign design_chain_closed_form_exact(std::size_t n, const BigRational& m1,
                                                const BigRational& omega_squared);

/// Coprime integer masses and springs, with the omega^2 that makes them a
/// perfect chain.
MagicDesign magic_design(std::size_t n);

/// Diagonal (K_i + K_{i-1}) / M_i, off-diagonal magnitude K_i / sqrt(M_i M_{i+1}).
JacobiMatrix dynamical_matrix(const ChainDesign& d);
ExactJacobi dynamical_matrix_exact(const ExactChainDesign& d);

/// Strict decrease of masses and increase of springs for i + 1 < n/2,
/// plus mirror symmetry within rel_tol.  Requires n >= 3.
bool monotonicity_check(const ChainDesign& d, double rel_tol = 1e-10);
bool monotonicity_check(const ExactChainDesign& d);

struct AsymptoticsReport {
  std::size_t n = 0;
  double mass_ratio = 0.0;             // M_mid / M_1, exact binomial ratio
  double mass_ratio_stirling = 0.0;    // 2 / sqrt(pi n)
  double mass_ratio_rel_dev = 0.0;
  double spring_ratio = 0.0;           // K_mid / K_1
  double spring_ratio_stirling = 0.0;  // sqrt(n / pi)
  double spring_ratio_rel_dev = 0.0;
  double peak_a = 0.0;                 // 2 pi^2 / 4, parabola maximum of a~
  double peak_b = 0.0;                 // pi^2 / 4
  double max_dev_a = 0.0;              // interior max |a~_i - 2 pi^2 x (1-x)|
  double max_dev_b = 0.0;              // interior max |b~_i - pi^2 x (1-x)|
};

/// With omega = pi/(n-1) and x = (i-1)/(n-1).  Requires n >= 4.
AsymptoticsReport asymptotic_report(std::size_t n);

}  // namespace perfectchain

#endif  // PERFECTCHAIN_CHAIN_HPP
