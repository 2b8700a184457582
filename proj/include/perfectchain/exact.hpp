#ifndef PERFECTCHAIN_EXACT_HPP
#define PERFECTCHAIN_EXACT_HPP

// Exact integer and rational arithmetic.
//
// BigInt and BigRational are the GMP C++ classes; mpq_class keeps its value
// canonical (reduced, positive denominator) across arithmetic, and every
// constructor path in this library canonicalizes explicitly.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace perfectchain {

using BigInt = mpz_class;
using BigRational = mpq_class;

/// Builds num/den in lowest terms. Throws std::domain_error on den == 0.
BigRational make_rational(const BigInt& num, const BigInt& den = 1);

/// Binomial coefficient C(n, k); zero outside 0 <= k <= n.
BigInt binomial(std::int64_t n, std::int64_t k);

/// Integer square root of a perfect square, std::nullopt otherwise.
/// Negative input throws std::domain_error.
std::optional<BigInt> exact_isqrt(const BigInt& v);

/// floor(sqrt(v)) by integer Newton iteration; v >= 0.
BigInt isqrt_floor(const BigInt& v);

BigInt gcd(const BigInt& a, const BigInt& b);
BigInt lcm(const BigInt& a, const BigInt& b);

struct CoprimeScaling {
  std::vector<BigInt> integers;
  BigRational scale;  // integers[i] == scale * seq[i]
};

/// Rescales a positive rational sequence to integers with collective gcd 1.
CoprimeScaling normalize_to_coprime_integers(std::span<const BigRational> seq);

double to_double(const BigRational& q);

/// "p" when the denominator is one, "p/q" otherwise.
std::string to_string(const BigRational& q);
std::string to_string(const BigInt& z);

/// Parses "p", "p/q", or a plain decimal literal such as "-1.25e3" exactly.
BigRational parse_rational(std::string_view text);

}  // namespace perfectchain

#endif  // PERFECTCHAIN_EXACT_HPP
