#include "perfectchain/exact.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace perfectchain {

BigRational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  BigRational q(num, den);
  q.canonicalize();
  return q;
}

BigInt binomial(std::int64_t n, std::int64_t k) {
  if (n < 0) throw std::domain_error("binomial: negative n");
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt c = 1;
  // c stays an integer after each step: c == C(n - k + i, i).
  for (std::int64_t i = 1; i <= k; ++i) {
    c *= static_cast<long>(n - k + i);
    c /= static_cast<long>(i);
  }
  return c;
}

BigInt isqrt_floor(const BigInt& v) {
  if (v < 0) throw std::domain_error("isqrt of negative integer");
  if (v < 2) return v;
  // Start above the root; the Newton sequence then decreases monotonically.
  const auto bits = mpz_sizeinbase(v.get_mpz_t(), 2);
  BigInt x = 1;
  x <<= static_cast<mp_bitcnt_t>((bits + 1) / 2);
  while (true) {
    BigInt y = (x + v / x) >> 1;
    if (y >= x) return x;
    x = y;
  }
}

std::optional<BigInt> exact_isqrt(const BigInt& v) {
  BigInt r = isqrt_floor(v);
  if (r * r == v) return r;
  return std::nullopt;
}

BigInt gcd(const BigInt& a, const BigInt& b) {
  BigInt g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

BigInt lcm(const BigInt& a, const BigInt& b) {
  BigInt l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

CoprimeScaling normalize_to_coprime_integers(std::span<const BigRational> seq) {
  if (seq.empty()) throw std::domain_error("normalize: empty sequence");
  BigInt den_lcm = 1;
  for (const auto& q : seq) {
    if (q <= 0) throw std::domain_error("normalize: entries must be positive");
    den_lcm = lcm(den_lcm, q.get_den());
  }
  std::vector<BigInt> ints;
  ints.reserve(seq.size());
  BigInt g = 0;
  for (const auto& q : seq) {
    BigInt z = q.get_num() * (den_lcm / q.get_den());
    g = gcd(g, z);
    ints.push_back(std::move(z));
  }
  for (auto& z : ints) z /= g;
  return {std::move(ints), make_rational(den_lcm, g)};
}

double to_double(const BigRational& q) { return q.get_d(); }

std::string to_string(const BigInt& z) { return z.get_str(); }

std::string to_string(const BigRational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

namespace {

BigInt parse_integer(std::string_view s) {
  if (s.empty()) throw std::invalid_argument("empty integer literal");
  std::size_t pos = 0;
  if (s[0] == '+' || s[0] == '-') pos = 1;
  if (pos == s.size()) throw std::invalid_argument("bad integer literal");
  for (std::size_t i = pos; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i])))
      throw std::invalid_argument("bad integer literal: " + std::string(s));
  std::string body(s[0] == '+' ? s.substr(1) : s);
  return BigInt(body, 10);
}

BigInt pow10(unsigned long e) {
  BigInt p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, e);
  return p;
}

}  // namespace

BigRational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
    text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
    text.remove_suffix(1);
  if (text.empty()) throw std::invalid_argument("empty number");

  if (auto slash = text.find('/'); slash != std::string_view::npos)
    return make_rational(parse_integer(text.substr(0, slash)),
                         parse_integer(text.substr(slash + 1)));

  std::string_view mant = text;
  long exp10 = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    mant = text.substr(0, e);
    exp10 = parse_integer(text.substr(e + 1)).get_si();
  }
  bool neg = false;
  if (!mant.empty() && (mant[0] == '+' || mant[0] == '-')) {
    neg = mant[0] == '-';
    mant.remove_prefix(1);
  }
  std::string digits;
  bool seen_dot = false;
  for (char c : mant) {
    if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      if (seen_dot) --exp10;
    } else {
      throw std::invalid_argument("bad number: " + std::string(text));
    }
  }
  if (digits.empty()) throw std::invalid_argument("bad number: " + std::string(text));

  BigInt num(digits, 10);
  if (neg) num = -num;
  if (exp10 >= 0) return make_rational(num * pow10(static_cast<unsigned long>(exp10)));
  return make_rational(num, pow10(static_cast<unsigned long>(-exp10)));
}

}  // namespace perfectchain
