#pragma once

// Integer and Z/p[x] helpers shared by the ring presentations.

#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "flatspec/error.hpp"

namespace flatspec {

/// Coefficients over Z/p, constant term first.
using Polynomial = std::vector<std::int64_t>;

namespace arith {

inline std::int64_t mod(std::int64_t a, std::int64_t n) {
  const std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

inline std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t n) {
  return static_cast<std::int64_t>(static_cast<__int128>(a) * b % n);
}

inline std::int64_t checked(__int128 value) {
  if (value > std::numeric_limits<std::int64_t>::max() || value < std::numeric_limits<std::int64_t>::min())
    throw Error(ErrorCode::Overflow, "integer result exceeds 64 bits");
  return static_cast<std::int64_t>(value);
}

inline std::optional<std::int64_t> smallest_prime_factor(std::int64_t n) {
  if (n < 2) return std::nullopt;
  for (std::int64_t d = 2; d <= n / d; ++d)
    if (n % d == 0) return d;
  return n;
}

inline bool is_prime(std::int64_t n) {
  auto d = smallest_prime_factor(n);
  return d && *d == n;
}

/// (p, k) with q = p^k, k >= 1, or nullopt.
inline std::optional<std::pair<std::int64_t, int>> prime_power(std::int64_t q) {
  auto p = smallest_prime_factor(q);
  if (!p) return std::nullopt;
  int k = 0;
  while (q % *p == 0) {
    q /= *p;
    ++k;
  }
  if (q != 1) return std::nullopt;
  return std::pair{*p, k};
}

inline int valuation(std::int64_t a, std::int64_t p) {
  int v = 0;
  while (a != 0 && a % p == 0) {
    a /= p;
    ++v;
  }
  return v;
}

inline std::int64_t ipow(std::int64_t base, int exponent) {
  __int128 r = 1;
  for (int i = 0; i < exponent; ++i) r = checked(r * base);
  return static_cast<std::int64_t>(r);
}

// ---- polynomials over Z/p ------------------------------------------------

inline Polynomial trim(Polynomial f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
  return f;
}

/// Degree of a trimmed polynomial; -1 for zero.
inline int degree(const Polynomial& f) { return static_cast<int>(trim(f).size()) - 1; }

inline Polynomial reduce_coefficients(Polynomial f, std::int64_t p) {
  for (auto& c : f) c = mod(c, p);
  return trim(std::move(f));
}

inline Polynomial poly_mul(const Polynomial& a, const Polynomial& b, std::int64_t p) {
  if (a.empty() || b.empty()) return {};
  Polynomial out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = mod(out[i + j] + mul_mod(a[i], b[j], p), p);
  return trim(std::move(out));
}

/// Remainder of a by a monic divisor.
inline Polynomial poly_rem(Polynomial a, const Polynomial& monic, std::int64_t p) {
  a = reduce_coefficients(std::move(a), p);
  const int d = degree(monic);
  while (degree(a) >= d) {
    const int shift = degree(a) - d;
    const std::int64_t lead = a.back();
    for (int i = 0; i <= d; ++i) a[i + shift] = mod(a[i + shift] - mul_mod(lead, monic[i], p), p);
    a = trim(std::move(a));
  }
  return a;
}

/// Monic polynomials of the given degree, ordered lexicographically on
/// (c_{k-1}, ..., c_0).
inline Polynomial nth_monic(std::int64_t p, int k, std::int64_t t) {
  Polynomial f(k + 1, 0);
  f[k] = 1;
  for (int j = 0; j < k; ++j) {
    f[j] = t % p;
    t /= p;
  }
  return f;
}

/// A monic factor of degree 1..deg(f)/2, found by brute-force search.
inline std::optional<Polynomial> find_proper_factor(const Polynomial& f, std::int64_t p) {
  const int d = degree(f);
  for (int k = 1; k <= d / 2; ++k) {
    const std::int64_t count = ipow(p, k);
    for (std::int64_t t = 0; t < count; ++t) {
      Polynomial g = nth_monic(p, k, t);
      if (poly_rem(f, g, p).empty()) return g;
    }
  }
  return std::nullopt;
}

inline Polynomial least_irreducible(std::int64_t p, int k) {
  const std::int64_t count = ipow(p, k);
  for (std::int64_t t = 0; t < count; ++t) {
    Polynomial f = nth_monic(p, k, t);
    if (!find_proper_factor(f, p)) return f;
  }
  throw Error(ErrorCode::NotIrreducible, "no irreducible polynomial found");  // unreachable for prime p
}

inline std::string format_polynomial(const Polynomial& f) {
  const Polynomial g = trim(f);
  if (g.empty()) return "0";
  std::string out;
  for (int i = static_cast<int>(g.size()) - 1; i >= 0; --i) {
    const std::int64_t c = g[i];
    if (c == 0) continue;
    if (!out.empty()) out += "+";
    if (i == 0) {
      out += std::to_string(c);
    } else {
      if (c != 1) out += std::to_string(c);
      out += "x";
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out;
}

}  // namespace arith
}  // namespace flatspec
