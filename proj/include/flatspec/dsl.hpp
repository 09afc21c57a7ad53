#pragma once

// Ring-description language.
//
//   expr  := atom ("*" atom)*            products of two or more atoms flatten
//   atom  := "Z/" nat ["[x]/(" poly ")"] | "GF(" nat ")" | "Zloc(" nat ")"
//          | "EvBits" | "(" expr ")"
//   poly  := monic polynomial in x, e.g. x^2+x, x^3+2x+1
//
// Element literals depend on the ring: integers for Z/n, polynomials in x
// for quotients and GF(q), "a" or "a/b" for Zloc(p), "{i,j,...}:t" for EvBits
// (positions where the bit differs from the tail t), and "(e1, e2, ...)" for
// products.

#include <cctype>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "flatspec/error.hpp"
#include "flatspec/ring.hpp"

namespace flatspec {

namespace detail {

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  std::size_t position() const { return pos_; }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool accept(std::string_view token) {
    skip_ws();
    if (text_.substr(pos_, token.size()) != token) return false;
    pos_ += token.size();
    return true;
  }

  void expect(std::string_view token) {
    if (!accept(token)) fail({std::string(token)}, "unexpected input");
  }

  std::int64_t natural() {
    skip_ws();
    const std::size_t start = pos_;
    std::int64_t value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      const int digit = text_[pos_] - '0';
      if (value > (std::numeric_limits<std::int64_t>::max() - digit) / 10) {
        pos_ = start;
        fail({}, "number too large");
      }
      value = value * 10 + digit;
      ++pos_;
    }
    if (pos_ == start) fail({"<digits>"}, "expected a number");
    return value;
  }

  std::int64_t integer() {
    const bool negative = accept("-");
    const std::int64_t v = natural();
    return negative ? -v : v;
  }

  [[noreturn]] void fail(std::vector<std::string> expected, const std::string& message) const {
    throw ParseError(pos_, std::move(expected), message);
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

/// Unreduced integer coefficients of a polynomial in x.
inline Polynomial parse_polynomial(Cursor& in) {
  Polynomial f;
  auto add_term = [&](std::int64_t coefficient, std::size_t exponent) {
    if (f.size() <= exponent) f.resize(exponent + 1, 0);
    f[exponent] = arith::checked(static_cast<__int128>(f[exponent]) + coefficient);
  };
  bool first = true;
  while (true) {
    std::int64_t sign = 1;
    if (in.accept("-")) {
      sign = -1;
    } else if (!first && !in.accept("+")) {
      break;
    }
    first = false;
    std::int64_t coefficient = 1;
    bool has_coefficient = false;
    if (std::isdigit(static_cast<unsigned char>(in.peek()))) {
      coefficient = in.natural();
      has_coefficient = true;
      in.accept("*");
    }
    if (in.accept("x")) {
      std::size_t exponent = 1;
      if (in.accept("^")) exponent = static_cast<std::size_t>(in.natural());
      if (exponent > 64) in.fail({}, "exponent too large");
      add_term(sign * coefficient, exponent);
    } else if (has_coefficient) {
      add_term(sign * coefficient, 0);
    } else {
      in.fail({"<digits>", "x"}, "expected a polynomial term");
    }
  }
  return f;
}

inline RingPtr parse_expr(Cursor& in);

inline RingPtr parse_atom(Cursor& in) {
  const std::size_t start = in.position();
  auto located = [&](auto&& build) -> RingPtr {
    try {
      return build();
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      // keep the error code, add where it happened
      throw Error(e.code(), "at position " + std::to_string(start) + ": " + e.detail());
    }
  };
  if (in.accept("(")) {
    RingPtr inner = parse_expr(in);
    in.expect(")");
    return inner;
  }
  if (in.accept("Z/")) {
    const std::int64_t n = in.natural();
    if (in.accept("[")) {
      in.expect("x");
      in.expect("]");
      in.expect("/");
      in.expect("(");
      Polynomial f = parse_polynomial(in);
      in.expect(")");
      return located([&] { return Ring::poly_quotient(n, std::move(f)); });
    }
    return located([&] { return Ring::modular_integers(n); });
  }
  if (in.accept("GF(")) {
    const std::int64_t q = in.natural();
    in.expect(")");
    return located([&] { return Ring::galois_field(q); });
  }
  if (in.accept("Zloc(")) {
    const std::int64_t p = in.natural();
    in.expect(")");
    return located([&] { return Ring::localized_integers(p); });
  }
  if (in.accept("EvBits")) return Ring::eventually_constant_bits();
  in.fail({"Z/", "GF(", "Zloc(", "EvBits", "("}, "expected a ring");
}

inline RingPtr parse_expr(Cursor& in) {
  std::vector<RingPtr> factors{parse_atom(in)};
  while (in.accept("*")) factors.push_back(parse_atom(in));
  if (factors.size() == 1) return factors.front();
  return Ring::product(std::move(factors));
}

inline Element parse_element(const RingPtr& ring, Cursor& in) {
  switch (ring->kind()) {
    case RingKind::ModularInt: return ring->from_integer(in.integer());
    case RingKind::GaloisField:
    case RingKind::PolyQuotient: {
      Polynomial f = parse_polynomial(in);
      for (auto& c : f) c = arith::mod(c, ring->modulus());
      return ring->polynomial(std::move(f));
    }
    case RingKind::Product: {
      in.expect("(");
      Element::Tuple parts;
      for (std::size_t i = 0; i < ring->factors().size(); ++i) {
        if (i > 0) in.expect(",");
        parts.push_back(parse_element(ring->factors()[i], in));
      }
      in.expect(")");
      return ring->tuple(std::move(parts));
    }
    case RingKind::LocalizedIntegers: {
      const std::size_t start = in.position();
      const std::int64_t num = in.integer();
      std::int64_t den = 1;
      if (in.accept("/")) den = in.integer();
      try {
        return ring->fraction(num, den);
      } catch (const Error& e) {
        throw ParseError(start, {}, e.detail());
      }
    }
    case RingKind::EventuallyConstantBits: {
      in.expect("{");
      std::vector<std::uint32_t> positions;
      if (!in.accept("}")) {
        do {
          const std::size_t at = in.position();
          const std::int64_t i = in.natural();
          if (i < 1 || i > std::numeric_limits<std::uint32_t>::max()) throw ParseError(at, {}, "bit positions start at 1");
          positions.push_back(static_cast<std::uint32_t>(i));
        } while (in.accept(","));
        in.expect("}");
      }
      in.expect(":");
      bool tail = false;
      if (in.accept("1")) {
        tail = true;
      } else if (!in.accept("0")) {
        in.fail({"0", "1"}, "expected the tail bit");
      }
      return ring->bits(std::move(positions), tail);
    }
  }
  in.fail({}, "unsupported ring");
}

}  // namespace detail

/// Parses a ring expression such as "Zloc(2) * Z/3".
inline RingPtr parse_ring(std::string_view text) {
  detail::Cursor in(text);
  RingPtr ring = detail::parse_expr(in);
  if (!in.at_end()) in.fail({"*", "<end>"}, "trailing input");
  return ring;
}

/// Canonical text; parse_ring(print_ring(r)) reproduces r.
inline std::string print_ring(const Ring& ring) { return ring.describe(); }

inline Element parse_element(const RingPtr& ring, std::string_view text) {
  detail::Cursor in(text);
  Element e = detail::parse_element(ring, in);
  if (!in.at_end()) in.fail({"<end>"}, "trailing input");
  return e;
}

/// Comma-separated element literals; commas inside (), {} belong to the literal.
inline std::vector<Element> parse_element_list(const RingPtr& ring, std::string_view text) {
  std::vector<Element> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    const char c = i < text.size() ? text[i] : ',';
    if (c == '(' || c == '{') ++depth;
    if (c == ')' || c == '}') --depth;
    if (c == ',' && depth == 0) {
      const auto piece = text.substr(start, i - start);
      if (piece.find_first_not_of(" \t") == std::string_view::npos) {
        if (i == text.size() && out.empty() && start == 0) break;  // empty list
        throw ParseError(start, {"<element>"}, "empty element literal");
      }
      try {
        out.push_back(parse_element(ring, piece));
      } catch (const ParseError& e) {
        throw ParseError(start + e.position(), e.expected(), "in element literal '" + std::string(piece) + "'");
      }
      start = i + 1;
    }
  }
  return out;
}

}  // namespace flatspec
