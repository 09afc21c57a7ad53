#pragma once

#include <algorithm>
#include <cstdint>
#include <variant>
#include <vector>

#include "flatspec/arith.hpp"

namespace flatspec {

/// Reduced fraction a/b with b > 0, used by the localized integers.
struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;

  friend bool operator==(const Fraction&, const Fraction&) = default;
  friend auto operator<=>(const Fraction&, const Fraction&) = default;
};

/// An eventually constant 0/1 sequence indexed from 1. Bit i equals `tail`
/// unless i is listed in `exceptions` (sorted, unique, all >= 1).
struct BitSequence {
  std::vector<std::uint32_t> exceptions;
  bool tail = false;

  bool bit(std::uint32_t i) const {
    return std::binary_search(exceptions.begin(), exceptions.end(), i) != tail;
  }

  friend bool operator==(const BitSequence&, const BitSequence&) = default;
  friend auto operator<=>(const BitSequence&, const BitSequence&) = default;
};

/// A ring element in canonical form. Which alternative is active depends on
/// the owning ring's presentation; equality is structural.
class Element {
 public:
  using Tuple = std::vector<Element>;
  using Value = std::variant<std::int64_t, Polynomial, Tuple, Fraction, BitSequence>;

  Element() = default;
  explicit Element(Value value) : value_(std::move(value)) {}

  const Value& value() const noexcept { return value_; }

  std::int64_t residue() const { return std::get<std::int64_t>(value_); }
  const Polynomial& polynomial() const { return std::get<Polynomial>(value_); }
  const Tuple& components() const { return std::get<Tuple>(value_); }
  const Fraction& fraction() const { return std::get<Fraction>(value_); }
  const BitSequence& bits() const { return std::get<BitSequence>(value_); }

  friend bool operator==(const Element& a, const Element& b) { return a.value_ == b.value_; }

  friend bool operator<(const Element& a, const Element& b) {
    if (a.value_.index() != b.value_.index()) return a.value_.index() < b.value_.index();
    return std::visit(
        [&](const auto& lhs) {
          using T = std::decay_t<decltype(lhs)>;
          const auto& rhs = std::get<T>(b.value_);
          if constexpr (std::is_same_v<T, Tuple>)
            return std::lexicographical_compare(lhs.begin(), lhs.end(), rhs.begin(), rhs.end());
          else
            return lhs < rhs;
        },
        a.value_);
  }

 private:
  Value value_{std::int64_t{0}};
};

}  // namespace flatspec
