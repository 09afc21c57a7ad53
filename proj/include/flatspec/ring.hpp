#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <mutex>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "flatspec/arith.hpp"
#include "flatspec/element.hpp"
#include "flatspec/error.hpp"

namespace flatspec {

enum class RingKind {
  ModularInt,
  GaloisField,
  PolyQuotient,
  Product,
  LocalizedIntegers,
  EventuallyConstantBits,
};

/// Finite rings up to this size get cached operation tables and support
/// explicit ideals; larger finite rings only support element arithmetic.
inline constexpr std::uint32_t kMaxExplicitSize = 4096;

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

/// An immutable commutative ring presentation. Construct through the static
/// factories, which validate and canonicalize their input.
class Ring {
  struct Token {};

 public:
  static RingPtr modular_integers(std::int64_t n) {
    if (n < 1) throw Error(ErrorCode::InvalidPresentation, "Z/n needs n >= 1, got " + std::to_string(n));
    return std::make_shared<const Ring>(Token{}, RingKind::ModularInt, n, Polynomial{}, std::vector<RingPtr>{});
  }

  /// Z/p[x]/(f) with f monic irreducible; irreducibility is checked by
  /// exhaustive factor search.
  static RingPtr galois_field(std::int64_t p, Polynomial f) {
    f = checked_monic(p, std::move(f));
    if (auto factor = arith::find_proper_factor(f, p))
      throw Error(ErrorCode::NotIrreducible, arith::format_polynomial(f) + " has factor " +
                                                 arith::format_polynomial(*factor) + " over Z/" +
                                                 std::to_string(p));
    return std::make_shared<const Ring>(Token{}, RingKind::GaloisField, p, std::move(f), std::vector<RingPtr>{});
  }

  static RingPtr galois_field(std::int64_t q) {
    auto pk = arith::prime_power(q);
    if (!pk) throw Error(ErrorCode::NotPrimePower, std::to_string(q) + " is not a prime power");
    return galois_field(pk->first, arith::least_irreducible(pk->first, pk->second));
  }

  static RingPtr poly_quotient(std::int64_t p, Polynomial f) {
    f = checked_monic(p, std::move(f));
    return std::make_shared<const Ring>(Token{}, RingKind::PolyQuotient, p, std::move(f), std::vector<RingPtr>{});
  }

  static RingPtr product(std::vector<RingPtr> factors) {
    if (factors.empty()) throw Error(ErrorCode::EmptyProduct, "a product needs at least one factor");
    for (const auto& r : factors)
      if (r->kind() == RingKind::EventuallyConstantBits)
        throw Error(ErrorCode::UnsupportedForPresentation, "EvBits cannot be a product factor");
    return std::make_shared<const Ring>(Token{}, RingKind::Product, 0, Polynomial{}, std::move(factors));
  }

  static RingPtr localized_integers(std::int64_t p) {
    require_prime(p);
    return std::make_shared<const Ring>(Token{}, RingKind::LocalizedIntegers, p, Polynomial{},
                                        std::vector<RingPtr>{});
  }

  static RingPtr eventually_constant_bits() {
    return std::make_shared<const Ring>(Token{}, RingKind::EventuallyConstantBits, 0, Polynomial{},
                                        std::vector<RingPtr>{});
  }

  Ring(Token, RingKind kind, std::int64_t n, Polynomial f, std::vector<RingPtr> factors)
      : kind_(kind), n_(n), poly_(std::move(f)), factors_(std::move(factors)) {
    switch (kind_) {
      case RingKind::ModularInt:
        finite_ = true;
        cardinality_ = static_cast<std::uint64_t>(n_);
        description_ = "Z/" + std::to_string(n_);
        break;
      case RingKind::GaloisField:
      case RingKind::PolyQuotient: {
        finite_ = true;
        cardinality_ = 1;
        for (int i = 0; i < degree(); ++i) cardinality_ = saturating_mul(cardinality_, static_cast<std::uint64_t>(n_));
        description_ = kind_ == RingKind::GaloisField
                           ? "GF(" + std::to_string(cardinality_) + ")"
                           : "Z/" + std::to_string(n_) + "[x]/(" + arith::format_polynomial(poly_) + ")";
        break;
      }
      case RingKind::Product: {
        finite_ = true;
        cardinality_ = 1;
        for (std::size_t i = 0; i < factors_.size(); ++i) {
          const auto& r = factors_[i];
          finite_ = finite_ && r->is_finite();
          if (r->is_finite()) cardinality_ = saturating_mul(cardinality_, r->cardinality());
          if (i > 0) description_ += " * ";
          description_ += r->kind() == RingKind::Product ? "(" + r->describe() + ")" : r->describe();
        }
        if (!finite_) cardinality_ = 0;
        break;
      }
      case RingKind::LocalizedIntegers:
        description_ = "Zloc(" + std::to_string(n_) + ")";
        break;
      case RingKind::EventuallyConstantBits:
        description_ = "EvBits";
        break;
    }
  }

  RingKind kind() const noexcept { return kind_; }
  bool is_finite() const noexcept { return finite_; }
  /// Number of elements for finite rings (saturating); 0 for infinite rings.
  std::uint64_t cardinality() const noexcept { return cardinality_; }
  bool is_explicit() const noexcept { return finite_ && cardinality_ <= kMaxExplicitSize; }

  /// n for Z/n, p for Z/p[x]/(f), GF and Zloc(p).
  std::int64_t modulus() const noexcept { return n_; }
  const Polynomial& modulus_polynomial() const noexcept { return poly_; }
  int degree() const noexcept { return static_cast<int>(poly_.size()) - 1; }
  std::span<const RingPtr> factors() const noexcept { return factors_; }

  /// Canonical text in the ring-description language.
  const std::string& describe() const noexcept { return description_; }

  friend bool same_ring(const Ring& a, const Ring& b) { return &a == &b || a.description_ == b.description_; }

  // ---- element construction ----------------------------------------------

  Element zero() const { return from_integer(0); }
  Element one() const { return from_integer(1); }

  /// Image of an integer under Z -> R.
  Element from_integer(std::int64_t k) const {
    switch (kind_) {
      case RingKind::ModularInt: return Element{arith::mod(k, n_)};
      case RingKind::GaloisField:
      case RingKind::PolyQuotient: {
        Polynomial c(degree(), 0);
        c[0] = arith::mod(k, n_);
        return Element{std::move(c)};
      }
      case RingKind::Product: {
        Element::Tuple t;
        for (const auto& r : factors_) t.push_back(r->from_integer(k));
        return Element{std::move(t)};
      }
      case RingKind::LocalizedIntegers: return Element{Fraction{k, 1}};
      case RingKind::EventuallyConstantBits: return Element{BitSequence{{}, (k % 2) != 0}};
    }
    return Element{};
  }

  Element polynomial(Polynomial coefficients) const {
    require_kind(kind_ == RingKind::GaloisField || kind_ == RingKind::PolyQuotient, "polynomial residue");
    Polynomial r = arith::poly_rem(std::move(coefficients), poly_, n_);
    r.resize(degree(), 0);
    return Element{std::move(r)};
  }

  Element tuple(Element::Tuple components) const {
    require_kind(kind_ == RingKind::Product, "tuple");
    if (components.size() != factors_.size())
      throw Error(ErrorCode::InvalidElement, "tuple arity does not match " + description_);
    for (std::size_t i = 0; i < components.size(); ++i)
      if (!factors_[i]->is_member(components[i]))
        throw Error(ErrorCode::InvalidElement, "component " + std::to_string(i) + " is not in " + factors_[i]->describe());
    return Element{std::move(components)};
  }

  Element fraction(std::int64_t num, std::int64_t den) const {
    require_kind(kind_ == RingKind::LocalizedIntegers, "fraction");
    if (den == 0) throw Error(ErrorCode::InvalidElement, "zero denominator");
    if (den < 0) {
      num = arith::checked(-static_cast<__int128>(num));
      den = arith::checked(-static_cast<__int128>(den));
    }
    const std::int64_t g = std::gcd(num, den);
    num /= g;
    den /= g;
    if (den % n_ == 0)
      throw Error(ErrorCode::InvalidElement, "denominator " + std::to_string(den) + " is divisible by " + std::to_string(n_));
    return Element{Fraction{num, den}};
  }

  Element bits(std::vector<std::uint32_t> exceptions, bool tail) const {
    require_kind(kind_ == RingKind::EventuallyConstantBits, "bit sequence");
    std::sort(exceptions.begin(), exceptions.end());
    exceptions.erase(std::unique(exceptions.begin(), exceptions.end()), exceptions.end());
    if (!exceptions.empty() && exceptions.front() == 0)
      throw Error(ErrorCode::InvalidElement, "bit positions start at 1");
    return Element{BitSequence{std::move(exceptions), tail}};
  }

  /// True iff `e` is a canonical element of this ring.
  bool is_member(const Element& e) const {
    switch (kind_) {
      case RingKind::ModularInt: {
        auto v = std::get_if<std::int64_t>(&e.value());
        return v && *v >= 0 && *v < n_;
      }
      case RingKind::GaloisField:
      case RingKind::PolyQuotient: {
        auto v = std::get_if<Polynomial>(&e.value());
        return v && static_cast<int>(v->size()) == degree() &&
               std::all_of(v->begin(), v->end(), [&](std::int64_t c) { return c >= 0 && c < n_; });
      }
      case RingKind::Product: {
        auto v = std::get_if<Element::Tuple>(&e.value());
        if (!v || v->size() != factors_.size()) return false;
        for (std::size_t i = 0; i < v->size(); ++i)
          if (!factors_[i]->is_member((*v)[i])) return false;
        return true;
      }
      case RingKind::LocalizedIntegers: {
        auto v = std::get_if<Fraction>(&e.value());
        return v && v->den > 0 && v->den % n_ != 0 && std::gcd(v->num, v->den) == 1;
      }
      case RingKind::EventuallyConstantBits: {
        auto v = std::get_if<BitSequence>(&e.value());
        if (!v) return false;
        for (std::size_t i = 0; i < v->exceptions.size(); ++i)
          if (v->exceptions[i] == 0 || (i > 0 && v->exceptions[i] <= v->exceptions[i - 1])) return false;
        return true;
      }
    }
    return false;
  }

  // ---- arithmetic ----------------------------------------------------------

  Element add(const Element& a, const Element& b) const {
    switch (kind_) {
      case RingKind::ModularInt: return Element{arith::mod(a.residue() + b.residue(), n_)};
      case RingKind::GaloisField:
      case RingKind::PolyQuotient: {
        Polynomial c(degree());
        for (int i = 0; i < degree(); ++i) c[i] = arith::mod(a.polynomial()[i] + b.polynomial()[i], n_);
        return Element{std::move(c)};
      }
      case RingKind::Product: return componentwise(a, b, &Ring::add);
      case RingKind::LocalizedIntegers: {
        const auto& x = a.fraction();
        const auto& y = b.fraction();
        const __int128 num = static_cast<__int128>(x.num) * y.den + static_cast<__int128>(y.num) * x.den;
        const __int128 den = static_cast<__int128>(x.den) * y.den;
        return reduced_fraction(num, den);
      }
      case RingKind::EventuallyConstantBits: {
        const auto& x = a.bits();
        const auto& y = b.bits();
        BitSequence out;
        out.tail = x.tail != y.tail;
        std::set_symmetric_difference(x.exceptions.begin(), x.exceptions.end(), y.exceptions.begin(),
                                      y.exceptions.end(), std::back_inserter(out.exceptions));
        return Element{std::move(out)};
      }
    }
    return Element{};
  }

  Element neg(const Element& a) const {
    switch (kind_) {
      case RingKind::ModularInt: return Element{arith::mod(-a.residue(), n_)};
      case RingKind::GaloisField:
      case RingKind::PolyQuotient: {
        Polynomial c(degree());
        for (int i = 0; i < degree(); ++i) c[i] = arith::mod(-a.polynomial()[i], n_);
        return Element{std::move(c)};
      }
      case RingKind::Product: {
        Element::Tuple t;
        for (std::size_t i = 0; i < factors_.size(); ++i) t.push_back(factors_[i]->neg(a.components()[i]));
        return Element{std::move(t)};
      }
      case RingKind::LocalizedIntegers:
        return Element{Fraction{arith::checked(-static_cast<__int128>(a.fraction().num)), a.fraction().den}};
      case RingKind::EventuallyConstantBits: return a;
    }
    return Element{};
  }

  Element sub(const Element& a, const Element& b) const { return add(a, neg(b)); }

  Element mul(const Element& a, const Element& b) const {
    switch (kind_) {
      case RingKind::ModularInt: return Element{arith::mul_mod(a.residue(), b.residue(), n_)};
      case RingKind::GaloisField:
      case RingKind::PolyQuotient:
        return polynomial(arith::poly_mul(arith::trim(a.polynomial()), arith::trim(b.polynomial()), n_));
      case RingKind::Product: return componentwise(a, b, &Ring::mul);
      case RingKind::LocalizedIntegers: {
        const auto& x = a.fraction();
        const auto& y = b.fraction();
        return reduced_fraction(static_cast<__int128>(x.num) * y.num, static_cast<__int128>(x.den) * y.den);
      }
      case RingKind::EventuallyConstantBits: {
        const auto& x = a.bits();
        const auto& y = b.bits();
        BitSequence out;
        out.tail = x.tail && y.tail;
        std::vector<std::uint32_t> positions;
        std::set_union(x.exceptions.begin(), x.exceptions.end(), y.exceptions.begin(), y.exceptions.end(),
                       std::back_inserter(positions));
        for (std::uint32_t i : positions)
          if ((x.bit(i) && y.bit(i)) != out.tail) out.exceptions.push_back(i);
        return Element{std::move(out)};
      }
    }
    return Element{};
  }

  Element pow(const Element& a, std::uint64_t k) const {
    Element r = one();
    for (std::uint64_t i = 0; i < k; ++i) r = mul(r, a);
    return r;
  }

  std::string format(const Element& e) const {
    switch (kind_) {
      case RingKind::ModularInt: return std::to_string(e.residue());
      case RingKind::GaloisField:
      case RingKind::PolyQuotient: return arith::format_polynomial(e.polynomial());
      case RingKind::Product: {
        std::string s = "(";
        for (std::size_t i = 0; i < factors_.size(); ++i) {
          if (i > 0) s += ", ";
          s += factors_[i]->format(e.components()[i]);
        }
        return s + ")";
      }
      case RingKind::LocalizedIntegers: {
        const auto& f = e.fraction();
        return f.den == 1 ? std::to_string(f.num) : std::to_string(f.num) + "/" + std::to_string(f.den);
      }
      case RingKind::EventuallyConstantBits: {
        std::string s = "{";
        for (std::size_t i = 0; i < e.bits().exceptions.size(); ++i) {
          if (i > 0) s += ",";
          s += std::to_string(e.bits().exceptions[i]);
        }
        return s + "}:" + (e.bits().tail ? "1" : "0");
      }
    }
    return {};
  }

  // ---- indexed access for explicit finite rings ----------------------------
  //
  // Elements are numbered 0..size()-1; index 0 is zero. Polynomial residues
  // use base-p digits with the leading coefficient most significant; tuples
  // use mixed radix with the first factor most significant, so index order
  // is lexicographic order.

  std::uint32_t size() const {
    require_explicit();
    return static_cast<std::uint32_t>(cardinality_);
  }

  Element element_at(std::uint32_t index) const {
    switch (kind_) {
      case RingKind::ModularInt: return Element{static_cast<std::int64_t>(index)};
      case RingKind::GaloisField:
      case RingKind::PolyQuotient: {
        Polynomial c(degree());
        for (int i = 0; i < degree(); ++i) {
          c[i] = index % n_;
          index /= static_cast<std::uint32_t>(n_);
        }
        return Element{std::move(c)};
      }
      case RingKind::Product: {
        Element::Tuple t(factors_.size());
        for (std::size_t i = factors_.size(); i-- > 0;) {
          const auto s = static_cast<std::uint32_t>(factors_[i]->cardinality());
          t[i] = factors_[i]->element_at(index % s);
          index /= s;
        }
        return Element{std::move(t)};
      }
      default: require_explicit();
    }
    return Element{};
  }

  std::uint32_t index_of(const Element& e) const {
    switch (kind_) {
      case RingKind::ModularInt: return static_cast<std::uint32_t>(e.residue());
      case RingKind::GaloisField:
      case RingKind::PolyQuotient: {
        std::uint32_t idx = 0;
        for (int i = degree(); i-- > 0;) idx = idx * static_cast<std::uint32_t>(n_) + static_cast<std::uint32_t>(e.polynomial()[i]);
        return idx;
      }
      case RingKind::Product: {
        std::uint32_t idx = 0;
        for (std::size_t i = 0; i < factors_.size(); ++i)
          idx = idx * static_cast<std::uint32_t>(factors_[i]->cardinality()) + factors_[i]->index_of(e.components()[i]);
        return idx;
      }
      default: require_explicit();
    }
    return 0;
  }

  std::uint32_t add_index(std::uint32_t a, std::uint32_t b) const { return tables().add[a * cardinality_ + b]; }
  std::uint32_t mul_index(std::uint32_t a, std::uint32_t b) const { return tables().mul[a * cardinality_ + b]; }
  std::uint32_t neg_index(std::uint32_t a) const { return tables().neg[a]; }
  std::uint32_t one_index() const { return tables().one; }

  /// Index ranges of the factor rings inside a finite product.
  std::uint32_t component_index(std::uint32_t index, std::size_t factor) const {
    for (std::size_t i = factors_.size(); i-- > factor + 1;) index /= static_cast<std::uint32_t>(factors_[i]->cardinality());
    return index % static_cast<std::uint32_t>(factors_[factor]->cardinality());
  }

 private:
  struct Tables {
    std::vector<std::uint16_t> add;
    std::vector<std::uint16_t> mul;
    std::vector<std::uint16_t> neg;
    std::uint32_t one = 0;
  };

  static std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
    return a * b;
  }

  static void require_prime(std::int64_t p) {
    if (!arith::is_prime(p)) {
      auto f = arith::smallest_prime_factor(p);
      throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime" +
                                           (f ? " (divisible by " + std::to_string(*f) + ")" : std::string{}));
    }
  }

  static Polynomial checked_monic(std::int64_t p, Polynomial f) {
    require_prime(p);
    f = arith::reduce_coefficients(std::move(f), p);
    if (arith::degree(f) < 1 || f.back() != 1)
      throw Error(ErrorCode::InvalidPresentation, "modulus polynomial must be monic of degree >= 1");
    return f;
  }

  void require_kind(bool ok, const char* what) const {
    if (!ok) throw Error(ErrorCode::InvalidElement, std::string("cannot build a ") + what + " in " + description_);
  }

  void require_explicit() const {
    if (!is_explicit())
      throw Error(ErrorCode::UnsupportedForPresentation,
                  description_ + " is not a finite ring with at most " + std::to_string(kMaxExplicitSize) + " elements");
  }

  Element componentwise(const Element& a, const Element& b, Element (Ring::*op)(const Element&, const Element&) const) const {
    Element::Tuple t;
    t.reserve(factors_.size());
    for (std::size_t i = 0; i < factors_.size(); ++i)
      t.push_back(((*factors_[i]).*op)(a.components()[i], b.components()[i]));
    return Element{std::move(t)};
  }

  Element reduced_fraction(__int128 num, __int128 den) const {
    __int128 a = num < 0 ? -num : num;
    __int128 b = den;
    while (b != 0) {
      const __int128 t = a % b;
      a = b;
      b = t;
    }
    if (a > 1) {
      num /= a;
      den /= a;
    }
    return Element{Fraction{arith::checked(num), arith::checked(den)}};
  }

  const Tables& tables() const {
    std::call_once(tables_once_, [this] {
      require_explicit();
      const auto n = static_cast<std::uint32_t>(cardinality_);
      std::vector<Element> elems;
      elems.reserve(n);
      for (std::uint32_t i = 0; i < n; ++i) elems.push_back(element_at(i));
      tables_.add.resize(std::size_t{n} * n);
      tables_.mul.resize(std::size_t{n} * n);
      tables_.neg.resize(n);
      for (std::uint32_t i = 0; i < n; ++i) {
        tables_.neg[i] = static_cast<std::uint16_t>(index_of(neg(elems[i])));
        for (std::uint32_t j = 0; j < n; ++j) {
          tables_.add[std::size_t{i} * n + j] = static_cast<std::uint16_t>(index_of(add(elems[i], elems[j])));
          tables_.mul[std::size_t{i} * n + j] = static_cast<std::uint16_t>(index_of(mul(elems[i], elems[j])));
        }
      }
      tables_.one = index_of(one());
    });
    return tables_;
  }

  RingKind kind_;
  std::int64_t n_;
  Polynomial poly_;
  std::vector<RingPtr> factors_;
  bool finite_ = false;
  std::uint64_t cardinality_ = 0;
  std::string description_;

  mutable std::once_flag tables_once_;
  mutable Tables tables_;
};

}  // namespace flatspec
