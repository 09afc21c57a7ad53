#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "flatspec/error.hpp"
#include "flatspec/ring.hpp"

namespace flatspec {

/// An ideal in canonical form. The representation is fixed by the ring:
///   - explicit finite rings: the sorted element indices;
///   - Zloc(p): the zero ideal or (p^k), k >= 0;
///   - infinite products: one ideal per factor;
///   - EvBits: a principal ideal (e) with e idempotent, or the ideal of
///     finitely supported sequences.
class Ideal {
 public:
  struct Explicit {
    std::vector<std::uint32_t> members;
    friend bool operator==(const Explicit&, const Explicit&) = default;
  };
  struct Local {
    std::optional<std::uint32_t> power;  // nullopt: the zero ideal
    friend bool operator==(const Local&, const Local&) = default;
  };
  struct Componentwise {
    std::vector<Ideal> components;
    friend bool operator==(const Componentwise&, const Componentwise&) = default;
  };
  struct Boolean {
    bool finitely_supported = false;
    Element generator;
    friend bool operator==(const Boolean&, const Boolean&) = default;
  };
  using Rep = std::variant<Explicit, Local, Componentwise, Boolean>;

  /// Validating constructor: explicit sets must be closed under addition and
  /// under multiplication by every ring element.
  Ideal(RingPtr ring, Rep rep) : ring_(std::move(ring)), rep_(std::move(rep)) { validate(); }

  /// Skips validation; the caller guarantees the representation invariants.
  static Ideal trusted(RingPtr ring, Rep rep) { return Ideal(std::move(ring), std::move(rep), 0); }

  const RingPtr& ring() const noexcept { return ring_; }
  const Rep& rep() const noexcept { return rep_; }

  const std::vector<std::uint32_t>& members() const { return std::get<Explicit>(rep_).members; }

  friend bool operator==(const Ideal& a, const Ideal& b) {
    return same_ring(*a.ring_, *b.ring_) && a.rep_ == b.rep_;
  }

  friend bool operator<(const Ideal& a, const Ideal& b) {
    if (a.rep_.index() != b.rep_.index()) return a.rep_.index() < b.rep_.index();
    if (auto x = std::get_if<Explicit>(&a.rep_)) {
      const auto& y = std::get<Explicit>(b.rep_);
      if (x->members.size() != y.members.size()) return x->members.size() < y.members.size();
      return x->members < y.members;
    }
    if (auto x = std::get_if<Local>(&a.rep_)) {
      // zero, then (p^k) by decreasing k, so ideals ascend by inclusion
      const auto& y = std::get<Local>(b.rep_);
      if (!x->power || !y.power) return !x->power && y.power.has_value();
      return *x->power > *y.power;
    }
    if (auto x = std::get_if<Componentwise>(&a.rep_)) {
      const auto& y = std::get<Componentwise>(b.rep_);
      return std::lexicographical_compare(x->components.begin(), x->components.end(), y.components.begin(),
                                          y.components.end());
    }
    const auto& x = std::get<Boolean>(a.rep_);
    const auto& y = std::get<Boolean>(b.rep_);
    if (x.finitely_supported != y.finitely_supported) return y.finitely_supported;
    return x.generator < y.generator;
  }

 private:
  Ideal(RingPtr ring, Rep rep, int) : ring_(std::move(ring)), rep_(std::move(rep)) {}

  void validate() const;

  RingPtr ring_;
  Rep rep_;
};

namespace detail {

enum class IdealShape { Explicit, Local, Componentwise, Boolean };

inline IdealShape shape_of(const Ring& r) {
  if (r.is_explicit()) return IdealShape::Explicit;
  switch (r.kind()) {
    case RingKind::LocalizedIntegers: return IdealShape::Local;
    case RingKind::Product: return IdealShape::Componentwise;
    case RingKind::EventuallyConstantBits: return IdealShape::Boolean;
    default:
      throw Error(ErrorCode::UnsupportedForPresentation,
                  r.describe() + " is too large for explicit ideal computations");
  }
}

inline std::vector<char> membership(const Ring& r, const std::vector<std::uint32_t>& members) {
  std::vector<char> in(r.size(), 0);
  for (auto m : members) in[m] = 1;
  return in;
}

inline std::vector<std::uint32_t> collect(const std::vector<char>& in) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 0; i < in.size(); ++i)
    if (in[i]) out.push_back(i);
  return out;
}

inline std::vector<std::uint32_t> explicit_principal(const Ring& r, std::uint32_t x) {
  std::vector<char> in(r.size(), 0);
  for (std::uint32_t t = 0; t < r.size(); ++t) in[r.mul_index(t, x)] = 1;
  return collect(in);
}

inline std::vector<std::uint32_t> explicit_sum(const Ring& r, const std::vector<std::uint32_t>& a,
                                               const std::vector<std::uint32_t>& b) {
  std::vector<char> in(r.size(), 0);
  for (auto x : a)
    for (auto y : b) in[r.add_index(x, y)] = 1;
  return collect(in);
}

inline Element boolean_join(const Ring& r, const Element& a, const Element& b) {
  return r.add(r.add(a, b), r.mul(a, b));
}

/// Cartesian product of per-factor element lists.
inline std::vector<Element> cartesian(const std::vector<std::vector<Element>>& lists) {
  std::vector<Element::Tuple> acc{Element::Tuple{}};
  for (const auto& list : lists) {
    std::vector<Element::Tuple> next;
    for (const auto& prefix : acc)
      for (const auto& e : list) {
        auto t = prefix;
        t.push_back(e);
        next.push_back(std::move(t));
      }
    acc = std::move(next);
  }
  std::vector<Element> out;
  out.reserve(acc.size());
  for (auto& t : acc) out.emplace_back(std::move(t));
  return out;
}

}  // namespace detail

inline void Ideal::validate() const {
  const Ring& r = *ring_;
  const auto shape = detail::shape_of(r);
  if (static_cast<std::size_t>(shape) != rep_.index())
    throw Error(ErrorCode::InvalidElement, "ideal representation does not match " + r.describe());
  if (auto e = std::get_if<Explicit>(&rep_)) {
    if (!std::is_sorted(e->members.begin(), e->members.end()) ||
        std::adjacent_find(e->members.begin(), e->members.end()) != e->members.end())
      throw Error(ErrorCode::InvalidElement, "explicit ideal members must be sorted and unique");
    if (e->members.empty() || e->members.back() >= r.size() || e->members.front() != 0)
      throw Error(ErrorCode::InvalidElement, "explicit ideal must contain 0 and only ring elements");
    const auto in = detail::membership(r, e->members);
    for (auto x : e->members) {
      for (auto y : e->members)
        if (!in[r.add_index(x, y)]) throw Error(ErrorCode::InvalidElement, "set is not closed under addition");
      for (std::uint32_t t = 0; t < r.size(); ++t)
        if (!in[r.mul_index(t, x)]) throw Error(ErrorCode::InvalidElement, "set is not closed under multiplication by R");
    }
  } else if (auto c = std::get_if<Componentwise>(&rep_)) {
    if (c->components.size() != r.factors().size())
      throw Error(ErrorCode::InvalidElement, "component count does not match " + r.describe());
    for (std::size_t i = 0; i < c->components.size(); ++i)
      if (!same_ring(*c->components[i].ring(), *r.factors()[i]))
        throw Error(ErrorCode::InvalidElement, "component ideal lives in the wrong ring");
  } else if (auto b = std::get_if<Boolean>(&rep_)) {
    if (!b->finitely_supported && (!r.is_member(b->generator) || !(r.mul(b->generator, b->generator) == b->generator)))
      throw Error(ErrorCode::InvalidElement, "Boolean ideal generator must be a ring element");
  }
}

// ---- construction ----------------------------------------------------------

inline Ideal zero_ideal(const RingPtr& ring) {
  switch (detail::shape_of(*ring)) {
    case detail::IdealShape::Explicit: return Ideal::trusted(ring, Ideal::Explicit{{0}});
    case detail::IdealShape::Local: return Ideal::trusted(ring, Ideal::Local{std::nullopt});
    case detail::IdealShape::Componentwise: {
      Ideal::Componentwise c;
      for (const auto& f : ring->factors()) c.components.push_back(zero_ideal(f));
      return Ideal::trusted(ring, std::move(c));
    }
    case detail::IdealShape::Boolean: return Ideal::trusted(ring, Ideal::Boolean{false, ring->zero()});
  }
  return Ideal::trusted(ring, Ideal::Local{});
}

inline Ideal unit_ideal(const RingPtr& ring) {
  switch (detail::shape_of(*ring)) {
    case detail::IdealShape::Explicit: {
      std::vector<std::uint32_t> all(ring->size());
      for (std::uint32_t i = 0; i < all.size(); ++i) all[i] = i;
      return Ideal::trusted(ring, Ideal::Explicit{std::move(all)});
    }
    case detail::IdealShape::Local: return Ideal::trusted(ring, Ideal::Local{0u});
    case detail::IdealShape::Componentwise: {
      Ideal::Componentwise c;
      for (const auto& f : ring->factors()) c.components.push_back(unit_ideal(f));
      return Ideal::trusted(ring, std::move(c));
    }
    case detail::IdealShape::Boolean: return Ideal::trusted(ring, Ideal::Boolean{false, ring->one()});
  }
  return Ideal::trusted(ring, Ideal::Local{});
}

/// The ideal of finitely supported sequences in EvBits. It is not finitely
/// generated.
inline Ideal finitely_supported_ideal(const RingPtr& ring) {
  if (ring->kind() != RingKind::EventuallyConstantBits)
    throw Error(ErrorCode::UnsupportedForPresentation, "finitely supported ideal needs EvBits");
  return Ideal::trusted(ring, Ideal::Boolean{true, ring->zero()});
}

/// Smallest ideal containing `gens`.
inline Ideal ideal_from_generators(const RingPtr& ring, std::span<const Element> gens) {
  for (const auto& g : gens)
    if (!ring->is_member(g)) throw Error(ErrorCode::InvalidElement, "generator is not an element of " + ring->describe());
  switch (detail::shape_of(*ring)) {
    case detail::IdealShape::Explicit: {
      std::vector<std::uint32_t> members{0};
      for (const auto& g : gens)
        members = detail::explicit_sum(*ring, members, detail::explicit_principal(*ring, ring->index_of(g)));
      return Ideal::trusted(ring, Ideal::Explicit{std::move(members)});
    }
    case detail::IdealShape::Local: {
      std::optional<std::uint32_t> power;
      for (const auto& g : gens) {
        if (g.fraction().num == 0) continue;
        const auto v = static_cast<std::uint32_t>(arith::valuation(g.fraction().num, ring->modulus()));
        power = power ? std::min(*power, v) : v;
      }
      return Ideal::trusted(ring, Ideal::Local{power});
    }
    case detail::IdealShape::Componentwise: {
      Ideal::Componentwise c;
      for (std::size_t i = 0; i < ring->factors().size(); ++i) {
        std::vector<Element> comps;
        for (const auto& g : gens) comps.push_back(g.components()[i]);
        c.components.push_back(ideal_from_generators(ring->factors()[i], comps));
      }
      return Ideal::trusted(ring, std::move(c));
    }
    case detail::IdealShape::Boolean: {
      Element join = ring->zero();
      for (const auto& g : gens) join = detail::boolean_join(*ring, join, g);
      return Ideal::trusted(ring, Ideal::Boolean{false, std::move(join)});
    }
  }
  return zero_ideal(ring);
}

inline Ideal principal_ideal(const RingPtr& ring, const Element& f) {
  return ideal_from_generators(ring, std::span<const Element>(&f, 1));
}

// ---- predicates -------------------------------------------------------------

inline bool contains(const Ideal& ideal, const Element& x) {
  const Ring& r = *ideal.ring();
  return std::visit(
      [&](const auto& rep) -> bool {
        using T = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<T, Ideal::Explicit>) {
          return std::binary_search(rep.members.begin(), rep.members.end(), r.index_of(x));
        } else if constexpr (std::is_same_v<T, Ideal::Local>) {
          if (x.fraction().num == 0) return true;
          return rep.power && static_cast<std::uint32_t>(arith::valuation(x.fraction().num, r.modulus())) >= *rep.power;
        } else if constexpr (std::is_same_v<T, Ideal::Componentwise>) {
          for (std::size_t i = 0; i < rep.components.size(); ++i)
            if (!contains(rep.components[i], x.components()[i])) return false;
          return true;
        } else {
          if (rep.finitely_supported) return !x.bits().tail;
          return r.mul(x, rep.generator) == x;
        }
      },
      ideal.rep());
}

inline bool is_subset(const Ideal& a, const Ideal& b) {
  if (!same_ring(*a.ring(), *b.ring())) throw Error(ErrorCode::InvalidElement, "ideals of different rings");
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b.rep());
        if constexpr (std::is_same_v<T, Ideal::Explicit>) {
          return std::includes(y.members.begin(), y.members.end(), x.members.begin(), x.members.end());
        } else if constexpr (std::is_same_v<T, Ideal::Local>) {
          if (!x.power) return true;
          return y.power && *x.power >= *y.power;
        } else if constexpr (std::is_same_v<T, Ideal::Componentwise>) {
          for (std::size_t i = 0; i < x.components.size(); ++i)
            if (!is_subset(x.components[i], y.components[i])) return false;
          return true;
        } else {
          if (!x.finitely_supported) return contains(b, x.generator);
          if (y.finitely_supported) return true;
          return y.generator == a.ring()->one();
        }
      },
      a.rep());
}

inline bool is_unit(const Ideal& ideal) { return contains(ideal, ideal.ring()->one()); }
inline bool is_zero(const Ideal& ideal) { return ideal == zero_ideal(ideal.ring()); }

inline bool is_idempotent(const Ring& ring, const Element& e) { return ring.mul(e, e) == e; }

// ---- lattice operations -----------------------------------------------------

inline Ideal intersect(const Ideal& a, const Ideal& b) {
  if (!same_ring(*a.ring(), *b.ring())) throw Error(ErrorCode::InvalidElement, "ideals of different rings");
  const RingPtr& ring = a.ring();
  return std::visit(
      [&](const auto& x) -> Ideal {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b.rep());
        if constexpr (std::is_same_v<T, Ideal::Explicit>) {
          std::vector<std::uint32_t> out;
          std::set_intersection(x.members.begin(), x.members.end(), y.members.begin(), y.members.end(),
                                std::back_inserter(out));
          return Ideal::trusted(ring, Ideal::Explicit{std::move(out)});
        } else if constexpr (std::is_same_v<T, Ideal::Local>) {
          if (!x.power || !y.power) return zero_ideal(ring);
          return Ideal::trusted(ring, Ideal::Local{std::max(*x.power, *y.power)});
        } else if constexpr (std::is_same_v<T, Ideal::Componentwise>) {
          Ideal::Componentwise c;
          for (std::size_t i = 0; i < x.components.size(); ++i)
            c.components.push_back(intersect(x.components[i], y.components[i]));
          return Ideal::trusted(ring, std::move(c));
        } else {
          if (!x.finitely_supported && !y.finitely_supported)
            return Ideal::trusted(ring, Ideal::Boolean{false, ring->mul(x.generator, y.generator)});
          if (x.finitely_supported && y.finitely_supported) return a;
          const Element& g = x.finitely_supported ? y.generator : x.generator;
          if (!g.bits().tail) return Ideal::trusted(ring, Ideal::Boolean{false, g});
          if (g == ring->one()) return x.finitely_supported ? a : b;
          throw Error(ErrorCode::UnsupportedForPresentation,
                      "intersection of the finitely supported ideal with a cofinite principal ideal");
        }
      },
      a.rep());
}

inline Ideal ideal_sum(const Ideal& a, const Ideal& b) {
  if (!same_ring(*a.ring(), *b.ring())) throw Error(ErrorCode::InvalidElement, "ideals of different rings");
  const RingPtr& ring = a.ring();
  return std::visit(
      [&](const auto& x) -> Ideal {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b.rep());
        if constexpr (std::is_same_v<T, Ideal::Explicit>) {
          return Ideal::trusted(ring, Ideal::Explicit{detail::explicit_sum(*ring, x.members, y.members)});
        } else if constexpr (std::is_same_v<T, Ideal::Local>) {
          if (!x.power) return b;
          if (!y.power) return a;
          return Ideal::trusted(ring, Ideal::Local{std::min(*x.power, *y.power)});
        } else if constexpr (std::is_same_v<T, Ideal::Componentwise>) {
          Ideal::Componentwise c;
          for (std::size_t i = 0; i < x.components.size(); ++i)
            c.components.push_back(ideal_sum(x.components[i], y.components[i]));
          return Ideal::trusted(ring, std::move(c));
        } else {
          if (!x.finitely_supported && !y.finitely_supported)
            return Ideal::trusted(ring, Ideal::Boolean{false, detail::boolean_join(*ring, x.generator, y.generator)});
          if (x.finitely_supported && y.finitely_supported) return a;
          const Element& g = x.finitely_supported ? y.generator : x.generator;
          // a cofinite g together with every finite support reaches 1
          return g.bits().tail ? unit_ideal(ring) : (x.finitely_supported ? a : b);
        }
      },
      a.rep());
}

/// Ann(f) = {x : x f = 0}.
inline Ideal annihilator(const RingPtr& ring, const Element& f) {
  if (!ring->is_member(f)) throw Error(ErrorCode::InvalidElement, "element is not in " + ring->describe());
  switch (detail::shape_of(*ring)) {
    case detail::IdealShape::Explicit: {
      const auto fi = ring->index_of(f);
      std::vector<std::uint32_t> out;
      for (std::uint32_t x = 0; x < ring->size(); ++x)
        if (ring->mul_index(x, fi) == 0) out.push_back(x);
      return Ideal::trusted(ring, Ideal::Explicit{std::move(out)});
    }
    case detail::IdealShape::Local: return f.fraction().num == 0 ? unit_ideal(ring) : zero_ideal(ring);
    case detail::IdealShape::Componentwise: {
      Ideal::Componentwise c;
      for (std::size_t i = 0; i < ring->factors().size(); ++i)
        c.components.push_back(annihilator(ring->factors()[i], f.components()[i]));
      return Ideal::trusted(ring, std::move(c));
    }
    case detail::IdealShape::Boolean:
      // x f = 0 iff x <= 1 - f
      return Ideal::trusted(ring, Ideal::Boolean{false, ring->sub(ring->one(), f)});
  }
  return zero_ideal(ring);
}

/// {x : x^k in I for some k >= 1}.
inline Ideal radical(const Ideal& ideal) {
  const RingPtr& ring = ideal.ring();
  return std::visit(
      [&](const auto& rep) -> Ideal {
        using T = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<T, Ideal::Explicit>) {
          const auto in = detail::membership(*ring, rep.members);
          std::vector<std::uint32_t> out;
          for (std::uint32_t x = 0; x < ring->size(); ++x) {
            // powers of x enter a cycle within |R| steps
            std::uint32_t power = x;
            for (std::uint32_t k = 1; k <= ring->size(); ++k) {
              if (in[power]) {
                out.push_back(x);
                break;
              }
              power = ring->mul_index(power, x);
            }
          }
          return Ideal::trusted(ring, Ideal::Explicit{std::move(out)});
        } else if constexpr (std::is_same_v<T, Ideal::Local>) {
          if (!rep.power || *rep.power == 0) return ideal;
          return Ideal::trusted(ring, Ideal::Local{1u});
        } else if constexpr (std::is_same_v<T, Ideal::Componentwise>) {
          Ideal::Componentwise c;
          for (const auto& comp : rep.components) c.components.push_back(radical(comp));
          return Ideal::trusted(ring, std::move(c));
        } else {
          return ideal;  // x^2 = x in a Boolean ring
        }
      },
      ideal.rep());
}

/// All e with e*e = e, sorted.
inline std::vector<Element> idempotents(const RingPtr& ring) {
  std::vector<Element> out;
  switch (detail::shape_of(*ring)) {
    case detail::IdealShape::Explicit:
      for (std::uint32_t x = 0; x < ring->size(); ++x)
        if (ring->mul_index(x, x) == x) out.push_back(ring->element_at(x));
      break;
    case detail::IdealShape::Local: out = {ring->zero(), ring->one()}; break;
    case detail::IdealShape::Componentwise: {
      std::vector<std::vector<Element>> lists;
      for (const auto& f : ring->factors()) lists.push_back(idempotents(f));
      out = detail::cartesian(lists);
      break;
    }
    case detail::IdealShape::Boolean:
      throw Error(ErrorCode::UnsupportedForPresentation, "every element of EvBits is idempotent");
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Kernel of R -> S^{-1}R with S = 1 + I: {r : s r = 0 for some s in 1 + I}.
inline Ideal saturation_kernel(const Ideal& ideal) {
  const RingPtr& ring = ideal.ring();
  return std::visit(
      [&](const auto& rep) -> Ideal {
        using T = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<T, Ideal::Explicit>) {
          const auto one = ring->one_index();
          std::vector<char> in(ring->size(), 0);
          for (auto i : rep.members) {
            const auto s = ring->add_index(one, i);
            for (std::uint32_t r = 0; r < ring->size(); ++r)
              if (ring->mul_index(s, r) == 0) in[r] = 1;
          }
          return Ideal::trusted(ring, Ideal::Explicit{detail::collect(in)});
        } else if constexpr (std::is_same_v<T, Ideal::Local>) {
          // 1 + (p^k) consists of units for k >= 1
          return rep.power && *rep.power == 0 ? ideal : zero_ideal(ring);
        } else if constexpr (std::is_same_v<T, Ideal::Componentwise>) {
          Ideal::Componentwise c;
          for (const auto& comp : rep.components) c.components.push_back(saturation_kernel(comp));
          return Ideal::trusted(ring, std::move(c));
        } else {
          throw Error(ErrorCode::UnsupportedForPresentation, "saturation kernel over EvBits");
        }
      },
      ideal.rep());
}

inline RingPtr product_ring(std::vector<RingPtr> factors) {
  for (const auto& f : factors)
    if (!f->is_finite() && f->kind() != RingKind::LocalizedIntegers && f->kind() != RingKind::Product)
      throw Error(ErrorCode::UnsupportedForPresentation, f->describe() + " cannot be a product factor");
  return Ring::product(std::move(factors));
}

// ---- enumeration -------------------------------------------------------------

/// Every ideal of an explicit finite ring, or a finite sample of the lattice
/// otherwise. For Zloc(p) the sample is (0), (1), (p), (p^2), (p^3): every
/// (p^k) with k >= 1 has the same radical, annihilators, vanishing locus and
/// flatness behaviour, so the sample decides every lattice-wide property.
inline std::vector<Ideal> ideal_lattice(const RingPtr& ring) {
  std::vector<Ideal> out;
  switch (detail::shape_of(*ring)) {
    case detail::IdealShape::Explicit: {
      std::set<std::vector<std::uint32_t>> seen{{0}};
      std::deque<std::vector<std::uint32_t>> queue{{0}};
      while (!queue.empty()) {
        auto current = std::move(queue.front());
        queue.pop_front();
        const auto in = detail::membership(*ring, current);
        for (std::uint32_t x = 0; x < ring->size(); ++x) {
          if (in[x]) continue;
          auto next = detail::explicit_sum(*ring, current, detail::explicit_principal(*ring, x));
          if (seen.insert(next).second) queue.push_back(std::move(next));
        }
      }
      for (const auto& m : seen) out.push_back(Ideal::trusted(ring, Ideal::Explicit{m}));
      break;
    }
    case detail::IdealShape::Local:
      out.push_back(zero_ideal(ring));
      for (std::uint32_t k = 0; k <= 3; ++k) out.push_back(Ideal::trusted(ring, Ideal::Local{k}));
      break;
    case detail::IdealShape::Componentwise: {
      std::vector<std::vector<Ideal>> acc{{}};
      for (const auto& f : ring->factors()) {
        std::vector<std::vector<Ideal>> next;
        const auto lattice = ideal_lattice(f);
        for (const auto& prefix : acc)
          for (const auto& i : lattice) {
            auto t = prefix;
            t.push_back(i);
            next.push_back(std::move(t));
          }
        acc = std::move(next);
      }
      for (auto& comps : acc) out.push_back(Ideal::trusted(ring, Ideal::Componentwise{std::move(comps)}));
      break;
    }
    case detail::IdealShape::Boolean:
      throw Error(ErrorCode::UnsupportedForPresentation, "the ideal lattice of EvBits is not enumerable");
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// A finite set of elements realizing every principal ideal (up to the
/// equivalences used by ideal_lattice). For explicit rings: all elements.
inline std::vector<Element> representative_elements(const RingPtr& ring) {
  switch (detail::shape_of(*ring)) {
    case detail::IdealShape::Explicit: {
      std::vector<Element> out;
      for (std::uint32_t i = 0; i < ring->size(); ++i) out.push_back(ring->element_at(i));
      return out;
    }
    case detail::IdealShape::Local: return {ring->zero(), ring->one(), ring->from_integer(ring->modulus())};
    case detail::IdealShape::Componentwise: {
      std::vector<std::vector<Element>> lists;
      for (const auto& f : ring->factors()) lists.push_back(representative_elements(f));
      return detail::cartesian(lists);
    }
    case detail::IdealShape::Boolean:
      throw Error(ErrorCode::UnsupportedForPresentation, "EvBits has no finite set of representatives");
  }
  return {};
}

/// Explicit enumeration of the members of a finite ideal.
inline std::vector<Element> ideal_members(const Ideal& ideal) {
  const RingPtr& ring = ideal.ring();
  return std::visit(
      [&](const auto& rep) -> std::vector<Element> {
        using T = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<T, Ideal::Explicit>) {
          std::vector<Element> out;
          for (auto m : rep.members) out.push_back(ring->element_at(m));
          return out;
        } else if constexpr (std::is_same_v<T, Ideal::Local>) {
          if (!rep.power) return {ring->zero()};
          throw Error(ErrorCode::UnsupportedForPresentation, "nonzero ideals of Zloc are infinite");
        } else if constexpr (std::is_same_v<T, Ideal::Componentwise>) {
          std::vector<std::vector<Element>> lists;
          for (const auto& c : rep.components) lists.push_back(ideal_members(c));
          return detail::cartesian(lists);
        } else {
          if (rep.finitely_supported || rep.generator.bits().tail)
            throw Error(ErrorCode::UnsupportedForPresentation, "ideal of EvBits with infinitely many members");
          const auto& support = rep.generator.bits().exceptions;
          if (support.size() > 16)
            throw Error(ErrorCode::UnsupportedForPresentation, "support too large to enumerate");
          std::vector<Element> out;
          for (std::uint32_t mask = 0; mask < (1u << support.size()); ++mask) {
            std::vector<std::uint32_t> bits;
            for (std::size_t i = 0; i < support.size(); ++i)
              if (mask & (1u << i)) bits.push_back(support[i]);
            out.push_back(ring->bits(std::move(bits), false));
          }
          std::sort(out.begin(), out.end());
          return out;
        }
      },
      ideal.rep());
}

/// A small generating set: a single generator when one exists, otherwise a
/// greedy one in element order.
inline std::vector<Element> ideal_generators(const Ideal& ideal) {
  const RingPtr& ring = ideal.ring();
  return std::visit(
      [&](const auto& rep) -> std::vector<Element> {
        using T = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<T, Ideal::Explicit>) {
          if (rep.members.size() == 1) return {ring->zero()};
          for (auto m : rep.members)
            if (detail::explicit_principal(*ring, m) == rep.members) return {ring->element_at(m)};
          std::vector<Element> gens;
          std::vector<std::uint32_t> generated{0};
          for (auto m : rep.members) {
            if (std::binary_search(generated.begin(), generated.end(), m)) continue;
            gens.push_back(ring->element_at(m));
            generated = detail::explicit_sum(*ring, generated, detail::explicit_principal(*ring, m));
          }
          return gens;
        } else if constexpr (std::is_same_v<T, Ideal::Local>) {
          if (!rep.power) return {ring->zero()};
          return {ring->from_integer(arith::ipow(ring->modulus(), static_cast<int>(*rep.power)))};
        } else if constexpr (std::is_same_v<T, Ideal::Componentwise>) {
          std::vector<Element> gens;
          for (std::size_t i = 0; i < rep.components.size(); ++i) {
            if (is_zero(rep.components[i])) continue;
            for (const auto& g : ideal_generators(rep.components[i])) {
              Element::Tuple t;
              for (std::size_t j = 0; j < rep.components.size(); ++j) t.push_back(j == i ? g : ring->factors()[j]->zero());
              gens.emplace_back(std::move(t));
            }
          }
          if (gens.empty()) gens.push_back(ring->zero());
          return gens;
        } else {
          if (rep.finitely_supported)
            throw Error(ErrorCode::UnsupportedForPresentation, "the finitely supported ideal is not finitely generated");
          return {rep.generator};
        }
      },
      ideal.rep());
}

/// Image of an ideal of a product ring in one factor.
inline Ideal project(const Ideal& ideal, std::size_t factor) {
  const RingPtr& ring = ideal.ring();
  if (ring->kind() != RingKind::Product) throw Error(ErrorCode::InvalidElement, "projection needs a product ring");
  if (auto c = std::get_if<Ideal::Componentwise>(&ideal.rep())) return c->components.at(factor);
  const RingPtr& target = ring->factors()[factor];
  std::vector<char> in(target->size(), 0);
  for (auto m : ideal.members()) in[ring->component_index(m, factor)] = 1;
  return Ideal::trusted(target, Ideal::Explicit{detail::collect(in)});
}

/// Cardinality of an ideal of an explicit finite ring.
inline std::size_t ideal_size(const Ideal& ideal) { return ideal.members().size(); }

/// Human-readable canonical name, e.g. "(2)", "(0) x (1)", "(2^2)", "Fin".
inline std::string ideal_name(const Ideal& ideal) {
  const RingPtr& ring = ideal.ring();
  if (ring->kind() == RingKind::Product) {
    std::string s;
    for (std::size_t i = 0; i < ring->factors().size(); ++i) {
      if (i > 0) s += " x ";
      s += ideal_name(project(ideal, i));
    }
    return s;
  }
  if (auto l = std::get_if<Ideal::Local>(&ideal.rep())) {
    if (!l->power) return "(0)";
    if (*l->power == 0) return "(1)";
    const auto p = std::to_string(ring->modulus());
    return *l->power == 1 ? "(" + p + ")" : "(" + p + "^" + std::to_string(*l->power) + ")";
  }
  if (auto b = std::get_if<Ideal::Boolean>(&ideal.rep()); b && b->finitely_supported) return "Fin";
  if (is_unit(ideal)) return "(1)";
  std::string s = "(";
  const auto gens = ideal_generators(ideal);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (i > 0) s += ", ";
    s += ring->format(gens[i]);
  }
  return s + ")";
}

/// Nilradical is zero.
inline bool is_reduced(const RingPtr& ring) {
  if (ring->kind() == RingKind::EventuallyConstantBits) return true;
  const auto zero = zero_ideal(ring);
  return radical(zero) == zero;
}

}  // namespace flatspec
