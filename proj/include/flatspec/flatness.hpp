#pragma once

// Flatness and projectivity of cyclic modules R/I.
//
// R/I is flat iff Ann(f) + I = R for every f in I; a witness for f is a pair
// (a, b) with a f = 0, b in I and a + b = 1. R/I is projective iff I = Re for
// an idempotent e.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "flatspec/spectrum.hpp"

namespace flatspec {

struct FlatnessWitness {
  Element f;
  Element a;  // in Ann(f)
  Element b;  // in I

  bool operator==(const FlatnessWitness&) const = default;
};

struct FlatnessCertificate {
  bool verdict = false;
  std::vector<FlatnessWitness> witnesses;
  /// When the verdict is false: an f in I with Ann(f) + I proper.
  std::optional<Element> failing;
  /// Non-empty when flatness was established by a uniform argument instead
  /// of element-by-element search.
  std::string schema;

  bool operator==(const FlatnessCertificate&) const = default;
};

/// (a, b) with a in Ann(f), b in I, a + b = 1, if one exists. `f` must lie in I.
inline std::optional<FlatnessWitness> flatness_witness(const Ideal& ideal, const Element& f) {
  const RingPtr& ring = ideal.ring();
  return std::visit(
      [&](const auto& rep) -> std::optional<FlatnessWitness> {
        using T = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<T, Ideal::Explicit>) {
          const auto fi = ring->index_of(f);
          const auto one = ring->one_index();
          const auto in = detail::membership(*ring, rep.members);
          for (std::uint32_t a = 0; a < ring->size(); ++a) {
            if (ring->mul_index(a, fi) != 0) continue;
            const auto b = ring->add_index(one, ring->neg_index(a));
            if (in[b]) return FlatnessWitness{f, ring->element_at(a), ring->element_at(b)};
          }
          return std::nullopt;
        } else if constexpr (std::is_same_v<T, Ideal::Local>) {
          if (f.fraction().num == 0) return FlatnessWitness{f, ring->one(), ring->zero()};
          // f != 0 has Ann(f) = 0, so b = 1 must lie in I
          if (rep.power && *rep.power == 0) return FlatnessWitness{f, ring->zero(), ring->one()};
          return std::nullopt;
        } else if constexpr (std::is_same_v<T, Ideal::Componentwise>) {
          Element::Tuple a, b;
          for (std::size_t i = 0; i < rep.components.size(); ++i) {
            auto w = flatness_witness(rep.components[i], f.components()[i]);
            if (!w) return std::nullopt;
            a.push_back(w->a);
            b.push_back(w->b);
          }
          return FlatnessWitness{f, Element{std::move(a)}, Element{std::move(b)}};
        } else {
          // Boolean ring: (1 - f) f = f - f^2 = 0
          return FlatnessWitness{f, ring->sub(ring->one(), f), f};
        }
      },
      ideal.rep());
}

/// Elements whose witnesses decide flatness: every member for explicit
/// ideals, a generating set otherwise (witnesses for generators extend to
/// the whole ideal).
inline std::vector<Element> flatness_test_elements(const Ideal& ideal) {
  if (std::holds_alternative<Ideal::Explicit>(ideal.rep())) return ideal_members(ideal);
  if (auto b = std::get_if<Ideal::Boolean>(&ideal.rep()); b && b->finitely_supported) {
    const RingPtr& ring = ideal.ring();
    return {ring->zero(), ring->bits({1}, false), ring->bits({1, 2}, false), ring->bits({1, 2, 3}, false),
            ring->bits({2, 5, 7}, false)};
  }
  return ideal_generators(ideal);
}

inline FlatnessCertificate is_cyclic_flat(const Ideal& ideal) {
  FlatnessCertificate cert;
  if (ideal.ring()->kind() == RingKind::EventuallyConstantBits)
    cert.schema = "Boolean ring: for every f in I, a = 1 - f annihilates f and b = f, so a + b = 1";
  for (const auto& f : flatness_test_elements(ideal)) {
    auto w = flatness_witness(ideal, f);
    if (!w) {
      cert.verdict = false;
      cert.failing = f;
      cert.witnesses.clear();
      return cert;
    }
    cert.witnesses.push_back(std::move(*w));
  }
  cert.verdict = true;
  return cert;
}

/// Re-checks a certificate without reusing the search that produced it. On
/// explicit rings a negative verdict is confirmed over all pairs (a, b).
inline bool verify_certificate(const Ideal& ideal, const FlatnessCertificate& cert) {
  const RingPtr& ring = ideal.ring();
  if (cert.verdict) {
    if (cert.failing) return false;
    for (const auto& w : cert.witnesses) {
      if (!contains(ideal, w.f) || !contains(ideal, w.b)) return false;
      if (!(ring->mul(w.a, w.f) == ring->zero())) return false;
      if (!(ring->add(w.a, w.b) == ring->one())) return false;
    }
    if (std::holds_alternative<Ideal::Explicit>(ideal.rep()) && cert.witnesses.size() != ideal.members().size())
      return false;
    return true;
  }
  if (!cert.failing || !contains(ideal, *cert.failing)) return false;
  if (!ring->is_explicit()) return !flatness_witness(ideal, *cert.failing).has_value();
  const auto f = ring->index_of(*cert.failing);
  for (std::uint32_t a = 0; a < ring->size(); ++a)
    for (auto b : ideal.members())
      if (ring->mul_index(a, f) == 0 && ring->add_index(a, b) == ring->one_index()) return false;
  return true;
}

/// g in I with f_i g = f_i for all i, folded pairwise as g := h + h' - h h'.
inline Element common_multiplier(const Ideal& ideal, std::span<const Element> fs) {
  const RingPtr& ring = ideal.ring();
  if (!is_cyclic_flat(ideal).verdict)
    throw Error(ErrorCode::NotFlat, "R/" + ideal_name(ideal) + " is not flat over " + ring->describe());
  std::optional<Element> g;
  for (const auto& f : fs) {
    if (!contains(ideal, f)) throw Error(ErrorCode::InvalidElement, ring->format(f) + " is not in the ideal");
    // f = f (a + b) = f b
    const Element h = flatness_witness(ideal, f)->b;
    g = g ? ring->sub(ring->add(*g, h), ring->mul(*g, h)) : h;
  }
  return g ? *g : ring->zero();
}

/// An idempotent e with I = Re, if any.
inline std::optional<Element> idempotent_generator(const Ideal& ideal) {
  const RingPtr& ring = ideal.ring();
  return std::visit(
      [&](const auto& rep) -> std::optional<Element> {
        using T = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<T, Ideal::Explicit>) {
          for (auto m : rep.members)
            if (ring->mul_index(m, m) == m && detail::explicit_principal(*ring, m) == rep.members)
              return ring->element_at(m);
          return std::nullopt;
        } else if constexpr (std::is_same_v<T, Ideal::Local>) {
          if (!rep.power) return ring->zero();
          if (*rep.power == 0) return ring->one();
          return std::nullopt;
        } else if constexpr (std::is_same_v<T, Ideal::Componentwise>) {
          Element::Tuple e;
          for (const auto& c : rep.components) {
            auto g = idempotent_generator(c);
            if (!g) return std::nullopt;
            e.push_back(std::move(*g));
          }
          return Element{std::move(e)};
        } else {
          if (rep.finitely_supported) return std::nullopt;
          return rep.generator;
        }
      },
      ideal.rep());
}

struct ProjectivityVerdict {
  bool projective = false;
  std::optional<Element> generator;
  std::string reason;
};

inline ProjectivityVerdict is_cyclic_projective(const Ideal& ideal) {
  if (auto b = std::get_if<Ideal::Boolean>(&ideal.rep()); b && b->finitely_supported)
    return {false, std::nullopt,
            "no single generator: I is a strictly increasing union (any g in I has bounded support, so Rg is a "
            "proper subset of I)"};
  if (auto e = idempotent_generator(ideal))
    return {true, e, "I = Re with e = " + ideal.ring()->format(*e) + " idempotent"};
  return {false, std::nullopt, "no idempotent generates I"};
}

/// For E Zariski closed and stable under generalization, the ideal
/// J = ker(R -> (1 + I)^{-1} R) where E = V(I); then V(J) = E and R/J is flat.
inline Ideal closed_genstable_to_flat_ideal(const SpectrumPoset& spec, PointSet e) {
  if (!e.subset_of(spec.full())) throw Error(ErrorCode::InvalidElement, "set is not inside the spectrum");
  if (!is_stable_generalization(spec, e))
    throw Error(ErrorCode::NotGenStable, "set is not stable under generalization");
  const Ideal i = intersection_of_points(spec, e);
  if (vanishing_locus(spec, i) != e) throw Error(ErrorCode::NotZariskiClosed, "set is not Zariski closed");
  Ideal j = saturation_kernel(i);
  if (vanishing_locus(spec, j) != e || !is_cyclic_flat(j).verdict)
    throw std::logic_error("saturation kernel failed its postcondition on " + spec.ring()->describe());
  return j;
}

/// Supp(I) = {p : I_p != 0} = {p : Ann(f) inside p for some f in I}.
inline PointSet support_of_ideal(const SpectrumPoset& spec, const Ideal& ideal) {
  PointSet s;
  for (const auto& f : flatness_test_elements(ideal)) {
    const Ideal ann = annihilator(ideal.ring(), f);
    for (std::size_t i = 0; i < spec.size(); ++i)
      if (is_subset(ann, spec[i].ideal)) s.insert(i);
  }
  return s;
}

}  // namespace flatspec
