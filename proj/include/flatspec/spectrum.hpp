#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "flatspec/ideal.hpp"

namespace flatspec {

inline constexpr std::size_t kMaxSpectrumPoints = 64;
/// Closed families are power-set scale; materialization stops here.
inline constexpr std::size_t kMaxFamilyPoints = 16;

/// A subset of an enumerated spectrum, as a bit mask over point indices.
struct PointSet {
  std::uint64_t bits = 0;

  static PointSet all(std::size_t n) { return {n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1}; }
  static PointSet single(std::size_t i) { return {std::uint64_t{1} << i}; }

  bool contains(std::size_t i) const { return (bits >> i) & 1u; }
  void insert(std::size_t i) { bits |= std::uint64_t{1} << i; }
  bool empty() const { return bits == 0; }
  std::size_t count() const { return static_cast<std::size_t>(std::popcount(bits)); }
  bool subset_of(PointSet other) const { return (bits & ~other.bits) == 0; }

  friend PointSet operator|(PointSet a, PointSet b) { return {a.bits | b.bits}; }
  friend PointSet operator&(PointSet a, PointSet b) { return {a.bits & b.bits}; }
  friend bool operator==(PointSet, PointSet) = default;
  friend auto operator<=>(PointSet, PointSet) = default;
};

struct PrimePoint {
  Ideal ideal;
  bool is_minimal = false;
  bool is_maximal = false;
};

/// Prime ideals of a ring with the containment order p <= q iff p is a subset of q.
class SpectrumPoset {
 public:
  SpectrumPoset(RingPtr ring, std::vector<Ideal> primes) : ring_(std::move(ring)) {
    if (primes.size() > kMaxSpectrumPoints)
      throw Error(ErrorCode::SpectrumTooLarge, ring_->describe() + " has more than " +
                                                   std::to_string(kMaxSpectrumPoints) + " primes");
    const std::size_t n = primes.size();
    below_.assign(n, PointSet{});
    above_.assign(n, PointSet{});
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (is_subset(primes[j], primes[i])) {
          below_[i].insert(j);
          above_[j].insert(i);
        }
    for (std::size_t i = 0; i < n; ++i)
      points_.push_back(PrimePoint{std::move(primes[i]), below_[i] == PointSet::single(i), above_[i] == PointSet::single(i)});
  }

  const RingPtr& ring() const noexcept { return ring_; }
  const std::vector<PrimePoint>& points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  const PrimePoint& operator[](std::size_t i) const { return points_.at(i); }

  PointSet full() const { return PointSet::all(size()); }
  PointSet complement(PointSet s) const { return {full().bits & ~s.bits}; }

  bool leq(std::size_t i, std::size_t j) const { return below_[j].contains(i); }
  /// Points contained in point i (including i).
  PointSet generalizations(std::size_t i) const { return below_[i]; }
  /// Points containing point i (including i).
  PointSet specializations(std::size_t i) const { return above_[i]; }

  PointSet minimal_points() const {
    PointSet s;
    for (std::size_t i = 0; i < size(); ++i)
      if (points_[i].is_minimal) s.insert(i);
    return s;
  }
  PointSet maximal_points() const {
    PointSet s;
    for (std::size_t i = 0; i < size(); ++i)
      if (points_[i].is_maximal) s.insert(i);
    return s;
  }

  std::optional<std::size_t> index_of(const Ideal& ideal) const {
    for (std::size_t i = 0; i < size(); ++i)
      if (points_[i].ideal == ideal) return i;
    return std::nullopt;
  }

  std::string name(std::size_t i) const { return ideal_name(points_[i].ideal); }

  /// Covering pairs (i, j): p_i strictly inside p_j with no prime in between.
  std::vector<std::pair<std::size_t, std::size_t>> hasse_edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = 0; j < size(); ++j) {
        if (i == j || !leq(i, j)) continue;
        bool covered = true;
        for (std::size_t k = 0; k < size() && covered; ++k)
          if (k != i && k != j && leq(i, k) && leq(k, j)) covered = false;
        if (covered) edges.emplace_back(i, j);
      }
    return edges;
  }

  /// All strict containments (i, j).
  std::vector<std::pair<std::size_t, std::size_t>> strict_order() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = 0; j < size(); ++j)
        if (i != j && leq(i, j)) out.emplace_back(i, j);
    return out;
  }

 private:
  RingPtr ring_;
  std::vector<PrimePoint> points_;
  std::vector<PointSet> below_;
  std::vector<PointSet> above_;
};

// ---- primes -------------------------------------------------------------------

inline bool is_prime_ideal(const Ideal& ideal) {
  const RingPtr& ring = ideal.ring();
  return std::visit(
      [&](const auto& rep) -> bool {
        using T = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<T, Ideal::Explicit>) {
          if (rep.members.size() == ring->size()) return false;
          const auto in = detail::membership(*ring, rep.members);
          for (std::uint32_t a = 0; a < ring->size(); ++a) {
            if (in[a]) continue;
            for (std::uint32_t b = a; b < ring->size(); ++b)
              if (!in[b] && in[ring->mul_index(a, b)]) return false;
          }
          return true;
        } else if constexpr (std::is_same_v<T, Ideal::Local>) {
          return !rep.power || *rep.power == 1;
        } else if constexpr (std::is_same_v<T, Ideal::Componentwise>) {
          std::size_t primes = 0;
          for (const auto& c : rep.components) {
            if (is_unit(c)) continue;
            if (!is_prime_ideal(c)) return false;
            ++primes;
          }
          return primes == 1;
        } else {
          // R/Fin is Z/2; (e) is prime iff e vanishes at exactly one position
          if (rep.finitely_supported) return true;
          return rep.generator.bits().tail && rep.generator.bits().exceptions.size() == 1;
        }
      },
      ideal.rep());
}

namespace detail {

/// Ideal of a product equal to `prime` in one factor and the whole factor elsewhere.
inline Ideal embed_factor_ideal(const RingPtr& ring, std::size_t factor, const Ideal& prime) {
  if (ring->is_explicit()) {
    std::vector<std::uint32_t> members;
    const auto& in = prime.members();
    for (std::uint32_t idx = 0; idx < ring->size(); ++idx)
      if (std::binary_search(in.begin(), in.end(), ring->component_index(idx, factor))) members.push_back(idx);
    return Ideal::trusted(ring, Ideal::Explicit{std::move(members)});
  }
  Ideal::Componentwise c;
  for (std::size_t i = 0; i < ring->factors().size(); ++i)
    c.components.push_back(i == factor ? prime : unit_ideal(ring->factors()[i]));
  return Ideal::trusted(ring, std::move(c));
}

inline std::vector<Ideal> prime_ideals(const RingPtr& ring) {
  switch (ring->kind()) {
    case RingKind::ModularInt:
    case RingKind::GaloisField:
    case RingKind::PolyQuotient: {
      std::vector<Ideal> primes;
      for (auto& i : ideal_lattice(ring))
        if (is_prime_ideal(i)) primes.push_back(std::move(i));
      std::sort(primes.begin(), primes.end(),
                [](const Ideal& a, const Ideal& b) { return a.members() < b.members(); });
      return primes;
    }
    case RingKind::LocalizedIntegers:
      return {zero_ideal(ring), Ideal::trusted(ring, Ideal::Local{1u})};
    case RingKind::Product: {
      std::vector<Ideal> primes;
      for (std::size_t i = 0; i < ring->factors().size(); ++i)
        for (const auto& p : prime_ideals(ring->factors()[i])) primes.push_back(embed_factor_ideal(ring, i, p));
      return primes;
    }
    case RingKind::EventuallyConstantBits:
      throw Error(ErrorCode::UnsupportedForPresentation, "the spectrum of EvBits is not enumerable");
  }
  return {};
}

}  // namespace detail

/// Prime spectrum. Products are assembled factor by factor.
inline SpectrumPoset enumerate_spectrum(const RingPtr& ring) { return SpectrumPoset(ring, detail::prime_ideals(ring)); }

/// Primes of an explicit finite ring found by testing every ideal; the
/// independent route used to validate structural product spectra.
inline SpectrumPoset enumerate_spectrum_bruteforce(const RingPtr& ring) {
  std::vector<Ideal> primes;
  for (auto& i : ideal_lattice(ring))
    if (is_prime_ideal(i)) primes.push_back(std::move(i));
  return SpectrumPoset(ring, std::move(primes));
}

// ---- loci and closure operators ----------------------------------------------------

/// V(I) = {p : I is a subset of p}.
inline PointSet vanishing_locus(const SpectrumPoset& spec, const Ideal& ideal) {
  PointSet s;
  for (std::size_t i = 0; i < spec.size(); ++i)
    if (is_subset(ideal, spec[i].ideal)) s.insert(i);
  return s;
}

/// V(f) = V((f)).
inline PointSet vanishing_locus(const SpectrumPoset& spec, const Element& f) {
  PointSet s;
  for (std::size_t i = 0; i < spec.size(); ++i)
    if (contains(spec[i].ideal, f)) s.insert(i);
  return s;
}

/// D(f), the complement of V(f).
inline PointSet nonvanishing_locus(const SpectrumPoset& spec, const Element& f) {
  return spec.complement(vanishing_locus(spec, f));
}

/// Flat closure of a point: all primes contained in it.
inline PointSet flat_point_closure(const SpectrumPoset& spec, std::size_t i) { return spec.generalizations(i); }

inline bool is_stable_generalization(const SpectrumPoset& spec, PointSet e) {
  for (std::size_t i = 0; i < spec.size(); ++i)
    if (e.contains(i) && !spec.generalizations(i).subset_of(e)) return false;
  return true;
}

inline bool is_stable_specialization(const SpectrumPoset& spec, PointSet e) {
  for (std::size_t i = 0; i < spec.size(); ++i)
    if (e.contains(i) && !spec.specializations(i).subset_of(e)) return false;
  return true;
}

/// Union of the flat closures of the points of E.
inline PointSet f_operator(const SpectrumPoset& spec, PointSet e) {
  PointSet out;
  for (std::size_t i = 0; i < spec.size(); ++i)
    if (e.contains(i)) out = out | spec.generalizations(i);
  return out;
}

/// Union of V(p) over the points p of E.
inline PointSet z_operator(const SpectrumPoset& spec, PointSet e) {
  PointSet out;
  for (std::size_t i = 0; i < spec.size(); ++i)
    if (e.contains(i)) out = out | spec.specializations(i);
  return out;
}

/// Intersection of the primes in E; the unit ideal for E empty.
inline Ideal intersection_of_points(const SpectrumPoset& spec, PointSet e) {
  Ideal acc = unit_ideal(spec.ring());
  for (std::size_t i = 0; i < spec.size(); ++i)
    if (e.contains(i)) acc = intersect(acc, spec[i].ideal);
  return acc;
}

/// E equals its Zariski closure V(intersection of E).
inline bool is_zariski_closed(const SpectrumPoset& spec, PointSet e) {
  return vanishing_locus(spec, intersection_of_points(spec, e)) == e;
}

// ---- topologies ------------------------------------------------------------------

enum class Topology { Zariski, Flat, Patch };

inline const char* topology_name(Topology t) {
  switch (t) {
    case Topology::Zariski: return "zariski";
    case Topology::Flat: return "flat";
    case Topology::Patch: return "patch";
  }
  return "";
}

struct ClosedFamily {
  Topology topology = Topology::Zariski;
  PointSet full;
  std::vector<PointSet> sets;  // sorted

  bool contains(PointSet s) const { return std::binary_search(sets.begin(), sets.end(), s); }
  bool is_open(PointSet s) const { return contains(PointSet{full.bits & ~s.bits}); }
};

/// Sub-basic opens: D(f) for Zariski, V(f) for flat, D(f) and V(g) intersected for patch.
inline std::vector<PointSet> sub_basis_opens(const SpectrumPoset& spec, Topology topology) {
  std::set<PointSet> vanishing;
  for (const auto& f : representative_elements(spec.ring())) vanishing.insert(vanishing_locus(spec, f));
  std::set<PointSet> opens;
  switch (topology) {
    case Topology::Zariski:
      for (auto v : vanishing) opens.insert(spec.complement(v));
      break;
    case Topology::Flat: opens = vanishing; break;
    case Topology::Patch:
      for (auto v : vanishing)
        for (auto w : vanishing) opens.insert(spec.complement(v) & w);
      break;
  }
  return {opens.begin(), opens.end()};
}

namespace detail {

inline void require_family_size(const SpectrumPoset& spec) {
  if (spec.size() > kMaxFamilyPoints)
    throw Error(ErrorCode::SpectrumTooLarge, "closed families need at most " + std::to_string(kMaxFamilyPoints) +
                                                 " points, spectrum has " + std::to_string(spec.size()));
}

inline ClosedFamily closed_from_opens(const SpectrumPoset& spec, Topology topology, const std::set<PointSet>& opens) {
  ClosedFamily family{topology, spec.full(), {}};
  for (auto o : opens) family.sets.push_back(spec.complement(o));
  std::sort(family.sets.begin(), family.sets.end());
  return family;
}

/// Opens generated by a sub-basis, via the minimal open neighbourhood of
/// each point (the intersection of the sub-basic opens containing it).
inline ClosedFamily family_from_neighbourhoods(const SpectrumPoset& spec, Topology topology,
                                               const std::vector<PointSet>& sub_basis) {
  require_family_size(spec);
  const std::size_t n = spec.size();
  std::vector<PointSet> neighbourhood(n, spec.full());
  for (auto s : sub_basis)
    for (std::size_t x = 0; x < n; ++x)
      if (s.contains(x)) neighbourhood[x] = neighbourhood[x] & s;
  std::set<PointSet> opens;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    const PointSet o{mask};
    bool open = true;
    for (std::size_t x = 0; x < n && open; ++x)
      if (o.contains(x) && !neighbourhood[x].subset_of(o)) open = false;
    if (open) opens.insert(o);
  }
  return closed_from_opens(spec, topology, opens);
}

/// Opens generated by a sub-basis by literal closure: finite intersections
/// give a basis, arbitrary unions of basis sets give the opens.
inline ClosedFamily family_from_union_closure(const SpectrumPoset& spec, Topology topology,
                                              const std::vector<PointSet>& sub_basis) {
  require_family_size(spec);
  std::set<PointSet> basis(sub_basis.begin(), sub_basis.end());
  basis.insert(spec.full());
  for (bool grew = true; grew;) {
    grew = false;
    const std::vector<PointSet> snapshot(basis.begin(), basis.end());
    for (auto a : snapshot)
      for (auto b : snapshot)
        if (basis.insert(a & b).second) grew = true;
  }
  std::set<PointSet> opens{PointSet{}};
  for (auto b : basis) {
    const std::vector<PointSet> snapshot(opens.begin(), opens.end());
    for (auto o : snapshot) opens.insert(o | b);
  }
  return closed_from_opens(spec, topology, opens);
}

}  // namespace detail

/// Closed sets of the named topology, generated from its sub-basis.
inline ClosedFamily closed_family(const SpectrumPoset& spec, Topology topology) {
  return detail::family_from_neighbourhoods(spec, topology, sub_basis_opens(spec, topology));
}

/// Same family computed by explicit intersection/union closure.
inline ClosedFamily closed_family_by_union_closure(const SpectrumPoset& spec, Topology topology) {
  return detail::family_from_union_closure(spec, topology, sub_basis_opens(spec, topology));
}

/// Flat closed sets generated from the basis V(I), I finitely generated
/// (every ideal in the sampled lattice).
inline ClosedFamily flat_family_from_ideal_basis(const SpectrumPoset& spec) {
  std::set<PointSet> basis;
  for (const auto& ideal : ideal_lattice(spec.ring())) basis.insert(vanishing_locus(spec, ideal));
  return detail::family_from_union_closure(spec, Topology::Flat, {basis.begin(), basis.end()});
}

}  // namespace flatspec
