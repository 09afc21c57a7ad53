#pragma once

// Executable checks for every statement about flat cyclic quotients, the
// three spectral topologies and S-rings, run exhaustively over small rings.
// Verifiers are pure and perform no I/O; the CLI serializes their reports.

#include <algorithm>
#include <future>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "flatspec/dsl.hpp"
#include "flatspec/sring.hpp"

namespace flatspec {

enum class Verdict { Pass, Fail, Skipped };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Skipped: return "skipped";
  }
  return "";
}

/// The offending object of a failed check, in a form the check can be re-run on.
struct Counterexample {
  std::string kind;                 // "set", "ideal", "ideal-pair", "cycle", "fact", "error"
  std::vector<std::size_t> points;  // spectrum indices for "set"
  std::vector<std::string> items;   // ideal names, element literals or fact values
};

struct TheoremReport {
  std::string theorem;
  std::string ring;
  Verdict verdict = Verdict::Pass;
  std::string detail;
  std::vector<std::pair<std::string, std::string>> facts;
  std::optional<Counterexample> counterexample;
};

struct ExpectedFacts {
  std::optional<std::size_t> spectrum_size;
  std::optional<std::size_t> flat_ideal_count;
  std::optional<bool> reduced;
};

struct CorpusEntry {
  std::string ring;
  ExpectedFacts expected;
  std::size_t line = 0;
};

struct CorpusReport {
  std::vector<TheoremReport> reports;

  std::size_t count(Verdict v) const {
    return static_cast<std::size_t>(
        std::count_if(reports.begin(), reports.end(), [v](const TheoremReport& r) { return r.verdict == v; }));
  }
  std::size_t failures() const { return count(Verdict::Fail); }
};

inline const std::vector<std::string>& theorem_ids() {
  static const std::vector<std::string> ids{
      "topology",         "closure-operators", "flat-bijection",   "radical-flatness",  "reduced-flatness", "common-multiplier",
      "sring-conditions", "sring-certificate", "chain-conditions", "crt-decomposition", "product",          "nonexample"};
  return ids;
}

namespace detail {

inline std::vector<std::size_t> points_of(PointSet s) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < 64; ++i)
    if (s.contains(i)) out.push_back(i);
  return out;
}

inline std::string set_text(const SpectrumPoset& spec, PointSet s) {
  std::string out = "{";
  bool first = true;
  for (auto i : points_of(s)) {
    if (!first) out += ", ";
    out += spec.name(i);
    first = false;
  }
  return out + "}";
}

class ReportBuilder {
 public:
  ReportBuilder(std::string theorem, const Ring& ring) {
    report_.theorem = std::move(theorem);
    report_.ring = ring.describe();
  }

  void fact(std::string key, std::string value) { report_.facts.emplace_back(std::move(key), std::move(value)); }

  void fail_set(const SpectrumPoset& spec, PointSet s, const std::string& why) {
    if (report_.verdict == Verdict::Fail) return;
    report_.verdict = Verdict::Fail;
    report_.detail = why + ": " + set_text(spec, s);
    report_.counterexample = Counterexample{"set", points_of(s), {}};
  }

  void fail_ideals(std::vector<Ideal> ideals, const std::string& why) {
    if (report_.verdict == Verdict::Fail) return;
    report_.verdict = Verdict::Fail;
    std::vector<std::string> names;
    for (const auto& i : ideals) names.push_back(ideal_name(i));
    report_.detail = why;
    report_.counterexample = Counterexample{ideals.size() == 1 ? "ideal" : "ideal-pair", {}, std::move(names)};
  }

  void fail_other(std::string kind, std::vector<std::string> items, const std::string& why) {
    if (report_.verdict == Verdict::Fail) return;
    report_.verdict = Verdict::Fail;
    report_.detail = why;
    report_.counterexample = Counterexample{std::move(kind), {}, std::move(items)};
  }

  TheoremReport done(std::string pass_detail) {
    if (report_.verdict == Verdict::Pass) report_.detail = std::move(pass_detail);
    return std::move(report_);
  }

 private:
  TheoremReport report_;
};

inline TheoremReport skipped(std::string theorem, const Ring& ring, std::string why) {
  TheoremReport r;
  r.theorem = std::move(theorem);
  r.ring = ring.describe();
  r.verdict = Verdict::Skipped;
  r.detail = std::move(why);
  return r;
}

inline bool spectrum_enumerable(const Ring& ring) {
  if (ring.kind() == RingKind::EventuallyConstantBits) return false;
  if (ring.kind() == RingKind::Product)
    return std::all_of(ring.factors().begin(), ring.factors().end(), [](const RingPtr& f) { return spectrum_enumerable(*f); });
  return ring.is_explicit() || ring.kind() == RingKind::LocalizedIntegers;
}

}  // namespace detail

// ---- individual verifiers ------------------------------------------------------------

/// Closed families versus the stability characterizations; both family
/// constructions and both flat bases must agree.
inline TheoremReport verify_topology(const RingPtr& ring) {
  if (!detail::spectrum_enumerable(*ring)) return detail::skipped("topology", *ring, "spectrum not enumerable");
  const auto spec = enumerate_spectrum(ring);
  detail::ReportBuilder b("topology", *ring);
  const auto zariski = closed_family(spec, Topology::Zariski);
  const auto flat = closed_family(spec, Topology::Flat);
  const auto patch = closed_family(spec, Topology::Patch);
  for (auto t : {Topology::Zariski, Topology::Flat, Topology::Patch}) {
    const auto direct = closed_family_by_union_closure(spec, t);
    if (direct.sets != closed_family(spec, t).sets)
      b.fail_other("family", {topology_name(t)}, "neighbourhood and union-closure constructions disagree");
  }
  if (flat_family_from_ideal_basis(spec).sets != flat.sets)
    b.fail_other("family", {"flat"}, "V(f) sub-basis and V(I) basis generate different flat families");
  if (patch.sets.size() != (std::size_t{1} << spec.size()))
    b.fail_other("family", {"patch"}, "patch family is not the full power set");
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << spec.size()); ++mask) {
    const PointSet s{mask};
    if (flat.contains(s) != (patch.contains(s) && is_stable_generalization(spec, s)))
      b.fail_set(spec, s, "flat closed differs from patch closed and stable under generalization");
    if (zariski.contains(s) != (patch.contains(s) && is_stable_specialization(spec, s)))
      b.fail_set(spec, s, "Zariski closed differs from patch closed and stable under specialization");
    if ((zariski.contains(s) || flat.contains(s)) && !patch.contains(s))
      b.fail_set(spec, s, "closed set is not patch closed");
    // Zariski closed + generalization stable <=> flat closed + specialization stable
    if ((zariski.contains(s) && is_stable_generalization(spec, s)) !=
        (flat.contains(s) && is_stable_specialization(spec, s)))
      b.fail_set(spec, s, "double-closed characterizations disagree");
  }
  b.fact("points", std::to_string(spec.size()));
  b.fact("zariski_closed", std::to_string(zariski.sets.size()));
  b.fact("flat_closed", std::to_string(flat.sets.size()));
  b.fact("patch_closed", std::to_string(patch.sets.size()));
  return b.done("all subsets of a " + std::to_string(spec.size()) + "-point spectrum checked");
}

/// F of a Zariski closed set is flat closed; Z of a patch closed set is
/// Zariski closed; generalization-stable V(I) is V(J) with R/J flat.
inline TheoremReport verify_closure_operators(const RingPtr& ring) {
  if (!detail::spectrum_enumerable(*ring)) return detail::skipped("closure-operators", *ring, "spectrum not enumerable");
  const auto spec = enumerate_spectrum(ring);
  detail::ReportBuilder b("closure-operators", *ring);
  const auto zariski = closed_family(spec, Topology::Zariski);
  const auto flat = closed_family(spec, Topology::Flat);
  const auto patch = closed_family(spec, Topology::Patch);
  for (auto e : zariski.sets)
    if (!flat.contains(f_operator(spec, e))) b.fail_set(spec, e, "F(E) is not flat closed for a Zariski closed E");
  for (auto e : patch.sets)
    if (!zariski.contains(z_operator(spec, e))) b.fail_set(spec, e, "Z(E) is not Zariski closed for a patch closed E");
  std::size_t instances = 0;
  for (auto e : zariski.sets) {
    if (!is_stable_generalization(spec, e)) continue;
    try {
      const Ideal j = closed_genstable_to_flat_ideal(spec, e);
      b.fact("J for " + detail::set_text(spec, e), ideal_name(j));
      ++instances;
    } catch (const std::exception& ex) {
      b.fail_set(spec, e, std::string("no flat J with V(J) = E: ") + ex.what());
    }
  }
  // again, starting from every ideal I with V(I) stable
  for (const auto& i : ideal_lattice(ring)) {
    const PointSet e = vanishing_locus(spec, i);
    if (!is_stable_generalization(spec, e)) continue;
    const Ideal j = saturation_kernel(i);
    if (vanishing_locus(spec, j) != e || !is_cyclic_flat(j).verdict)
      b.fail_ideals({i}, "kernel of R -> (1+I)^-1 R does not give a flat V(J) = V(I)");
  }
  return b.done("F over " + std::to_string(zariski.sets.size()) + " Zariski closed sets, Z over " +
                std::to_string(patch.sets.size()) + " patch closed sets, " + std::to_string(instances) +
                " flat ideals from stable closed sets");
}

struct FlatCorrespondence {
  std::vector<Ideal> flat_ideals;
  std::vector<PointSet> images;    // V(I) for each flat ideal
  std::vector<PointSet> codomain;  // Zariski closed, generalization-stable sets
};

inline FlatCorrespondence flat_correspondence(const SpectrumPoset& spec) {
  FlatCorrespondence c;
  for (const auto& i : ideal_lattice(spec.ring()))
    if (is_cyclic_flat(i).verdict) {
      c.flat_ideals.push_back(i);
      c.images.push_back(vanishing_locus(spec, i));
    }
  for (auto s : closed_family(spec, Topology::Zariski).sets)
    if (is_stable_generalization(spec, s)) c.codomain.push_back(s);
  return c;
}

/// I -> V(I) is a bijection from flat-quotient ideals onto Zariski closed,
/// generalization-stable sets.
inline TheoremReport verify_flat_bijection(const RingPtr& ring) {
  if (!detail::spectrum_enumerable(*ring)) return detail::skipped("flat-bijection", *ring, "spectrum not enumerable");
  const auto spec = enumerate_spectrum(ring);
  detail::ReportBuilder b("flat-bijection", *ring);
  const auto c = flat_correspondence(spec);
  for (std::size_t k = 0; k < c.flat_ideals.size(); ++k) {
    const PointSet v = c.images[k];
    if (std::find(c.codomain.begin(), c.codomain.end(), v) == c.codomain.end())
      b.fail_ideals({c.flat_ideals[k]}, "well-definedness: V(I) is not a generalization-stable Zariski closed set");
    for (std::size_t l = 0; l < k; ++l)
      if (c.images[l] == v) b.fail_ideals({c.flat_ideals[l], c.flat_ideals[k]}, "injectivity: equal V(I)");
  }
  for (auto s : c.codomain)
    if (std::find(c.images.begin(), c.images.end(), s) == c.images.end())
      b.fail_set(spec, s, "surjectivity: no flat-quotient ideal has this vanishing locus");
  b.fact("flat_ideals", std::to_string(c.flat_ideals.size()));
  b.fact("closed_genstable_sets", std::to_string(c.codomain.size()));
  return b.done(std::to_string(c.flat_ideals.size()) + " flat-quotient ideals <-> " + std::to_string(c.codomain.size()) +
                " sets");
}

/// R/rad(I) flat forces I = rad(I).
inline TheoremReport verify_radical_flatness(const RingPtr& ring) {
  if (!detail::spectrum_enumerable(*ring)) return detail::skipped("radical-flatness", *ring, "ideal lattice not enumerable");
  detail::ReportBuilder b("radical-flatness", *ring);
  std::size_t hits = 0;
  for (const auto& i : ideal_lattice(ring)) {
    const Ideal r = radical(i);
    if (!is_cyclic_flat(r).verdict) continue;
    ++hits;
    if (!(r == i)) b.fail_ideals({i}, "R/rad(I) is flat but I is not radical");
  }
  return b.done(std::to_string(hits) + " ideals with flat R/rad(I), all radical");
}

/// On reduced rings: flat quotients are radical, and V(I) = V(J) with R/I flat forces I = J.
inline TheoremReport verify_reduced_flatness(const RingPtr& ring) {
  if (!detail::spectrum_enumerable(*ring)) return detail::skipped("reduced-flatness", *ring, "ideal lattice not enumerable");
  if (!is_reduced(ring)) return detail::skipped("reduced-flatness", *ring, "precondition: ring is not reduced");
  const auto spec = enumerate_spectrum(ring);
  detail::ReportBuilder b("reduced-flatness", *ring);
  const auto lattice = ideal_lattice(ring);
  std::size_t flat_count = 0;
  for (const auto& i : lattice) {
    if (!is_cyclic_flat(i).verdict) continue;
    ++flat_count;
    if (!(radical(i) == i)) b.fail_ideals({i}, "flat quotient by a non-radical ideal in a reduced ring");
    const PointSet v = vanishing_locus(spec, i);
    for (const auto& j : lattice)
      if (vanishing_locus(spec, j) == v && !(i == j)) b.fail_ideals({i, j}, "R/I flat and V(I) = V(J) but I != J");
  }
  b.fact("flat_ideals", std::to_string(flat_count));
  return b.done(std::to_string(flat_count) + " flat-quotient ideals, all radical and determined by V(I)");
}

inline constexpr std::size_t kExhaustivePairLimit = 32;

/// A common multiplier g in I for finite subsets of I whenever R/I is flat.
inline TheoremReport verify_common_multiplier(const RingPtr& ring) {
  if (!detail::spectrum_enumerable(*ring)) return detail::skipped("common-multiplier", *ring, "ideal lattice not enumerable");
  detail::ReportBuilder b("common-multiplier", *ring);
  std::size_t subsets = 0;
  for (const auto& i : ideal_lattice(ring)) {
    if (!is_cyclic_flat(i).verdict) continue;
    const auto elems = flatness_test_elements(i);
    auto check = [&](std::span<const Element> fs) {
      const Element g = common_multiplier(i, fs);
      ++subsets;
      bool ok = contains(i, g);
      for (const auto& f : fs) ok = ok && ring->mul(f, g) == f;
      if (!ok) b.fail_ideals({i}, "common multiplier " + ring->format(g) + " fails");
    };
    check(elems);
    // all pairs on small ideals; consecutive pairs otherwise
    if (elems.size() <= kExhaustivePairLimit) {
      for (const auto& f : elems)
        for (const auto& h : elems) check(std::vector<Element>{f, h});
    } else {
      for (std::size_t k = 0; k + 1 < elems.size(); ++k) check(std::vector<Element>{elems[k], elems[k + 1]});
    }
  }
  return b.done(std::to_string(subsets) + " finite subsets of flat-quotient ideals");
}

/// The S-ring conditions on rings with a finite spectrum: openness of the
/// stable closed sets, double-closed sets as idempotent loci, flat cyclic
/// quotients projective, and no non-stabilizing f = f f' chains.
inline TheoremReport verify_sring_conditions(const RingPtr& ring) {
  if (!detail::spectrum_enumerable(*ring)) return detail::skipped("sring-conditions", *ring, "spectrum not enumerable");
  const auto spec = enumerate_spectrum(ring);
  detail::ReportBuilder b("sring-conditions", *ring);
  const auto cert = sring_certificate_finite(spec);
  if (!cert.pass) b.fail_set(spec, *cert.counterexample, "condition " + cert.failed_condition + " fails");
  // flat cyclic quotients are projective
  for (const auto& i : ideal_lattice(ring))
    if (is_cyclic_flat(i).verdict && !is_cyclic_projective(i).projective)
      b.fail_ideals({i}, "R/I flat but not projective");
  // chains as a finite graph property, and the ascending/descending duality on
  // every admissible consecutive pair
  if (ring->is_explicit() && ring->size() <= 64) {
    if (auto cycle = find_nonstabilizing_cycle(ring)) {
      std::vector<std::string> items;
      for (const auto& e : *cycle) items.push_back(ring->format(e));
      b.fail_other("cycle", items, "a chain f = f f' cycles through distinct elements");
    }
    b.fact("chain_graph", "acyclic apart from idempotent self-loops");
  }
  std::size_t pairs = 0;
  const auto reps = representative_elements(ring);
  for (const auto& f : reps)
    for (const auto& g : reps) {
      if (!(ring->mul(f, g) == f)) continue;
      ++pairs;
      const Element df = ring->sub(ring->one(), f), dg = ring->sub(ring->one(), g);
      if (!(ring->mul(df, dg) == dg))
        b.fail_other("pair", {ring->format(f), ring->format(g)}, "dual pair violates g' = g g'");
    }
  b.fact("double_closed_sets", std::to_string(cert.double_closed.size()));
  return b.done("openness and idempotent-locus conditions hold; " + std::to_string(cert.double_closed.size()) + " double-closed sets; " +
                std::to_string(pairs) + " dual pairs");
}

/// Finitely many minimal primes (or maximal ideals) give an S-ring.
inline TheoremReport verify_sring_certificate(const RingPtr& ring) {
  if (!detail::spectrum_enumerable(*ring)) return detail::skipped("sring-certificate", *ring, "spectrum not enumerable");
  const auto spec = enumerate_spectrum(ring);
  detail::ReportBuilder b("sring-certificate", *ring);
  const auto cert = sring_certificate_finite(spec);
  if (!cert.pass) b.fail_set(spec, *cert.counterexample, "S-ring certificate fails at " + cert.failed_condition);
  std::string pairs;
  for (const auto& d : cert.double_closed) {
    if (!pairs.empty()) pairs += ", ";
    pairs += "V(" + ring->format(d.idempotent) + ")=" + detail::set_text(spec, d.set);
  }
  b.fact("minimal_primes", std::to_string(spec.minimal_points().count()));
  b.fact("maximal_ideals", std::to_string(spec.maximal_points().count()));
  b.fact("double_closed", pairs);
  return b.done("S-ring certificate passes");
}

/// Chain conditions on X ∩ V(f) for X = Min(R) and X = Max(R).
inline TheoremReport verify_chain_conditions(const RingPtr& ring) {
  if (!detail::spectrum_enumerable(*ring)) return detail::skipped("chain-conditions", *ring, "spectrum not enumerable");
  const auto spec = enumerate_spectrum(ring);
  detail::ReportBuilder b("chain-conditions", *ring);
  for (auto [label, x] : {std::pair{"min", spec.minimal_points()}, std::pair{"max", spec.maximal_points()}}) {
    try {
      const auto trace = chain_condition_check(spec, x);
      if (!trace.pair_invariants_hold) b.fail_set(spec, x, std::string("E/F invariants fail for X = ") + label);
      if (!trace.conclusion_holds) b.fail_set(spec, x, std::string("conclusion fails for X = ") + label);
      b.fact(std::string("J_") + label, ideal_name(trace.j));
      b.fact(std::string("family_") + label, std::to_string(trace.family.size()));
    } catch (const HypothesisViolated& e) {
      b.fail_set(spec, PointSet::single(e.witness()), std::string("covering hypothesis fails for X = ") + label);
    }
  }
  return b.done("X = Min and X = Max both satisfy ACC and DCC; conclusion holds");
}

struct CrtDecomposition {
  std::vector<Element> idempotents;    // primitive, summing to 1
  std::vector<std::size_t> summand_sizes;  // |R e_i|
};

/// Primitive idempotents of an explicit finite ring and the sizes of R e_i.
inline CrtDecomposition crt_decomposition(const RingPtr& ring) {
  CrtDecomposition d;
  const auto all = idempotents(ring);
  for (const auto& e : all) {
    if (e == ring->zero()) continue;
    const bool primitive = std::none_of(all.begin(), all.end(), [&](const Element& f) {
      return !(f == ring->zero()) && !(f == e) && ring->mul(f, e) == f;
    });
    if (!primitive) continue;
    d.idempotents.push_back(e);
    d.summand_sizes.push_back(ideal_size(principal_ideal(ring, e)));
  }
  return d;
}

/// Z/n with two or more prime factors: the CRT summands R e_i are projective
/// and, having fewer than n elements, not free.
inline TheoremReport verify_crt_decomposition(const RingPtr& ring) {
  if (ring->kind() != RingKind::ModularInt || !ring->is_explicit())
    return detail::skipped("crt-decomposition", *ring, "applies to Z/n");
  const auto n = static_cast<std::size_t>(ring->modulus());
  const auto d = crt_decomposition(ring);
  if (d.idempotents.size() < 2) return detail::skipped("crt-decomposition", *ring, "n is a prime power: Z/n is local");
  detail::ReportBuilder b("crt-decomposition", *ring);
  Element sum = ring->zero();
  for (std::size_t i = 0; i < d.idempotents.size(); ++i) {
    sum = ring->add(sum, d.idempotents[i]);
    for (std::size_t j = i + 1; j < d.idempotents.size(); ++j)
      if (!(ring->mul(d.idempotents[i], d.idempotents[j]) == ring->zero()))
        b.fail_other("idempotents", {ring->format(d.idempotents[i]), ring->format(d.idempotents[j])},
                     "primitive idempotents are not orthogonal");
  }
  if (!(sum == ring->one())) b.fail_other("idempotents", {ring->format(sum)}, "primitive idempotents do not sum to 1");
  std::size_t product = 1;
  std::string sizes;
  for (std::size_t i = 0; i < d.idempotents.size(); ++i) {
    const std::size_t s = d.summand_sizes[i];
    product *= s;
    if (!sizes.empty()) sizes += ", ";
    sizes += ring->format(d.idempotents[i]) + ":" + std::to_string(s);
    // a nonzero free Z/n-module has at least n elements
    if (s >= n) b.fail_other("summand", {ring->format(d.idempotents[i])}, "summand is not smaller than R");
    if (!arith::prime_power(static_cast<std::int64_t>(s)) || n % s != 0)
      b.fail_other("summand", {ring->format(d.idempotents[i])}, "summand size is not a prime-power factor of n");
  }
  if (product != n) b.fail_other("summand", {sizes}, "summand sizes do not multiply to n");
  b.fact("summands", sizes);
  return b.done("R = " + std::to_string(d.idempotents.size()) + " projective summands, none free");
}

/// A finite product is an S-ring iff every factor is.
inline TheoremReport verify_product(const RingPtr& ring) {
  if (ring->kind() != RingKind::Product) return detail::skipped("product", *ring, "not a product ring");
  if (!detail::spectrum_enumerable(*ring)) return detail::skipped("product", *ring, "spectrum not enumerable");
  detail::ReportBuilder b("product", *ring);
  const auto spec = enumerate_spectrum(ring);
  const bool whole = sring_certificate_finite(spec).pass;
  bool factors = true;
  for (const auto& f : ring->factors()) factors = factors && sring_certificate_finite(enumerate_spectrum(f)).pass;
  if (whole != factors) b.fail_other("product", {ring->describe()}, "product and factor certificates disagree");
  if (ring->is_explicit()) {
    const auto brute = enumerate_spectrum_bruteforce(ring);
    std::vector<Ideal> a, c;
    for (const auto& p : spec.points()) a.push_back(p.ideal);
    for (const auto& p : brute.points()) c.push_back(p.ideal);
    std::sort(a.begin(), a.end());
    std::sort(c.begin(), c.end());
    if (a != c) b.fail_other("spectrum", {ring->describe()}, "structural product spectrum differs from brute force");
  }
  return b.done(std::to_string(ring->factors().size()) + " factors, all S-rings, product is an S-ring");
}

/// EvBits: the chain x_n never stabilizes and the finitely supported ideal
/// gives a flat, non-projective cyclic quotient.
inline TheoremReport verify_nonexample(const RingPtr& ring, std::size_t budget = 100) {
  if (ring->kind() != RingKind::EventuallyConstantBits) return detail::skipped("nonexample", *ring, "applies to EvBits");
  detail::ReportBuilder b("nonexample", *ring);
  try {
    const auto chain = boolean_nonexample_chain(ring, budget);
    const auto report = check_chain_stabilization(chain);
    if (report.stabilized) b.fail_other("chain", {std::to_string(report.index)}, "x_n chain reported as stabilized");
    for (std::size_t n = 0; n + 1 < chain.terms().size(); ++n)
      if (chain.terms()[n] == chain.terms()[n + 1])
        b.fail_other("chain", {std::to_string(n + 1)}, "consecutive terms coincide");
    if (check_chain_stabilization(dual_chain(chain)).stabilized)
      b.fail_other("chain", {}, "dual chain reported as stabilized");
    const Ideal fin = finitely_supported_ideal(ring);
    const auto cert = is_cyclic_flat(fin);
    if (!cert.verdict || !verify_certificate(fin, cert)) b.fail_other("ideal", {"Fin"}, "R/Fin not certified flat");
    const auto proj = is_cyclic_projective(fin);
    if (proj.projective) b.fail_other("ideal", {"Fin"}, "R/Fin reported projective");
    b.fact("checked_prefix", std::to_string(report.checked_prefix_length));
    b.fact("projectivity", proj.reason);
  } catch (const Error& e) {
    b.fail_other("error", {e.what()}, "non-example machinery raised");
  }
  return b.done("x_n = x_n x_{n+1} never stabilizes (budget " + std::to_string(budget) +
                "); R/Fin is flat but not projective");
}

inline TheoremReport verify_expected(const RingPtr& ring, const ExpectedFacts& expected) {
  detail::ReportBuilder b("expected", *ring);
  if (expected.spectrum_size) {
    const auto computed = enumerate_spectrum(ring).size();
    if (computed != *expected.spectrum_size)
      b.fail_other("fact", {"spectrum_size", std::to_string(*expected.spectrum_size), std::to_string(computed)},
                   "spectrum size mismatch: expected " + std::to_string(*expected.spectrum_size) + ", computed " +
                       std::to_string(computed));
  }
  if (expected.flat_ideal_count) {
    std::size_t computed = 0;
    for (const auto& i : ideal_lattice(ring)) computed += is_cyclic_flat(i).verdict ? 1 : 0;
    if (computed != *expected.flat_ideal_count)
      b.fail_other("fact", {"flat_ideal_count", std::to_string(*expected.flat_ideal_count), std::to_string(computed)},
                   "flat ideal count mismatch: expected " + std::to_string(*expected.flat_ideal_count) +
                       ", computed " + std::to_string(computed));
  }
  if (expected.reduced) {
    const bool computed = is_reduced(ring);
    if (computed != *expected.reduced)
      b.fail_other("fact", {"reduced", *expected.reduced ? "true" : "false", computed ? "true" : "false"},
                   "reducedness mismatch");
  }
  return b.done("expected facts match");
}

// ---- dispatch ----------------------------------------------------------------------

inline TheoremReport run_verifier(const std::string& id, const RingPtr& ring) {
  try {
    if (id == "topology") return verify_topology(ring);
    if (id == "closure-operators") return verify_closure_operators(ring);
    if (id == "flat-bijection") return verify_flat_bijection(ring);
    if (id == "radical-flatness") return verify_radical_flatness(ring);
    if (id == "reduced-flatness") return verify_reduced_flatness(ring);
    if (id == "common-multiplier") return verify_common_multiplier(ring);
    if (id == "sring-conditions") return verify_sring_conditions(ring);
    if (id == "sring-certificate") return verify_sring_certificate(ring);
    if (id == "chain-conditions") return verify_chain_conditions(ring);
    if (id == "crt-decomposition") return verify_crt_decomposition(ring);
    if (id == "product") return verify_product(ring);
    if (id == "nonexample") return verify_nonexample(ring);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::SpectrumTooLarge || e.code() == ErrorCode::UnsupportedForPresentation)
      return detail::skipped(id, *ring, e.what());
    TheoremReport r = detail::skipped(id, *ring, e.what());
    r.verdict = Verdict::Fail;
    r.counterexample = Counterexample{"error", {}, {e.what()}};
    return r;
  }
  throw Error(ErrorCode::InvalidPresentation, "unknown theorem id '" + id + "'");
}

inline std::vector<TheoremReport> verify_all(const RingPtr& ring) {
  std::vector<TheoremReport> out;
  for (const auto& id : theorem_ids()) out.push_back(run_verifier(id, ring));
  return out;
}

/// Re-runs the check named in a failing report and confirms it fails with
/// the same counterexample.
inline bool reproduces(const TheoremReport& report, const ExpectedFacts& expected = {}) {
  if (report.verdict != Verdict::Fail) return false;
  const RingPtr ring = parse_ring(report.ring);
  const TheoremReport again = report.theorem == "expected" ? verify_expected(ring, expected) : run_verifier(report.theorem, ring);
  if (again.verdict != Verdict::Fail || !again.counterexample || !report.counterexample) return false;
  return again.counterexample->kind == report.counterexample->kind &&
         again.counterexample->points == report.counterexample->points &&
         again.counterexample->items == report.counterexample->items;
}

// ---- corpus --------------------------------------------------------------------------

inline constexpr std::string_view kDefaultCorpus = R"(# Default verification corpus.
ring = Z/4
expect.spectrum_size = 1
expect.flat_ideal_count = 2
expect.reduced = false

ring = Z/6
expect.spectrum_size = 2
expect.flat_ideal_count = 4
expect.reduced = true

ring = Z/12
expect.spectrum_size = 2
expect.flat_ideal_count = 4
expect.reduced = false

ring = GF(4)
expect.spectrum_size = 1
expect.flat_ideal_count = 2
expect.reduced = true

ring = Z/2[x]/(x^2+x)
expect.spectrum_size = 2
expect.flat_ideal_count = 4
expect.reduced = true

ring = Zloc(2)
expect.spectrum_size = 2
expect.flat_ideal_count = 2
expect.reduced = true

ring = Zloc(2) * Z/3
expect.spectrum_size = 3
expect.flat_ideal_count = 4
expect.reduced = true

ring = EvBits
)";

/// Parses the key-value corpus format:
///   ring = <expression>            starts a new entry
///   expect.spectrum_size = <n>
///   expect.flat_ideal_count = <n>
///   expect.reduced = true|false
/// Blank lines and lines starting with '#' are ignored. Parse errors report
/// the 1-based line number as their position.
inline std::vector<CorpusEntry> parse_corpus(std::string_view text) {
  std::vector<CorpusEntry> entries;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t number = 0;
  auto trim = [](std::string s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return std::string{};
    const auto z = s.find_last_not_of(" \t\r");
    return s.substr(a, z - a + 1);
  };
  while (std::getline(in, line)) {
    ++number;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw ParseError(number, {"="}, "line " + std::to_string(number) + ": expected key = value");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (key == "ring") {
      entries.push_back(CorpusEntry{value, {}, number});
      continue;
    }
    if (entries.empty()) throw ParseError(number, {"ring"}, "line " + std::to_string(number) + ": facts before any ring");
    auto number_value = [&]() -> std::size_t {
      if (value.empty() || value.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError(number, {"<digits>"}, "line " + std::to_string(number) + ": expected a count");
      return static_cast<std::size_t>(std::stoull(value));
    };
    auto& expected = entries.back().expected;
    if (key == "expect.spectrum_size") {
      expected.spectrum_size = number_value();
    } else if (key == "expect.flat_ideal_count") {
      expected.flat_ideal_count = number_value();
    } else if (key == "expect.reduced") {
      if (value != "true" && value != "false")
        throw ParseError(number, {"true", "false"}, "line " + std::to_string(number) + ": expected a boolean");
      expected.reduced = value == "true";
    } else {
      throw ParseError(number, {"ring", "expect.spectrum_size", "expect.flat_ideal_count", "expect.reduced"},
                       "line " + std::to_string(number) + ": unknown key '" + key + "'");
    }
  }
  return entries;
}

inline bool report_less(const TheoremReport& a, const TheoremReport& b) {
  return std::tie(a.ring, a.theorem) < std::tie(b.ring, b.theorem);
}

/// Runs every verifier on every entry (entries in parallel when asked).
/// All entries are parsed before anything runs; the result is sorted by
/// ring and theorem, so it does not depend on scheduling.
inline CorpusReport run_corpus(const std::vector<CorpusEntry>& entries, bool parallel = true) {
  std::vector<RingPtr> rings;
  for (std::size_t k = 0; k < entries.size(); ++k) {
    try {
      rings.push_back(parse_ring(entries[k].ring));
    } catch (const ParseError& e) {
      throw ParseError(e.position(), e.expected(), "in ring '" + entries[k].ring + "'", static_cast<std::ptrdiff_t>(k));
    } catch (const Error& e) {
      throw ParseError(0, {}, std::string("in ring '") + entries[k].ring + "': " + e.what(), static_cast<std::ptrdiff_t>(k));
    }
  }
  auto work = [&](std::size_t k) {
    auto reports = verify_all(rings[k]);
    const auto& ex = entries[k].expected;
    if (ex.spectrum_size || ex.flat_ideal_count || ex.reduced) reports.push_back(verify_expected(rings[k], ex));
    return reports;
  };
  CorpusReport out;
  if (parallel) {
    std::vector<std::future<std::vector<TheoremReport>>> jobs;
    for (std::size_t k = 0; k < rings.size(); ++k) jobs.push_back(std::async(std::launch::async, work, k));
    for (auto& j : jobs)
      for (auto& r : j.get()) out.reports.push_back(std::move(r));
  } else {
    for (std::size_t k = 0; k < rings.size(); ++k)
      for (auto& r : work(k)) out.reports.push_back(std::move(r));
  }
  std::stable_sort(out.reports.begin(), out.reports.end(), report_less);
  return out;
}

}  // namespace flatspec
