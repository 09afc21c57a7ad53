// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failing criteria (0 when all pass).

#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "flatspec/cli.hpp"

using namespace flatspec;

namespace {

constexpr double kTopologySecondsPerRing = 1.0;
constexpr double kNonexampleSeconds = 0.1;
constexpr double kCorpusSeconds = 10.0;

const std::vector<std::string> kSmallSpectrumRings{"Z/4",     "Z/6",           "Z/12", "GF(4)", "Z/2[x]/(x^2+x)",
                                                   "Zloc(2)", "Zloc(2) * Z/3"};
const std::vector<std::string> kFiniteRings{"Z/4", "Z/6", "Z/12", "GF(4)", "Z/2[x]/(x^2+x)"};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::string note;
  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      note = what;
    }
  }
};

PointSet named(const SpectrumPoset& spec, const std::vector<std::string>& names) {
  PointSet s;
  for (const auto& n : names)
    for (std::size_t i = 0; i < spec.size(); ++i)
      if (spec.name(i) == n) s.insert(i);
  return s;
}

// {r e : r in R}, computed by hand
std::set<std::uint32_t> multiples(const RingPtr& r, std::uint32_t e) {
  std::set<std::uint32_t> out;
  for (std::uint32_t x = 0; x < r->size(); ++x) out.insert(r->mul_index(x, e));
  return out;
}

// Flatness by the definition: every f in I has a in Ann(f), b in I, a + b = 1.
bool flat_by_definition(const Ideal& ideal) {
  const RingPtr& r = ideal.ring();
  const std::set<std::uint32_t> in(ideal.members().begin(), ideal.members().end());
  for (auto f : ideal.members()) {
    bool ok = false;
    for (std::uint32_t a = 0; a < r->size() && !ok; ++a)
      ok = r->mul_index(a, f) == 0 && in.count(r->add_index(r->one_index(), r->neg_index(a)));
    if (!ok) return false;
  }
  return true;
}

Outcome topology_characterization() {
  Outcome o;
  for (const auto& text : kSmallSpectrumRings) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto spec = enumerate_spectrum(parse_ring(text));
    const auto zariski = closed_family(spec, Topology::Zariski);
    const auto flat = closed_family(spec, Topology::Flat);
    const auto patch = closed_family(spec, Topology::Patch);
    std::vector<PointSet> flat_expected, zariski_expected, all;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << spec.size()); ++m) {
      const PointSet s{m};
      all.push_back(s);
      if (patch.contains(s) && is_stable_generalization(spec, s)) flat_expected.push_back(s);
      if (patch.contains(s) && is_stable_specialization(spec, s)) zariski_expected.push_back(s);
    }
    std::sort(all.begin(), all.end());
    o.require(spec.size() <= 8, text + ": spectrum larger than 8");
    o.require(flat.sets == flat_expected, text + ": flat family != patch closed and generalization stable");
    o.require(zariski.sets == zariski_expected, text + ": Zariski family != patch closed and specialization stable");
    o.require(patch.sets == all, text + ": patch family is not the power set");
    const double dt = seconds_since(t0);
    o.require(dt < kTopologySecondsPerRing, text + ": took " + std::to_string(dt) + " s");
  }
  return o;
}

Outcome closure_operators() {
  Outcome o;
  for (const auto& text : kSmallSpectrumRings) {
    const auto r = verify_closure_operators(parse_ring(text));
    o.require(r.verdict == Verdict::Pass, text + ": " + r.detail);
  }
  auto z12 = parse_ring("Z/12");
  const auto s12 = enumerate_spectrum(z12);
  const PointSet e = named(s12, {"(2)"});
  const Ideal j = closed_genstable_to_flat_ideal(s12, e);
  o.require(ideal_name(j) == "(4)" && vanishing_locus(s12, j) == e && is_cyclic_flat(j).verdict,
            "Z/12, E={(2)}: got J=" + ideal_name(j));
  auto mixed = parse_ring("Zloc(2) * Z/3");
  const auto sm = enumerate_spectrum(mixed);
  const PointSet gm = named(sm, {"(0) x (1)", "(2) x (1)"});
  const Ideal jm = closed_genstable_to_flat_ideal(sm, gm);
  // 0 x Z/3 is the ideal with zero first component and unit second component
  const Ideal expected = Ideal(mixed, Ideal::Componentwise{{zero_ideal(mixed->factors()[0]), unit_ideal(mixed->factors()[1])}});
  o.require(jm == expected && vanishing_locus(sm, jm) == gm, "Zloc(2) * Z/3, E={g,m}: got J=" + ideal_name(jm));
  return o;
}

Outcome flat_bijection_counts() {
  Outcome o;
  const std::vector<std::pair<std::string, std::size_t>> cases{{"Z/12", 4}, {"Z/6", 4}, {"Z/4", 2}, {"Zloc(2)", 2}};
  for (const auto& [text, n] : cases) {
    const auto ring = parse_ring(text);
    const auto spec = enumerate_spectrum(ring);
    const auto c = flat_correspondence(spec);
    std::size_t by_definition = 0;
    for (const auto& i : ideal_lattice(ring))
      by_definition += (ring->is_explicit() ? flat_by_definition(i) : is_cyclic_flat(i).verdict) ? 1 : 0;
    o.require(c.flat_ideals.size() == n && by_definition == n && c.codomain.size() == n,
              text + ": " + std::to_string(c.flat_ideals.size()) + " <-> " + std::to_string(c.codomain.size()));
    o.require(verify_flat_bijection(ring).verdict == Verdict::Pass, text + ": bijection check failed");
  }
  const auto s12 = enumerate_spectrum(parse_ring("Z/12"));
  auto images = flat_correspondence(s12).images;
  std::sort(images.begin(), images.end());
  std::vector<PointSet> expected{PointSet{}, named(s12, {"(2)"}), named(s12, {"(3)"}), s12.full()};
  std::sort(expected.begin(), expected.end());
  o.require(images == expected, "Z/12 image is not {empty, {(2)}, {(3)}, Spec}");
  return o;
}

Outcome flatness_vs_idempotents() {
  Outcome o;
  std::size_t checked = 0;
  for (const auto& text : kFiniteRings) {
    const auto ring = parse_ring(text);
    std::vector<std::uint32_t> idem;
    for (std::uint32_t x = 0; x < ring->size(); ++x)
      if (ring->mul_index(x, x) == x) idem.push_back(x);
    for (const auto& i : ideal_lattice(ring)) {
      const std::set<std::uint32_t> members(i.members().begin(), i.members().end());
      bool generated = false;
      for (auto e : idem) generated = generated || multiples(ring, e) == members;
      ++checked;
      o.require(is_cyclic_flat(i).verdict == generated, text + " " + ideal_name(i) + ": discrepancy");
    }
  }
  o.note = o.pass ? std::to_string(checked) + " ideals, 0 discrepancies" : o.note;
  return o;
}

Outcome reduced_corollaries() {
  Outcome o;
  for (const auto& text : kFiniteRings) {
    const auto r = verify_radical_flatness(parse_ring(text));
    o.require(r.verdict == Verdict::Pass, text + " radical: " + r.detail);
  }
  for (const auto& text : {"Z/6", "GF(4)", "Z/2[x]/(x^2+x)"}) {
    const auto r = verify_reduced_flatness(parse_ring(text));
    o.require(r.verdict == Verdict::Pass, std::string(text) + ": " + r.detail);
  }
  for (const auto& text : {"Z/12", "Z/4"}) {
    const auto r = verify_reduced_flatness(parse_ring(text));
    o.require(r.verdict == Verdict::Skipped, std::string(text) + ": expected Skipped");
  }
  return o;
}

Outcome sring_certificates() {
  Outcome o;
  for (const auto& text : kSmallSpectrumRings) {
    const auto cert = sring_certificate_finite(enumerate_spectrum(parse_ring(text)));
    o.require(cert.pass, text + ": certificate fails at " + cert.failed_condition);
  }
  auto z12 = parse_ring("Z/12");
  const auto s12 = enumerate_spectrum(z12);
  std::set<std::pair<PointSet, std::int64_t>> got12, want12;
  for (const auto& d : sring_certificate_finite(s12).double_closed) got12.insert({d.set, d.idempotent.residue()});
  for (auto e : {0, 1, 4, 9}) want12.insert({vanishing_locus(s12, z12->from_integer(e)), e});
  o.require(got12 == want12, "Z/12 double-closed family is not {V(0),V(1),V(4),V(9)}");
  auto q = parse_ring("Z/2[x]/(x^2+x)");
  const auto sq = enumerate_spectrum(q);
  std::set<std::string> idem;
  std::set<PointSet> sets;
  const auto cq = sring_certificate_finite(sq);
  for (const auto& d : cq.double_closed) {
    idem.insert(q->format(d.idempotent));
    sets.insert(d.set);
    o.require(vanishing_locus(sq, d.idempotent) == d.set, "Z/2[x]/(x^2+x): set is not V(e)");
  }
  o.require(cq.double_closed.size() == 4 && sets.size() == 4 && idem == std::set<std::string>{"0", "1", "x", "x+1"},
            "Z/2[x]/(x^2+x) double-closed family is not matched to {0,1,x,x+1}");
  return o;
}

struct NonexampleRun {
  bool equations = false;
  bool stabilized = true;
  std::size_t checked = 0;
  bool flat = false;
  bool certificate_verified = false;
  bool projective = true;
  bool operator==(const NonexampleRun&) const = default;
};

NonexampleRun run_nonexample() {
  auto ev = parse_ring("EvBits");
  const auto chain = boolean_nonexample_chain(ev, 100);
  NonexampleRun r;
  r.equations = true;
  for (std::size_t n = 1; n <= 100; ++n) r.equations = r.equations && ev->mul(chain.term(n), chain.term(n + 1)) == chain.term(n);
  const auto report = check_chain_stabilization(chain);
  r.stabilized = report.stabilized;
  r.checked = report.checked_prefix_length;
  const Ideal fin = finitely_supported_ideal(ev);
  const auto cert = is_cyclic_flat(fin);
  r.flat = cert.verdict;
  r.certificate_verified = verify_certificate(fin, cert);
  r.projective = is_cyclic_projective(fin).projective;
  return r;
}

Outcome nonexample() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const NonexampleRun first = run_nonexample();
  const double dt = seconds_since(t0);
  const NonexampleRun second = run_nonexample();
  o.require(first.equations, "x_n != x_n x_{n+1} somewhere");
  o.require(!first.stabilized, "chain reported as stabilized");
  o.require(first.checked == 101, "checked " + std::to_string(first.checked) + " terms");
  o.require(first.flat && first.certificate_verified, "R/Fin not certified flat");
  o.require(!first.projective, "R/Fin reported projective");
  o.require(first == second, "not deterministic");
  o.require(dt < kNonexampleSeconds, "took " + std::to_string(dt) + " s");
  if (o.pass) o.note = "NotStabilizedWithinBudget at 100; R/Fin flat, not projective; " + std::to_string(dt) + " s";
  return o;
}

Outcome crt_decomposition_z12() {
  Outcome o;
  auto z12 = parse_ring("Z/12");
  const auto e1 = z12->from_integer(4), e2 = z12->from_integer(9);
  o.require(z12->add(e1, e2) == z12->one(), "4 + 9 != 1");
  o.require(z12->mul(e1, e2) == z12->zero(), "4 * 9 != 0");
  o.require(z12->mul(e1, e1) == e1 && z12->mul(e2, e2) == e2, "not idempotent");
  const auto s1 = multiples(z12, z12->index_of(e1)).size(), s2 = multiples(z12, z12->index_of(e2)).size();
  o.require(s1 == 3 && s2 == 4, "summand sizes " + std::to_string(s1) + ", " + std::to_string(s2));
  // a nonzero free Z/12-module has at least 12 elements
  o.require(s1 < 12 && s2 < 12, "a summand is as large as R");
  const auto d = crt_decomposition(z12);
  std::set<std::int64_t> prim;
  for (const auto& e : d.idempotents) prim.insert(e.residue());
  o.require(prim == std::set<std::int64_t>{4, 9}, "primitive idempotents are not {4, 9}");
  o.require(verify_crt_decomposition(z12).verdict == Verdict::Pass, "verifier failed");
  return o;
}

Outcome chain_conditions() {
  Outcome o;
  for (const auto& text : {"Z/12", "Z/6"}) {
    const auto spec = enumerate_spectrum(parse_ring(text));
    for (auto x : {spec.minimal_points(), spec.maximal_points()}) {
      const auto t = chain_condition_check(spec, x);
      o.require(t.acc && t.dcc && t.pair_invariants_hold && t.conclusion_holds, std::string(text) + ": check failed");
    }
  }
  const auto mixed = enumerate_spectrum(parse_ring("Zloc(2) * Z/3"));
  try {
    chain_condition_check(mixed, named(mixed, {"(0) x (1)"}));
    o.require(false, "Zloc(2) * Z/3, X={g}: no HypothesisViolated");
  } catch (const HypothesisViolated& e) {
    o.require(mixed.name(e.witness()) == "(1) x (0)", "witness is " + mixed.name(e.witness()));
  }
  return o;
}

Outcome full_corpus() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  std::ostringstream out, err;
  const int code = run_cli(std::vector<std::string>{"corpus"}, out, err);
  const double dt = seconds_since(t0);
  const auto j = Json::parse(out.str());
  const auto fails = j["summary"]["fail"].get<std::size_t>();
  o.require(code == 0 && fails == 0, std::to_string(fails) + " failures, exit " + std::to_string(code));
  o.require(dt < kCorpusSeconds, "took " + std::to_string(dt) + " s");
  if (o.pass)
    o.note = std::to_string(j["summary"]["pass"].get<std::size_t>()) + " pass, " +
             std::to_string(j["summary"]["skipped"].get<std::size_t>()) + " skipped, 0 fail in " + std::to_string(dt) + " s";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"AC1 topology characterization (|Spec| <= 8, < 1 s per ring)", topology_characterization},
      {"AC2 closure operators and flat ideal from a stable closed set", closure_operators},
      {"AC3 flat ideals <-> closed generalization-stable sets (counts)", flat_bijection_counts},
      {"AC4 flatness criterion vs idempotent generation", flatness_vs_idempotents},
      {"AC5 radical and reduced-ring statements (Skipped when not reduced)", reduced_corollaries},
      {"AC6 S-ring certificates and double-closed families", sring_certificates},
      {"AC7 EvBits non-example (budget 100, < 0.1 s)", nonexample},
      {"AC8 Z/12 = R*4 + R*9, summands of size 3 and 4", crt_decomposition_z12},
      {"AC9 chain conditions on Min/Max and the uncovered maximal ideal", chain_conditions},
      {"AC10 default corpus via the CLI (0 failures, < 10 s)", full_corpus},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.pass = false;
      o.note = std::string("exception: ") + e.what();
    }
    failed += o.pass ? 0 : 1;
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << name << (o.note.empty() ? "" : " -- " + o.note) << "\n";
  }
  std::cout << (failed == 0 ? "all criteria pass" : std::to_string(failed) + " criteria failed") << "\n";
  return failed;
}
