#pragma once

// S-ring characterizations: multiplicative chains f_n = f_n f_{n+1}, the
// finite-spectrum certificate (Zariski/flat/patch openness and the
// double-closed <-> idempotent correspondence), and chain conditions on
// X ∩ V(f).

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "flatspec/flatness.hpp"

namespace flatspec {

enum class ChainMode {
  Ascending,   // f_n = f_n f_{n+1}
  Descending,  // g_{n+1} = g_n g_{n+1}
};

/// A sequence in a ring given by an explicit prefix and an optional rule for
/// the remaining terms (1-based). Without a rule the sequence stays at its
/// last prefix term forever. Terms 1..L are materialized and every
/// consecutive pair is validated on construction.
class MultiplicativeChain {
 public:
  using Rule = std::function<Element(std::size_t)>;

  MultiplicativeChain(RingPtr ring, ChainMode mode, std::vector<Element> prefix, Rule rule = {},
                      std::size_t budget = 100, std::string schema = {})
      : ring_(std::move(ring)),
        mode_(mode),
        prefix_(std::move(prefix)),
        rule_(std::move(rule)),
        budget_(budget),
        schema_(std::move(schema)) {
    if (budget_ < 1) throw Error(ErrorCode::InvalidChain, "budget must be at least 1");
    if (prefix_.empty() && !rule_) throw Error(ErrorCode::InvalidChain, "empty chain");
    const std::size_t length = rule_ ? budget_ + 1 : std::max(budget_, prefix_.size()) + 1;
    for (std::size_t n = 1; n <= length; ++n) {
      Element t = term(n);
      if (!ring_->is_member(t)) throw Error(ErrorCode::InvalidChain, "term " + std::to_string(n) + " is not in the ring");
      terms_.push_back(std::move(t));
    }
    for (std::size_t n = 0; n + 1 < terms_.size(); ++n) {
      const Element& x = terms_[n];
      const Element& y = terms_[n + 1];
      const bool ok = mode_ == ChainMode::Ascending ? ring_->mul(x, y) == x : ring_->mul(x, y) == y;
      if (!ok)
        throw Error(ErrorCode::InvalidChain, "terms " + std::to_string(n + 1) + " and " + std::to_string(n + 2) +
                                                 " (" + ring_->format(x) + ", " + ring_->format(y) +
                                                 ") violate the chain equation");
    }
  }

  Element term(std::size_t n) const {
    if (n >= 1 && n <= prefix_.size()) return prefix_[n - 1];
    if (rule_) return rule_(n);
    return prefix_.back();
  }

  const RingPtr& ring() const noexcept { return ring_; }
  ChainMode mode() const noexcept { return mode_; }
  std::size_t budget() const noexcept { return budget_; }
  bool has_rule() const noexcept { return static_cast<bool>(rule_); }
  const std::vector<Element>& prefix() const noexcept { return prefix_; }
  const Rule& rule() const noexcept { return rule_; }
  /// Materialized terms 1..L.
  const std::vector<Element>& terms() const noexcept { return terms_; }
  /// A proof that the chain never stabilizes, when one is known.
  const std::string& schema() const noexcept { return schema_; }

 private:
  RingPtr ring_;
  ChainMode mode_;
  std::vector<Element> prefix_;
  Rule rule_;
  std::size_t budget_;
  std::string schema_;
  std::vector<Element> terms_;
};

struct StabilizationReport {
  bool stabilized = false;
  /// k when stabilized, otherwise the last checked index.
  std::size_t index = 0;
  /// e = f_k when stabilized.
  std::optional<Element> value;
  /// Last pair of consecutive distinct terms when not stabilized.
  std::optional<std::pair<Element, Element>> last_distinct;
  std::size_t checked_prefix_length = 0;
  /// Non-empty when non-stabilization is proved rather than observed.
  std::string proof;
};

/// Smallest k such that f_k is idempotent and every later materialized term
/// equals it. Rule-driven chains must show at least one repetition.
inline StabilizationReport check_chain_stabilization(const MultiplicativeChain& chain) {
  const auto& t = chain.terms();
  const Ring& ring = *chain.ring();
  StabilizationReport report;
  report.checked_prefix_length = t.size();
  std::size_t k = t.size() - 1;  // 0-based start of the constant tail
  while (k > 0 && t[k - 1] == t.back()) --k;
  const bool repeated = k + 1 < t.size();
  if (is_idempotent(ring, t[k]) && (repeated || !chain.has_rule())) {
    report.stabilized = true;
    report.index = k + 1;
    report.value = t[k];
    return report;
  }
  report.index = t.size();
  for (std::size_t n = t.size() - 1; n > 0; --n)
    if (!(t[n - 1] == t[n])) {
      report.last_distinct = std::pair{t[n - 1], t[n]};
      break;
    }
  report.proof = chain.schema();
  return report;
}

/// g_n := 1 - f_n. Ascending chains become descending ones and back.
inline MultiplicativeChain dual_chain(const MultiplicativeChain& chain) {
  const RingPtr ring = chain.ring();
  auto flip = [ring](const Element& e) { return ring->sub(ring->one(), e); };
  std::vector<Element> prefix;
  for (const auto& e : chain.prefix()) prefix.push_back(flip(e));
  MultiplicativeChain::Rule rule;
  if (chain.has_rule()) rule = [flip, inner = chain.rule()](std::size_t n) { return flip(inner(n)); };
  const ChainMode mode = chain.mode() == ChainMode::Ascending ? ChainMode::Descending : ChainMode::Ascending;
  return MultiplicativeChain(ring, mode, std::move(prefix), std::move(rule), chain.budget(), chain.schema());
}

// ---- the infinite-product non-example ----------------------------------------------

/// x_n in EvBits: 1 at positions 1..n, 0 afterwards.
inline Element boolean_nonexample(const RingPtr& evbits, std::size_t n) {
  if (n < 1) throw Error(ErrorCode::InvalidElement, "index must be >= 1");
  std::vector<std::uint32_t> support(n);
  for (std::size_t i = 0; i < n; ++i) support[i] = static_cast<std::uint32_t>(i + 1);
  return evbits->bits(std::move(support), false);
}

inline MultiplicativeChain boolean_nonexample_chain(const RingPtr& evbits, std::size_t budget = 100) {
  return MultiplicativeChain(
      evbits, ChainMode::Ascending, {}, [evbits](std::size_t n) { return boolean_nonexample(evbits, n); }, budget,
      "x_n has support {1..n}; supports strictly grow, so x_n != x_{n+1} for every n");
}

// ---- finite rings: the chain graph -------------------------------------------------------

/// In the graph on the elements of a finite ring with an edge f -> f' iff
/// f = f f', a cycle through at least two distinct elements. None exists
/// iff every ascending chain in the ring stabilizes at an idempotent.
inline std::optional<std::vector<Element>> find_nonstabilizing_cycle(const RingPtr& ring) {
  const std::uint32_t n = ring->size();
  std::vector<std::vector<std::uint32_t>> adj(n);
  for (std::uint32_t f = 0; f < n; ++f)
    for (std::uint32_t g = 0; g < n; ++g)
      if (f != g && ring->mul_index(f, g) == f) adj[f].push_back(g);

  // Tarjan's strongly connected components
  std::vector<int> index(n, -1), low(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<std::uint32_t> stack;
  int counter = 0;
  std::optional<std::vector<std::uint32_t>> component;
  std::function<void(std::uint32_t)> visit = [&](std::uint32_t v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = 1;
    for (auto w : adj[v]) {
      if (index[w] < 0) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<std::uint32_t> scc;
      std::uint32_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = 0;
        scc.push_back(w);
      } while (w != v);
      if (scc.size() > 1 && !component) component = std::move(scc);
    }
  };
  for (std::uint32_t v = 0; v < n && !component; ++v)
    if (index[v] < 0) visit(v);
  if (!component) return std::nullopt;

  // shortest cycle through the first vertex inside the component
  const std::set<std::uint32_t> inside(component->begin(), component->end());
  const std::uint32_t start = component->front();
  std::vector<std::int64_t> parent(n, -1);
  std::deque<std::uint32_t> queue{start};
  parent[start] = start;
  std::optional<std::uint32_t> closing;
  while (!queue.empty() && !closing) {
    auto v = queue.front();
    queue.pop_front();
    for (auto w : adj[v]) {
      if (!inside.count(w)) continue;
      if (w == start) {
        closing = v;
        break;
      }
      if (parent[w] < 0) {
        parent[w] = v;
        queue.push_back(w);
      }
    }
  }
  std::vector<Element> cycle;
  for (std::uint32_t v = *closing; v != start; v = static_cast<std::uint32_t>(parent[v])) cycle.push_back(ring->element_at(v));
  cycle.push_back(ring->element_at(start));
  std::reverse(cycle.begin(), cycle.end());
  return cycle;
}

// ---- S-ring certificate ----------------------------------------------------------------

struct DoubleClosedEntry {
  PointSet set;
  Element idempotent;  // V(idempotent) = set

  bool operator==(const DoubleClosedEntry&) const = default;
};

struct SringCertificate {
  bool pass = false;
  bool zariski_closed_genstable_open = false;
  bool patch_closed_bistable_open = false;
  bool flat_closed_specstable_open = false;
  bool double_closed_are_idempotent_loci = false;
  std::vector<DoubleClosedEntry> double_closed;
  std::string failed_condition;
  std::optional<PointSet> counterexample;

  bool operator==(const SringCertificate&) const = default;
};

inline SringCertificate sring_certificate_finite(const SpectrumPoset& spec) {
  const auto zariski = closed_family(spec, Topology::Zariski);
  const auto flat = closed_family(spec, Topology::Flat);
  const auto patch = closed_family(spec, Topology::Patch);
  SringCertificate cert;
  auto fail = [&](const char* condition, PointSet s) {
    if (cert.failed_condition.empty()) {
      cert.failed_condition = condition;
      cert.counterexample = s;
    }
  };

  cert.zariski_closed_genstable_open = true;
  for (auto s : zariski.sets)
    if (is_stable_generalization(spec, s) && !zariski.is_open(s)) {
      cert.zariski_closed_genstable_open = false;
      fail("zariski_closed_genstable_open", s);
    }
  cert.patch_closed_bistable_open = true;
  for (auto s : patch.sets)
    if (is_stable_generalization(spec, s) && is_stable_specialization(spec, s) && !patch.is_open(s)) {
      cert.patch_closed_bistable_open = false;
      fail("patch_closed_bistable_open", s);
    }
  cert.flat_closed_specstable_open = true;
  for (auto s : flat.sets)
    if (is_stable_specialization(spec, s) && !flat.is_open(s)) {
      cert.flat_closed_specstable_open = false;
      fail("flat_closed_specstable_open", s);
    }

  std::vector<std::pair<PointSet, Element>> loci;
  for (const auto& e : idempotents(spec.ring())) loci.emplace_back(vanishing_locus(spec, e), e);
  cert.double_closed_are_idempotent_loci = true;
  for (auto s : zariski.sets) {
    if (!flat.contains(s)) continue;
    auto it = std::find_if(loci.begin(), loci.end(), [&](const auto& l) { return l.first == s; });
    if (it == loci.end()) {
      cert.double_closed_are_idempotent_loci = false;
      fail("double_closed_are_idempotent_loci", s);
      continue;
    }
    cert.double_closed.push_back({s, it->second});
  }
  for (const auto& [s, e] : loci)
    if (!zariski.contains(s) || !flat.contains(s)) {
      cert.double_closed_are_idempotent_loci = false;
      fail("double_closed_are_idempotent_loci", s);
    }

  cert.pass = cert.zariski_closed_genstable_open && cert.patch_closed_bistable_open &&
              cert.flat_closed_specstable_open && cert.double_closed_are_idempotent_loci;
  return cert;
}

// ---- chain conditions on X ∩ V(f) ----------------------------------------------------------

class HypothesisViolated : public Error {
 public:
  HypothesisViolated(std::size_t witness, const std::string& message)
      : Error(ErrorCode::HypothesisViolated, message), witness_(witness) {}
  /// Index of a maximal ideal with no point of X below it.
  std::size_t witness() const noexcept { return witness_; }

 private:
  std::size_t witness_;
};

struct ChainConditionTrace {
  PointSet x;
  Ideal j;  // intersection of the primes in X
  std::vector<PointSet> family{};  // distinct sets X ∩ V(f)
  std::size_t longest_chain = 0;  // longest strictly increasing chain in the family
  bool acc = false;
  bool dcc = false;
  /// Pairs (a, a') with a - a a' in J; for each, E(a') ⊆ E(a), F(a) ⊆ F(a') and X = E(a) ∪ F(a').
  std::size_t pairs_checked = 0;
  bool pair_invariants_hold = false;
  /// E_n = X ∩ V(a_n) and F_n = X ∩ V(1 - a_n) along an explicit chain, when one is given.
  std::vector<PointSet> e_sets{};
  std::vector<PointSet> f_sets{};
  bool chain_invariants_hold = true;
  bool conclusion_holds = false;
};

inline ChainConditionTrace chain_condition_check(const SpectrumPoset& spec, PointSet x,
                                      const MultiplicativeChain* chain = nullptr) {
  const RingPtr& ring = spec.ring();
  for (std::size_t m = 0; m < spec.size(); ++m) {
    if (!spec[m].is_maximal) continue;
    if ((spec.generalizations(m) & x).empty())
      throw HypothesisViolated(m, "maximal ideal " + spec.name(m) + " has no point of X below it");
  }

  ChainConditionTrace trace{.x = x, .j = intersection_of_points(spec, x)};
  auto e_of = [&](const Element& a) { return vanishing_locus(spec, a) & x; };
  auto f_of = [&](const Element& a) { return vanishing_locus(spec, ring->sub(ring->one(), a)) & x; };

  const auto reps = representative_elements(ring);
  std::set<PointSet> family;
  for (const auto& f : reps) family.insert(e_of(f));
  trace.family.assign(family.begin(), family.end());

  // longest strict chain in the (finite) family, by dynamic programming over
  // the inclusion order; sets sorted by size first
  std::vector<PointSet> by_size = trace.family;
  std::sort(by_size.begin(), by_size.end(), [](PointSet a, PointSet b) { return a.count() < b.count(); });
  std::vector<std::size_t> depth(by_size.size(), 1);
  for (std::size_t i = 0; i < by_size.size(); ++i)
    for (std::size_t k = 0; k < i; ++k)
      if (by_size[k] != by_size[i] && by_size[k].subset_of(by_size[i])) depth[i] = std::max(depth[i], depth[k] + 1);
  for (auto d : depth) trace.longest_chain = std::max(trace.longest_chain, d);
  // a finite family has no infinite strictly monotone chain
  trace.acc = trace.dcc = true;

  trace.pair_invariants_hold = true;
  for (const auto& a : reps)
    for (const auto& b : reps) {
      if (!contains(trace.j, ring->sub(a, ring->mul(a, b)))) continue;
      ++trace.pairs_checked;
      const auto ea = e_of(a), eb = e_of(b), fa = f_of(a), fb = f_of(b);
      if (!eb.subset_of(ea) || !fa.subset_of(fb) || (ea | fb) != x) trace.pair_invariants_hold = false;
    }

  if (chain) {
    const MultiplicativeChain ascending = chain->mode() == ChainMode::Ascending ? *chain : dual_chain(*chain);
    for (const auto& t : ascending.terms()) {
      trace.e_sets.push_back(e_of(t));
      trace.f_sets.push_back(f_of(t));
    }
    for (std::size_t n = 0; n + 1 < trace.e_sets.size(); ++n)
      if (!trace.e_sets[n + 1].subset_of(trace.e_sets[n]) || !trace.f_sets[n].subset_of(trace.f_sets[n + 1]) ||
          (trace.e_sets[n] | trace.f_sets[n + 1]) != x)
        trace.chain_invariants_hold = false;
  }

  trace.conclusion_holds = sring_certificate_finite(spec).pass;
  return trace;
}

}  // namespace flatspec
