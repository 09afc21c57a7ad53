#pragma once

// JSON and DOT export. Keys are emitted in insertion order (ordered_json), so
// output is byte-stable for a fixed input. Point sets are written as lists of
// canonical prime names in spectrum order; elements as ring literals.

#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "flatspec/theorem_harness.hpp"

namespace flatspec {

using Json = nlohmann::ordered_json;

inline Json set_to_json(const SpectrumPoset& spec, PointSet s) {
  Json out = Json::array();
  for (std::size_t i = 0; i < spec.size(); ++i)
    if (s.contains(i)) out.push_back(spec.name(i));
  return out;
}

inline PointSet set_from_json(const SpectrumPoset& spec, const Json& j) {
  PointSet s;
  for (const auto& name : j) {
    bool found = false;
    for (std::size_t i = 0; i < spec.size() && !found; ++i)
      if (spec.name(i) == name.get<std::string>()) {
        s.insert(i);
        found = true;
      }
    if (!found) throw Error(ErrorCode::InvalidElement, "unknown point " + name.dump());
  }
  return s;
}

// ---- spectrum ------------------------------------------------------------------------

/// The serializable content of a spectrum.
struct SpectrumSummary {
  std::string ring;
  struct Point {
    std::string name;
    bool minimal = false;
    bool maximal = false;
    bool operator==(const Point&) const = default;
  };
  std::vector<Point> points;
  std::vector<std::pair<std::string, std::string>> order;  // strict containments
  std::vector<std::pair<std::string, std::string>> hasse;

  bool operator==(const SpectrumSummary&) const = default;
};

inline SpectrumSummary summarize(const SpectrumPoset& spec) {
  SpectrumSummary s;
  s.ring = spec.ring()->describe();
  for (std::size_t i = 0; i < spec.size(); ++i) s.points.push_back({spec.name(i), spec[i].is_minimal, spec[i].is_maximal});
  for (auto [i, j] : spec.strict_order()) s.order.emplace_back(spec.name(i), spec.name(j));
  for (auto [i, j] : spec.hasse_edges()) s.hasse.emplace_back(spec.name(i), spec.name(j));
  return s;
}

inline Json to_json(const SpectrumSummary& s) {
  Json points = Json::array();
  for (const auto& p : s.points) points.push_back(Json{{"name", p.name}, {"minimal", p.minimal}, {"maximal", p.maximal}});
  auto pairs = [](const auto& v) {
    Json out = Json::array();
    for (const auto& [a, b] : v) out.push_back(Json::array({a, b}));
    return out;
  };
  return Json{{"ring", s.ring}, {"points", points}, {"order", pairs(s.order)}, {"hasse", pairs(s.hasse)}};
}

inline Json to_json(const SpectrumPoset& spec) { return to_json(summarize(spec)); }

inline SpectrumSummary spectrum_from_json(const Json& j) {
  SpectrumSummary s;
  s.ring = j.at("ring").get<std::string>();
  for (const auto& p : j.at("points"))
    s.points.push_back({p.at("name").get<std::string>(), p.at("minimal").get<bool>(), p.at("maximal").get<bool>()});
  for (const auto& e : j.at("order")) s.order.emplace_back(e.at(0).get<std::string>(), e.at(1).get<std::string>());
  for (const auto& e : j.at("hasse")) s.hasse.emplace_back(e.at(0).get<std::string>(), e.at(1).get<std::string>());
  return s;
}

// ---- topologies ----------------------------------------------------------------------

inline Json to_json(const SpectrumPoset& spec, const ClosedFamily& family) {
  Json sets = Json::array();
  for (auto s : family.sets) sets.push_back(set_to_json(spec, s));
  return Json{{"ring", spec.ring()->describe()},
              {"topology", topology_name(family.topology)},
              {"count", family.sets.size()},
              {"closed_sets", sets}};
}

// ---- flatness ------------------------------------------------------------------------

inline Json to_json(const Ideal& ideal, const FlatnessCertificate& cert) {
  const RingPtr& ring = ideal.ring();
  Json witnesses = Json::array();
  for (const auto& w : cert.witnesses)
    witnesses.push_back(Json{{"f", ring->format(w.f)}, {"a", ring->format(w.a)}, {"b", ring->format(w.b)}});
  Json out{{"ring", ring->describe()}, {"ideal", ideal_name(ideal)}, {"flat", cert.verdict}, {"witnesses", witnesses}};
  out["failing"] = cert.failing ? Json(ring->format(*cert.failing)) : Json(nullptr);
  out["schema"] = cert.schema;
  return out;
}

inline FlatnessCertificate certificate_from_json(const RingPtr& ring, const Json& j) {
  FlatnessCertificate cert;
  cert.verdict = j.at("flat").get<bool>();
  for (const auto& w : j.at("witnesses"))
    cert.witnesses.push_back({parse_element(ring, w.at("f").get<std::string>()),
                              parse_element(ring, w.at("a").get<std::string>()),
                              parse_element(ring, w.at("b").get<std::string>())});
  if (!j.at("failing").is_null()) cert.failing = parse_element(ring, j.at("failing").get<std::string>());
  cert.schema = j.at("schema").get<std::string>();
  return cert;
}

inline Json to_json(const Ideal& ideal, const ProjectivityVerdict& v) {
  Json out{{"projective", v.projective}};
  out["generator"] = v.generator ? Json(ideal.ring()->format(*v.generator)) : Json(nullptr);
  out["reason"] = v.reason;
  return out;
}

// ---- S-rings -------------------------------------------------------------------------

inline Json to_json(const SpectrumPoset& spec, const SringCertificate& cert) {
  const RingPtr& ring = spec.ring();
  Json dc = Json::array();
  for (const auto& d : cert.double_closed)
    dc.push_back(Json{{"set", set_to_json(spec, d.set)}, {"idempotent", ring->format(d.idempotent)}});
  Json out{{"ring", ring->describe()},
           {"pass", cert.pass},
           {"conditions",
            Json{{"zariski_closed_genstable_open", cert.zariski_closed_genstable_open},
                 {"patch_closed_bistable_open", cert.patch_closed_bistable_open},
                 {"flat_closed_specstable_open", cert.flat_closed_specstable_open},
                 {"double_closed_are_idempotent_loci", cert.double_closed_are_idempotent_loci}}},
           {"double_closed", dc},
           {"failed_condition", cert.failed_condition}};
  out["counterexample"] = cert.counterexample ? set_to_json(spec, *cert.counterexample) : Json(nullptr);
  return out;
}

inline SringCertificate sring_certificate_from_json(const SpectrumPoset& spec, const Json& j) {
  SringCertificate cert;
  cert.pass = j.at("pass").get<bool>();
  const auto& c = j.at("conditions");
  cert.zariski_closed_genstable_open = c.at("zariski_closed_genstable_open").get<bool>();
  cert.patch_closed_bistable_open = c.at("patch_closed_bistable_open").get<bool>();
  cert.flat_closed_specstable_open = c.at("flat_closed_specstable_open").get<bool>();
  cert.double_closed_are_idempotent_loci = c.at("double_closed_are_idempotent_loci").get<bool>();
  for (const auto& d : j.at("double_closed"))
    cert.double_closed.push_back(
        {set_from_json(spec, d.at("set")), parse_element(spec.ring(), d.at("idempotent").get<std::string>())});
  cert.failed_condition = j.at("failed_condition").get<std::string>();
  if (!j.at("counterexample").is_null()) cert.counterexample = set_from_json(spec, j.at("counterexample"));
  return cert;
}

inline Json to_json(const SpectrumPoset& spec, const ChainConditionTrace& t) {
  auto sets = [&](const std::vector<PointSet>& v) {
    Json out = Json::array();
    for (auto s : v) out.push_back(set_to_json(spec, s));
    return out;
  };
  return Json{{"ring", spec.ring()->describe()},
              {"X", set_to_json(spec, t.x)},
              {"J", ideal_name(t.j)},
              {"family", sets(t.family)},
              {"longest_chain", t.longest_chain},
              {"acc", t.acc},
              {"dcc", t.dcc},
              {"pairs_checked", t.pairs_checked},
              {"pair_invariants_hold", t.pair_invariants_hold},
              {"E_sets", sets(t.e_sets)},
              {"F_sets", sets(t.f_sets)},
              {"chain_invariants_hold", t.chain_invariants_hold},
              {"conclusion_holds", t.conclusion_holds}};
}

inline Json to_json(const RingPtr& ring, const StabilizationReport& r) {
  Json out{{"stabilized", r.stabilized}, {"status", r.stabilized ? "Stabilized" : "NotStabilizedWithinBudget"}};
  out["index"] = r.index;
  out["value"] = r.value ? Json(ring->format(*r.value)) : Json(nullptr);
  out["last_distinct"] = r.last_distinct ? Json::array({ring->format(r.last_distinct->first), ring->format(r.last_distinct->second)})
                                         : Json(nullptr);
  out["checked_prefix_length"] = r.checked_prefix_length;
  out["proof"] = r.proof;
  return out;
}

// ---- harness reports -----------------------------------------------------------------

inline Json to_json(const TheoremReport& r) {
  Json facts = Json::object();
  for (const auto& [k, v] : r.facts) facts[k] = v;
  Json out{{"theorem", r.theorem}, {"ring", r.ring}, {"verdict", verdict_name(r.verdict)}, {"detail", r.detail}, {"facts", facts}};
  if (r.counterexample)
    out["counterexample"] =
        Json{{"kind", r.counterexample->kind}, {"points", r.counterexample->points}, {"items", r.counterexample->items}};
  else
    out["counterexample"] = nullptr;
  return out;
}

inline Json to_json(const CorpusReport& c) {
  Json reports = Json::array();
  for (const auto& r : c.reports) reports.push_back(to_json(r));
  return Json{{"summary",
               Json{{"total", c.reports.size()},
                    {"pass", c.count(Verdict::Pass)},
                    {"fail", c.count(Verdict::Fail)},
                    {"skipped", c.count(Verdict::Skipped)}}},
              {"reports", reports}};
}

// ---- DOT -----------------------------------------------------------------------------

inline std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

/// Hasse diagram of the specialization order, edges pointing from the
/// smaller prime to the larger one.
inline std::string export_dot(const SpectrumPoset& spec) {
  std::ostringstream out;
  out << "digraph spectrum {\n  rankdir=BT;\n";
  for (std::size_t i = 0; i < spec.size(); ++i) out << "  n" << i << " [label=\"" << dot_escape(spec.name(i)) << "\"];\n";
  for (auto [i, j] : spec.hasse_edges()) out << "  n" << i << " -> n" << j << ";\n";
  out << "}\n";
  return out.str();
}

inline std::string export_dot(const RingPtr& ring) { return export_dot(enumerate_spectrum(ring)); }

}  // namespace flatspec
