#pragma once

// Command layer of the `flatspec` tool. Exit status: 0 success, 1 a
// mathematical check failed (a counterexample is printed), 2 usage or input
// error.

#include <fstream>
#include <iterator>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "flatspec/json_io.hpp"

namespace flatspec {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

namespace detail {

inline void emit(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

inline Ideal ideal_from_text(const RingPtr& ring, const std::string& text) {
  if (ring->kind() == RingKind::EventuallyConstantBits && text == "Fin") return finitely_supported_ideal(ring);
  const auto gens = parse_element_list(ring, text);
  return ideal_from_generators(ring, gens);
}

inline PointSet points_from_names(const SpectrumPoset& spec, const std::vector<std::string>& names) {
  PointSet s;
  for (const auto& n : names) {
    bool found = false;
    for (std::size_t i = 0; i < spec.size() && !found; ++i)
      if (spec.name(i) == n) {
        s.insert(i);
        found = true;
      }
    if (!found) {
      std::string known;
      for (std::size_t i = 0; i < spec.size(); ++i) known += (i ? ", " : "") + spec.name(i);
      throw Error(ErrorCode::InvalidElement, "no prime named '" + n + "' (points: " + known + ")");
    }
  }
  return s;
}

inline int cmd_spec(const RingPtr& ring, std::ostream& out) {
  emit(out, to_json(enumerate_spectrum(ring)));
  return kExitOk;
}

inline int cmd_topology(const RingPtr& ring, const std::string& which, std::ostream& out) {
  const auto spec = enumerate_spectrum(ring);
  Topology t = Topology::Zariski;
  if (which == "flat") t = Topology::Flat;
  if (which == "patch") t = Topology::Patch;
  emit(out, to_json(spec, closed_family(spec, t)));
  return kExitOk;
}

inline int cmd_flat(const RingPtr& ring, const std::string& ideal_text, std::ostream& out) {
  const Ideal ideal = ideal_from_text(ring, ideal_text);
  const auto cert = is_cyclic_flat(ideal);
  Json j = to_json(ideal, cert);
  j["certificate_verified"] = verify_certificate(ideal, cert);
  j["projectivity"] = to_json(ideal, is_cyclic_projective(ideal));
  emit(out, j);
  // a false verdict is an answer, not a failed check
  return j["certificate_verified"].get<bool>() ? kExitOk : kExitCheckFailed;
}

inline int cmd_sring(const RingPtr& ring, std::ostream& out) {
  if (ring->kind() == RingKind::EventuallyConstantBits) {
    const auto chain = boolean_nonexample_chain(ring);
    const auto report = check_chain_stabilization(chain);
    Json j{{"ring", ring->describe()}, {"sring", false}, {"chain", to_json(ring, report)}};
    j["chain"]["schema"] = chain.schema();
    emit(out, j);
    return report.stabilized ? kExitCheckFailed : kExitOk;
  }
  const auto spec = enumerate_spectrum(ring);
  const auto cert = sring_certificate_finite(spec);
  Json j = to_json(spec, cert);
  bool ok = cert.pass;
  if (ring->is_explicit() && ring->size() <= 64) {
    const auto cycle = find_nonstabilizing_cycle(ring);
    Json c = Json::array();
    if (cycle)
      for (const auto& e : *cycle) c.push_back(ring->format(e));
    j["chain_cycle"] = cycle ? c : Json(nullptr);
    ok = ok && !cycle;
  }
  emit(out, j);
  return ok ? kExitOk : kExitCheckFailed;
}

inline int cmd_chain_conditions(const RingPtr& ring, const std::string& which, const std::vector<std::string>& names,
                                std::ostream& out) {
  const auto spec = enumerate_spectrum(ring);
  PointSet x;
  if (which == "min") {
    x = spec.minimal_points();
  } else if (which == "max") {
    x = spec.maximal_points();
  } else {
    if (names.empty()) throw Error(ErrorCode::InvalidElement, "--X custom needs at least one --point");
    x = points_from_names(spec, names);
  }
  try {
    const auto trace = chain_condition_check(spec, x);
    Json j = to_json(spec, trace);
    emit(out, j);
    return trace.conclusion_holds && trace.pair_invariants_hold ? kExitOk : kExitCheckFailed;
  } catch (const HypothesisViolated& e) {
    emit(out, Json{{"ring", ring->describe()},
                   {"X", set_to_json(spec, x)},
                   {"error", "HypothesisViolated"},
                   {"message", e.detail()},
                   {"witness", spec.name(e.witness())}});
    return kExitCheckFailed;
  }
}

inline int cmd_verify(const RingPtr& ring, const std::string& theorem, std::ostream& out) {
  CorpusReport report;
  if (theorem.empty())
    report.reports = verify_all(ring);
  else
    report.reports.push_back(run_verifier(theorem, ring));
  emit(out, to_json(report));
  return report.failures() == 0 ? kExitOk : kExitCheckFailed;
}

inline int cmd_corpus(const std::string& path, bool sequential, std::ostream& out) {
  std::string text(kDefaultCorpus);
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::InvalidPresentation, "cannot read corpus file '" + path + "'");
    text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  const auto report = run_corpus(parse_corpus(text), !sequential);
  emit(out, to_json(report));
  return report.failures() == 0 ? kExitOk : kExitCheckFailed;
}

}  // namespace detail

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Prime spectra, flat cyclic quotients and S-ring checks for small rings", "flatspec"};
  app.require_subcommand(1);

  std::string ring_text, which = "zariski", ideal_text, x_mode = "min", theorem, corpus_path;
  std::vector<std::string> point_names;
  bool sequential = false;

  auto with_ring = [&](CLI::App* sub) {
    sub->add_option("--ring", ring_text, "ring expression, e.g. \"Zloc(2) * Z/3\"")->required();
    return sub;
  };
  auto* spec_cmd = with_ring(app.add_subcommand("spec", "prime spectrum with its order"));
  auto* topo_cmd = with_ring(app.add_subcommand("topology", "closed sets of a topology on Spec"));
  topo_cmd->add_option("--which", which, "zariski, flat or patch")
      ->check(CLI::IsMember({"zariski", "flat", "patch"}));
  auto* flat_cmd = with_ring(app.add_subcommand("flat", "flatness and projectivity of R/I"));
  flat_cmd->add_option("--ideal", ideal_text, "comma-separated generators (or Fin on EvBits)")->required();
  auto* sring_cmd = with_ring(app.add_subcommand("sring", "S-ring certificate"));
  auto* chain_cmd = with_ring(app.add_subcommand("chain-conditions", "chain conditions on the sets X meet V(f)"));
  chain_cmd->add_option("--X", x_mode, "min, max or custom")->check(CLI::IsMember({"min", "max", "custom"}));
  chain_cmd->add_option("--point", point_names, "prime name for --X custom (repeatable)");
  auto* verify_cmd = with_ring(app.add_subcommand("verify", "run the verifiers on one ring"));
  verify_cmd->add_option("--theorem", theorem, "verifier id")->check(CLI::IsMember(theorem_ids()));
  auto* corpus_cmd = app.add_subcommand("corpus", "run every verifier on a corpus file (default corpus if omitted)");
  corpus_cmd->add_option("file", corpus_path, "corpus file");
  corpus_cmd->add_flag("--sequential", sequential, "run entries one at a time");
  auto* dot_cmd = with_ring(app.add_subcommand("export-dot", "Hasse diagram of Spec as DOT"));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream help_out, help_err;
    const int code = app.exit(e, help_out, help_err);
    out << help_out.str();
    err << help_err.str();
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (corpus_cmd->parsed()) return detail::cmd_corpus(corpus_path, sequential, out);
    const RingPtr ring = parse_ring(ring_text);
    if (spec_cmd->parsed()) return detail::cmd_spec(ring, out);
    if (topo_cmd->parsed()) return detail::cmd_topology(ring, which, out);
    if (flat_cmd->parsed()) return detail::cmd_flat(ring, ideal_text, out);
    if (sring_cmd->parsed()) return detail::cmd_sring(ring, out);
    if (chain_cmd->parsed()) return detail::cmd_chain_conditions(ring, x_mode, point_names, out);
    if (verify_cmd->parsed()) return detail::cmd_verify(ring, theorem, out);
    if (dot_cmd->parsed()) {
      out << export_dot(ring);
      return kExitOk;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args, out, err);
}

}  // namespace flatspec
