#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "flatspec/cli.hpp"

using namespace flatspec;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

Json cli_json(std::vector<std::string> args) { return Json::parse(cli(std::move(args)).out); }

// Runs the built binary; returns its exit status.
int binary_exit(const std::string& args) {
  const std::string cmd = std::string(FLATSPEC_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string binary_stdout(const std::string& args) {
  const std::string cmd = std::string(FLATSPEC_CLI_PATH) + " " + args;
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return out;
  std::array<char, 512> buf{};
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  pclose(pipe);
  return out;
}

}  // namespace

TEST(Dsl, Rings) {
  EXPECT_EQ(parse_ring("Z/12")->kind(), RingKind::ModularInt);
  const auto p = parse_ring("Zloc(2) * Z/3");
  ASSERT_EQ(p->kind(), RingKind::Product);
  EXPECT_EQ(p->factors()[0]->kind(), RingKind::LocalizedIntegers);
  EXPECT_EQ(p->factors()[1]->modulus(), 3);
  EXPECT_EQ(parse_ring("GF(8)")->modulus_polynomial(), (Polynomial{1, 1, 0, 1}));
  EXPECT_EQ(parse_ring("  Z/2[x]/( x^2 + x )")->describe(), "Z/2[x]/(x^2+x)");
  EXPECT_EQ(parse_ring("Z/3[x]/(x^2-1)")->describe(), "Z/3[x]/(x^2+2)");
  EXPECT_EQ(parse_ring("Z/2 * Z/3 * Z/5")->factors().size(), 3u);
  EXPECT_EQ(parse_ring("(Z/2 * Z/3) * Z/5")->factors().size(), 2u);
}

TEST(Dsl, PrintParseIdentity) {
  for (auto text : {"Z/12", "GF(4)", "GF(27)", "Z/2[x]/(x^2+x)", "Z/5[x]/(x^3+2x+1)", "Zloc(2)", "EvBits",
                    "Zloc(2) * Z/3", "(Z/2 * Z/3) * Z/5", "Z/2 * (Z/3 * Zloc(7))"}) {
    const auto r = parse_ring(text);
    EXPECT_EQ(print_ring(*r), text);
    EXPECT_EQ(print_ring(*parse_ring(print_ring(*r))), print_ring(*r));
  }
}

TEST(Dsl, Errors) {
  auto code = [](const char* text) {
    try {
      parse_ring(text);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::Overflow;
  };
  EXPECT_EQ(code("GF(6)"), ErrorCode::NotPrimePower);
  EXPECT_EQ(code("Zloc(4)"), ErrorCode::NotPrime);
  EXPECT_EQ(code("Z/4[x]/(x^2)"), ErrorCode::NotPrime);
  EXPECT_EQ(code("Z/0"), ErrorCode::InvalidPresentation);
  EXPECT_EQ(code("Z/2[x]/(2x^2)"), ErrorCode::InvalidPresentation);
  EXPECT_EQ(code("EvBits * Z/2"), ErrorCode::UnsupportedForPresentation);
  EXPECT_EQ(code("Q"), ErrorCode::ParseError);
  EXPECT_EQ(code(""), ErrorCode::ParseError);
  EXPECT_EQ(code("Z/99999999999999999999"), ErrorCode::ParseError);
  try {
    parse_ring("Z/12 * GF(");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 10u);
    EXPECT_EQ(e.expected(), (std::vector<std::string>{"<digits>"}));
  }
}

TEST(Dsl, ElementLiterals) {
  const auto z12 = parse_ring("Z/12");
  EXPECT_EQ(parse_element(z12, "-1"), z12->from_integer(11));
  const auto q = parse_ring("Z/2[x]/(x^2+x)");
  EXPECT_EQ(q->format(parse_element(q, "x+1")), "x+1");
  EXPECT_EQ(q->format(parse_element(q, "x^2")), "x");
  const auto zl = parse_ring("Zloc(2)");
  EXPECT_EQ(parse_element(zl, "4/6"), zl->fraction(2, 3));
  EXPECT_THROW(parse_element(zl, "1/2"), ParseError);
  const auto ev = parse_ring("EvBits");
  EXPECT_EQ(parse_element(ev, "{1,3}:0"), ev->bits({1, 3}, false));
  EXPECT_EQ(parse_element(ev, "{}:1"), ev->one());
  EXPECT_THROW(parse_element(ev, "{0}:0"), ParseError);
  const auto p = parse_ring("Z/2 * Z/3");
  const auto list = parse_element_list(p, "(1, 0),(0, 2)");
  ASSERT_EQ(list.size(), 2u);
  EXPECT_EQ(p->format(list[1]), "(0, 2)");
  EXPECT_TRUE(parse_element_list(p, "").empty());
  EXPECT_THROW(parse_element_list(p, "(1, 0),"), ParseError);
  EXPECT_THROW(parse_element_list(p, "(1)"), ParseError);
}

TEST(Cli, Spec) {
  const auto r = cli({"spec", "--ring", "Z/12"});
  ASSERT_EQ(r.code, 0);
  const auto j = Json::parse(r.out);
  ASSERT_EQ(j["points"].size(), 2u);
  EXPECT_EQ(j["points"][0]["name"], "(2)");
  EXPECT_EQ(j["points"][1]["name"], "(3)");
  EXPECT_TRUE(j["points"][0]["minimal"].get<bool>() && j["points"][0]["maximal"].get<bool>());
  EXPECT_TRUE(j["order"].empty());
}

TEST(Cli, Flat) {
  const auto j = cli_json({"flat", "--ring", "Z/4", "--ideal", "2"});
  EXPECT_FALSE(j["flat"].get<bool>());
  EXPECT_EQ(j["failing"], "2");
  EXPECT_TRUE(j["certificate_verified"].get<bool>());
  const auto fin = cli_json({"flat", "--ring", "EvBits", "--ideal", "Fin"});
  EXPECT_TRUE(fin["flat"].get<bool>());
  EXPECT_FALSE(fin["projectivity"]["projective"].get<bool>());
  const auto gens = cli_json({"flat", "--ring", "Zloc(2) * Z/3", "--ideal", "(0, 1)"});
  EXPECT_TRUE(gens["flat"].get<bool>());
  EXPECT_EQ(gens["projectivity"]["generator"], "(0, 1)");
}

TEST(Cli, VerifyAndTopology) {
  const auto r = cli({"verify", "--ring", "Zloc(2)", "--theorem", "closure-operators"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(Json::parse(r.out)["reports"][0]["verdict"], "pass");
  const auto t = cli_json({"topology", "--ring", "Zloc(2)", "--which", "flat"});
  EXPECT_EQ(t["count"], 3);
  EXPECT_EQ(cli({"verify", "--ring", "Z/12"}).code, 0);
}

TEST(Cli, SringAndChains) {
  const auto s = cli_json({"sring", "--ring", "Z/12"});
  EXPECT_TRUE(s["pass"].get<bool>());
  EXPECT_EQ(s["double_closed"].size(), 4u);
  EXPECT_TRUE(s["chain_cycle"].is_null());
  const auto ev = cli({"sring", "--ring", "EvBits"});
  EXPECT_EQ(ev.code, 0);
  EXPECT_EQ(Json::parse(ev.out)["chain"]["status"], "NotStabilizedWithinBudget");
  const auto bad = cli({"chain-conditions", "--ring", "Zloc(2) * Z/3", "--X", "custom", "--point", "(0) x (1)"});
  EXPECT_EQ(bad.code, 1);
  EXPECT_EQ(Json::parse(bad.out)["witness"], "(1) x (0)");
  EXPECT_EQ(cli({"chain-conditions", "--ring", "Z/12", "--X", "max"}).code, 0);
  EXPECT_EQ(cli({"chain-conditions", "--ring", "Z/12", "--X", "custom", "--point", "(5)"}).code, 2);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(cli({}).code, 2);
  EXPECT_EQ(cli({"spec"}).code, 2);
  EXPECT_EQ(cli({"spec", "--ring", "GF(6)"}).code, 2);
  EXPECT_EQ(cli({"spec", "--ring", "EvBits"}).code, 2);
  EXPECT_EQ(cli({"topology", "--ring", "Z/4", "--which", "etale"}).code, 2);
  EXPECT_EQ(cli({"verify", "--ring", "Z/4", "--theorem", "no-such-check"}).code, 2);
  EXPECT_EQ(cli({"--help"}).code, 0);
  const auto err = cli({"spec", "--ring", "Z/12 +"});
  EXPECT_NE(err.err.find("position 5"), std::string::npos);
}

TEST(Cli, CorpusFiles) {
  EXPECT_EQ(cli({"corpus"}).code, 0);
  const std::string dir = FLATSPEC_CORPUS_DIR;
  EXPECT_EQ(cli({"corpus", dir + "/default.corpus"}).code, 0);
  const std::string bad = testing::TempDir() + "mismatch.corpus";
  std::ofstream(bad) << "ring = Z/12\nexpect.spectrum_size = 3\n";
  const auto r = cli({"corpus", bad});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(Json::parse(r.out)["summary"]["fail"], 1);
  EXPECT_EQ(cli({"corpus", testing::TempDir() + "does-not-exist.corpus"}).code, 2);
  const std::string unparsable = testing::TempDir() + "bad.corpus";
  std::ofstream(unparsable) << "ring = Z/12 *\n";
  const auto p = cli({"corpus", unparsable});
  EXPECT_EQ(p.code, 2);
  EXPECT_NE(p.err.find("entry 0"), std::string::npos);
}

TEST(Cli, CorpusFileMatchesBuiltIn) {
  std::ifstream in(std::string(FLATSPEC_CORPUS_DIR) + "/default.corpus");
  std::stringstream text;
  text << in.rdbuf();
  const auto a = parse_corpus(text.str()), b = parse_corpus(kDefaultCorpus);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].ring, b[i].ring);
    EXPECT_EQ(a[i].expected.spectrum_size, b[i].expected.spectrum_size);
    EXPECT_EQ(a[i].expected.flat_ideal_count, b[i].expected.flat_ideal_count);
    EXPECT_EQ(a[i].expected.reduced, b[i].expected.reduced);
  }
}

TEST(Json, SpectrumRoundTrip) {
  for (auto text : {"Z/12", "Zloc(2) * Z/3", "Z/2[x]/(x^2+x)", "GF(4)"}) {
    const auto spec = enumerate_spectrum(parse_ring(text));
    const Json j = to_json(spec);
    EXPECT_EQ(spectrum_from_json(Json::parse(j.dump())), summarize(spec)) << text;
  }
}

TEST(Json, CertificateRoundTrip) {
  for (auto [ring_text, gens] : std::vector<std::pair<std::string, std::string>>{
           {"Z/6", "2"}, {"Z/4", "2"}, {"Zloc(2) * Z/3", "(0, 1)"}, {"Zloc(2)", "4/3"}, {"Z/2[x]/(x^2+x)", "x"}}) {
    const auto ring = parse_ring(ring_text);
    const Ideal ideal = ideal_from_generators(ring, parse_element_list(ring, gens));
    const auto cert = is_cyclic_flat(ideal);
    const Json j = Json::parse(to_json(ideal, cert).dump());
    EXPECT_EQ(certificate_from_json(ring, j), cert) << ring_text;
  }
  const auto ev = parse_ring("EvBits");
  const Ideal fin = finitely_supported_ideal(ev);
  const auto cert = is_cyclic_flat(fin);
  EXPECT_EQ(certificate_from_json(ev, Json::parse(to_json(fin, cert).dump())), cert);
}

TEST(Json, SringCertificateRoundTrip) {
  for (auto text : {"Z/12", "Zloc(2) * Z/3", "Z/2[x]/(x^2+x)", "Zloc(2)"}) {
    const auto spec = enumerate_spectrum(parse_ring(text));
    const auto cert = sring_certificate_finite(spec);
    EXPECT_EQ(sring_certificate_from_json(spec, Json::parse(to_json(spec, cert).dump())), cert) << text;
  }
}

TEST(Json, StableKeyOrder) {
  const auto a = cli({"verify", "--ring", "Zloc(2) * Z/3"}).out;
  const auto b = cli({"verify", "--ring", "Zloc(2) * Z/3"}).out;
  EXPECT_EQ(a, b);
  const auto j = Json::parse(a);
  EXPECT_EQ(j.begin().key(), "summary");
}

TEST(Dot, Shapes) {
  const auto zl = export_dot(parse_ring("Zloc(2)"));
  EXPECT_EQ(zl, "digraph spectrum {\n  rankdir=BT;\n  n0 [label=\"(0)\"];\n  n1 [label=\"(2)\"];\n  n0 -> n1;\n}\n");
  EXPECT_EQ(export_dot(parse_ring("GF(4)")), "digraph spectrum {\n  rankdir=BT;\n  n0 [label=\"(0)\"];\n}\n");
  const auto mixed = export_dot(parse_ring("Zloc(2)*Z/3"));
  EXPECT_EQ(std::count(mixed.begin(), mixed.end(), '>'), 1);
  EXPECT_EQ(std::count(mixed.begin(), mixed.end(), '['), 3);
}

TEST(Binary, ExitCodes) {
  EXPECT_EQ(binary_exit("spec --ring Z/12"), 0);
  EXPECT_EQ(binary_exit("spec --ring 'GF(6)'"), 2);
  EXPECT_EQ(binary_exit("frobnicate"), 2);
  EXPECT_EQ(binary_exit("chain-conditions --ring 'Zloc(2) * Z/3' --X custom --point '(0) x (1)'"), 1);
  EXPECT_EQ(binary_exit("flat --ring Z/4 --ideal 2"), 0);
}

TEST(Binary, DotIsByteStable) {
  const auto first = binary_stdout("export-dot --ring 'Zloc(2) * Z/3 * Z/2[x]/(x^2+x)'");
  ASSERT_FALSE(first.empty());
  for (int i = 0; i < 3; ++i) EXPECT_EQ(binary_stdout("export-dot --ring 'Zloc(2) * Z/3 * Z/2[x]/(x^2+x)'"), first);
  EXPECT_EQ(first, export_dot(parse_ring("Zloc(2) * Z/3 * Z/2[x]/(x^2+x)")));
}

TEST(Binary, CorpusOutputIndependentOfScheduling) {
  EXPECT_EQ(binary_stdout("corpus"), binary_stdout("corpus --sequential"));
}
