#include <gtest/gtest.h>

#include "flatspec/spectrum.hpp"

using namespace flatspec;

namespace {

std::vector<std::string> names(const SpectrumPoset& spec, PointSet s) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < spec.size(); ++i)
    if (s.contains(i)) out.push_back(spec.name(i));
  return out;
}

PointSet by_name(const SpectrumPoset& spec, std::initializer_list<const char*> ns) {
  PointSet s;
  for (auto n : ns)
    for (std::size_t i = 0; i < spec.size(); ++i)
      if (spec.name(i) == n) s.insert(i);
  return s;
}

std::vector<std::vector<std::string>> family_names(const SpectrumPoset& spec, const ClosedFamily& f) {
  std::vector<std::vector<std::string>> out;
  for (auto s : f.sets) out.push_back(names(spec, s));
  std::sort(out.begin(), out.end());
  return out;
}

const RingPtr& mixed() {
  static const RingPtr r = Ring::product({Ring::localized_integers(2), Ring::modular_integers(3)});
  return r;
}

}  // namespace

TEST(Spectrum, Z12) {
  const auto spec = enumerate_spectrum(Ring::modular_integers(12));
  EXPECT_EQ(names(spec, spec.full()), (std::vector<std::string>{"(2)", "(3)"}));
  EXPECT_TRUE(spec.strict_order().empty());
  for (const auto& p : spec.points()) {
    EXPECT_TRUE(p.is_minimal);
    EXPECT_TRUE(p.is_maximal);
  }
}

TEST(Spectrum, FieldAndLocal) {
  const auto gf = enumerate_spectrum(Ring::galois_field(4));
  EXPECT_EQ(names(gf, gf.full()), (std::vector<std::string>{"(0)"}));
  const auto zl = enumerate_spectrum(Ring::localized_integers(2));
  EXPECT_EQ(names(zl, zl.full()), (std::vector<std::string>{"(0)", "(2)"}));
  ASSERT_EQ(zl.strict_order().size(), 1u);
  EXPECT_EQ(zl.name(zl.strict_order()[0].first), "(0)");
  EXPECT_EQ(zl.name(zl.strict_order()[0].second), "(2)");
}

TEST(Spectrum, MixedProduct) {
  const auto spec = enumerate_spectrum(mixed());
  EXPECT_EQ(spec.size(), 3u);
  EXPECT_EQ(names(spec, spec.minimal_points()), (std::vector<std::string>{"(0) x (1)", "(1) x (0)"}));
  EXPECT_EQ(names(spec, spec.maximal_points()), (std::vector<std::string>{"(2) x (1)", "(1) x (0)"}));
  EXPECT_EQ(spec.hasse_edges().size(), 1u);
}

TEST(Spectrum, BruteForceAgreesOnFiniteRings) {
  for (auto r : {Ring::modular_integers(12), Ring::modular_integers(30), Ring::poly_quotient(2, {0, 1, 1}),
                 Ring::product({Ring::modular_integers(4), Ring::galois_field(4)})}) {
    const auto a = enumerate_spectrum(r), b = enumerate_spectrum_bruteforce(r);
    ASSERT_EQ(a.size(), b.size()) << r->describe();
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_TRUE(b.index_of(a[i].ideal).has_value());
  }
}

TEST(Spectrum, EvBitsHasNoEnumeration) {
  try {
    enumerate_spectrum(Ring::eventually_constant_bits());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnsupportedForPresentation);
  }
}

TEST(Spectrum, TooLarge) {
  // 65 copies of Z/2: one point past the limit
  std::vector<RingPtr> factors(65, Ring::modular_integers(2));
  try {
    enumerate_spectrum(Ring::product(factors));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SpectrumTooLarge);
  }
}

TEST(Loci, Vanishing) {
  auto z12 = Ring::modular_integers(12);
  const auto spec = enumerate_spectrum(z12);
  EXPECT_EQ(names(spec, vanishing_locus(spec, principal_ideal(z12, z12->from_integer(4)))),
            (std::vector<std::string>{"(2)"}));
  EXPECT_EQ(vanishing_locus(spec, zero_ideal(z12)), spec.full());
  EXPECT_TRUE(vanishing_locus(spec, unit_ideal(z12)).empty());
  EXPECT_EQ(nonvanishing_locus(spec, z12->from_integer(4)), spec.complement(vanishing_locus(spec, z12->from_integer(4))));
}

TEST(Loci, FlatPointClosure) {
  const auto zl = enumerate_spectrum(Ring::localized_integers(2));
  EXPECT_EQ(names(zl, flat_point_closure(zl, *zl.index_of(zl[1].ideal))), (std::vector<std::string>{"(0)", "(2)"}));
  const auto z12 = enumerate_spectrum(Ring::modular_integers(12));
  EXPECT_EQ(names(z12, flat_point_closure(z12, 0)), (std::vector<std::string>{"(2)"}));
  for (std::size_t i = 0; i < zl.size(); ++i) EXPECT_TRUE(flat_point_closure(zl, i).contains(i));
}

TEST(Loci, Stability) {
  const auto zl = enumerate_spectrum(Ring::localized_integers(2));
  EXPECT_TRUE(is_stable_generalization(zl, by_name(zl, {"(0)"})));
  EXPECT_TRUE(is_stable_generalization(zl, PointSet{}));
  EXPECT_TRUE(is_stable_specialization(zl, PointSet{}));
  EXPECT_FALSE(is_stable_generalization(zl, by_name(zl, {"(2)"})));
  EXPECT_TRUE(is_stable_specialization(zl, by_name(zl, {"(2)"})));
}

TEST(Loci, Operators) {
  const auto zl = enumerate_spectrum(Ring::localized_integers(2));
  EXPECT_EQ(f_operator(zl, by_name(zl, {"(2)"})), zl.full());
  EXPECT_TRUE(f_operator(zl, PointSet{}).empty());
  EXPECT_EQ(z_operator(zl, by_name(zl, {"(0)"})), zl.full());
  EXPECT_TRUE(z_operator(zl, PointSet{}).empty());
  const auto m = enumerate_spectrum(mixed());
  EXPECT_EQ(f_operator(m, by_name(m, {"(2) x (1)"})), by_name(m, {"(0) x (1)", "(2) x (1)"}));
  EXPECT_EQ(z_operator(m, by_name(m, {"(0) x (1)"})), by_name(m, {"(0) x (1)", "(2) x (1)"}));
}

TEST(Topology, LocalFlatFamily) {
  const auto zl = enumerate_spectrum(Ring::localized_integers(2));
  EXPECT_EQ(family_names(zl, closed_family(zl, Topology::Flat)),
            (std::vector<std::vector<std::string>>{{}, {"(0)"}, {"(0)", "(2)"}}));
  EXPECT_EQ(family_names(zl, closed_family(zl, Topology::Zariski)),
            (std::vector<std::vector<std::string>>{{}, {"(0)", "(2)"}, {"(2)"}}));
}

TEST(Topology, SmallFamilies) {
  const auto z12 = enumerate_spectrum(Ring::modular_integers(12));
  EXPECT_EQ(closed_family(z12, Topology::Patch).sets.size(), 4u);
  const auto gf = enumerate_spectrum(Ring::galois_field(4));
  EXPECT_EQ(family_names(gf, closed_family(gf, Topology::Zariski)),
            (std::vector<std::vector<std::string>>{{}, {"(0)"}}));
}

TEST(Topology, RoutesAgree) {
  for (auto r : {Ring::modular_integers(12), Ring::localized_integers(3), mixed(), Ring::modular_integers(30),
                 Ring::product({Ring::localized_integers(2), Ring::localized_integers(5)})}) {
    const auto spec = enumerate_spectrum(r);
    for (auto t : {Topology::Zariski, Topology::Flat, Topology::Patch})
      EXPECT_EQ(closed_family(spec, t).sets, closed_family_by_union_closure(spec, t).sets) << r->describe();
    EXPECT_EQ(flat_family_from_ideal_basis(spec).sets, closed_family(spec, Topology::Flat).sets) << r->describe();
  }
}

TEST(Topology, ZariskiClosedMatchesVanishingLoci) {
  const auto spec = enumerate_spectrum(mixed());
  const auto fam = closed_family(spec, Topology::Zariski);
  for (std::uint64_t m = 0; m < 8; ++m) EXPECT_EQ(fam.contains(PointSet{m}), is_zariski_closed(spec, PointSet{m}));
}
