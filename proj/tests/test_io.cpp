#include "support.hpp"

#include "tiltsmith/error.hpp"
#include "tiltsmith/io.hpp"

#include <gtest/gtest.h>

using namespace tiltsmith;
using namespace tiltsmith::testing;

TEST(Json, FieldElementsPrimeAndExtension) {
  const FieldPtr f3 = FqField::prime(3), f9 = FqField::builtin(9);
  EXPECT_EQ(fq_to_json(*f3, 2), json(2));
  EXPECT_EQ(fq_from_json(*f3, json(-1)), 2);
  for (int a = 0; a < 9; ++a) EXPECT_EQ(fq_from_json(*f9, fq_to_json(*f9, a)), a);
  EXPECT_EQ(fq_from_json(*f9, json::array({0, 1})), 3);  // x, little-endian
  EXPECT_THROW(fq_from_json(*f9, json("x")), Error);
  EXPECT_THROW(fq_from_json(*f9, json::array({0, 1, 1})), Error);
}

TEST(Json, AlgebraRoundTrip) {
  for (const char* name : {"c2", "a5", "a7"}) {
    const Fixture& f = fixture_by_name(name);
    const json j = algebra_to_json(*f.reg->algebra(), f.reg.get());
    const AlgebraPtr back = algebra_from_json(json::parse(j.dump()));
    EXPECT_TRUE(back->same_structure(*f.reg->algebra())) << name;
    EXPECT_EQ(back->sym_form(), f.reg->algebra()->sym_form());
    const RegistryPtr reg = registry_from_json(j, back);
    EXPECT_EQ(reg->labels(), f.reg->labels());
    EXPECT_EQ(reg->cartan(), f.reg->cartan());
  }
}

TEST(Json, RegistryWithoutSimplesIsFound) {
  const Fixture& f = fixture_a5();
  json j = algebra_to_json(*f.reg->algebra());
  const RegistryPtr reg = registry_from_json(j, algebra_from_json(j));
  EXPECT_EQ(reg->count(), 3);
}

TEST(Json, ModuleAndComplexRoundTrip) {
  const Fixture& f = fixture_a7();
  for (const auto& m : fixture_modules(f)) {
    const ModuleRep back = module_from_json(module_to_json(m), f.reg->algebra());
    EXPECT_EQ(back.actions(), m.actions());
  }
  for (const auto& x : f.collection.objects) {
    const Complex back = object_from_json(complex_to_json(x), f.reg);
    ASSERT_EQ(back.terms().size(), x.terms().size());
    for (const auto& [k, t] : x.terms()) EXPECT_EQ(back.term(k).actions(), t.actions());
  }
}

TEST(Json, ProjectiveTermsAreExpanded) {
  const Fixture& f = fixture_a5();
  const json j = {{"terms", {{"-1", {{"projectives", {"1", "2"}}}}, {"0", {{"projectives", {"k"}}}}}}};
  const Complex c = object_from_json(j, f.reg);
  EXPECT_EQ(c.term_dim(-1), 8);
  EXPECT_EQ(c.term_dim(0), 4);
  EXPECT_THROW(object_from_json(json{{"terms", {{"0", {{"projectives", {"nope"}}}}}}}, f.reg), Error);
}

TEST(Json, CertificateRoundTrip) {
  for (const char* name : {"a5", "a7", "a8"}) {
    const Fixture& f = fixture_by_name(name);
    const json j = certificate_to_json(f.certificate);
    const GenerationCertificate back = certificate_from_json(json::parse(j.dump()), f.reg->algebra()->field());
    EXPECT_EQ(certificate_to_json(back), j);
    EXPECT_TRUE(verify_generation(f.collection, back).pass) << name;
  }
}

TEST(Json, MalformedInputsAreConfigErrors) {
  const auto kind_of = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::Internal;
  };
  EXPECT_EQ(kind_of([] { algebra_from_json(json::object()); }), ErrorKind::Config);
  EXPECT_EQ(kind_of([] { algebra_from_json(json{{"field", {{"p", 4}}}, {"dim", 1}}); }), ErrorKind::Config);
  const Fixture& f = fixture_c2();
  EXPECT_EQ(kind_of([&] { module_from_json(json{{"dim", 1}, {"action", json::array()}}, f.reg->algebra()); }),
            ErrorKind::Config);
  // Action that is not a representation.
  EXPECT_EQ(kind_of([&] {
              module_from_json(json{{"dim", 1}, {"action", {{{1}}, {{0}}}}}, f.reg->algebra());
            }),
            ErrorKind::Config);
  EXPECT_EQ(kind_of([] { read_json_file(TILTSMITH_TEST_DATA "/malformed.json"); }), ErrorKind::Config);
  EXPECT_EQ(kind_of([] { read_json_file(TILTSMITH_TEST_DATA "/missing.json"); }), ErrorKind::Config);
}

TEST(Json, TiltingReportIsDeterministic) {
  const Fixture& f = fixture_a5();
  TiltingCaps one, four;
  four.threads = 4;
  EXPECT_EQ(tilting_report_to_json(build_tilting(f.collection, one)).dump(),
            tilting_report_to_json(build_tilting(f.collection, four)).dump());
}

TEST(Json, ShippedC2DataMatchesFixture) {
  const json a = read_json_file(TILTSMITH_TEST_DATA "/c2.json");
  const AlgebraPtr alg = algebra_from_json(a);
  EXPECT_TRUE(alg->same_structure(*fixture_c2().reg->algebra()));
  const RegistryPtr reg = registry_from_json(a, alg);
  const Complex k = object_from_json(read_json_file(TILTSMITH_TEST_DATA "/k.json"), reg);
  EXPECT_EQ(k.term_dim(0), 1);
}
