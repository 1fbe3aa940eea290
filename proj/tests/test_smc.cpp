#include "support.hpp"

#include "tiltsmith/error.hpp"
#include "tiltsmith/modcat.hpp"

#include <gtest/gtest.h>

using namespace tiltsmith;
using namespace tiltsmith::testing;

TEST(Conditions, FixturesPass) {
  for (const char* name : {"c2", "semisimple", "a5", "a7", "a8"}) {
    const ABReport r = check_conditions_ab(fixture_by_name(name).collection);
    EXPECT_TRUE(r.pass()) << name << ": " << (r.failures.empty() ? "" : r.failures.front());
  }
}

TEST(Conditions, DuplicatedObjectFailsB) {
  const Fixture& f = fixture_a5();
  SMCollection c = f.collection;
  c.objects.push_back(c.objects[1]);
  const ABReport r = check_conditions_ab(c);
  EXPECT_TRUE(r.pass_a);
  EXPECT_FALSE(r.pass_b);
  ASSERT_FALSE(r.failures.empty());
  EXPECT_NE(r.failures.front().find("X_1, X_3"), std::string::npos) << r.failures.front();
}

TEST(Conditions, ShiftedCopyFailsA) {
  const Fixture& f = fixture_c2();
  const Complex k = Complex::stalk(f.reg->simple(0), 0);
  const ABReport r = check_conditions_ab(SMCollection{f.reg, {k, shift(k, -1)}, std::nullopt});
  EXPECT_FALSE(r.pass_a);
}

TEST(Conditions, NonSimpleEndFails) {
  const Fixture& f = fixture_a5();
  const Complex p = Complex::stalk(f.reg->projective(0), 0);
  const ABReport r = check_conditions_ab(SMCollection{f.reg, {p}, std::nullopt});
  EXPECT_FALSE(r.pass());
}

TEST(Conditions, HomTableMatchesModuleHoms) {
  // Degree-0 entries of the table are plain module Homs between stalks in
  // the same degree.
  const Fixture& f = fixture_a7();
  const ABReport r = check_conditions_ab(f.collection);
  for (const auto& e : r.table) {
    if (f.x_recipe[e.i] != f.x_recipe[e.j] || !e.dims.count(0)) continue;
    const ModuleRep mi = f.collection.objects[e.i].terms().begin()->second;
    const ModuleRep mj = f.collection.objects[e.j].terms().begin()->second;
    EXPECT_EQ(e.dims.at(0), hom_space(mi, mj).dim());
  }
}

TEST(Certificates, FixtureCertificatesVerify) {
  for (const char* name : {"c2", "semisimple", "a5", "a7", "a8"}) {
    const Fixture& f = fixture_by_name(name);
    const GenerationReport g = verify_generation(f.collection, f.certificate);
    EXPECT_TRUE(g.pass) << name << ": " << g.reason;
    EXPECT_TRUE(g.missing.empty());
  }
}

TEST(Certificates, MissingClaimIsReported) {
  const Fixture& f = fixture_a5();
  GenerationCertificate c = f.certificate;
  c.claims.pop_back();
  const GenerationReport g = verify_generation(f.collection, c);
  EXPECT_FALSE(g.pass);
  EXPECT_EQ(g.missing, std::vector<std::string>{"2"});
}

TEST(Certificates, WrongClaimIsRejected) {
  const Fixture& f = fixture_a5();
  GenerationCertificate c = f.certificate;
  std::swap(c.claims[1].simple_label, c.claims[2].simple_label);
  EXPECT_FALSE(verify_generation(f.collection, c).pass);
}

TEST(Certificates, ForwardReferenceIsRejected) {
  const Fixture& f = fixture_a5();
  GenerationCertificate c = f.certificate;
  c.steps[3].ref = 7;
  const GenerationReport g = verify_generation(f.collection, c);
  EXPECT_FALSE(g.pass);
  ASSERT_TRUE(g.failed_step.has_value());
  EXPECT_EQ(*g.failed_step, 3);
}

TEST(Certificates, SearchFindsOneForEachFixture) {
  for (const char* name : {"c2", "a5", "a7", "a8"}) {
    const Fixture& f = fixture_by_name(name);
    const auto c = auto_certificate(f.collection);
    ASSERT_TRUE(c.has_value()) << name;
    EXPECT_TRUE(verify_generation(f.collection, *c).pass) << name;
  }
}

namespace {

bool contains(const std::vector<StalkCandidate>& found, const std::vector<int>& s) {
  for (const auto& c : found)
    if (c.shifts == s) return true;
  return false;
}

}  // namespace

TEST(StalkSearch, A5ContainsChosenVector) {
  const Fixture& f = fixture_a5();
  const auto found = stalk_search(f.reg, f.y_modules, 2, 2);
  EXPECT_TRUE(contains(found, {0, 1, 1}));
  for (const auto& c : found) EXPECT_TRUE(c.report.pass());
}

TEST(StalkSearch, A7ContainsChosenVector) {
  const Fixture& f = fixture_a7();
  EXPECT_TRUE(contains(stalk_search(f.reg, f.y_modules, 2, 2), {0, 0, 1, 0}));
}

TEST(StalkSearch, A8ContainsChosenVector) {
  const Fixture& f = fixture_a8();
  EXPECT_TRUE(contains(stalk_search(f.reg, f.y_modules, 2, 4), {0, 0, 1, 0, 0}));
}

TEST(StalkSearch, BoxZeroWithDuplicatedImagesIsEmpty) {
  const Fixture& f = fixture_a5();
  EXPECT_TRUE(stalk_search(f.reg, {f.reg->simple(0), f.reg->simple(0)}, 0).empty());
}

TEST(StalkSearch, CheapCriteriaAgreeWithFullCheck) {
  // Survivors passed the cheap filter first.
  const Fixture& f = fixture_a5();
  for (const auto& c : stalk_search(f.reg, f.y_modules, 1)) EXPECT_TRUE(stalk_criteria(f.reg, f.y_modules, c.shifts).pass());
  EXPECT_TRUE(stalk_criteria(f.reg, f.y_modules, {0, 1, 1}).pass());
  EXPECT_FALSE(stalk_criteria(f.reg, f.y_modules, {0, 0, 0}).pass());
}

TEST(Derived, DualityAgainstProjectiveStalks) {
  for (const char* name : {"a5", "a7"}) {
    const Fixture& f = fixture_by_name(name);
    for (int a = 0; a < f.reg->count(); ++a) {
      const Complex p = Complex::stalk(f.reg->projective(a), 0);
      for (const auto& y : f.collection.objects) {
        EXPECT_TRUE(duality_check(p, y, -3, 3, f.reg)) << name;
        EXPECT_TRUE(duality_check(y, shift(p, 1), -3, 3, f.reg)) << name;
      }
    }
  }
}

TEST(Derived, DualityFailsBetweenNonPerfectStalks) {
  // Ext^1(k, k) != 0 but Hom(k, k[-1]) = 0.
  const Fixture& f = fixture_c2();
  const Complex k = Complex::stalk(f.reg->simple(0), 0);
  EXPECT_FALSE(duality_check(k, k, -1, 1, f.reg));
}
