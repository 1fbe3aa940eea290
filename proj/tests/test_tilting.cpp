#include "support.hpp"

#include "tiltsmith/error.hpp"
#include "tiltsmith/modcat.hpp"

#include <gtest/gtest.h>

using namespace tiltsmith;
using namespace tiltsmith::testing;

namespace {

TiltingReport run(const SMCollection& c, int window = -1, int stages = 32) {
  TiltingCaps caps;
  caps.window = window;
  caps.stages = stages;
  caps.threads = 2;
  return build_tilting(c, caps);
}

SMCollection a5_shifted(const std::vector<int>& n) {
  const Fixture& f = fixture_a5();
  SMCollection c{f.reg, {}, n};
  for (std::size_t i = 0; i < n.size(); ++i) c.objects.push_back(syzygy_object(f.y_modules[i], n[i], *f.reg));
  return c;
}

int total_dim(const std::vector<std::vector<int>>& m) {
  int s = 0;
  for (const auto& r : m)
    for (int x : r) s += x;
  return s;
}

}  // namespace

TEST(Tilting, C2GammaIsTheInputAlgebra) {
  const Fixture& f = fixture_c2();
  const TiltingReport r = run(f.collection);
  ASSERT_EQ(r.status, TiltingStatus::Certified);
  ASSERT_TRUE(r.gamma);
  EXPECT_TRUE(algebras_isomorphic(*r.gamma, *f.reg->algebra()));
  EXPECT_EQ(r.symmetric_search, "found");
}

TEST(Tilting, SemisimpleStopsAtStageZero) {
  const Fixture& f = fixture_semisimple();
  const TiltingReport r = run(f.collection);
  ASSERT_EQ(r.status, TiltingStatus::Certified);
  for (std::size_t i = 0; i < r.summands.size(); ++i) {
    EXPECT_EQ(r.summands[i].terms().size(), 1u);
    for (const auto& st : r.history[i]) EXPECT_TRUE(st.z.empty());
  }
  EXPECT_EQ(r.gamma->dim(), 2);
}

TEST(Tilting, A5GammaMatchesOracle) {
  const TiltingReport r = run(fixture_a5().collection);
  ASSERT_EQ(r.status, TiltingStatus::Certified);
  EXPECT_EQ(r.gamma->dim(), 18);
  EXPECT_EQ(total_dim(r.gamma_cartan), 18);
  EXPECT_TRUE(equal_up_to_permutation(transpose_times_self(a5_decomposition()), r.gamma_cartan));
  EXPECT_TRUE(r.gamma_symmetric_witness.has_value());
}

TEST(Tilting, TTableVanishesOffDegreeZero) {
  const TiltingReport r = run(fixture_a7().collection);
  ASSERT_EQ(r.status, TiltingStatus::Certified);
  for (std::size_t i = 0; i < r.hom_tt.size(); ++i)
    for (std::size_t j = 0; j < r.hom_tt[i].size(); ++j)
      for (const auto& [m, d] : r.hom_tt[i][j])
        if (m != 0) EXPECT_EQ(d, 0) << i << "," << j << " m=" << m;
  for (std::size_t i = 0; i < r.hom_tx.size(); ++i)
    for (std::size_t j = 0; j < r.hom_tx[i].size(); ++j)
      for (const auto& [m, d] : r.hom_tx[i][j]) EXPECT_EQ(d, (i == j && m == 0) ? 1 : 0);
  EXPECT_TRUE(report_duality(r).ok());
}

TEST(Tilting, GammaCartanIsTransposedHomTable) {
  const TiltingReport r = run(fixture_a8().collection);
  ASSERT_EQ(r.status, TiltingStatus::Certified);
  for (std::size_t i = 0; i < r.gamma_cartan.size(); ++i)
    for (std::size_t j = 0; j < r.gamma_cartan.size(); ++j) {
      const auto& row = r.hom_tt[j][i];
      EXPECT_EQ(r.gamma_cartan[i][j], row.count(0) ? row.at(0) : 0) << i << "," << j;
    }
}

TEST(Tilting, GammaIsIndependentOfThreadCount) {
  TiltingCaps one, four;
  one.threads = 1;
  four.threads = 4;
  const TiltingReport a = build_tilting(fixture_a7().collection, one);
  const TiltingReport b = build_tilting(fixture_a7().collection, four);
  ASSERT_TRUE(a.gamma && b.gamma);
  EXPECT_EQ(a.gamma->structure_triples().size(), b.gamma->structure_triples().size());
  EXPECT_TRUE(a.gamma->same_structure(*b.gamma));
}

TEST(Tilting, UndersizedWindowIsInconclusive) {
  const TiltingReport r = run(a5_shifted({1, 2, 0}), 1);
  EXPECT_EQ(r.status, TiltingStatus::Inconclusive);
  EXPECT_FALSE(r.gamma);
}

TEST(Tilting, WiderWindowCertifiesTheSameShifts) {
  for (int w : {2, 3}) {
    const TiltingReport r = run(a5_shifted({1, 2, 0}), w);
    EXPECT_EQ(r.status, TiltingStatus::Certified) << w;
    if (r.gamma) EXPECT_EQ(r.gamma->dim(), 18);
  }
}

TEST(Tilting, EmptyWindowIsInconclusiveForNontrivialShifts) {
  EXPECT_EQ(run(fixture_a7().collection, 0).status, TiltingStatus::Inconclusive);
}

TEST(Tilting, StageCapIsInconclusive) {
  const TiltingReport r = run(fixture_a5().collection, -1, 1);
  EXPECT_EQ(r.status, TiltingStatus::Inconclusive);
  ASSERT_FALSE(r.reasons.empty());
  EXPECT_NE(r.reasons.front().find("stage cap"), std::string::npos);
}

TEST(Tilting, A5AllSurvivorsCertifyWithDerivedEquivalentGamma) {
  // Every shift vector that passes (a), (b) gives a tilting complex whose
  // endomorphism ring has the same number of simples and dimension 18.
  const Fixture& f = fixture_a5();
  for (const auto& c : stalk_search(f.reg, f.y_modules, 2)) {
    const TiltingReport r = run(c.collection);
    ASSERT_EQ(r.status, TiltingStatus::Certified);
    EXPECT_EQ(r.gamma->dim(), 18);
    EXPECT_EQ(r.gamma_registry->count(), 3);
  }
}

TEST(Tilting, NonStalkObjectIsAPreconditionError) {
  const Fixture& f = fixture_a5();
  const Complex k = Complex::stalk(f.reg->simple(0), 0);
  // A complex with cohomology in two degrees.
  std::map<int, ModuleRep> terms{{0, f.reg->simple(0)}, {1, f.reg->simple(1)}};
  std::map<int, Matrix> diffs{{0, Matrix(f.reg->algebra()->field(), 1, 1)}};
  const Complex two = Complex::make(f.reg->algebra(), terms, diffs);
  TiltingCaps caps;
  try {
    build_tilting(SMCollection{f.reg, {two, k}, std::nullopt}, caps);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Precondition);
  }
}

TEST(Verification, RejectsAnIncompleteCandidate) {
  const Fixture& f = fixture_a5();
  const TiltingReport good = run(f.collection);
  ASSERT_EQ(good.status, TiltingStatus::Certified);
  // Replace T_1 by T_0: Hom(T_i, X_j) no longer has the delta pattern.
  std::vector<ProjComplex> ts = good.summands;
  ts[1] = ts[0];
  TiltingCaps caps = resolve_caps(f.collection, TiltingCaps{});
  const TiltingReport bad = verify_and_extract(ts, f.collection, caps);
  EXPECT_EQ(bad.status, TiltingStatus::Failed);
}

TEST(Verification, RejectsAShiftedSummand) {
  const Fixture& f = fixture_a5();
  const TiltingReport good = run(f.collection);
  std::vector<ProjComplex> ts = good.summands;
  ts[2] = shift(ts[2], 1);
  const TiltingReport bad = verify_and_extract(ts, f.collection, resolve_caps(f.collection, TiltingCaps{}));
  EXPECT_EQ(bad.status, TiltingStatus::Failed);
}

TEST(SymmetrizingForm, FoundForGroupAlgebras) {
  for (const char* name : {"c2", "a5"}) {
    const Algebra& a = *fixture_by_name(name).galg.algebra;
    const auto form = find_symmetrizing_form(a);
    ASSERT_TRUE(form.has_value()) << name;
    auto with = Algebra::make(a.field(), a.labels(), a.structure_triples(), a.unit(), *form);
    EXPECT_TRUE(check_symmetric(*with).is_symmetric_form);
  }
}

TEST(SymmetrizingForm, NoneForUpperTriangularMatrices) {
  // Upper triangular 2x2 matrices over GF(2): not self-injective, so no
  // symmetrizing form exists.
  const FieldPtr F = FqField::prime(2);
  // basis e11, e12, e22
  const auto a = Algebra::make(F, {"e11", "e12", "e22"},
                               {{0, 0, 0, 1}, {0, 1, 1, 1}, {1, 2, 1, 1}, {2, 2, 2, 1}}, {1, 0, 1});
  EXPECT_FALSE(find_symmetrizing_form(*a).has_value());
}
