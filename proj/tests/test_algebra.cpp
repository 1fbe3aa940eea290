#include "support.hpp"

#include "tiltsmith/error.hpp"
#include "tiltsmith/modcat.hpp"

#include <gtest/gtest.h>

using namespace tiltsmith;
using namespace tiltsmith::testing;

TEST(GroupAlgebra, OrdersAndSymmetry) {
  const std::pair<const char*, int> cases[] = {{"c2", 2}, {"a5", 12}, {"a7", 36}, {"a8", 72}};
  for (const auto& [name, order] : cases) {
    const Fixture& f = fixture_by_name(name);
    EXPECT_EQ(f.galg.algebra->dim(), order) << name;
    const auto rep = check_symmetric(*f.galg.algebra);
    EXPECT_TRUE(rep.trace_identity) << name;
    EXPECT_EQ(rep.gram_rank, order) << name;
  }
}

TEST(GroupAlgebra, AssociativityOnRandomTriples) {
  const Algebra& a = *fixture_a7().galg.algebra;
  std::mt19937 rng(1);
  std::uniform_int_distribution<int> pick(0, a.dim() - 1);
  for (int t = 0; t < 50; ++t) {
    const Elem x = a.basis_elem(pick(rng)), y = a.basis_elem(pick(rng)), z = a.basis_elem(pick(rng));
    EXPECT_EQ(a.mul(a.mul(x, y), z), a.mul(x, a.mul(y, z)));
  }
}

TEST(Algebra, RejectsWrongUnit) {
  const FieldPtr F = FqField::prime(2);
  EXPECT_THROW(Algebra::make(F, {"a", "b"}, {{0, 0, 0, 1}, {0, 1, 1, 1}, {1, 0, 1, 1}, {1, 1, 1, 1}}, {0, 1}),
               Error);
}

TEST(Algebra, FormThatIsNotSymmetrizingIsDetected) {
  const Fixture& f = fixture_c2();
  const Algebra& a = *f.galg.algebra;
  auto zero = Algebra::make(a.field(), a.labels(), a.structure_triples(), a.unit(), Elem{0, 0});
  EXPECT_FALSE(check_symmetric(*zero).is_symmetric_form);
}

TEST(Registry, A4CartanOverGf4) {
  // kA_4 = k[V_4] ⋊ C_3: each projective has dimension 4 with the
  // trivial-twist structure of kV_4; the Cartan matrix is J + I.
  const auto& c = fixture_a5().reg->cartan();
  const IntMatrix want = {{2, 1, 1}, {1, 2, 1}, {1, 1, 2}};
  EXPECT_EQ(c, want);
}

TEST(Registry, DimensionCountMatchesAlgebra) {
  for (const char* name : {"c2", "semisimple", "a5", "a7", "a8"}) {
    const SimpleRegistry& reg = *fixture_by_name(name).reg;
    int total = 0;
    for (int a = 0; a < reg.count(); ++a) total += reg.simple_dim(a) * reg.projective(a).dim();
    EXPECT_EQ(total, reg.algebra()->dim()) << name;
  }
}

TEST(Registry, FindSimplesRecoversFixtureSimples) {
  for (const char* name : {"c2", "semisimple", "a5", "a7"}) {
    const Fixture& f = fixture_by_name(name);
    const auto found = find_simples(f.galg.algebra);
    ASSERT_EQ(static_cast<int>(found.size()), f.reg->count()) << name;
    for (int a = 0; a < f.reg->count(); ++a) {
      int matches = 0;
      for (const auto& s : found) matches += is_isomorphic(s, f.reg->simple(a));
      EXPECT_EQ(matches, 1) << name << " simple " << a;
    }
  }
}

TEST(Registry, RejectsIncompleteList) {
  const Fixture& f = fixture_a5();
  EXPECT_THROW(register_simples(f.galg.algebra, {f.reg->simple(0), f.reg->simple(1)}, {"k", "1"}), Error);
  EXPECT_THROW(register_simples(f.galg.algebra, {f.reg->simple(0), f.reg->simple(0), f.reg->simple(1)},
                                {"k", "k2", "1"}),
               Error);
}

TEST(Modules, HomSpaceAgreesWithNaiveSolver) {
  for (const char* name : {"a5", "a7"}) {
    const Fixture& f = fixture_by_name(name);
    const auto mods = fixture_modules(f);
    for (const auto& m : mods)
      for (const auto& n : mods) EXPECT_EQ(hom_space(m, n).dim(), hom_space_naive(m, n).dim()) << name;
  }
}

TEST(Modules, ProjectivesAreProjectiveAndSimplesAreNot) {
  const Fixture& f = fixture_a8();
  for (int a = 0; a < f.reg->count(); ++a) {
    EXPECT_TRUE(is_projective(f.reg->projective(a), *f.reg));
    EXPECT_FALSE(is_projective(f.reg->simple(a), *f.reg));
    EXPECT_EQ(omega(f.reg->projective(a), 1, *f.reg).dim(), 0);
  }
}

TEST(Modules, SyzygyDimensionsAddUp) {
  // dim M + dim ΩM = dim P(M).
  for (const char* name : {"a5", "a7", "a8"}) {
    const Fixture& f = fixture_by_name(name);
    for (const auto& m : fixture_modules(f)) {
      const Cover c = projective_cover(m, *f.reg);
      EXPECT_EQ(m.dim() + omega(m, 1, *f.reg).dim(), c.module.dim()) << name;
    }
  }
}

TEST(Modules, C2SyzygyOfTrivialIsTrivial) {
  const Fixture& f = fixture_c2();
  EXPECT_TRUE(is_isomorphic(omega(f.reg->simple(0), 1, *f.reg), f.reg->simple(0)));
  EXPECT_EQ(ext_dim(f.reg->simple(0), f.reg->simple(0), 1, f.reg), 1);
}

TEST(Modules, LoewyRealizationMatchesDiagram) {
  const Fixture& f = fixture_a7();
  for (std::size_t i = 0; i < f.y_modules.size(); ++i)
    EXPECT_EQ(radical_layers(f.y_modules[i], *f.reg), to_multiplicities(*f.reg, f.y_diagrams[i]));
}

TEST(Fixtures, A5SyzygyDisplays) {
  const Fixture& f = fixture_a5();
  EXPECT_EQ(format_diagram(to_diagram(*f.reg, radical_layers(omega(f.y_modules[1], 1, *f.reg), *f.reg))),
            format_diagram({{"k"}, {"1"}}));
}

TEST(Fixtures, A8KernelTypes) {
  const Fixture& f = fixture_a8();
  for (int a = 1; a <= 3; ++a) EXPECT_EQ(point_kernel(f, a).size(), 4u);
}

TEST(Fixtures, UnknownNameIsConfigError) {
  try {
    fixture_by_name("a6");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Config);
  }
}
