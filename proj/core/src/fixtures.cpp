#include "tiltsmith/fixtures.hpp"

#include "tiltsmith/error.hpp"

namespace tiltsmith {

Perm grid_perm(int a, int b, int c, int d, int tx, int ty) {
  auto md = [](int v) { return ((v % 3) + 3) % 3; };
  Perm p(9);
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y) p[x + 3 * y] = md(a * x + b * y + tx) + 3 * md(c * x + d * y + ty);
  return p;
}

namespace {

CertStep seed(int i) {
  CertStep s;
  s.kind = StepKind::Seed;
  s.index = i;
  return s;
}

CertStep shift_step(int ref, int m) {
  CertStep s;
  s.kind = StepKind::Shift;
  s.ref = ref;
  s.shift = m;
  return s;
}

CertStep surjection_cone(int src, int tgt) {
  CertStep s;
  s.kind = StepKind::Cone;
  s.ref = src;
  s.ref2 = tgt;
  s.directive = ConeDirective::Surjection;
  return s;
}

CertStep stalkify_step(int ref) {
  CertStep s;
  s.kind = StepKind::Stalkify;
  s.ref = ref;
  return s;
}

CertStep socle_quotient(int ref, std::vector<std::vector<int>> layers) {
  CertStep s;
  s.kind = StepKind::Filtration;
  s.ref = ref;
  s.quotient_by = "socle";
  s.series = "radical";
  s.layer_refs = std::move(layers);
  return s;
}

void expect_layers(const SimpleRegistry& reg, const ModuleRep& m, const LoewyDiagram& d,
                   const std::string& what) {
  const auto got = radical_layers(m, reg);
  if (got != to_multiplicities(reg, d))
    fail(ErrorKind::Verification, what + " has layers " + format_diagram(to_diagram(reg, got)) +
                                      ", expected " + format_diagram(d));
}

void finish(Fixture& f) {
  f.collection.reg = f.reg;
  f.collection.shift_vector = f.x_recipe;
  for (std::size_t i = 0; i < f.y_modules.size(); ++i)
    f.collection.objects.push_back(syzygy_object(f.y_modules[i], f.x_recipe[i], *f.reg));
}

ModuleRep character(const GroupAlgebra& g, const std::vector<Fq>& values) {
  const FieldPtr& F = g.algebra->field();
  std::vector<Matrix> imgs;
  for (Fq v : values) {
    Matrix m(F, 1, 1);
    m.at(0, 0) = v;
    imgs.push_back(m);
  }
  return g.module(imgs);
}

Fixture make_a5() {
  Fixture f;
  f.name = "a5";
  const FieldPtr F = FqField::builtin(4);
  f.group = {4, {{1, 0, 3, 2}, {1, 2, 0, 3}}, "A4", 12};
  f.galg = group_algebra(f.group, F);
  // The 3-cycle acts on simple i by ω^i, ω a root of x^2 + x + 1.
  const Fq w = 2;
  std::vector<ModuleRep> s;
  for (int i = 0; i < 3; ++i) s.push_back(character(f.galg, {1, F->pow(w, i)}));
  f.reg = register_simples(f.galg.algebra, s, {"k", "1", "2"});
  f.y_diagrams = {{{"k"}}, {{"1"}, {"2"}}, {{"2"}, {"1"}}};
  for (const auto& d : f.y_diagrams) f.y_modules.push_back(realize_from_loewy(*f.reg, d));
  f.x_recipe = {0, 1, 1};
  expect_layers(*f.reg, omega(f.y_modules[1], 1, *f.reg), {{"k"}, {"1"}}, "ΩY_1");
  expect_layers(*f.reg, omega(f.y_modules[2], 1, *f.reg), {{"k"}, {"2"}}, "ΩY_2");
  finish(f);
  auto& st = f.certificate.steps;
  st = {seed(0), seed(1), seed(2), shift_step(1, -1), shift_step(2, -1),
        surjection_cone(3, 0), stalkify_step(5), surjection_cone(4, 0), stalkify_step(7)};
  f.certificate.claims = {{0, "k"}, {6, "1"}, {8, "2"}};
  return f;
}

Fixture make_a7() {
  Fixture f;
  f.name = "a7";
  const FieldPtr F = FqField::builtin(9);
  f.group = {9, {grid_perm(1, 0, 0, 1, 1, 0), grid_perm(0, -1, 1, 0, 0, 0)}, "C3^2:C4", 36};
  f.galg = group_algebra(f.group, F);
  // ζ = x in GF(9) = GF(3)[x]/(x^2 + 1), a primitive fourth root of unity.
  const Fq zeta = 3;
  std::vector<ModuleRep> s;
  for (int i = 0; i < 4; ++i) s.push_back(character(f.galg, {1, F->pow(zeta, i)}));
  f.reg = register_simples(f.galg.algebra, s, {"k", "1", "2", "3"});
  const int rot = f.galg.generator_index[1];
  for (int i = 0; i < 4; ++i)
    if (f.reg->simple(i).act(rot).at(0, 0) != F->pow(zeta, i))
      fail(ErrorKind::Verification, "a7: the C4 generator does not act on simple " +
                                        std::to_string(i) + " as ζ^" + std::to_string(i));
  f.y_diagrams = {{{"k"}}, {{"1"}}, {{"2"}, {"1", "3"}, {"2"}}, {{"3"}}};
  for (const auto& d : f.y_diagrams) f.y_modules.push_back(realize_from_loewy(*f.reg, d));
  f.x_recipe = {0, 0, 1, 0};
  expect_layers(*f.reg, f.reg->projective(2),
                {{"2"}, {"1", "3"}, {"k", "2", "k"}, {"1", "3"}, {"2"}}, "P(2)");
  expect_layers(*f.reg, omega(f.y_modules[2], 1, *f.reg), {{"k", "k"}, {"1", "3"}, {"2"}}, "ΩY_2");
  finish(f);
  f.certificate.steps = {seed(0), seed(1), seed(2), seed(3), shift_step(2, -1),
                         socle_quotient(4, {{0, 0}, {1, 3}}), surjection_cone(4, 5), stalkify_step(6)};
  f.certificate.claims = {{0, "k"}, {1, "1"}, {7, "2"}, {3, "3"}};
  return f;
}

Fixture make_a8() {
  Fixture f;
  f.name = "a8";
  const FieldPtr F = FqField::prime(3);
  f.group = {9,
             {grid_perm(1, 0, 0, 1, 1, 0), grid_perm(0, -1, 1, 0, 0, 0), grid_perm(1, 0, 0, -1, 0, 0)},
             "C3^2:D8",
             72};
  f.galg = group_algebra(f.group, F);
  const Fq m1 = F->neg(1);
  std::vector<ModuleRep> s{character(f.galg, {1, 1, 1}), character(f.galg, {1, m1, 1}),
                           character(f.galg, {1, 1, m1}), character(f.galg, {1, m1, m1}),
                           f.galg.module({Matrix::identity(F, 2), Matrix::from_ints(F, {{0, -1}, {1, 0}}),
                                          Matrix::from_ints(F, {{1, 0}, {0, -1}})})};
  f.reg = register_simples(f.galg.algebra, s, {"k", "1", "2", "3", "S"});
  f.y_diagrams = {{{"k"}}, {{"2"}}, {{"1"}, {"S"}, {"1"}}, {{"3"}}, {{"S"}}};
  for (const auto& d : f.y_diagrams) f.y_modules.push_back(realize_from_loewy(*f.reg, d));
  f.x_recipe = {0, 0, 1, 0, 0};
  expect_layers(*f.reg, f.reg->projective(1), {{"1"}, {"S"}, {"k", "1", "2"}, {"S"}, {"1"}}, "P(1)");
  expect_layers(*f.reg, omega(f.y_modules[2], 1, *f.reg), {{"k", "2"}, {"S"}, {"1"}}, "ΩY_2");
  finish(f);
  // Kernels on the point group: cyclic for 2, elementary abelian for 1, 3.
  for (int a = 1; a <= 3; ++a) {
    const auto ker = point_kernel(f, a);
    const Perm id = f.galg.elements.front();
    bool has_order4 = false;
    for (const Perm& g : ker)
      if (perm_compose(g, g) != id) has_order4 = true;
    if (ker.size() != 4 || has_order4 != (a == 2))
      fail(ErrorKind::Verification, "a8: kernel of the point group on simple " +
                                        f.reg->labels()[a] + " has the wrong type");
  }
  f.certificate.steps = {seed(0), seed(1), seed(2), seed(3), seed(4), shift_step(2, -1),
                         socle_quotient(5, {{0, 1}, {4}}), surjection_cone(5, 6), stalkify_step(7)};
  f.certificate.claims = {{0, "k"}, {1, "2"}, {8, "1"}, {3, "3"}, {4, "S"}};
  return f;
}

Fixture make_cyclic(const std::string& name, int q) {
  Fixture f;
  f.name = name;
  const FieldPtr F = FqField::builtin(q);
  f.group = {2, {{1, 0}}, "C2", 2};
  f.galg = group_algebra(f.group, F);
  std::vector<ModuleRep> s{character(f.galg, {1})};
  std::vector<std::string> labels{"k"};
  if (q % 2 == 1) {
    s.push_back(character(f.galg, {F->neg(1)}));
    labels.push_back("sgn");
  }
  f.reg = register_simples(f.galg.algebra, s, labels);
  for (int a = 0; a < f.reg->count(); ++a) {
    f.y_diagrams.push_back({{labels[a]}});
    f.y_modules.push_back(f.reg->simple(a));
    f.x_recipe.push_back(0);
    f.certificate.steps.push_back(seed(a));
    f.certificate.claims.push_back({a, labels[a]});
  }
  finish(f);
  return f;
}

}  // namespace

std::vector<Perm> point_kernel(const Fixture& f, int simple) {
  const ModuleRep& m = f.reg->simple(simple);
  require(m.dim() == 1, ErrorKind::Precondition, "point_kernel needs a one-dimensional module");
  std::vector<Perm> out;
  for (std::size_t i = 0; i < f.galg.elements.size(); ++i) {
    const Perm& g = f.galg.elements[i];
    if (g[0] != 0) continue;
    if (m.act(static_cast<int>(i)).at(0, 0) == 1) out.push_back(g);
  }
  return out;
}

const Fixture& fixture_a5() {
  static const Fixture f = make_a5();
  return f;
}
const Fixture& fixture_a7() {
  static const Fixture f = make_a7();
  return f;
}
const Fixture& fixture_a8() {
  static const Fixture f = make_a8();
  return f;
}
const Fixture& fixture_c2() {
  static const Fixture f = make_cyclic("c2", 2);
  return f;
}
const Fixture& fixture_semisimple() {
  static const Fixture f = make_cyclic("semisimple", 3);
  return f;
}

const Fixture& fixture_by_name(const std::string& name) {
  if (name == "a5") return fixture_a5();
  if (name == "a7") return fixture_a7();
  if (name == "a8") return fixture_a8();
  if (name == "c2") return fixture_c2();
  if (name == "semisimple") return fixture_semisimple();
  fail(ErrorKind::Config, "unknown fixture: " + name);
}

}  // namespace tiltsmith
