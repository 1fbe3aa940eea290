// Acceptance run: one line per criterion, nonzero exit if any fails.
#include "support.hpp"

#include "tiltsmith/modcat.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sys/wait.h>

using namespace tiltsmith;
using namespace tiltsmith::testing;

namespace {

struct Check {
  std::vector<std::string> failed;
  void expect(bool cond, const std::string& what) {
    if (!cond) failed.push_back(what);
  }
  void tally(const Tally& t, const std::string& what) {
    if (!t.ok()) failed.push_back(what + ": " + t.summary());
  }
};

std::string diagram(const Fixture& f, const ModuleRep& m) {
  return format_diagram(to_diagram(*f.reg, radical_layers(m, *f.reg)));
}

bool has_layers(const Fixture& f, const ModuleRep& m, const LoewyDiagram& d) {
  return radical_layers(m, *f.reg) == to_multiplicities(*f.reg, d);
}

// Socle simple with multiplicity one.
bool simple_socle(const Fixture& f, const ModuleRep& m, const std::string& label) {
  const auto soc = socle_layers(m, *f.reg).front();
  Multiplicity want(f.reg->count(), 0);
  want[f.reg->index_of(label)] = 1;
  return soc == want;
}

void smc_and_certificate(Check& c, const Fixture& f) {
  const ABReport ab = check_conditions_ab(f.collection);
  c.expect(ab.pass(), f.name + ": SMC conditions fail: " + (ab.failures.empty() ? "" : ab.failures.front()));
  const GenerationReport g = verify_generation(f.collection, f.certificate);
  c.expect(g.pass, f.name + ": certificate rejected: " + g.reason);
}

TiltingReport tilting_certified(Check& c, const Fixture& f) {
  TiltingCaps caps;
  caps.threads = 4;
  TiltingReport r = build_tilting(f.collection, caps);
  c.expect(r.status == TiltingStatus::Certified,
           f.name + ": tilting " + to_string(r.status) + (r.reasons.empty() ? "" : ": " + r.reasons.front()));
  return r;
}

void gamma_shape(Check& c, const TiltingReport& r, int simples) {
  if (!r.gamma) {
    c.expect(false, "no Gamma extracted");
    return;
  }
  c.expect(r.gamma_registry->count() == simples,
           "Gamma has " + std::to_string(r.gamma_registry->count()) + " simples");
  c.expect(is_basic(*r.gamma_registry), "Gamma is not basic");
}

// ---------------------------------------------------------------------------

Check criterion1() {
  Check c;
  for (const Fixture* f : {&fixture_c2(), &fixture_a5(), &fixture_a7(), &fixture_a8()}) {
    const Algebra& a = *f->galg.algebra;
    Elem identity_coeff(a.dim(), 0);
    identity_coeff[0] = 1;  // elements[0] is the identity
    c.expect(a.sym_form() && *a.sym_form() == identity_coeff, f->name + ": form is not the identity coefficient");
    c.expect(check_symmetric(a).is_symmetric_form, f->name + ": check_symmetric = no");
    c.tally(projective_hom_symmetry(*f), f->name + " dim Hom(P,M) = dim Hom(M,P)");
  }
  return c;
}

Check criterion2() {
  Check c;
  const Fixture& f = fixture_a5();
  c.expect(f.reg->count() == 3, "registered simples != 3");
  const LoewyDiagram want[] = {{{"k"}, {"1"}}, {{"k"}, {"2"}}};
  for (int i = 1; i <= 2; ++i) {
    const ModuleRep w = omega(f.y_modules[i], 1, *f.reg);
    c.expect(has_layers(f, w, want[i - 1]), "ΩY_" + std::to_string(i) + " has layers " + diagram(f, w));
    c.expect(module_end_ring(w).dim == 1, "End(ΩY_" + std::to_string(i) + ") is not k");
    c.expect(hom_space(f.reg->simple(0), w).dim() == 0, "Hom(k, ΩY_" + std::to_string(i) + ") != 0");
  }
  smc_and_certificate(c, f);
  const TiltingReport r = tilting_certified(c, f);
  gamma_shape(c, r, 3);
  if (r.gamma) {
    c.expect(r.gamma->dim() == 18, "dim Gamma = " + std::to_string(r.gamma->dim()));
    c.expect(equal_up_to_permutation(transpose_times_self(a5_decomposition()), r.gamma_cartan),
             "Gamma Cartan differs from the decomposition-matrix oracle");
  }
  return c;
}

Check criterion3() {
  Check c;
  const Fixture& f = fixture_a7();
  const ModuleRep& p2 = f.reg->projective(f.reg->index_of("2"));
  c.expect(p2.dim() == 9, "dim P(2) = " + std::to_string(p2.dim()));
  c.expect(has_layers(f, p2, {{"2"}, {"1", "3"}, {"k", "2", "k"}, {"1", "3"}, {"2"}}),
           "P(2) has layers " + diagram(f, p2));
  const ModuleRep w = omega(f.y_modules[2], 1, *f.reg);
  c.expect(w.dim() == 5, "dim ΩY_2 = " + std::to_string(w.dim()));
  c.expect(has_layers(f, w, {{"k", "k"}, {"1", "3"}, {"2"}}), "ΩY_2 has layers " + diagram(f, w));
  c.expect(simple_socle(f, w, "2"), "socle of ΩY_2 is not 2 with multiplicity one");
  const StalkCriteria sc = stalk_criteria(f.reg, f.y_modules, {0, 0, 1, 0});
  c.expect(sc.pass(), "stalk criteria fail for (0,0,1,0): " + sc.reason);
  bool has_filtration = false;
  for (const auto& s : f.certificate.steps) has_filtration |= s.kind == StepKind::Filtration;
  c.expect(has_filtration, "certificate has no FILTRATION step");
  smc_and_certificate(c, f);
  const TiltingReport r = tilting_certified(c, f);
  gamma_shape(c, r, 4);
  if (r.gamma) {
    c.expect(is_symmetric(r.gamma_cartan), "Gamma Cartan not symmetric");
    c.expect(equal_up_to_permutation(transpose_times_self(a7_decomposition()), r.gamma_cartan),
             "Gamma Cartan differs from the decomposition-matrix oracle");
  }
  return c;
}

Check criterion4() {
  Check c;
  const Fixture& f = fixture_a8();
  c.expect(f.reg->count() == 5, "registered simples != 5");
  c.expect(f.reg->simple_dim(f.reg->index_of("S")) == 2, "S is not 2-dimensional");
  const ModuleRep w = omega(f.y_modules[2], 1, *f.reg);
  c.expect(has_layers(f, w, {{"k", "2"}, {"S"}, {"1"}}), "ΩY_2 has layers " + diagram(f, w));
  c.expect(simple_socle(f, w, "1"), "socle of ΩY_2 is not 1 with multiplicity one");
  const Perm id = f.galg.elements.front();
  for (int a = 1; a <= 3; ++a) {
    const auto ker = point_kernel(f, a);
    bool cyclic = false;
    for (const Perm& g : ker) cyclic |= perm_compose(g, g) != id;
    c.expect(ker.size() == 4 && cyclic == (a == 2), "kernel type wrong for simple " + f.reg->labels()[a]);
  }
  c.expect(f.x_recipe == std::vector<int>{0, 0, 1, 0, 0}, "shift vector is not (0,0,1,0,0)");
  smc_and_certificate(c, f);
  const TiltingReport r = tilting_certified(c, f);
  gamma_shape(c, r, 5);
  if (r.gamma) c.expect(is_symmetric(r.gamma_cartan), "Gamma Cartan not symmetric");
  return c;
}

Check criterion5() {
  Check c;
  {
    const Fixture& f = fixture_semisimple();
    const TiltingReport r = tilting_certified(c, f);
    for (std::size_t i = 0; i < r.summands.size(); ++i) {
      const auto& t = r.summands[i].terms();
      c.expect(t.size() == 1 && t.count(0) && t.at(0) == std::vector<int>{static_cast<int>(i)},
               "semisimple: T_" + std::to_string(i) + " is not P_" + std::to_string(i));
      for (const auto& st : r.history[i]) c.expect(st.z.empty(), "semisimple: a stage added summands");
    }
    gamma_shape(c, r, f.reg->count());
    if (r.gamma) {
      c.expect(r.gamma->dim() == f.reg->count(), "semisimple: dim Gamma != number of simples");
      c.expect(r.gamma_registry->radical_basis().cols() == 0, "semisimple: Gamma has a radical");
    }
  }
  {
    const Fixture& f = fixture_c2();
    const TiltingReport r = tilting_certified(c, f);
    if (r.gamma) {
      const Algebra& g = *r.gamma;
      c.expect(g.dim() == 2, "c2: dim Gamma = " + std::to_string(g.dim()));
      bool comm = true;
      for (int i = 0; i < g.dim(); ++i)
        for (int j = 0; j < g.dim(); ++j)
          comm &= g.mul(g.basis_elem(i), g.basis_elem(j)) == g.mul(g.basis_elem(j), g.basis_elem(i));
      c.expect(comm, "c2: Gamma not commutative");
      c.expect(r.gamma_registry->count() == 1, "c2: Gamma not local");
      c.expect(r.symmetric_search == "found", "c2: symmetrizing form " + r.symmetric_search);
      c.expect(algebras_isomorphic(g, *f.reg->algebra()), "c2: Gamma not isomorphic to the input algebra");
    } else {
      c.expect(false, "c2: no Gamma");
    }
  }
  return c;
}

Check criterion6() {
  Check c;
  for (const Fixture* f : {&fixture_c2(), &fixture_a5(), &fixture_a7(), &fixture_a8()}) {
    c.tally(duality_random_pairs(*f, 20, 0x7157), f->name + " duality (random pairs)");
    TiltingCaps caps;
    caps.threads = 4;
    c.tally(report_duality(build_tilting(f->collection, caps)), f->name + " duality (T_i, X_j)");
    c.tally(tate_symmetry(*f, -3, 3), f->name + " Tate symmetry");
    c.tally(omega_round_trip(*f), f->name + " Ω round trip");
    c.tally(ext_equals_stable_hom(*f, 1, 4), f->name + " Ext = stable Hom");
    c.tally(minimal_reduce_invariance(*f, 10, 0x7157), f->name + " minimal_reduce");
  }
  return c;
}

Check criterion7() {
  Check c;
  const Fixture& f = fixture_a5();
  const Complex k0 = Complex::stalk(f.reg->simple(0), 0);
  {
    const ABReport r = check_conditions_ab(SMCollection{f.reg, {k0, k0}, std::nullopt});
    c.expect(r.pass_a && !r.pass_b, "{k, k} does not fail (b) alone");
  }
  {
    const ABReport r = check_conditions_ab(SMCollection{f.reg, {k0, Complex::stalk(f.reg->simple(0), 1)}, std::nullopt});
    c.expect(!r.pass_a, "{k, k[-1]} does not fail (a)");
  }
  SMCollection shifted{f.reg, {}, std::vector<int>{1, 2, 0}};
  for (int i = 0; i < 3; ++i) shifted.objects.push_back(syzygy_object(f.y_modules[i], (*shifted.shift_vector)[i], *f.reg));
  TiltingCaps caps;
  caps.window = 1;
  const TiltingReport r = build_tilting(shifted, caps);
  c.expect(r.status == TiltingStatus::Inconclusive, std::string("window 1 gives ") + to_string(r.status));
#ifdef TILTSMITH_CLI
  const std::string cmd = std::string(TILTSMITH_CLI) +
                          " build-tilting --fixture a5 --shifts 1,2,0 --window 1 > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  c.expect(code == 3, "CLI exit code " + std::to_string(code) + " for an undersized window");
#endif
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  struct Crit {
    int id;
    double limit;  // seconds, 0 = none
    std::function<Check()> run;
  };
  const std::vector<Crit> crits = {{1, 10, criterion1}, {2, 60, criterion2},  {3, 600, criterion3},
                                   {4, 900, criterion4}, {5, 0, criterion5},   {6, 0, criterion6},
                                   {7, 0, criterion7}};
  const int only = argc > 1 ? std::atoi(argv[1]) : 0;
  bool all = true;
  for (const auto& cr : crits) {
    if (only && cr.id != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Check c;
    try {
      c = cr.run();
    } catch (const std::exception& e) {
      c.failed.push_back(std::string("exception: ") + e.what());
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (cr.limit > 0 && dt > cr.limit) c.failed.push_back("runtime over " + std::to_string(cr.limit) + " s");
    all &= c.failed.empty();
    std::printf("criterion %d: %s (%.2f s)", cr.id, c.failed.empty() ? "PASS" : "FAIL", dt);
    for (const auto& s : c.failed) std::printf(" | %s", s.c_str());
    std::printf("\n");
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
