#pragma once

#include "tiltsmith/fixtures.hpp"
#include "tiltsmith/tilting.hpp"

#include <random>
#include <string>
#include <vector>

namespace tiltsmith::testing {

// Outcome of a quantified check: how many instances ran and what broke.
struct Tally {
  int checked = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty() && checked > 0; }
  void expect(bool cond, const std::string& what) {
    ++checked;
    if (!cond) failures.push_back(what);
  }
  void merge(const Tally& o) {
    checked += o.checked;
    failures.insert(failures.end(), o.failures.begin(), o.failures.end());
  }
  std::string summary() const;
};

// Decomposition-matrix oracles, rows = ordinary characters, columns =
// Brauer characters of the principal block.
using IntMatrix = std::vector<std::vector<int>>;
IntMatrix a5_decomposition();
IntMatrix a7_decomposition();
IntMatrix transpose_times_self(const IntMatrix& d);
// Whether b = P a P^T for some permutation P.
bool equal_up_to_permutation(const IntMatrix& a, const IntMatrix& b);
bool is_symmetric(const IntMatrix& a);

// Fixture modules: simples, images Y_i and their first syzygies.
std::vector<ModuleRep> fixture_modules(const Fixture& f);

// Random data over a fixture.
EElem random_eelem(const SimpleRegistry& reg, int a, int b, std::mt19937& rng);
std::vector<int> random_summands(const SimpleRegistry& reg, int max_count, std::mt19937& rng);
ProjMap random_projmap(const SimpleRegistry& reg, const std::vector<int>& src,
                       const std::vector<int>& tgt, std::mt19937& rng);
// Two-term complex P^k -> P^{k+1} with random differential.
ProjComplex random_two_term(const RegistryPtr& reg, int k, std::mt19937& rng);
// Cone of a random degree-0 chain map between random two-term complexes.
ProjComplex random_cone(const RegistryPtr& reg, std::mt19937& rng);

// Property suites.
Tally duality_random_pairs(const Fixture& f, int pairs, std::uint32_t seed);
Tally tate_symmetry(const Fixture& f, int tmin, int tmax);
Tally omega_round_trip(const Fixture& f);
Tally ext_equals_stable_hom(const Fixture& f, int dmin, int dmax);
Tally minimal_reduce_invariance(const Fixture& f, int cones, std::uint32_t seed);
Tally report_duality(const TiltingReport& r);
// Hom(P, M) vs Hom(M, P) over registered projectives and fixture modules.
Tally projective_hom_symmetry(const Fixture& f);

// Γ is basic: every simple is one-dimensional over the ground field.
bool is_basic(const SimpleRegistry& reg);
// Brute-force algebra isomorphism for tiny algebras (q^(n^2) maps).
bool algebras_isomorphic(const Algebra& a, const Algebra& b);

}  // namespace tiltsmith::testing
