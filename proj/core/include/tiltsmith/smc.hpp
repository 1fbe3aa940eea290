#pragma once

#include "tiltsmith/derived.hpp"
#include "tiltsmith/modcat.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tiltsmith {

/// Candidate simple-minded collection X_0..X_r.
struct SMCollection {
  RegistryPtr reg;
  std::vector<Complex> objects;
  /// n_i when X_i = Ω^{n_i}(Y_i)[n_i].
  std::optional<std::vector<int>> shift_vector;
};

/// Stalk complex X = Ω^n(y)[n].
Complex syzygy_object(const ModuleRep& y, int n, const SimpleRegistry& reg);

struct PairHom {
  int i = 0, j = 0;
  std::map<int, int> dims;  // m -> dim Hom(X_i, X_j[m]), m in [a_j - b_i, 0]
};

struct EndRing {
  int dim = 0;
  bool is_field = false;
  bool commutative = false;
  std::string note;
};

struct ABReport {
  bool pass_a = true;
  bool pass_b = true;
  bool pass() const { return pass_a && pass_b; }
  std::vector<PairHom> table;
  std::vector<EndRing> ends;
  std::vector<std::string> failures;
};

/// Conditions (a) and (b). `relaxed` accepts endomorphism rings that are
/// finite fields.
ABReport check_conditions_ab(const SMCollection& c, bool relaxed = false, int depth_cap = 64);

/// End ring of a module, with the field test (exhaustive over nonzero
/// elements; throws Inconclusive beyond `cap`).
EndRing module_end_ring(const ModuleRep& m, std::uint64_t cap = 1000000);

// ---------------------------------------------------------------------------
// Generation certificates.

enum class StepKind { Seed, Shift, Cone, Stalkify, Filtration, Iso };
enum class ConeDirective { Explicit, Surjection, Injection };

struct CertStep {
  StepKind kind = StepKind::Seed;
  int index = 0;          // Seed: object index
  int ref = -1;           // Shift / Stalkify / Filtration / Iso; Cone: source
  int ref2 = -1;          // Cone: target
  int shift = 0;          // Shift: X -> X[shift]
  ConeDirective directive = ConeDirective::Explicit;
  std::map<int, Matrix> map;  // Cone with explicit chain map
  // Filtration: the stalk module of `ref`, optionally divided by its socle
  // or radical, filtered by its radical series, socle series, or an explicit
  // increasing chain of submodules; layer_refs[l] lists objects whose
  // stalk modules sum to layer l.
  std::string quotient_by;  // "", "socle", "radical"
  std::string series = "radical";
  std::vector<Matrix> chain;
  std::vector<std::vector<int>> layer_refs;
  std::string simple;  // Iso: target simple label
};

struct Claim {
  int step_ref = 0;
  std::string simple_label;
};

struct GenerationCertificate {
  std::vector<CertStep> steps;
  std::vector<Claim> claims;
};

struct GenerationReport {
  bool pass = false;
  std::vector<std::string> covered;
  std::vector<std::string> missing;
  std::optional<int> failed_step;
  std::string reason;
};

GenerationReport verify_generation(const SMCollection& c, const GenerationCertificate& cert);

/// Breadth-first search for a certificate over stalk objects: kernels of
/// surjections, cokernels of injections and socle/radical quotients, up to
/// `depth` rounds. Returns nullopt when the search does not cover all
/// simples.
std::optional<GenerationCertificate> auto_certificate(const SMCollection& c, int depth = 4);

// ---------------------------------------------------------------------------
// Stalk collections Ω^{n_i}(Y_i)[n_i].

struct StalkCriteria {
  bool end_is_k = true;         // (i)
  bool hom_vanishing = true;    // (ii)
  bool stable_vanishing = true; // (iii)
  bool pass() const { return end_is_k && hom_vanishing && stable_vanishing; }
  std::string reason;
};

/// Cheap criteria for the shift vector n: End(Ω^{n_i}Y_i) = k,
/// Hom(Ω^{n_i}Y_i, Ω^{n_j}Y_j) = 0 for i != j with n_i <= n_j, and
/// stable Hom(Ω^m Y_i, Y_j) = 0 for n_i - n_j < m < -1.
StalkCriteria stalk_criteria(const RegistryPtr& reg, const std::vector<ModuleRep>& images,
                             const std::vector<int>& n);

/// PHom(Ω^{n_i}Y_i, Ω^{n_j}Y_j) = 0 and (n_j - n_i < 2 or
/// stable Hom(Ω^{n_j-n_i-1} Y_j, Y_i) = 0): the projective-map form of
/// criterion (ii) for one pair.
bool phom_criterion(const RegistryPtr& reg, const std::vector<ModuleRep>& images,
                    const std::vector<int>& n, int i, int j);

/// stalk_criteria for every normalized vector of the box, sharing one
/// syzygy table.
std::vector<std::pair<std::vector<int>, StalkCriteria>> stalk_criteria_box(
    const RegistryPtr& reg, const std::vector<ModuleRep>& images, int box);

struct StalkCandidate {
  std::vector<int> shifts;
  SMCollection collection;
  ABReport report;
};

/// Shift vectors in [-box, box]^{r+1} normalized to min 0, in lexicographic
/// order; survivors of the cheap criteria confirmed by check_conditions_ab.
std::vector<StalkCandidate> stalk_search(const RegistryPtr& reg,
                                         const std::vector<ModuleRep>& images, int box = 2,
                                         int threads = 1);

}  // namespace tiltsmith
