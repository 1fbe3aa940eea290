#pragma once

#include "tiltsmith/derived.hpp"
#include "tiltsmith/smc.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tiltsmith {

/// Caps for the construction; negative window/degree mean "default" (the
/// largest degree of the X's after moving the lowest to 0, plus 4). Window 0
/// is the empty shift window.
struct TiltingCaps {
  int window = -1;
  int degree = -1;
  int stages = 32;
  std::uint64_t enum_cap = 1000000;
  int threads = 1;
  // Indecomposable summands allowed in one stage complex.
  int max_summands = 512;
};

TiltingCaps resolve_caps(const SMCollection& c, TiltingCaps caps);

/// One summand X_j[t]^{mult} of a Z-object.
struct ZSummand {
  int j = 0;
  int t = 0;
  int mult = 0;
};

struct StageRecord {
  int stage = 0;
  std::vector<ZSummand> z;  // Hom(X_j[t], X_i^{(stage)}) for the shifts used
};

/// The stages are carried in the injective picture: X_i^{(n)} is held as a
/// minimal complex of projective-injectives, bounded below and cut above at
/// `top`. Degrees <= top - 1 are exact.
struct StageState {
  int index = 0;
  std::vector<ProjComplex> complexes;
  int window = 0;
  int degree = 0;
  int top = 0;
  std::vector<std::vector<StageRecord>> history;  // per i
};

struct ZObject {
  ProjComplex z;
  ProjChainMap alpha;  // z -> X_i^{(n)}
  std::vector<ZSummand> summands;
  bool is_zero() const { return z.is_zero(); }
};

/// Shared data for a collection of stalk objects X_j = M_j[-δ_j].
class TiltingEngine {
 public:
  TiltingEngine(const SMCollection& c, TiltingCaps caps);

  const TiltingCaps& caps() const { return caps_; }
  int top() const { return top_; }
  int count() const { return static_cast<int>(mods_.size()); }
  const ModuleRep& module(int j) const { return mods_[j]; }
  int delta(int j) const { return delta_[j]; }
  const HomIntoProj& hom_into(int j) const { return homs_[j]; }

  StageState initial_state() const;
  /// Z = ⊕ X_j[t]^{dim Hom(X_j[t], x)} over t in [tmin, tmax] with the
  /// evaluation map; bijectivity on Hom(X_j[t], -) is rechecked.
  ZObject build_z(const ProjComplex& x, int tmin, int tmax) const;
  /// cone(alpha), minimally reduced, cut at top.
  ProjComplex advance(const ProjComplex& x, const ZObject& z) const;
  /// dim Hom(X_j[t], x) for an injective-picture complex.
  int hom_from(int j, int t, const ProjComplex& x) const;

 private:
  ProjMap lift_first(int j, const ProjComplex& x, int e, const Matrix& cocycle,
                     const std::vector<int>& offsets) const;

  RegistryPtr reg_;
  TiltingCaps caps_;
  int top_ = 0;
  std::vector<ModuleRep> mods_;
  std::vector<int> delta_;
  std::vector<HomIntoProj> homs_;
  std::vector<Coresolution> cores_;
};

enum class TiltingStatus { Certified, Failed, Inconclusive };
const char* to_string(TiltingStatus s);

struct StabilizeResult {
  TiltingStatus status = TiltingStatus::Failed;
  ProjComplex summand;
  int stages = 0;
  std::vector<StageRecord> history;
  std::string reason;
};

/// Runs stages for X_i (t = -1 first, then the rest of the window) until no
/// Z is needed, and cuts the result at its first zero term.
StabilizeResult stabilize(const TiltingEngine& eng, int i);

struct TiltingReport {
  TiltingStatus status = TiltingStatus::Failed;
  std::vector<std::string> reasons;
  std::vector<ProjComplex> summands;
  std::vector<std::vector<StageRecord>> history;
  TiltingCaps caps;
  // tables indexed [i][j], degree -> dim
  std::vector<std::vector<std::map<int, int>>> hom_tt;  // Hom(T_i, T_j[m])
  std::vector<std::vector<std::map<int, int>>> hom_tx;  // Hom(T_i, X_j[m])
  std::vector<std::vector<std::map<int, int>>> hom_xt;  // Hom(X_j, T_i[-m]), keyed by m
  std::string generation = "theorem-backed";
  AlgebraPtr gamma;
  RegistryPtr gamma_registry;
  std::vector<std::vector<int>> gamma_cartan;
  std::optional<Elem> gamma_symmetric_witness;
  std::string symmetric_search;  // found, inconclusive, none, skipped
};

/// Independent checks on T = ⊕T_i against the X's, then Γ = End(T)^op.
TiltingReport verify_and_extract(const std::vector<ProjComplex>& ts, const SMCollection& c,
                                 const TiltingCaps& caps);

/// stabilize for every i (in parallel with caps.threads), then verify.
TiltingReport build_tilting(const SMCollection& c, TiltingCaps caps);

struct GammaAlgebra {
  AlgebraPtr algebra;
  RegistryPtr registry;
  std::vector<std::vector<int>> hom_dims;  // dim Hom(T_i, T_j)
};

/// End(T)^op with basis the degree-0 maps T_i -> T_j modulo homotopy,
/// identity first on each diagonal block; simples registered per summand.
GammaAlgebra gamma_algebra(const std::vector<ProjComplex>& ts);

/// A symmetrizing form: trace functionals first, then a nondegeneracy search.
/// Throws Inconclusive when `cap` is exhausted.
std::optional<Elem> find_symmetrizing_form(const Algebra& a, std::uint64_t cap = 1000000);

}  // namespace tiltsmith
