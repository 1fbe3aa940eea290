#pragma once

#include "tiltsmith/projcomplex.hpp"

#include <map>
#include <vector>

namespace tiltsmith {

struct Replacement {
  ProjComplex complex;  // bounded above; cut at certified_below unless complete
  ChainMap quasi;       // concrete(complex) -> x, degreewise
  int certified_below = 0;
  bool complete = false;  // the replacement terminated (x is perfect)
};

/// Projective replacement P -> x built degree by degree from the top: P^k
/// covers the cycles of the partial cone modulo boundaries of x, so the cone
/// is exact in every degree >= `bottom`. The result is minimal.
Replacement projective_replacement(const Complex& x, int bottom, const RegistryPtr& reg);

/// Minimal projective resolution in degrees [-length, 0].
Replacement projective_resolution(const ModuleRep& m, int length, const RegistryPtr& reg);

struct Coresolution {
  ProjComplex complex;  // degrees [0, length], cut above unless complete
  Matrix coaug;         // m -> concrete(complex)^0
  bool complete = false;
};
/// Minimal injective coresolution by successive injective hulls.
Coresolution injective_coresolution(const ModuleRep& m, int length, const RegistryPtr& reg);

/// Hom^•(C, D) between complexes of projectives; coordinates are the
/// concatenated e-piece coefficients of the components C^k -> D^{k+m}.
class GradedHom {
 public:
  GradedHom(const ProjComplex& c, const ProjComplex& d);
  int dim(int m) const;
  /// δf = d_D f - (-1)^m f d_C, as a matrix Hom^m -> Hom^{m+1}.
  Matrix delta(int m) const;
  int cohomology_dim(int m) const;
  std::vector<Fq> flatten(const ProjChainMap& f) const;
  ProjChainMap unflatten(int m, const std::vector<Fq>& v) const;
  /// Degrees m with a possibly nonzero Hom^m.
  int min_degree() const;
  int max_degree() const;

 private:
  struct Slot {
    int k, v, u, offset, len;
  };
  std::vector<Slot> layout(int m) const;
  const ProjComplex* c_;
  const ProjComplex* d_;
};

/// dim H^m Hom(C, Y) for a complex of projectives C and a module complex Y.
/// Exact in K(Λ) when C is not cut in the relevant degrees.
int hom_dim(const ProjComplex& c, const Complex& y, int m);

/// dim H^s Hom(M, C) for a module M (degree 0) and a complex C of
/// projectives (= injectives). Exact when C is not cut at s-1, s, s+1.
int hom_dim(const HomIntoProj& m, const ProjComplex& c, int s);

/// The cocycles and coboundaries behind hom_dim(HomIntoProj, ...).
struct ModuleToProjHom {
  std::vector<int> offsets;  // per summand of C^s, then the total
  Matrix cocycles;           // columns, coordinates in ⊕_v Hom(M, P_{c_v})
  Matrix boundaries;
  Matrix reps;  // cocycles completing a basis of the boundaries: a basis of H^s
  int h = 0;
};
ModuleToProjHom hom_cocycles(const HomIntoProj& m, const ProjComplex& c, int s);

/// dim Ext^deg(m, n) from the Hom complex of the minimal resolution.
int ext_dim(const ModuleRep& m, const ModuleRep& n, int deg, const RegistryPtr& reg);

/// dim Hom_D(x, y[m]) for m in [mlo, mhi]; throws Inconclusive when the
/// required resolution depth exceeds depth_cap.
std::map<int, int> derived_hom(const Complex& x, const Complex& y, int mlo, int mhi,
                               const RegistryPtr& reg, int depth_cap = 64);

/// Serre duality check for a symmetric algebra:
/// dim Hom_D(x, y[m]) == dim Hom_D(y, x[-m]) over [mlo, mhi].
/// Only expected to hold when x or y is perfect.
bool duality_check(const Complex& x, const Complex& y, int mlo, int mhi, const RegistryPtr& reg,
                   int depth_cap = 64);

}  // namespace tiltsmith
