#pragma once

#include "tiltsmith/complex.hpp"
#include "tiltsmith/registry.hpp"

#include <map>
#include <optional>
#include <vector>

namespace tiltsmith {

/// Map ⊕_u P_{src[u]} -> ⊕_v P_{tgt[v]}. Entry (v, u) lies in
/// e_{src[u]} Λ e_{tgt[v]} and acts by right multiplication.
struct ProjMap {
  std::vector<int> src, tgt;
  std::vector<EElem> entries;  // row-major: v * src.size() + u

  static ProjMap zero(const SimpleRegistry& reg, std::vector<int> src, std::vector<int> tgt);
  EElem& at(int v, int u) { return entries[static_cast<std::size_t>(v) * src.size() + u]; }
  const EElem& at(int v, int u) const {
    return entries[static_cast<std::size_t>(v) * src.size() + u];
  }
  bool is_zero(const SimpleRegistry& reg) const;
};

/// g ∘ f.
ProjMap compose(const SimpleRegistry& reg, const ProjMap& g, const ProjMap& f);
ProjMap add(const SimpleRegistry& reg, const ProjMap& f, const ProjMap& g);
ProjMap scale(const SimpleRegistry& reg, const ProjMap& f, Fq s);
bool equal(const SimpleRegistry& reg, const ProjMap& f, const ProjMap& g);

/// Matrix in the bases of projective_sum(src) / projective_sum(tgt).
Matrix concrete(const SimpleRegistry& reg, const ProjMap& f);
/// Inverse of `concrete` for a module map given as a matrix.
ProjMap from_concrete(const SimpleRegistry& reg, const std::vector<int>& src,
                      const std::vector<int>& tgt, const Matrix& m);

/// Bounded complex of finitely generated projectives. Terms outside
/// [lo, hi] are zero, except that a complex may be cut: terms below
/// `cut_below` or above `cut_above` were dropped during construction.
class ProjComplex {
 public:
  ProjComplex() = default;
  explicit ProjComplex(RegistryPtr reg) : reg_(std::move(reg)) {}

  const RegistryPtr& registry() const { return reg_; }
  const SimpleRegistry& reg() const { return *reg_; }

  bool is_zero() const { return terms_.empty(); }
  int lo() const;
  int hi() const;
  const std::vector<int>& term(int k) const;
  int rank(int k) const { return static_cast<int>(term(k).size()); }
  /// d^k : C^k -> C^{k+1}, zero when absent.
  ProjMap diff(int k) const;
  const std::map<int, std::vector<int>>& terms() const { return terms_; }

  void set_term(int k, std::vector<int> summands);
  /// Source/target must match the current terms.
  void set_diff(int k, ProjMap d);

  std::optional<int> cut_below, cut_above;

  /// Throws Internal when some d∘d is nonzero.
  void validate() const;
  /// Total number of indecomposable summands.
  int size() const;

 private:
  RegistryPtr reg_;
  std::map<int, std::vector<int>> terms_;
  std::map<int, ProjMap> diffs_;
};

ProjComplex shift(const ProjComplex& c, int m);
Complex concrete(const ProjComplex& c);

/// Cancels unit components by Gaussian elimination until every component
/// of every differential lies in the radical.
ProjComplex minimal_reduce(const ProjComplex& c);

/// Degreewise components f^k : C^k -> D^{k + degree}.
struct ProjChainMap {
  int degree = 0;
  std::map<int, ProjMap> comps;
  ProjMap at(const ProjComplex& c, const ProjComplex& d, int k) const;
};

/// cone^k = C^{k+1} ⊕ D^k with d = [[-d_C, 0], [f, d_D]] (f of degree 0).
ProjComplex cone(const ProjComplex& c, const ProjComplex& d, const ProjChainMap& f);

/// Hom_Λ(M, P_a) for every a with the action of right multiplications
/// P_a -> P_b on them.
class HomIntoProj {
 public:
  HomIntoProj(RegistryPtr reg, ModuleRep m);
  const ModuleRep& module() const { return m_; }
  int dim(int a) const { return static_cast<int>(basis_[a].size()); }
  const Matrix& map(int a, int i) const { return basis_[a][i]; }
  /// Coordinates of f : M -> P_a.
  std::vector<Fq> coords(int a, const Matrix& f) const;
  /// Postcomposition with x in e_aΛe_b: Hom(M, P_a) -> Hom(M, P_b).
  Matrix post(int a, int b, const EElem& x) const;

 private:
  RegistryPtr reg_;
  ModuleRep m_;
  std::vector<std::vector<Matrix>> basis_;
  std::vector<Coordinates> coords_;
  std::vector<std::vector<std::vector<Matrix>>> post_;  // [a][b][i]
};

}  // namespace tiltsmith
