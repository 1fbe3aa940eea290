#pragma once

#include "tiltsmith/module.hpp"

#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace tiltsmith {

/// Coefficients of an element of e_a Λ e_b in the registry's basis of that
/// piece. The basis of e_a Λ e_a starts with e_a itself; the remaining basis
/// elements (and all of e_a Λ e_b for a != b) lie in the radical.
using EElem = std::vector<Fq>;

class SimpleRegistry;
using RegistryPtr = std::shared_ptr<const SimpleRegistry>;

/// Verified complete list of simple modules with everything derived from
/// it: radical, primitive idempotents, projective covers P_a = Λ e_a, the
/// Cartan matrix, and multiplication tables for the pieces e_a Λ e_b (maps
/// between indecomposable projectives).
class SimpleRegistry {
 public:
  const AlgebraPtr& algebra() const { return alg_; }
  const FieldPtr& field() const { return alg_->field(); }
  int count() const { return static_cast<int>(simples_.size()); }
  const std::vector<std::string>& labels() const { return labels_; }
  /// Index of a label; throws Config when unknown.
  int index_of(const std::string& label) const;

  const ModuleRep& simple(int a) const { return simples_[a]; }
  int simple_dim(int a) const { return simples_[a].dim(); }

  const Matrix& radical_basis() const { return radical_; }
  /// rad M = Σ ρ(n) M over these (they generate rad Λ as a right ideal).
  const std::vector<Elem>& rad_right_gens() const { return rad_right_; }
  /// soc M = ∩ ker ρ(n) over these (they generate rad Λ as a left ideal).
  const std::vector<Elem>& rad_left_gens() const { return rad_left_; }
  int loewy_length() const { return loewy_length_; }

  /// Complete set of primitive orthogonal idempotents and their simples.
  const std::vector<Elem>& idempotents() const { return idem_; }
  const std::vector<int>& idempotent_owner() const { return idem_owner_; }
  /// The chosen primitive idempotent for simple a.
  const Elem& e(int a) const { return idem_[primary_[a]]; }

  const ModuleRep& projective(int a) const { return proj_[a]; }
  /// Columns: basis of Λ e_a in algebra coordinates.
  const Matrix& projective_basis(int a) const { return proj_basis_[a]; }
  const Coordinates& projective_coords(int a) const { return proj_coords_[a]; }
  /// A nonzero element of soc(Λ e_a) in algebra coordinates.
  const Elem& socle_elem(int a) const { return socle_[a]; }
  /// cartan[a][b] = multiplicity of S_b in P_a.
  const std::vector<std::vector<int>>& cartan() const { return cartan_; }

  // e_a Λ e_b pieces.
  int edim(int a, int b) const { return static_cast<int>(ebasis_[a][b].cols()); }
  const Matrix& ebasis(int a, int b) const { return ebasis_[a][b]; }
  EElem ezero(int a, int b) const { return EElem(edim(a, b), 0); }
  EElem eunit(int a) const;
  bool eis_zero(const EElem& x) const;
  /// x in e_aΛe_b, y in e_bΛe_c: the product xy in e_aΛe_c.
  EElem emul(int a, int b, int c, const EElem& x, const EElem& y) const;
  EElem eadd(const EElem& x, const EElem& y) const;
  EElem esub(const EElem& x, const EElem& y) const;
  EElem escale(const EElem& x, Fq s) const;
  /// Invertibility in e_aΛe_a (coefficient of e_a nonzero).
  bool eis_unit(int /*a*/, const EElem& x) const { return !x.empty() && x[0] != 0; }
  EElem einv(int a, const EElem& x) const;
  Elem to_elem(int a, int b, const EElem& x) const;
  EElem from_elem(int a, int b, const Elem& x) const;
  /// Matrix of P_a -> P_b, w -> w x, in the projective bases.
  Matrix rmat(int a, int b, const EElem& x) const;

  /// Map P_a -> M determined by v in e_a M: w -> ρ(w) v.
  Matrix map_from_projective(int a, const ModuleRep& m, const Matrix& v) const;
  /// Basis of e_a M (columns).
  Matrix e_part(int a, const ModuleRep& m) const;

  /// Registry of the opposite algebra with the dual simples (same order),
  /// built on first use.
  RegistryPtr opposite() const;

 private:
  friend RegistryPtr register_simples(AlgebraPtr, std::vector<ModuleRep>,
                                      std::vector<std::string>);
  SimpleRegistry() = default;

  AlgebraPtr alg_;
  std::vector<ModuleRep> simples_;
  std::vector<std::string> labels_;
  Matrix radical_;
  std::vector<Elem> rad_right_, rad_left_;
  int loewy_length_ = 0;
  std::vector<Elem> idem_;
  std::vector<int> idem_owner_, primary_;
  std::vector<ModuleRep> proj_;
  std::vector<Matrix> proj_basis_;
  std::vector<Coordinates> proj_coords_;
  std::vector<Elem> socle_;
  std::vector<std::vector<int>> cartan_;
  std::vector<std::vector<Matrix>> ebasis_;
  std::vector<std::vector<Coordinates>> ecoords_;
  // emul_[a][b][c][i]: coordinates of u_i * v_j as columns j.
  std::vector<std::vector<std::vector<std::vector<Matrix>>>> emul_;
  // rmat_[a][b][i]: P_a -> P_b for basis element i of e_aΛe_b.
  std::vector<std::vector<std::vector<Matrix>>> rmat_;

  mutable std::once_flag op_once_;
  mutable RegistryPtr op_;
};

/// Verifies the candidates form a complete list of split simple modules and
/// builds the registry. Labels default to "S0", "S1", ...
RegistryPtr register_simples(AlgebraPtr alg, std::vector<ModuleRep> candidates,
                             std::vector<std::string> labels = {});

/// Exhaustive spin over all lines: whether every nonzero vector generates m.
/// Throws Inconclusive beyond `cap` lines.
bool is_simple_module(const ModuleRep& m, std::uint64_t cap = 1000000);

/// Simple modules of `alg` up to isomorphism, as composition factors of the
/// regular module: pieces are split by random and null-space spinning (fixed
/// seed) and confirmed simple by the exhaustive test.
std::vector<ModuleRep> find_simples(const AlgebraPtr& alg, std::uint64_t cap = 1000000);

/// Primitive orthogonal idempotents lifted from matrix units of the
/// semisimple quotient (3e^2 - 2e^3 iteration inside successive corners).
std::vector<Elem> lift_idempotents(const Algebra& a, const std::vector<ModuleRep>& simples,
                                   std::vector<int>* owner = nullptr);

}  // namespace tiltsmith
