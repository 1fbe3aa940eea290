#pragma once

#include "tiltsmith/algebra.hpp"

#include <cstdint>
#include <memory>
#include <vector>

namespace tiltsmith {

/// Finitely generated left module given by one action matrix per algebra
/// basis element. Cheap to copy (shared immutable payload).
class ModuleRep {
 public:
  ModuleRep() = default;

  /// Full action list, validated: ρ(1) = I and ρ(g b_j) = ρ(g) ρ(b_j) for
  /// every algebra generator g and basis element b_j (which implies the
  /// full multiplicativity because the generators span Λ as words).
  static ModuleRep make(AlgebraPtr alg, int dim, std::vector<Matrix> action);
  /// Action of the algebra generators only; the remaining basis actions are
  /// derived through the word basis, then validated.
  static ModuleRep from_generators(AlgebraPtr alg, int dim, std::vector<Matrix> gen_action,
                                   bool validate = true);
  static ModuleRep zero(AlgebraPtr alg);
  /// Left regular module.
  static ModuleRep regular(AlgebraPtr alg);

  bool valid() const { return d_ != nullptr; }
  const AlgebraPtr& algebra() const { return d_->alg; }
  const FieldPtr& field() const { return d_->alg->field(); }
  int dim() const { return d_ ? d_->dim : 0; }
  const Matrix& act(int i) const { return d_->action[i]; }
  const std::vector<Matrix>& actions() const { return d_->action; }
  /// ρ(x) for an arbitrary algebra element.
  Matrix act(const Elem& x) const;
  /// Action of the algebra's generators.
  std::vector<Matrix> generator_actions() const;

 private:
  struct Data {
    AlgebraPtr alg;
    int dim = 0;
    std::vector<Matrix> action;
  };
  std::shared_ptr<const Data> d_;
};

struct HomSpace {
  std::vector<Matrix> basis;  // each target.dim x source.dim
  int dim() const { return static_cast<int>(basis.size()); }
};

bool same_algebra(const ModuleRep& m, const ModuleRep& n);

/// Basis of Hom_Λ(m, n), by spinning m from a small generating set and
/// solving for the images of the generators.
HomSpace hom_space(const ModuleRep& m, const ModuleRep& n);
/// Straightforward intertwining system over all generator actions; used as
/// an independent cross-check in tests.
HomSpace hom_space_naive(const ModuleRep& m, const ModuleRep& n);
/// Whether a matrix intertwines the generator actions.
bool is_homomorphism(const ModuleRep& m, const ModuleRep& n, const Matrix& f);

/// Exhaustive search for an invertible intertwiner. Throws Inconclusive when
/// q^dimHom exceeds `cap`.
bool is_isomorphic(const ModuleRep& m, const ModuleRep& n, std::uint64_t cap = 1000000);
/// An explicit isomorphism m -> n, if one exists (same search).
std::optional<Matrix> find_isomorphism(const ModuleRep& m, const ModuleRep& n,
                                       std::uint64_t cap = 1000000);

/// Submodule generated by the columns of `vectors` (basis as columns).
Matrix spin(const ModuleRep& m, const Matrix& vectors);

struct Sub {
  ModuleRep module;
  Matrix inclusion;  // m.dim x sub.dim
};
struct Quot {
  ModuleRep module;
  Matrix projection;  // quot.dim x m.dim
  Matrix section;     // m.dim x quot.dim, linear right inverse
};

/// Restriction to a submodule with the given basis (columns, must be closed).
Sub submodule(const ModuleRep& m, const Matrix& basis);
Quot quotient(const ModuleRep& m, const Matrix& sub_basis);
ModuleRep direct_sum(const ModuleRep& a, const ModuleRep& b);
ModuleRep direct_sum(const std::vector<ModuleRep>& parts);
/// Linear dual as a module over `opposite` (which must be a.algebra()'s
/// opposite): ρ*(b) = ρ(b)^T.
ModuleRep dual(const ModuleRep& m, AlgebraPtr opposite);
/// Kernel / image / cokernel of a module map f: m -> n.
Sub kernel(const ModuleRep& m, const Matrix& f);
Sub image(const ModuleRep& n, const Matrix& f);
Quot cokernel(const ModuleRep& n, const Matrix& f);

}  // namespace tiltsmith
