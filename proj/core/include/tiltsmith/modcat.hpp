#pragma once

#include "tiltsmith/registry.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace tiltsmith {

/// Multiplicity of each registered simple, indexed like the registry.
using Multiplicity = std::vector<int>;

Matrix radical(const ModuleRep& m, const SimpleRegistry& reg);
Matrix socle(const ModuleRep& m, const SimpleRegistry& reg);
/// R_0 = M ⊇ R_1 = rad M ⊇ ... ⊇ 0 (last entry has zero columns).
std::vector<Matrix> radical_series(const ModuleRep& m, const SimpleRegistry& reg);
/// soc^1 ⊆ soc^2 ⊆ ... = M.
std::vector<Matrix> socle_series(const ModuleRep& m, const SimpleRegistry& reg);
/// Composition multiplicities of each radical layer, top first.
std::vector<Multiplicity> radical_layers(const ModuleRep& m, const SimpleRegistry& reg);
/// Composition multiplicities of each socle layer, socle first.
std::vector<Multiplicity> socle_layers(const ModuleRep& m, const SimpleRegistry& reg);
Multiplicity multiplicities(const ModuleRep& m, const Matrix& subspace_basis,
                            const SimpleRegistry& reg);
Multiplicity composition_factors(const ModuleRep& m, const SimpleRegistry& reg);

struct Cover {
  std::vector<int> summands;  // simple index of each P summand
  ModuleRep module;           // ⊕ P(summands)
  Matrix surj;                // m.dim x module.dim
  Matrix generators;          // columns v_u in e_{a_u} m
};

/// Projective cover via lifts of a basis of the top.
Cover projective_cover(const ModuleRep& m, const SimpleRegistry& reg);

/// Direct sum of registered projectives.
ModuleRep projective_sum(const std::vector<int>& summands, const SimpleRegistry& reg);

struct Hull {
  std::vector<int> summands;
  ModuleRep module;
  Matrix inj;  // module.dim x m.dim
};
/// Injective hull inside a sum of indecomposable projectives (symmetric
/// algebras: P_a is the injective hull of S_a).
Hull injective_hull(const ModuleRep& m, const SimpleRegistry& reg);

/// m with all projective summands split off (a quotient of m).
ModuleRep strip_projective_summands(const ModuleRep& m, const SimpleRegistry& reg);
bool is_projective(const ModuleRep& m, const SimpleRegistry& reg);

/// Heller translate Ω^n. n < 0 goes through the dual over the opposite
/// algebra. |n| <= cap.
ModuleRep omega(const ModuleRep& m, int n, const SimpleRegistry& reg, int cap = 16);
/// Ω^{-1} as the cokernel of the injective hull (independent route).
ModuleRep omega_inverse_via_hull(const ModuleRep& m, const SimpleRegistry& reg);

struct StableHom {
  int total = 0;
  int projective_part = 0;
  int stable = 0;
};
StableHom stable_hom(const ModuleRep& m, const ModuleRep& n, const SimpleRegistry& reg);

/// Layers as multisets of simple labels, top first.
using LoewyDiagram = std::vector<std::vector<std::string>>;

/// Module whose radical layers are exactly the diagram's, unique up to
/// isomorphism among quotients of the projective cover of the top layer.
ModuleRep realize_from_loewy(const SimpleRegistry& reg, const LoewyDiagram& layers,
                             std::uint64_t cap = 1000000);

std::vector<Multiplicity> to_multiplicities(const SimpleRegistry& reg, const LoewyDiagram& d);
LoewyDiagram to_diagram(const SimpleRegistry& reg, const std::vector<Multiplicity>& layers);
std::string format_diagram(const LoewyDiagram& d);

}  // namespace tiltsmith
