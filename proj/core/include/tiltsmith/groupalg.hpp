#pragma once

#include "tiltsmith/module.hpp"

#include <string>
#include <vector>

namespace tiltsmith {

using Perm = std::vector<int>;  // image of each point, 0-based

struct PermGroupPresentation {
  int degree = 0;
  std::vector<Perm> generators;
  std::string name;
  /// Checked against the enumerated closure when positive.
  int declared_order = 0;
};

struct GroupAlgebra {
  AlgebraPtr algebra;
  std::vector<Perm> elements;       // basis order; elements[0] is the identity
  std::vector<int> generator_index; // basis index of each presentation generator

  /// Module from matrices for the presentation generators (validated).
  ModuleRep module(const std::vector<Matrix>& generator_images) const;
  /// The trivial module.
  ModuleRep trivial() const;
  int index_of(const Perm& g) const;
};

Perm perm_compose(const Perm& a, const Perm& b);  // (a∘b)(x) = a(b(x))
Perm perm_inverse(const Perm& a);
std::string perm_cycles(const Perm& a);  // 1-based cycle notation

/// Closure of the generators, breadth first from the identity.
std::vector<Perm> enumerate_group(const PermGroupPresentation& g, int cap = 10000);

/// Group algebra with basis the enumerated elements, coefficient-of-identity
/// form, and the presentation generators as algebra generators.
GroupAlgebra group_algebra(const PermGroupPresentation& g, FieldPtr field);

}  // namespace tiltsmith
