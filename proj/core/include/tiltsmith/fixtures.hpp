#pragma once

#include "tiltsmith/groupalg.hpp"
#include "tiltsmith/smc.hpp"

#include <string>
#include <vector>

namespace tiltsmith {

/// A verified example: group algebra, registered simples, the images Y_i of
/// the simples under the stable equivalence, the shift vector n_i, the
/// resulting collection X_i = Ω^{n_i}(Y_i)[n_i] and a generation
/// certificate for it.
struct Fixture {
  std::string name;
  PermGroupPresentation group;
  GroupAlgebra galg;
  RegistryPtr reg;
  std::vector<ModuleRep> y_modules;
  std::vector<LoewyDiagram> y_diagrams;
  std::vector<int> x_recipe;
  SMCollection collection;
  GenerationCertificate certificate;
};

/// GF(4)[A_4], simples {k, 1, 2}; X = {k, ΩY_1[1], ΩY_2[1]}.
const Fixture& fixture_a5();
/// GF(9)[(C_3)^2 ⋊ C_4], simples {k, 1, 2, 3}; X = {k, 1, ΩY_2[1], 3}.
const Fixture& fixture_a7();
/// GF(3)[(C_3)^2 ⋊ D_8], simples {k, 1, 2, 3, S}; X = {k, 2, ΩY_2[1], 3, S}.
const Fixture& fixture_a8();
/// GF(2)[C_2] with X = {k}.
const Fixture& fixture_c2();
/// GF(3)[C_2] (semisimple) with X = its two simples.
const Fixture& fixture_semisimple();

/// By name: a5, a7, a8, c2, semisimple. Throws Config otherwise.
const Fixture& fixture_by_name(const std::string& name);

/// Point x + 3y of F_3^2 sent to (ax + by + tx, cx + dy + ty).
Perm grid_perm(int a, int b, int c, int d, int tx, int ty);

/// Elements of the point group (stabilizer of the origin) acting trivially
/// on a one-dimensional module of an (F_3)^2-by-point-group fixture.
std::vector<Perm> point_kernel(const Fixture& f, int simple);

}  // namespace tiltsmith
