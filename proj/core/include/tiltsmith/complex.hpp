#pragma once

#include "tiltsmith/module.hpp"

#include <map>
#include <optional>
#include <vector>

namespace tiltsmith {

/// Bounded cochain complex of modules. Only nonzero terms are stored;
/// diffs[k] : terms[k] -> terms[k+1].
class Complex {
 public:
  Complex() = default;
  explicit Complex(AlgebraPtr alg) : alg_(std::move(alg)) {}

  /// Validates shapes, module maps and d∘d = 0.
  static Complex make(AlgebraPtr alg, std::map<int, ModuleRep> terms,
                      std::map<int, Matrix> diffs);
  static Complex stalk(const ModuleRep& m, int degree);

  const AlgebraPtr& algebra() const { return alg_; }
  bool is_zero() const { return terms_.empty(); }
  int lo() const;
  int hi() const;
  ModuleRep term(int k) const;
  int term_dim(int k) const;
  /// d^k, zero-shaped when absent.
  Matrix diff(int k) const;
  const std::map<int, ModuleRep>& terms() const { return terms_; }

 private:
  AlgebraPtr alg_;
  std::map<int, ModuleRep> terms_;
  std::map<int, Matrix> diffs_;
};

/// Degree-indexed components f^k : x^k -> y^k.
struct ChainMap {
  std::map<int, Matrix> comps;
  /// Zero-shaped when absent.
  Matrix at(const Complex& x, const Complex& y, int k) const;
};

bool is_chain_map(const Complex& x, const Complex& y, const ChainMap& f);

/// X[m]^i = X^{i+m}, d_{X[m]} = (-1)^m d_X.
Complex shift(const Complex& x, int m);

struct Cone {
  Complex cone;
  ChainMap incl;  // y -> cone
  ChainMap proj;  // cone -> x[1]
};
/// cone^k = x^{k+1} ⊕ y^k with d = [[-d_x, 0], [f, d_y]].
Cone cone(const Complex& x, const Complex& y, const ChainMap& f);

/// dim H^k for every degree in [lo, hi].
std::map<int, int> cohomology_dims(const Complex& x);

struct Cohomology {
  ModuleRep module;
  Matrix cycles;      // basis of Z^k in x^k
  Matrix projection;  // Z^k (coords) -> H^k
};
Cohomology cohomology(const Complex& x, int k);

struct Stalk {
  ModuleRep module;
  int degree = 0;
  Cohomology witness;
};
/// The single cohomology module, when cohomology is concentrated in one
/// degree.
std::optional<Stalk> stalkify(const Complex& x);

/// The stalk module map as a chain map between stalk complexes.
ChainMap stalk_map(const Matrix& f, int degree);

}  // namespace tiltsmith
