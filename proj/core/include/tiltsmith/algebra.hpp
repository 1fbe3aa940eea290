#pragma once

#include "tiltsmith/matrix.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace tiltsmith {

/// Coefficient vector of an algebra element in the algebra's basis.
using Elem = std::vector<Fq>;

class Algebra;
using AlgebraPtr = std::shared_ptr<const Algebra>;

/// Finite-dimensional unital associative algebra given by structure
/// constants: b_i * b_j = sum_k c[i][j][k] b_k.
///
/// Construction verifies the unit and associativity. A word basis (products
/// of the algebra generators) is precomputed; module actions are validated
/// against the generators only.
class Algebra {
 public:
  struct Term {
    int index;
    Fq coeff;
  };
  struct Triple {
    int i, j, k;
    Fq coeff;
  };

  static AlgebraPtr make(FieldPtr field, std::vector<std::string> labels,
                         const std::vector<Triple>& structure, Elem unit,
                         std::optional<Elem> sym_form = std::nullopt,
                         std::vector<Elem> generators = {});

  const FieldPtr& field() const { return field_; }
  const FqField& F() const { return *field_; }
  int dim() const { return dim_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const Elem& unit() const { return unit_; }
  const std::optional<Elem>& sym_form() const { return sym_form_; }
  const std::vector<Elem>& generators() const { return generators_; }

  const std::vector<Term>& product(int i, int j) const {
    return products_[static_cast<std::size_t>(i) * dim_ + j];
  }
  std::vector<Triple> structure_triples() const;

  Elem zero() const { return Elem(dim_, 0); }
  Elem basis_elem(int i) const;
  Elem mul(const Elem& x, const Elem& y) const;
  Elem add(const Elem& x, const Elem& y) const;
  Elem sub(const Elem& x, const Elem& y) const;
  Elem scale(const Elem& x, Fq s) const;
  bool is_zero(const Elem& x) const;

  /// Matrix of y -> b_i * y (columns indexed by basis of y).
  const Matrix& left_mult(int i) const { return left_[i]; }
  /// Matrix of y -> y * b_i.
  const Matrix& right_mult(int i) const { return right_[i]; }
  Matrix left_mult(const Elem& x) const;
  Matrix right_mult(const Elem& x) const;

  /// λ(x) for the registered form; requires sym_form.
  Fq form(const Elem& x) const;

  /// Words w_0 = 1, w_k = g_{word_gen[k]} * w_{word_parent[k]} whose values
  /// form a basis. `word_to_basis_inv` converts word-coordinates: the matrix
  /// whose columns are b_i written in words.
  const std::vector<int>& word_parent() const { return word_parent_; }
  const std::vector<int>& word_gen() const { return word_gen_; }
  const Matrix& basis_in_words() const { return basis_in_words_; }

  AlgebraPtr opposite() const;
  bool same_structure(const Algebra& o) const;

 private:
  Algebra() = default;
  void build_tables();
  void build_words();

  FieldPtr field_;
  int dim_ = 0;
  std::vector<std::string> labels_;
  std::vector<std::vector<Term>> products_;
  Elem unit_;
  std::optional<Elem> sym_form_;
  std::vector<Elem> generators_;
  std::vector<Matrix> left_, right_;
  std::vector<int> word_parent_, word_gen_;
  Matrix basis_in_words_;
};

struct SymmetryReport {
  bool is_symmetric_form = false;
  bool trace_identity = false;  // λ(xy) = λ(yx) on basis pairs
  int gram_rank = 0;
};

/// Checks the registered form λ: trace identity on basis pairs and
/// invertibility of the Gram matrix G[i][j] = λ(b_i b_j). Throws Config when
/// no form is registered.
SymmetryReport check_symmetric(const Algebra& a);

/// Matrix of θ: Λ -> Λ^∨, θ(x) = (y -> λ(yx)), in the basis and its dual
/// basis. Throws Precondition unless the form is symmetrizing.
Matrix bimodule_iso_from_form(const Algebra& a);

/// θ(xz) = x·θ(z) and θ(zx) = θ(z)·x for given basis indices, evaluated
/// against every basis vector y.
bool theta_intertwines(const Algebra& a, const Matrix& theta, int x, int z);

}  // namespace tiltsmith
