#pragma once

#include "tiltsmith/field.hpp"

#include <optional>
#include <span>
#include <vector>

namespace tiltsmith {

/// Dense row-major matrix over GF(q). Entries are always reduced.
class Matrix {
 public:
  Matrix() = default;
  Matrix(FieldPtr field, int rows, int cols);

  static Matrix zeros(FieldPtr field, int rows, int cols) {
    return Matrix(std::move(field), rows, cols);
  }
  static Matrix identity(FieldPtr field, int n);
  /// Rows of small integers, reduced mod p (prime-field embedding).
  static Matrix from_ints(FieldPtr field, const std::vector<std::vector<int>>& rows);
  /// A single column.
  static Matrix column(FieldPtr field, std::span<const Fq> v);

  const FieldPtr& field() const { return field_; }
  const FqField& F() const { return *field_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Fq at(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  Fq& at(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  Fq* row(int r) { return data_.data() + static_cast<std::size_t>(r) * cols_; }
  const Fq* row(int r) const { return data_.data() + static_cast<std::size_t>(r) * cols_; }
  const std::vector<Fq>& data() const { return data_; }
  std::vector<Fq>& data() { return data_; }

  std::vector<Fq> col_vector(int c) const;
  std::vector<Fq> row_vector(int r) const;
  void set_col(int c, std::span<const Fq> v);

  bool is_zero() const;
  Matrix transpose() const;
  Matrix block(int r0, int c0, int nr, int nc) const;
  void set_block(int r0, int c0, const Matrix& b);
  Matrix cols_subset(std::span<const int> idx) const;
  Matrix rows_subset(std::span<const int> idx) const;

  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator-() const;
  Matrix scaled(Fq s) const;
  /// this += s * o
  void add_scaled(const Matrix& o, Fq s);
  bool operator==(const Matrix& o) const;
  bool operator!=(const Matrix& o) const { return !(*this == o); }

 private:
  FieldPtr field_;
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Fq> data_;
};

Matrix hstack(const Matrix& a, const Matrix& b);
Matrix vstack(const Matrix& a, const Matrix& b);
/// Block-diagonal sum.
Matrix direct_sum(const Matrix& a, const Matrix& b);

struct RrefResult {
  Matrix reduced;
  std::vector<int> pivots;
  int rank = 0;
};

/// Reduced row echelon form with leftmost pivot, first-nonzero-row choice.
RrefResult rref(const Matrix& m);
int rank(const Matrix& m);

/// Some x with a*x = b, free variables set to zero; nullopt if none exists.
std::optional<Matrix> solve_right(const Matrix& a, const Matrix& b);
/// Columns form a basis of the right null space.
Matrix kernel_basis(const Matrix& m);
/// Columns form a basis of the column space (a subset of m's columns).
Matrix image_basis(const Matrix& m);
std::optional<Matrix> inverse(const Matrix& m);

/// Projects vectors onto coordinates of a fixed column basis. Built once,
/// reused for many coordinate queries (rows of the basis at pivot positions).
class Coordinates {
 public:
  Coordinates() = default;
  explicit Coordinates(const Matrix& basis);

  int dim() const { return dim_; }
  int ambient() const { return ambient_; }
  /// Coordinates of the columns of v; throws Internal when v is outside the span
  /// and `check` is set.
  Matrix coords(const Matrix& v, bool check = true) const;
  bool contains(const Matrix& v) const;

 private:
  Matrix basis_;
  Matrix left_inverse_;  // dim x ambient, picks pivot rows
  int dim_ = 0;
  int ambient_ = 0;
};

/// Incrementally built span of row vectors in semi-echelon form: every
/// inserted row is reduced against all earlier ones, so reduction in
/// insertion order is exact.
class Echelon {
 public:
  Echelon() = default;
  Echelon(FieldPtr field, int ambient) : field_(std::move(field)), ambient_(ambient) {}

  int rank() const { return static_cast<int>(rows_.size()); }
  int ambient() const { return ambient_; }
  /// Reduces v in place against the current rows.
  void reduce(std::vector<Fq>& v) const;
  bool contains(std::vector<Fq> v) const;
  /// Inserts v if independent; returns whether the rank grew.
  bool add(std::vector<Fq> v);
  const std::vector<std::vector<Fq>>& rows() const { return rows_; }
  const std::vector<int>& pivots() const { return pivots_; }

 private:
  FieldPtr field_;
  int ambient_ = 0;
  std::vector<std::vector<Fq>> rows_;
  std::vector<int> pivots_;
};

}  // namespace tiltsmith
