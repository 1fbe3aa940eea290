#include "tiltsmith/matrix.hpp"

#include "tiltsmith/error.hpp"

#include <algorithm>

namespace tiltsmith {

Matrix::Matrix(FieldPtr field, int rows, int cols)
    : field_(std::move(field)), rows_(rows), cols_(cols),
      data_(static_cast<std::size_t>(rows) * cols, 0) {
  require(rows >= 0 && cols >= 0, ErrorKind::Precondition, "negative matrix shape");
}

Matrix Matrix::identity(FieldPtr field, int n) {
  Matrix m(std::move(field), n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Matrix Matrix::from_ints(FieldPtr field, const std::vector<std::vector<int>>& rows) {
  const int r = static_cast<int>(rows.size());
  const int c = r ? static_cast<int>(rows[0].size()) : 0;
  Matrix m(field, r, c);
  for (int i = 0; i < r; ++i) {
    require(static_cast<int>(rows[i].size()) == c, ErrorKind::Config, "ragged matrix");
    for (int j = 0; j < c; ++j) m.at(i, j) = field->from_int(rows[i][j]);
  }
  return m;
}

Matrix Matrix::column(FieldPtr field, std::span<const Fq> v) {
  Matrix m(std::move(field), static_cast<int>(v.size()), 1);
  std::copy(v.begin(), v.end(), m.data_.begin());
  return m;
}

std::vector<Fq> Matrix::col_vector(int c) const {
  std::vector<Fq> v(rows_);
  for (int r = 0; r < rows_; ++r) v[r] = at(r, c);
  return v;
}

std::vector<Fq> Matrix::row_vector(int r) const {
  return std::vector<Fq>(row(r), row(r) + cols_);
}

void Matrix::set_col(int c, std::span<const Fq> v) {
  for (int r = 0; r < rows_; ++r) at(r, c) = v[r];
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](Fq x) { return x == 0; });
}

Matrix Matrix::transpose() const {
  Matrix t(field_, cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
  return t;
}

Matrix Matrix::block(int r0, int c0, int nr, int nc) const {
  Matrix b(field_, nr, nc);
  for (int r = 0; r < nr; ++r)
    std::copy(row(r0 + r) + c0, row(r0 + r) + c0 + nc, b.row(r));
  return b;
}

void Matrix::set_block(int r0, int c0, const Matrix& b) {
  for (int r = 0; r < b.rows(); ++r)
    std::copy(b.row(r), b.row(r) + b.cols(), row(r0 + r) + c0);
}

Matrix Matrix::cols_subset(std::span<const int> idx) const {
  Matrix m(field_, rows_, static_cast<int>(idx.size()));
  for (int r = 0; r < rows_; ++r)
    for (std::size_t j = 0; j < idx.size(); ++j) m.at(r, static_cast<int>(j)) = at(r, idx[j]);
  return m;
}

Matrix Matrix::rows_subset(std::span<const int> idx) const {
  Matrix m(field_, static_cast<int>(idx.size()), cols_);
  for (std::size_t i = 0; i < idx.size(); ++i)
    std::copy(row(idx[i]), row(idx[i]) + cols_, m.row(static_cast<int>(i)));
  return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
  require(cols_ == o.rows_, ErrorKind::Precondition, "matrix product shape mismatch");
  const FieldPtr& f = field_ ? field_ : o.field_;
  Matrix out(f, rows_, o.cols_);
  if (rows_ == 0 || o.cols_ == 0 || cols_ == 0) return out;
  const FqField& F = *f;
  const int n = o.cols_;
  for (int i = 0; i < rows_; ++i) {
    Fq* dst = out.row(i);
    const Fq* a = row(i);
    for (int k = 0; k < cols_; ++k) {
      const Fq aik = a[k];
      if (aik == 0) continue;
      const Fq* mrow = F.mul_row(aik);
      const Fq* src = o.row(k);
      for (int j = 0; j < n; ++j) {
        const Fq s = src[j];
        if (s) dst[j] = F.add(dst[j], mrow[s]);
      }
    }
  }
  return out;
}

Matrix Matrix::operator+(const Matrix& o) const {
  require(rows_ == o.rows_ && cols_ == o.cols_, ErrorKind::Precondition,
          "matrix sum shape mismatch");
  Matrix out = *this;
  if (!out.field_) out.field_ = o.field_;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = out.F().add(data_[i], o.data_[i]);
  return out;
}

Matrix Matrix::operator-(const Matrix& o) const {
  require(rows_ == o.rows_ && cols_ == o.cols_, ErrorKind::Precondition,
          "matrix difference shape mismatch");
  Matrix out = *this;
  if (!out.field_) out.field_ = o.field_;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = out.F().sub(data_[i], o.data_[i]);
  return out;
}

Matrix Matrix::operator-() const {
  Matrix out = *this;
  for (auto& x : out.data_) x = F().neg(x);
  return out;
}

Matrix Matrix::scaled(Fq s) const {
  Matrix out = *this;
  if (data_.empty()) return out;
  const Fq* mrow = F().mul_row(s);
  for (auto& x : out.data_) x = mrow[x];
  return out;
}

void Matrix::add_scaled(const Matrix& o, Fq s) {
  require(rows_ == o.rows_ && cols_ == o.cols_, ErrorKind::Precondition,
          "matrix accumulate shape mismatch");
  if (s == 0 || data_.empty()) return;
  const FqField& Fd = *(field_ ? field_ : o.field_);
  const Fq* mrow = Fd.mul_row(s);
  for (std::size_t i = 0; i < data_.size(); ++i)
    if (o.data_[i]) data_[i] = Fd.add(data_[i], mrow[o.data_[i]]);
}

bool Matrix::operator==(const Matrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

Matrix hstack(const Matrix& a, const Matrix& b) {
  require(a.rows() == b.rows(), ErrorKind::Precondition, "hstack row mismatch");
  Matrix m(a.field() ? a.field() : b.field(), a.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(0, a.cols(), b);
  return m;
}

Matrix vstack(const Matrix& a, const Matrix& b) {
  require(a.cols() == b.cols(), ErrorKind::Precondition, "vstack column mismatch");
  Matrix m(a.field() ? a.field() : b.field(), a.rows() + b.rows(), a.cols());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), 0, b);
  return m;
}

Matrix direct_sum(const Matrix& a, const Matrix& b) {
  Matrix m(a.field() ? a.field() : b.field(), a.rows() + b.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), a.cols(), b);
  return m;
}

RrefResult rref(const Matrix& m) {
  RrefResult res{m, {}, 0};
  Matrix& a = res.reduced;
  if (a.empty()) return res;
  const FqField& F = a.F();
  const int rows = a.rows(), cols = a.cols();
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (a.at(i, c)) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r) std::swap_ranges(a.row(piv), a.row(piv) + cols, a.row(r));
    const Fq inv = F.inv(a.at(r, c));
    if (inv != 1) {
      const Fq* mrow = F.mul_row(inv);
      Fq* rr = a.row(r);
      for (int j = c; j < cols; ++j) rr[j] = mrow[rr[j]];
    }
    const Fq* pr = a.row(r);
    for (int i = 0; i < rows; ++i) {
      if (i == r) continue;
      const Fq f = a.at(i, c);
      if (!f) continue;
      const Fq* mrow = F.mul_row(F.neg(f));
      Fq* ri = a.row(i);
      for (int j = c; j < cols; ++j)
        if (pr[j]) ri[j] = F.add(ri[j], mrow[pr[j]]);
    }
    res.pivots.push_back(c);
    ++r;
  }
  res.rank = r;
  return res;
}

int rank(const Matrix& m) { return rref(m).rank; }

std::optional<Matrix> solve_right(const Matrix& a, const Matrix& b) {
  require(a.rows() == b.rows(), ErrorKind::Precondition, "solve_right: row count mismatch");
  const FieldPtr& f = a.field() ? a.field() : b.field();
  Matrix x(f, a.cols(), b.cols());
  if (b.cols() == 0) return x;
  if (a.rows() == 0) return x;
  const RrefResult rr = rref(hstack(a, b));
  const int n = a.cols();
  for (int i = 0; i < rr.rank; ++i)
    if (rr.pivots[i] >= n) return std::nullopt;
  for (int i = 0; i < rr.rank; ++i) {
    const int pc = rr.pivots[i];
    for (int j = 0; j < b.cols(); ++j) x.at(pc, j) = rr.reduced.at(i, n + j);
  }
  return x;
}

Matrix kernel_basis(const Matrix& m) {
  const RrefResult rr = rref(m);
  const int n = m.cols();
  std::vector<char> is_pivot(n, 0);
  for (int c : rr.pivots) is_pivot[c] = 1;
  std::vector<int> free;
  for (int c = 0; c < n; ++c)
    if (!is_pivot[c]) free.push_back(c);
  Matrix k(m.field(), n, static_cast<int>(free.size()));
  if (free.empty()) return k;
  const FqField& F = m.F();
  for (std::size_t j = 0; j < free.size(); ++j) {
    const int fc = free[j];
    k.at(fc, static_cast<int>(j)) = 1;
    for (int i = 0; i < rr.rank; ++i)
      k.at(rr.pivots[i], static_cast<int>(j)) = F.neg(rr.reduced.at(i, fc));
  }
  return k;
}

Matrix image_basis(const Matrix& m) {
  const RrefResult rr = rref(m);
  return m.cols_subset(rr.pivots);
}

std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  const int n = m.rows();
  if (n == 0) return m;
  const RrefResult rr = rref(hstack(m, Matrix::identity(m.field(), n)));
  if (rr.rank < n || rr.pivots[n - 1] != n - 1) return std::nullopt;
  return rr.reduced.block(0, n, n, n);
}

Coordinates::Coordinates(const Matrix& basis)
    : basis_(basis), dim_(basis.cols()), ambient_(basis.rows()) {
  left_inverse_ = Matrix(basis.field(), dim_, ambient_);
  if (dim_ == 0) return;
  const RrefResult rr = rref(basis.transpose());
  require(rr.rank == dim_, ErrorKind::Internal, "Coordinates: basis not independent");
  const Matrix sub = basis.rows_subset(rr.pivots);
  const auto inv = inverse(sub);
  require(inv.has_value(), ErrorKind::Internal, "Coordinates: singular pivot block");
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) left_inverse_.at(i, rr.pivots[j]) = inv->at(i, j);
}

Matrix Coordinates::coords(const Matrix& v, bool check) const {
  require(v.rows() == ambient_, ErrorKind::Precondition, "Coordinates: ambient mismatch");
  Matrix c = left_inverse_ * v;
  if (check && dim_ > 0) {
    require(basis_ * c == v, ErrorKind::Internal, "Coordinates: vector outside span");
  } else if (check && !v.is_zero()) {
    fail(ErrorKind::Internal, "Coordinates: vector outside zero span");
  }
  return c;
}

bool Coordinates::contains(const Matrix& v) const {
  if (dim_ == 0) return v.is_zero();
  return basis_ * (left_inverse_ * v) == v;
}

void Echelon::reduce(std::vector<Fq>& v) const {
  const FqField& F = *field_;
  for (std::size_t t = 0; t < rows_.size(); ++t) {
    const Fq c = v[pivots_[t]];
    if (!c) continue;
    const Fq* mrow = F.mul_row(F.neg(c));
    const auto& r = rows_[t];
    for (int x = pivots_[t]; x < ambient_; ++x)
      if (r[x]) v[x] = F.add(v[x], mrow[r[x]]);
  }
}

bool Echelon::contains(std::vector<Fq> v) const {
  reduce(v);
  for (Fq x : v)
    if (x) return false;
  return true;
}

bool Echelon::add(std::vector<Fq> v) {
  reduce(v);
  int lead = -1;
  for (int x = 0; x < ambient_; ++x)
    if (v[x]) {
      lead = x;
      break;
    }
  if (lead < 0) return false;
  const Fq* mrow = field_->mul_row(field_->inv(v[lead]));
  for (int x = lead; x < ambient_; ++x) v[x] = mrow[v[x]];
  rows_.push_back(std::move(v));
  pivots_.push_back(lead);
  return true;
}

}  // namespace tiltsmith
