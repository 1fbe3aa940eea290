#include "tiltsmith/complex.hpp"

#include "tiltsmith/error.hpp"

namespace tiltsmith {

Complex Complex::make(AlgebraPtr alg, std::map<int, ModuleRep> terms,
                      std::map<int, Matrix> diffs) {
  Complex c(std::move(alg));
  for (auto& [k, m] : terms)
    if (m.dim() > 0) c.terms_.emplace(k, m);
  for (auto& [k, d] : diffs) {
    const int src = c.term_dim(k), tgt = c.term_dim(k + 1);
    require(d.rows() == tgt && d.cols() == src, ErrorKind::Config,
            "differential d^" + std::to_string(k) + " has wrong shape");
    if (src == 0 || tgt == 0) continue;
    require(is_homomorphism(c.term(k), c.term(k + 1), d), ErrorKind::Config,
            "differential d^" + std::to_string(k) + " is not a module map");
    c.diffs_.emplace(k, d);
  }
  for (auto& [k, d] : c.diffs_) {
    auto it = c.diffs_.find(k + 1);
    if (it == c.diffs_.end()) continue;
    require((it->second * d).is_zero(), ErrorKind::Config,
            "d∘d is not zero at degree " + std::to_string(k));
  }
  return c;
}

Complex Complex::stalk(const ModuleRep& m, int degree) {
  Complex c(m.algebra());
  if (m.dim() > 0) c.terms_.emplace(degree, m);
  return c;
}

int Complex::lo() const {
  require(!terms_.empty(), ErrorKind::Precondition, "zero complex has no degree range");
  return terms_.begin()->first;
}

int Complex::hi() const {
  require(!terms_.empty(), ErrorKind::Precondition, "zero complex has no degree range");
  return terms_.rbegin()->first;
}

ModuleRep Complex::term(int k) const {
  auto it = terms_.find(k);
  if (it == terms_.end()) return ModuleRep::zero(alg_);
  return it->second;
}

int Complex::term_dim(int k) const {
  auto it = terms_.find(k);
  return it == terms_.end() ? 0 : it->second.dim();
}

Matrix Complex::diff(int k) const {
  auto it = diffs_.find(k);
  if (it != diffs_.end()) return it->second;
  return Matrix(alg_->field(), term_dim(k + 1), term_dim(k));
}

Matrix ChainMap::at(const Complex& x, const Complex& y, int k) const {
  auto it = comps.find(k);
  if (it != comps.end()) return it->second;
  return Matrix(x.algebra()->field(), y.term_dim(k), x.term_dim(k));
}

bool is_chain_map(const Complex& x, const Complex& y, const ChainMap& f) {
  if (x.is_zero() || y.is_zero()) return true;
  const int lo = std::min(x.lo(), y.lo()) - 1, hi = std::max(x.hi(), y.hi()) + 1;
  for (int k = lo; k <= hi; ++k) {
    const Matrix fk = f.at(x, y, k);
    if (fk.rows() != y.term_dim(k) || fk.cols() != x.term_dim(k)) return false;
    if (x.term_dim(k) && y.term_dim(k) && !is_homomorphism(x.term(k), y.term(k), fk)) return false;
    const Matrix lhs = y.diff(k) * fk;
    const Matrix rhs = f.at(x, y, k + 1) * x.diff(k);
    if (lhs != rhs) return false;
  }
  return true;
}

Complex shift(const Complex& x, int m) {
  std::map<int, ModuleRep> terms;
  std::map<int, Matrix> diffs;
  const Fq sign = (m % 2 == 0) ? 1 : x.algebra()->F().neg(1);
  for (const auto& [k, t] : x.terms()) terms.emplace(k - m, t);
  for (const auto& [k, t] : x.terms()) {
    (void)t;
    diffs.emplace(k - m, x.diff(k).scaled(sign));
  }
  return Complex::make(x.algebra(), std::move(terms), std::move(diffs));
}

Cone cone(const Complex& x, const Complex& y, const ChainMap& f) {
  const AlgebraPtr& alg = x.algebra() ? x.algebra() : y.algebra();
  const FieldPtr& F = alg->field();
  Cone out;
  if (x.is_zero() && y.is_zero()) {
    out.cone = Complex(alg);
    return out;
  }
  int lo = 1 << 29, hi = -(1 << 29);
  if (!x.is_zero()) {
    lo = std::min(lo, x.lo() - 1);
    hi = std::max(hi, x.hi() - 1);
  }
  if (!y.is_zero()) {
    lo = std::min(lo, y.lo());
    hi = std::max(hi, y.hi());
  }
  std::map<int, ModuleRep> terms;
  std::map<int, Matrix> diffs;
  for (int k = lo; k <= hi; ++k) {
    const int a = x.term_dim(k + 1), b = y.term_dim(k);
    if (a + b == 0) continue;
    if (a == 0) terms.emplace(k, y.term(k));
    else if (b == 0) terms.emplace(k, x.term(k + 1));
    else terms.emplace(k, direct_sum(x.term(k + 1), y.term(k)));
  }
  for (int k = lo - 1; k <= hi; ++k) {
    const int a0 = x.term_dim(k + 1), b0 = y.term_dim(k);
    const int a1 = x.term_dim(k + 2), b1 = y.term_dim(k + 1);
    Matrix d(F, a1 + b1, a0 + b0);
    if (a1 && a0) d.set_block(0, 0, -x.diff(k + 1));
    if (b1 && a0) d.set_block(a1, 0, f.at(x, y, k + 1));
    if (b1 && b0) d.set_block(a1, a0, y.diff(k));
    diffs.emplace(k, d);
  }
  out.cone = Complex::make(alg, terms, diffs);
  for (int k = lo; k <= hi; ++k) {
    const int a = x.term_dim(k + 1), b = y.term_dim(k);
    if (b) {
      Matrix i(F, a + b, b);
      i.set_block(a, 0, Matrix::identity(F, b));
      out.incl.comps.emplace(k, i);
    }
    if (a) {
      Matrix p(F, a, a + b);
      p.set_block(0, 0, Matrix::identity(F, a));
      out.proj.comps.emplace(k, p);
    }
  }
  return out;
}

Cohomology cohomology(const Complex& x, int k) {
  Cohomology h;
  const AlgebraPtr& alg = x.algebra();
  const int d = x.term_dim(k);
  if (d == 0) {
    h.module = ModuleRep::zero(alg);
    h.cycles = Matrix(alg->field(), 0, 0);
    h.projection = Matrix(alg->field(), 0, 0);
    return h;
  }
  h.cycles = kernel_basis(x.diff(k));
  const Sub z = submodule(x.term(k), h.cycles);
  const Matrix bnd = x.diff(k - 1);
  Matrix bcoords(alg->field(), h.cycles.cols(), 0);
  if (bnd.cols() > 0 && h.cycles.cols() > 0) {
    Coordinates co(h.cycles);
    bcoords = image_basis(co.coords(bnd));
  }
  const Quot q = quotient(z.module, bcoords);
  h.module = q.module;
  h.projection = q.projection;
  return h;
}

std::map<int, int> cohomology_dims(const Complex& x) {
  std::map<int, int> out;
  if (x.is_zero()) return out;
  for (int k = x.lo(); k <= x.hi(); ++k) {
    const int z = x.term_dim(k) - rank(x.diff(k));
    const int b = rank(x.diff(k - 1));
    out[k] = z - b;
  }
  return out;
}

std::optional<Stalk> stalkify(const Complex& x) {
  const auto dims = cohomology_dims(x);
  std::optional<int> deg;
  for (auto [k, v] : dims) {
    if (v == 0) continue;
    if (deg) return std::nullopt;
    deg = k;
  }
  if (!deg) return std::nullopt;
  Stalk s;
  s.degree = *deg;
  s.witness = cohomology(x, *deg);
  s.module = s.witness.module;
  return s;
}

ChainMap stalk_map(const Matrix& f, int degree) {
  ChainMap c;
  c.comps.emplace(degree, f);
  return c;
}

}  // namespace tiltsmith
