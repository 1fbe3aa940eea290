#include "tiltsmith/algebra.hpp"

#include "tiltsmith/error.hpp"

namespace tiltsmith {

AlgebraPtr Algebra::make(FieldPtr field, std::vector<std::string> labels,
                         const std::vector<Triple>& structure, Elem unit,
                         std::optional<Elem> sym_form, std::vector<Elem> generators) {
  require(field != nullptr, ErrorKind::Config, "algebra needs a field");
  const int n = static_cast<int>(labels.size());
  require(n >= 1, ErrorKind::Config, "algebra dimension must be positive");
  require(static_cast<int>(unit.size()) == n, ErrorKind::Config, "unit has wrong length");
  if (sym_form)
    require(static_cast<int>(sym_form->size()) == n, ErrorKind::Config,
            "symmetrizing form has wrong length");
  for (const auto& g : generators)
    require(static_cast<int>(g.size()) == n, ErrorKind::Config, "generator has wrong length");

  auto a = std::shared_ptr<Algebra>(new Algebra());
  a->field_ = field;
  a->dim_ = n;
  a->labels_ = std::move(labels);
  a->unit_ = std::move(unit);
  a->sym_form_ = std::move(sym_form);
  a->generators_ = std::move(generators);

  // Accumulate sparse products, merging repeated triples.
  a->products_.assign(static_cast<std::size_t>(n) * n, {});
  {
    std::vector<std::vector<std::pair<int, Fq>>> raw(static_cast<std::size_t>(n) * n);
    for (const auto& t : structure) {
      require(t.i >= 0 && t.i < n && t.j >= 0 && t.j < n && t.k >= 0 && t.k < n,
              ErrorKind::Config, "structure constant index out of range");
      raw[static_cast<std::size_t>(t.i) * n + t.j].push_back({t.k, t.coeff});
    }
    Elem acc(n, 0);
    for (std::size_t p = 0; p < raw.size(); ++p) {
      if (raw[p].empty()) continue;
      for (auto [k, c] : raw[p]) acc[k] = field->add(acc[k], c);
      for (auto [k, c] : raw[p]) {
        (void)c;
        if (acc[k]) {
          a->products_[p].push_back({k, acc[k]});
          acc[k] = 0;
        }
      }
    }
  }
  a->build_tables();

  // Unit.
  for (int i = 0; i < n; ++i) {
    const Elem bi = a->basis_elem(i);
    require(a->mul(a->unit_, bi) == bi && a->mul(bi, a->unit_) == bi, ErrorKind::Config,
            "given unit is not a two-sided identity");
  }

  // Associativity on basis triples, using the sparse products.
  const FqField& F = *field;
  Elem lhs(n), rhs(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        std::fill(lhs.begin(), lhs.end(), 0);
        std::fill(rhs.begin(), rhs.end(), 0);
        for (const Term& t : a->product(i, j))
          for (const Term& u : a->product(t.index, k))
            lhs[u.index] = F.add(lhs[u.index], F.mul(t.coeff, u.coeff));
        for (const Term& t : a->product(j, k))
          for (const Term& u : a->product(i, t.index))
            rhs[u.index] = F.add(rhs[u.index], F.mul(t.coeff, u.coeff));
        require(lhs == rhs, ErrorKind::Config,
                "structure constants are not associative at (" + std::to_string(i) + "," +
                    std::to_string(j) + "," + std::to_string(k) + ")");
      }

  a->build_words();
  return a;
}

void Algebra::build_tables() {
  const int n = dim_;
  left_.assign(n, Matrix(field_, n, n));
  right_.assign(n, Matrix(field_, n, n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (const Term& t : product(i, j)) {
        left_[i].at(t.index, j) = t.coeff;   // b_i * b_j
        right_[j].at(t.index, i) = t.coeff;  // b_i * b_j as right mult by b_j
      }
}

void Algebra::build_words() {
  const int n = dim_;
  const FqField& F = *field_;
  // Breadth-first spanning set of words in the generators; generators are
  // added greedily from the basis when the given ones do not generate.
  for (;;) {
    word_parent_.assign(1, -1);
    word_gen_.assign(1, -1);
    std::vector<Elem> values{unit_};
    std::vector<Elem> reduced;  // echelon rows for incremental independence
    std::vector<int> lead;
    auto try_add = [&](const Elem& v) {
      Elem r = v;
      for (std::size_t t = 0; t < reduced.size(); ++t) {
        const Fq c = r[lead[t]];
        if (!c) continue;
        const Fq* mrow = F.mul_row(F.neg(c));
        for (int x = 0; x < n; ++x)
          if (reduced[t][x]) r[x] = F.add(r[x], mrow[reduced[t][x]]);
      }
      int l = -1;
      for (int x = 0; x < n; ++x)
        if (r[x]) {
          l = x;
          break;
        }
      if (l < 0) return false;
      const Fq* mrow = F.mul_row(F.inv(r[l]));
      for (auto& x : r) x = mrow[x];
      for (std::size_t t = 0; t < reduced.size(); ++t) {
        const Fq c = reduced[t][l];
        if (!c) continue;
        const Fq* m2 = F.mul_row(F.neg(c));
        for (int x = 0; x < n; ++x)
          if (r[x]) reduced[t][x] = F.add(reduced[t][x], m2[r[x]]);
      }
      reduced.push_back(r);
      lead.push_back(l);
      return true;
    };
    try_add(unit_);
    for (std::size_t head = 0; head < values.size() && static_cast<int>(values.size()) < n;
         ++head) {
      for (std::size_t g = 0; g < generators_.size(); ++g) {
        Elem w = mul(generators_[g], values[head]);
        if (try_add(w)) {
          values.push_back(std::move(w));
          word_parent_.push_back(static_cast<int>(head));
          word_gen_.push_back(static_cast<int>(g));
          if (static_cast<int>(values.size()) == n) break;
        }
      }
    }
    if (static_cast<int>(values.size()) == n) {
      Matrix w(field_, n, n);
      for (int k = 0; k < n; ++k) w.set_col(k, values[k]);
      auto inv = inverse(w);
      require(inv.has_value(), ErrorKind::Internal, "word basis is singular");
      basis_in_words_ = std::move(*inv);
      return;
    }
    // Add the first basis element outside the generated span.
    bool added = false;
    for (int i = 0; i < n && !added; ++i) {
      Elem bi = basis_elem(i);
      // Test membership without mutating the echelon set.
      Elem r = bi;
      for (std::size_t t = 0; t < reduced.size(); ++t) {
        const Fq c = r[lead[t]];
        if (!c) continue;
        const Fq* mrow = F.mul_row(F.neg(c));
        for (int x = 0; x < n; ++x)
          if (reduced[t][x]) r[x] = F.add(r[x], mrow[reduced[t][x]]);
      }
      if (!is_zero(r)) {
        generators_.push_back(bi);
        added = true;
      }
    }
    require(added, ErrorKind::Internal, "could not extend generator set");
  }
}

std::vector<Algebra::Triple> Algebra::structure_triples() const {
  std::vector<Triple> out;
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      for (const Term& t : product(i, j)) out.push_back({i, j, t.index, t.coeff});
  return out;
}

Elem Algebra::basis_elem(int i) const {
  Elem e(dim_, 0);
  e[i] = 1;
  return e;
}

Elem Algebra::mul(const Elem& x, const Elem& y) const {
  const FqField& F = *field_;
  Elem out(dim_, 0);
  for (int i = 0; i < dim_; ++i) {
    if (!x[i]) continue;
    for (int j = 0; j < dim_; ++j) {
      if (!y[j]) continue;
      const Fq c = F.mul(x[i], y[j]);
      for (const Term& t : product(i, j)) out[t.index] = F.add(out[t.index], F.mul(c, t.coeff));
    }
  }
  return out;
}

Elem Algebra::add(const Elem& x, const Elem& y) const {
  Elem out(dim_);
  for (int i = 0; i < dim_; ++i) out[i] = field_->add(x[i], y[i]);
  return out;
}

Elem Algebra::sub(const Elem& x, const Elem& y) const {
  Elem out(dim_);
  for (int i = 0; i < dim_; ++i) out[i] = field_->sub(x[i], y[i]);
  return out;
}

Elem Algebra::scale(const Elem& x, Fq s) const {
  Elem out(dim_);
  for (int i = 0; i < dim_; ++i) out[i] = field_->mul(x[i], s);
  return out;
}

bool Algebra::is_zero(const Elem& x) const {
  for (Fq v : x)
    if (v) return false;
  return true;
}

Matrix Algebra::left_mult(const Elem& x) const {
  Matrix m(field_, dim_, dim_);
  for (int i = 0; i < dim_; ++i)
    if (x[i]) m.add_scaled(left_[i], x[i]);
  return m;
}

Matrix Algebra::right_mult(const Elem& x) const {
  Matrix m(field_, dim_, dim_);
  for (int i = 0; i < dim_; ++i)
    if (x[i]) m.add_scaled(right_[i], x[i]);
  return m;
}

Fq Algebra::form(const Elem& x) const {
  require(sym_form_.has_value(), ErrorKind::Config, "no symmetrizing form registered");
  Fq s = 0;
  for (int i = 0; i < dim_; ++i) s = field_->add(s, field_->mul((*sym_form_)[i], x[i]));
  return s;
}

AlgebraPtr Algebra::opposite() const {
  std::vector<Triple> t;
  for (const Triple& x : structure_triples()) t.push_back({x.j, x.i, x.k, x.coeff});
  return make(field_, labels_, t, unit_, sym_form_, generators_);
}

bool Algebra::same_structure(const Algebra& o) const {
  if (dim_ != o.dim_ || !field_->same_as(*o.field_)) return false;
  for (std::size_t p = 0; p < products_.size(); ++p) {
    const auto& a = products_[p];
    const auto& b = o.products_[p];
    if (a.size() != b.size()) return false;
    for (std::size_t k = 0; k < a.size(); ++k)
      if (a[k].index != b[k].index || a[k].coeff != b[k].coeff) return false;
  }
  return unit_ == o.unit_;
}

namespace {

Matrix gram(const Algebra& a) {
  const int n = a.dim();
  const Elem& lam = *a.sym_form();
  Matrix g(a.field(), n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Fq s = 0;
      for (const auto& t : a.product(i, j)) s = a.F().add(s, a.F().mul(lam[t.index], t.coeff));
      g.at(i, j) = s;
    }
  return g;
}

}  // namespace

SymmetryReport check_symmetric(const Algebra& a) {
  require(a.sym_form().has_value(), ErrorKind::Config,
          "algebra has no symmetrizing form to check");
  SymmetryReport r;
  const Matrix g = gram(a);
  r.trace_identity = (g == g.transpose());
  r.gram_rank = rank(g);
  r.is_symmetric_form = r.trace_identity && r.gram_rank == a.dim();
  return r;
}

Matrix bimodule_iso_from_form(const Algebra& a) {
  const SymmetryReport r = check_symmetric(a);
  require(r.is_symmetric_form, ErrorKind::Precondition, "form is not symmetrizing");
  // θ(b_j)(b_i) = λ(b_i b_j)
  return gram(a);
}

bool theta_intertwines(const Algebra& a, const Matrix& theta, int x, int z) {
  const int n = a.dim();
  const FqField& F = a.F();
  // θ(v) as a functional is the column theta * v.
  auto theta_of = [&](const Elem& v) {
    return theta * Matrix::column(a.field(), v);
  };
  const Elem bx = a.basis_elem(x), bz = a.basis_elem(z);
  const Matrix txz = theta_of(a.mul(bx, bz));
  const Matrix tzx = theta_of(a.mul(bz, bx));
  const Matrix tz = theta_of(bz);
  for (int y = 0; y < n; ++y) {
    const Elem by = a.basis_elem(y);
    // (x·φ)(y) = φ(yx), (φ·x)(y) = φ(xy)
    const Elem yx = a.mul(by, bx), xy = a.mul(bx, by);
    Fq left = 0, right = 0;
    for (int k = 0; k < n; ++k) {
      left = F.add(left, F.mul(tz.at(k, 0), yx[k]));
      right = F.add(right, F.mul(tz.at(k, 0), xy[k]));
    }
    if (left != txz.at(y, 0) || right != tzx.at(y, 0)) return false;
  }
  return true;
}

}  // namespace tiltsmith
