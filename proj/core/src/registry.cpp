#include "tiltsmith/registry.hpp"

#include "tiltsmith/error.hpp"

#include <random>

namespace tiltsmith {

bool is_simple_module(const ModuleRep& m, std::uint64_t cap) {
  const int d = m.dim();
  if (d == 0) return false;
  const std::uint64_t q = static_cast<std::uint64_t>(m.field()->q());
  std::uint64_t lines = 0, pw = 1;
  for (int i = 0; i < d; ++i) {
    lines += pw;  // lines with leading coordinate at position d-1-i
    if (pw > cap) fail(ErrorKind::Inconclusive, "simplicity test exceeds the line cap");
    pw *= q;
    if (lines > cap) fail(ErrorKind::Inconclusive, "simplicity test exceeds the line cap");
  }
  // Λv is spanned by ρ(b_i) v; stacking the action matrices gives all of
  // them at once.
  const int n = m.algebra()->dim();
  Matrix stacked(m.field(), n * d, d);
  for (int i = 0; i < n; ++i) stacked.set_block(i * d, 0, m.act(i));
  std::vector<Fq> v(d, 0);
  for (int lead = 0; lead < d; ++lead) {
    std::fill(v.begin(), v.end(), 0);
    v[lead] = 1;
    for (;;) {
      const Matrix img = stacked * Matrix::column(m.field(), v);
      Matrix orbit(m.field(), d, n);
      for (int i = 0; i < n; ++i)
        for (int r = 0; r < d; ++r) orbit.at(r, i) = img.at(i * d + r, 0);
      if (rank(orbit) < d) return false;
      int pos = lead + 1;
      while (pos < d) {
        v[pos] = static_cast<Fq>((v[pos] + 1) % q);
        if (v[pos]) break;
        ++pos;
      }
      if (pos >= d) break;
    }
  }
  return true;
}

namespace {

// Stacked map Λ -> ⊕ End(S_a); column i is the concatenation of vec ρ_a(b_i).
Matrix semisimple_map(const Algebra& a, const std::vector<ModuleRep>& simples) {
  int rows = 0;
  for (const auto& s : simples) rows += s.dim() * s.dim();
  Matrix phi(a.field(), rows, a.dim());
  for (int i = 0; i < a.dim(); ++i) {
    int off = 0;
    for (const auto& s : simples) {
      const Matrix& r = s.act(i);
      for (int x = 0; x < s.dim(); ++x)
        for (int y = 0; y < s.dim(); ++y) phi.at(off + x * s.dim() + y, i) = r.at(x, y);
      off += s.dim() * s.dim();
    }
  }
  return phi;
}

Elem mat_col(const Matrix& m, int c) { return m.col_vector(c); }

bool elem_eq(const Elem& x, const Elem& y) { return x == y; }

}  // namespace

std::vector<Elem> lift_idempotents(const Algebra& a, const std::vector<ModuleRep>& simples,
                                   std::vector<int>* owner) {
  const Matrix phi = semisimple_map(a, simples);
  std::vector<Elem> out;
  if (owner) owner->clear();
  Elem sum = a.zero();
  int off = 0;
  for (std::size_t s = 0; s < simples.size(); ++s) {
    const int d = simples[s].dim();
    for (int r = 0; r < d; ++r) {
      Matrix target(a.field(), phi.rows(), 1);
      target.at(off + r * d + r, 0) = 1;
      const auto x0 = solve_right(phi, target);
      require(x0.has_value(), ErrorKind::Internal, "idempotent lifting: matrix unit not in image");
      const Elem f = a.sub(a.unit(), sum);
      Elem x = a.mul(a.mul(f, x0->col_vector(0)), f);
      bool done = false;
      for (int it = 0; it <= a.dim() + 1; ++it) {
        const Elem x2 = a.mul(x, x);
        if (elem_eq(x2, x)) {
          done = true;
          break;
        }
        const Elem x3 = a.mul(x2, x);
        x = a.sub(a.scale(x2, a.F().from_int(3)), a.scale(x3, a.F().from_int(2)));
      }
      require(done, ErrorKind::Internal, "idempotent lifting did not converge");
      require(!a.is_zero(x), ErrorKind::Internal, "lifted idempotent is zero");
      out.push_back(x);
      if (owner) owner->push_back(static_cast<int>(s));
      sum = a.add(sum, x);
    }
    off += d * d;
  }
  require(elem_eq(sum, a.unit()), ErrorKind::Internal, "lifted idempotents do not sum to 1");
  return out;
}

RegistryPtr register_simples(AlgebraPtr alg, std::vector<ModuleRep> candidates,
                             std::vector<std::string> labels) {
  const Algebra& a = *alg;
  const FqField& F = a.F();
  const int n = a.dim();
  require(!candidates.empty(), ErrorKind::Config, "no candidate simples given");
  if (labels.empty())
    for (std::size_t i = 0; i < candidates.size(); ++i) labels.push_back("S" + std::to_string(i));
  require(labels.size() == candidates.size(), ErrorKind::Config, "one label per simple needed");
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    require(candidates[i].dim() >= 1, ErrorKind::Config, "candidate simple has dimension 0");
    require(same_algebra(candidates[i], ModuleRep::regular(alg)), ErrorKind::Config,
            "candidate simple over a different algebra");
    require(is_simple_module(candidates[i]), ErrorKind::Verification,
            "candidate " + labels[i] + " is not simple");
  }
  const Matrix phi = semisimple_map(a, candidates);
  {
    int off = 0;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      const int d = candidates[i].dim();
      require(rank(phi.block(off, 0, d * d, n)) == d * d, ErrorKind::Verification,
              "simple " + labels[i] + " is not split: non-split field, enlarge field");
      off += d * d;
    }
  }
  for (std::size_t i = 0; i < candidates.size(); ++i)
    for (std::size_t j = i + 1; j < candidates.size(); ++j)
      if (candidates[i].dim() == candidates[j].dim() &&
          hom_space(candidates[i], candidates[j]).dim() > 0)
        fail(ErrorKind::Verification,
             "duplicate isomorphism class: " + labels[i] + " and " + labels[j]);
  int sumsq = 0;
  for (const auto& c : candidates) sumsq += c.dim() * c.dim();
  const Matrix N = kernel_basis(phi);
  require(n - N.cols() == sumsq, ErrorKind::Verification, "simple list incomplete");

  auto reg = std::shared_ptr<SimpleRegistry>(new SimpleRegistry());
  reg->alg_ = alg;
  reg->simples_ = candidates;
  reg->labels_ = labels;
  reg->radical_ = N;

  // Nilpotency of N.
  {
    Matrix power = N;
    int len = 1;
    std::vector<Matrix> rights;
    for (int j = 0; j < N.cols(); ++j) rights.push_back(a.right_mult(mat_col(N, j)));
    while (power.cols() > 0) {
      require(len <= n + 1, ErrorKind::Verification, "radical candidate is not nilpotent");
      Matrix next(alg->field(), n, 0);
      for (const Matrix& r : rights) next = hstack(next, r * power);
      power = image_basis(next);
      ++len;
    }
    reg->loewy_length_ = len;
  }
  // Right and left ideal generators of N.
  {
    Echelon right(alg->field(), n), left(alg->field(), n);
    for (int j = 0; j < N.cols() && right.rank() < N.cols(); ++j) {
      const Elem x = mat_col(N, j);
      if (right.contains(x)) continue;
      reg->rad_right_.push_back(x);
      const Matrix span = a.left_mult(x);  // x * b_i as columns
      for (int c = 0; c < n; ++c) right.add(span.col_vector(c));
    }
    for (int j = 0; j < N.cols() && left.rank() < N.cols(); ++j) {
      const Elem x = mat_col(N, j);
      if (left.contains(x)) continue;
      reg->rad_left_.push_back(x);
      const Matrix span = a.right_mult(x);  // b_i * x as columns
      for (int c = 0; c < n; ++c) left.add(span.col_vector(c));
    }
  }

  reg->idem_ = lift_idempotents(a, candidates, &reg->idem_owner_);
  const int r = static_cast<int>(candidates.size());
  reg->primary_.assign(r, -1);
  for (std::size_t k = 0; k < reg->idem_.size(); ++k)
    if (reg->primary_[reg->idem_owner_[k]] < 0) reg->primary_[reg->idem_owner_[k]] = static_cast<int>(k);

  const ModuleRep regular = ModuleRep::regular(alg);
  int total = 0;
  for (int s = 0; s < r; ++s) {
    const Matrix basis = image_basis(a.right_mult(reg->e(s)));
    reg->proj_basis_.push_back(basis);
    reg->proj_coords_.emplace_back(basis);
    reg->proj_.push_back(submodule(regular, basis).module);
    total += basis.cols() * candidates[s].dim();
    // socle of Λ e_s
    Matrix stacked(alg->field(), 0, basis.cols());
    for (const Elem& g : reg->rad_left_) {
      const Matrix m = a.left_mult(g) * basis;
      stacked = vstack(stacked, m);
    }
    const Matrix soc = kernel_basis(stacked);
    require(soc.cols() == candidates[s].dim(), ErrorKind::Verification,
            "socle of projective " + labels[s] + " is not simple");
    reg->socle_.push_back((basis * soc.block(0, 0, soc.rows(), 1)).col_vector(0));
  }
  require(total == n, ErrorKind::Verification, "projective dimensions do not add up");

  // Cartan matrix by counting e_b-ranks along radical layers.
  {
    std::vector<Matrix> le;
    for (int b = 0; b < r; ++b) le.push_back(a.left_mult(reg->e(b)));
    reg->cartan_.assign(r, std::vector<int>(r, 0));
    for (int s = 0; s < r; ++s) {
      Matrix layer = reg->proj_basis_[s];
      while (layer.cols() > 0) {
        Matrix next(alg->field(), n, 0);
        for (const Elem& g : reg->rad_right_) next = hstack(next, a.left_mult(g) * layer);
        next = image_basis(next);
        for (int b = 0; b < r; ++b)
          reg->cartan_[s][b] += rank(le[b] * layer) - (next.cols() ? rank(le[b] * next) : 0);
        layer = next;
      }
      require(reg->cartan_[s][s] >= 1, ErrorKind::Internal, "Cartan diagonal entry is zero");
    }
  }

  // Pieces e_a Λ e_b.
  reg->ebasis_.assign(r, std::vector<Matrix>(r));
  reg->ecoords_.assign(r, std::vector<Coordinates>(r));
  for (int x = 0; x < r; ++x)
    for (int y = 0; y < r; ++y) {
      const Matrix proj = a.left_mult(reg->e(x)) * a.right_mult(reg->e(y));
      Matrix basis;
      if (x == y) {
        const Matrix rad_part = image_basis(proj * N);
        basis = hstack(Matrix::column(alg->field(), reg->e(x)), rad_part);
        require(rank(basis) == basis.cols() && rank(proj) == basis.cols(),
                ErrorKind::Internal, "local piece e Λ e does not split as k + radical");
      } else {
        basis = image_basis(proj);
        require(rank(proj * N) == basis.cols(), ErrorKind::Internal,
                "off-diagonal piece e_a Λ e_b not radical");
      }
      reg->ebasis_[x][y] = basis;
      reg->ecoords_[x][y] = Coordinates(basis);
    }
  reg->emul_.assign(r, std::vector<std::vector<std::vector<Matrix>>>(r, std::vector<std::vector<Matrix>>(r)));
  for (int x = 0; x < r; ++x)
    for (int y = 0; y < r; ++y)
      for (int z = 0; z < r; ++z) {
        const Matrix& bxy = reg->ebasis_[x][y];
        const Matrix& byz = reg->ebasis_[y][z];
        for (int i = 0; i < bxy.cols(); ++i) {
          const Matrix prod = a.left_mult(bxy.col_vector(i)) * byz;
          reg->emul_[x][y][z].push_back(reg->ecoords_[x][z].coords(prod));
        }
      }
  reg->rmat_.assign(r, std::vector<std::vector<Matrix>>(r));
  for (int x = 0; x < r; ++x)
    for (int y = 0; y < r; ++y)
      for (int i = 0; i < reg->edim(x, y); ++i) {
        const Matrix img = a.right_mult(reg->ebasis_[x][y].col_vector(i)) * reg->proj_basis_[x];
        reg->rmat_[x][y].push_back(reg->proj_coords_[y].coords(img));
      }
  (void)F;
  return reg;
}

int SimpleRegistry::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return static_cast<int>(i);
  fail(ErrorKind::Config, "unknown simple label: " + label);
}

EElem SimpleRegistry::eunit(int a) const {
  EElem u(edim(a, a), 0);
  u[0] = 1;
  return u;
}

bool SimpleRegistry::eis_zero(const EElem& x) const {
  for (Fq v : x)
    if (v) return false;
  return true;
}

EElem SimpleRegistry::emul(int a, int b, int c, const EElem& x, const EElem& y) const {
  const FqField& F = *field();
  EElem out(edim(a, c), 0);
  const auto& tab = emul_[a][b][c];
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!x[i]) continue;
    const Matrix& m = tab[i];
    for (std::size_t j = 0; j < y.size(); ++j) {
      if (!y[j]) continue;
      const Fq s = F.mul(x[i], y[j]);
      for (int k = 0; k < m.rows(); ++k) {
        const Fq v = m.at(k, static_cast<int>(j));
        if (v) out[k] = F.add(out[k], F.mul(s, v));
      }
    }
  }
  return out;
}

EElem SimpleRegistry::eadd(const EElem& x, const EElem& y) const {
  EElem out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = field()->add(x[i], y[i]);
  return out;
}

EElem SimpleRegistry::esub(const EElem& x, const EElem& y) const {
  EElem out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = field()->sub(x[i], y[i]);
  return out;
}

EElem SimpleRegistry::escale(const EElem& x, Fq s) const {
  EElem out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = field()->mul(x[i], s);
  return out;
}

EElem SimpleRegistry::einv(int a, const EElem& x) const {
  require(eis_unit(a, x), ErrorKind::Precondition, "einv: element is not a unit");
  const int d = edim(a, a);
  // Left multiplication by x on e_aΛe_a; solve x y = e_a.
  Matrix m(field(), d, d);
  for (int j = 0; j < d; ++j) {
    EElem bj(d, 0);
    bj[j] = 1;
    m.set_col(j, emul(a, a, a, x, bj));
  }
  Matrix rhs(field(), d, 1);
  rhs.at(0, 0) = 1;
  const auto y = solve_right(m, rhs);
  require(y.has_value(), ErrorKind::Internal, "einv: no inverse found");
  return y->col_vector(0);
}

Elem SimpleRegistry::to_elem(int a, int b, const EElem& x) const {
  return (ebasis_[a][b] * Matrix::column(field(), x)).col_vector(0);
}

EElem SimpleRegistry::from_elem(int a, int b, const Elem& x) const {
  return ecoords_[a][b].coords(Matrix::column(field(), x)).col_vector(0);
}

Matrix SimpleRegistry::rmat(int a, int b, const EElem& x) const {
  Matrix m(field(), proj_basis_[b].cols(), proj_basis_[a].cols());
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i]) m.add_scaled(rmat_[a][b][i], x[i]);
  return m;
}

Matrix SimpleRegistry::map_from_projective(int a, const ModuleRep& m, const Matrix& v) const {
  const Matrix& pb = proj_basis_[a];
  Matrix out(field(), m.dim(), pb.cols());
  if (m.dim() == 0) return out;
  const int n = alg_->dim();
  // ρ(b_i) v for all i, then combine per basis column of P_a.
  std::vector<std::vector<Fq>> orbit(n);
  for (int i = 0; i < n; ++i) orbit[i] = (m.act(i) * v).col_vector(0);
  const FqField& F = *field();
  for (int c = 0; c < pb.cols(); ++c)
    for (int i = 0; i < n; ++i) {
      const Fq w = pb.at(i, c);
      if (!w) continue;
      const Fq* mrow = F.mul_row(w);
      for (int r = 0; r < m.dim(); ++r)
        if (orbit[i][r]) out.at(r, c) = F.add(out.at(r, c), mrow[orbit[i][r]]);
    }
  return out;
}

Matrix SimpleRegistry::e_part(int a, const ModuleRep& m) const {
  if (m.dim() == 0) return Matrix(field(), 0, 0);
  return image_basis(m.act(e(a)));
}

RegistryPtr SimpleRegistry::opposite() const {
  std::call_once(op_once_, [this] {
    const AlgebraPtr op = alg_->opposite();
    std::vector<ModuleRep> duals;
    for (const auto& s : simples_) duals.push_back(dual(s, op));
    op_ = register_simples(op, std::move(duals), labels_);
  });
  return op_;
}

namespace {

/// Basis of a proper nonzero submodule, if one is found.
std::optional<Matrix> proper_submodule(const ModuleRep& m, std::mt19937& rng, std::uint64_t cap) {
  const int d = m.dim();
  const FieldPtr& F = m.field();
  if (d <= 1) return std::nullopt;
  std::uniform_int_distribution<int> pick(0, F->q() - 1);
  auto try_vec = [&](const Matrix& v) -> std::optional<Matrix> {
    Matrix w = spin(m, v);
    if (w.cols() > 0 && w.cols() < d) return w;
    return std::nullopt;
  };
  for (int t = 0; t < 16; ++t) {
    Matrix v(F, d, 1);
    for (int r = 0; r < d; ++r) v.at(r, 0) = static_cast<Fq>(pick(rng));
    if (v.is_zero()) continue;
    if (auto w = try_vec(v)) return w;
  }
  const int n = m.algebra()->dim();
  for (int t = 0; t < 32; ++t) {
    Elem a(n, 0);
    for (int i = 0; i < n; ++i) a[i] = static_cast<Fq>(pick(rng));
    const Matrix ker = kernel_basis(m.act(a));
    for (int c = 0; c < std::min(ker.cols(), 4); ++c)
      if (auto w = try_vec(ker.block(0, c, d, 1))) return w;
  }
  // Exhaustive over lines.
  const std::uint64_t q = static_cast<std::uint64_t>(F->q());
  std::uint64_t lines = 0, pw = 1;
  for (int i = 0; i < d; ++i) {
    lines += pw;
    if (pw > cap || lines > cap) fail(ErrorKind::Inconclusive, "simple search exceeds the line cap");
    pw *= q;
  }
  std::vector<Fq> v(d, 0);
  for (int lead = 0; lead < d; ++lead) {
    std::fill(v.begin(), v.end(), 0);
    v[lead] = 1;
    for (;;) {
      if (auto w = try_vec(Matrix::column(F, v))) return w;
      int pos = lead + 1;
      while (pos < d) {
        v[pos] = static_cast<Fq>((v[pos] + 1) % q);
        if (v[pos]) break;
        ++pos;
      }
      if (pos >= d) break;
    }
  }
  return std::nullopt;
}

}  // namespace

std::vector<ModuleRep> find_simples(const AlgebraPtr& alg, std::uint64_t cap) {
  std::mt19937 rng(0x7157);
  std::vector<ModuleRep> found;
  std::vector<ModuleRep> work{ModuleRep::regular(alg)};
  while (!work.empty()) {
    ModuleRep m = std::move(work.back());
    work.pop_back();
    if (m.dim() == 0) continue;
    bool known = false;
    for (const auto& s : found)
      if (s.dim() == m.dim() && hom_space(s, m).dim() > 0) known = true;
    if (known) continue;
    if (auto w = proper_submodule(m, rng, cap)) {
      work.push_back(quotient(m, *w).module);
      work.push_back(submodule(m, *w).module);
      continue;
    }
    found.push_back(m);
  }
  std::stable_sort(found.begin(), found.end(),
                   [](const ModuleRep& a, const ModuleRep& b) { return a.dim() < b.dim(); });
  return found;
}

}  // namespace tiltsmith
