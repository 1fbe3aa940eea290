#include "tiltsmith/module.hpp"

#include "tiltsmith/error.hpp"

#include <random>

namespace tiltsmith {

namespace {

void check_validity(const Algebra& a, int dim, const std::vector<Matrix>& action) {
  const int n = a.dim();
  // ρ(1) = I
  Matrix one(a.field(), dim, dim);
  for (int i = 0; i < n; ++i)
    if (a.unit()[i]) one.add_scaled(action[i], a.unit()[i]);
  if (one != Matrix::identity(a.field(), dim))
    fail(ErrorKind::Config, "module action does not send 1 to the identity");
  for (const Elem& g : a.generators()) {
    Matrix rg(a.field(), dim, dim);
    for (int i = 0; i < n; ++i)
      if (g[i]) rg.add_scaled(action[i], g[i]);
    for (int j = 0; j < n; ++j) {
      // ρ(g b_j) expanded through the structure constants.
      Matrix lhs(a.field(), dim, dim);
      for (int i = 0; i < n; ++i) {
        if (!g[i]) continue;
        for (const auto& t : a.product(i, j)) lhs.add_scaled(action[t.index], a.F().mul(g[i], t.coeff));
      }
      if (lhs != rg * action[j])
        fail(ErrorKind::Config, "module action violates the structure constants");
    }
  }
}

}  // namespace

ModuleRep ModuleRep::make(AlgebraPtr alg, int dim, std::vector<Matrix> action) {
  require(alg != nullptr, ErrorKind::Config, "module needs an algebra");
  require(dim >= 0, ErrorKind::Config, "module dimension must be nonnegative");
  require(static_cast<int>(action.size()) == alg->dim(), ErrorKind::Config,
          "module needs one action matrix per basis element");
  for (const Matrix& m : action)
    require(m.rows() == dim && m.cols() == dim, ErrorKind::Config,
            "action matrix has wrong shape");
  check_validity(*alg, dim, action);
  ModuleRep r;
  r.d_ = std::make_shared<Data>(Data{std::move(alg), dim, std::move(action)});
  return r;
}

ModuleRep ModuleRep::from_generators(AlgebraPtr alg, int dim, std::vector<Matrix> gen_action,
                                     bool validate) {
  const Algebra& a = *alg;
  const int n = a.dim();
  require(gen_action.size() == a.generators().size(), ErrorKind::Config,
          "need one action matrix per algebra generator");
  for (const Matrix& m : gen_action)
    require(m.rows() == dim && m.cols() == dim, ErrorKind::Config,
            "action matrix has wrong shape");
  std::vector<Matrix> words(n);
  words[0] = Matrix::identity(a.field(), dim);
  for (int k = 1; k < n; ++k) words[k] = gen_action[a.word_gen()[k]] * words[a.word_parent()[k]];
  std::vector<Matrix> action(n, Matrix(a.field(), dim, dim));
  const Matrix& biw = a.basis_in_words();
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      if (biw.at(k, i)) action[i].add_scaled(words[k], biw.at(k, i));
  if (validate) {
    check_validity(a, dim, action);
    for (std::size_t g = 0; g < gen_action.size(); ++g) {
      Matrix rg(a.field(), dim, dim);
      for (int i = 0; i < n; ++i)
        if (a.generators()[g][i]) rg.add_scaled(action[i], a.generators()[g][i]);
      if (rg != gen_action[g])
        fail(ErrorKind::Config, "generator actions are inconsistent with the algebra");
    }
  }
  ModuleRep r;
  r.d_ = std::make_shared<Data>(Data{std::move(alg), dim, std::move(action)});
  return r;
}

ModuleRep ModuleRep::zero(AlgebraPtr alg) {
  const int n = alg->dim();
  std::vector<Matrix> action(n, Matrix(alg->field(), 0, 0));
  ModuleRep r;
  r.d_ = std::make_shared<Data>(Data{std::move(alg), 0, std::move(action)});
  return r;
}

ModuleRep ModuleRep::regular(AlgebraPtr alg) {
  std::vector<Matrix> action;
  for (int i = 0; i < alg->dim(); ++i) action.push_back(alg->left_mult(i));
  const int n = alg->dim();
  ModuleRep r;
  r.d_ = std::make_shared<Data>(Data{std::move(alg), n, std::move(action)});
  return r;
}

Matrix ModuleRep::act(const Elem& x) const {
  Matrix m(field(), dim(), dim());
  for (int i = 0; i < algebra()->dim(); ++i)
    if (x[i]) m.add_scaled(d_->action[i], x[i]);
  return m;
}

std::vector<Matrix> ModuleRep::generator_actions() const {
  std::vector<Matrix> out;
  for (const Elem& g : algebra()->generators()) out.push_back(act(g));
  return out;
}

bool same_algebra(const ModuleRep& m, const ModuleRep& n) {
  return m.algebra() == n.algebra() || m.algebra()->same_structure(*n.algebra());
}

bool is_homomorphism(const ModuleRep& m, const ModuleRep& n, const Matrix& f) {
  if (f.rows() != n.dim() || f.cols() != m.dim()) return false;
  const auto gm = m.generator_actions();
  const auto gn = n.generator_actions();
  for (std::size_t g = 0; g < gm.size(); ++g)
    if (gn[g] * f != f * gm[g]) return false;
  return true;
}

HomSpace hom_space_naive(const ModuleRep& m, const ModuleRep& n) {
  require(same_algebra(m, n), ErrorKind::Precondition, "hom_space: algebra mismatch");
  const int dm = m.dim(), dn = n.dim();
  HomSpace h;
  if (dm == 0 || dn == 0) return h;
  const auto gm = m.generator_actions();
  const auto gn = n.generator_actions();
  const FqField& F = *m.field();
  const int vars = dn * dm;
  Matrix sys(m.field(), static_cast<int>(gm.size()) * vars, vars);
  int row = 0;
  for (std::size_t g = 0; g < gm.size(); ++g)
    for (int r = 0; r < dn; ++r)
      for (int c = 0; c < dm; ++c, ++row) {
        for (int k = 0; k < dn; ++k) {
          const Fq v = gn[g].at(r, k);
          if (v) sys.at(row, k * dm + c) = F.add(sys.at(row, k * dm + c), v);
        }
        for (int k = 0; k < dm; ++k) {
          const Fq v = gm[g].at(k, c);
          if (v) sys.at(row, r * dm + k) = F.sub(sys.at(row, r * dm + k), v);
        }
      }
  const Matrix ker = kernel_basis(sys);
  for (int j = 0; j < ker.cols(); ++j) {
    Matrix f(m.field(), dn, dm);
    for (int r = 0; r < dn; ++r)
      for (int c = 0; c < dm; ++c) f.at(r, c) = ker.at(r * dm + c, j);
    h.basis.push_back(std::move(f));
  }
  return h;
}

namespace {

// Spanning tree of a module: basis vectors u_k, each either a seed or
// ρ(g) u_parent; plus the (u, g) pairs whose image was dependent.
struct SpinTree {
  Matrix basis;                    // dim x dim, columns u_k
  std::vector<int> parent, gen;    // gen = -1 for seeds
  std::vector<int> seed_of;        // seed index of each basis vector
  int seeds = 0;
  std::vector<std::pair<int, int>> relations;  // (k, g)
};

SpinTree spin_tree(const ModuleRep& m, const std::vector<Matrix>& gens) {
  const int d = m.dim();
  SpinTree t;
  Echelon ech(m.field(), d);
  std::vector<std::vector<Fq>> vecs;
  std::mt19937 rng(0x7157u);
  const int q = m.field()->q();
  while (ech.rank() < d) {
    std::vector<Fq> seed(d);
    // Pseudo-random seeds generate large cyclic submodules.
    for (int tries = 0;; ++tries) {
      for (auto& x : seed) x = static_cast<Fq>(rng() % q);
      if (!ech.contains(seed)) break;
      require(tries < 1000, ErrorKind::Internal, "spin: could not find a new seed");
    }
    ech.add(seed);
    const std::size_t start = vecs.size();
    vecs.push_back(seed);
    t.parent.push_back(-1);
    t.gen.push_back(-1);
    t.seed_of.push_back(t.seeds);
    for (std::size_t head = start; head < vecs.size(); ++head) {
      const Matrix col = Matrix::column(m.field(), vecs[head]);
      for (std::size_t g = 0; g < gens.size(); ++g) {
        Matrix img = gens[g] * col;
        std::vector<Fq> v = img.data();
        if (ech.add(v)) {
          vecs.push_back(std::move(v));
          t.parent.push_back(static_cast<int>(head));
          t.gen.push_back(static_cast<int>(g));
          t.seed_of.push_back(t.seeds);
        } else {
          t.relations.push_back({static_cast<int>(head), static_cast<int>(g)});
        }
      }
    }
    ++t.seeds;
  }
  t.basis = Matrix(m.field(), d, d);
  for (int k = 0; k < d; ++k) t.basis.set_col(k, vecs[k]);
  return t;
}

}  // namespace

HomSpace hom_space(const ModuleRep& m, const ModuleRep& n) {
  require(same_algebra(m, n), ErrorKind::Precondition, "hom_space: algebra mismatch");
  const int dm = m.dim(), dn = n.dim();
  HomSpace h;
  if (dm == 0 || dn == 0) return h;
  const auto gm = m.generator_actions();
  const auto gn = n.generator_actions();
  const FqField& F = *m.field();
  const SpinTree t = spin_tree(m, gm);
  const int s = t.seeds;
  const int vars = s * dn;
  // f(u_k) = A_k * z_{seed(k)}, A_k = ρ_N(path to u_k).
  std::vector<Matrix> A(dm);
  for (int k = 0; k < dm; ++k)
    A[k] = t.gen[k] < 0 ? Matrix::identity(m.field(), dn) : gn[t.gen[k]] * A[t.parent[k]];
  const auto binv = inverse(t.basis);
  require(binv.has_value(), ErrorKind::Internal, "spin basis is singular");
  Echelon cons(m.field(), vars);
  for (auto [k, g] : t.relations) {
    if (cons.rank() == vars) break;
    // ρ_M(g) u_k = Σ c_v u_v
    const Matrix img = gm[g] * t.basis.block(0, k, dm, 1);
    const Matrix c = *binv * img;
    Matrix lhs = gn[g] * A[k];
    // rows: dn equations; columns grouped by seed
    Matrix row_block(m.field(), dn, vars);
    row_block.set_block(0, t.seed_of[k] * dn, lhs);
    for (int v = 0; v < dm; ++v) {
      const Fq cv = c.at(v, 0);
      if (!cv) continue;
      const int off = t.seed_of[v] * dn;
      const Fq* mrow = F.mul_row(F.neg(cv));
      for (int r = 0; r < dn; ++r) {
        const Fq* src = A[v].row(r);
        Fq* dst = row_block.row(r) + off;
        for (int x = 0; x < dn; ++x)
          if (src[x]) dst[x] = F.add(dst[x], mrow[src[x]]);
      }
    }
    for (int r = 0; r < dn; ++r) cons.add(row_block.row_vector(r));
  }
  // Null space of the constraint rows.
  Matrix sys(m.field(), cons.rank(), vars);
  for (int r = 0; r < cons.rank(); ++r)
    std::copy(cons.rows()[r].begin(), cons.rows()[r].end(), sys.row(r));
  const Matrix ker = cons.rank() ? kernel_basis(sys) : Matrix::identity(m.field(), vars);
  for (int j = 0; j < ker.cols(); ++j) {
    Matrix images(m.field(), dn, dm);
    for (int k = 0; k < dm; ++k) {
      const Matrix z = ker.block(t.seed_of[k] * dn, j, dn, 1);
      images.set_block(0, k, A[k] * z);
    }
    h.basis.push_back(images * *binv);
  }
  return h;
}

std::optional<Matrix> find_isomorphism(const ModuleRep& m, const ModuleRep& n,
                                       std::uint64_t cap) {
  require(same_algebra(m, n), ErrorKind::Precondition, "is_isomorphic: algebra mismatch");
  if (m.dim() != n.dim()) return std::nullopt;
  if (m.dim() == 0) return Matrix(m.field(), 0, 0);
  const HomSpace h = hom_space(m, n);
  if (h.dim() == 0) return std::nullopt;
  const int d = m.dim();
  for (const Matrix& b : h.basis)
    if (rank(b) == d) return b;
  const std::uint64_t q = static_cast<std::uint64_t>(m.field()->q());
  std::uint64_t total = 1;
  for (int i = 0; i < h.dim(); ++i) {
    if (total > cap / q + 1) fail(ErrorKind::Inconclusive, "isomorphism search exceeds enumeration cap");
    total *= q;
  }
  if (total > cap) fail(ErrorKind::Inconclusive, "isomorphism search exceeds enumeration cap");
  // Enumerate coefficient vectors with leading coefficient 1 (scalars do
  // not change invertibility).
  std::vector<Fq> coef(h.dim(), 0);
  for (int lead = 0; lead < h.dim(); ++lead) {
    std::fill(coef.begin(), coef.end(), 0);
    coef[lead] = 1;
    for (;;) {
      Matrix f(m.field(), d, d);
      for (int i = 0; i < h.dim(); ++i)
        if (coef[i]) f.add_scaled(h.basis[i], coef[i]);
      if (rank(f) == d) return f;
      int pos = lead + 1;
      while (pos < h.dim()) {
        coef[pos] = static_cast<Fq>((coef[pos] + 1) % q);
        if (coef[pos] != 0) break;
        ++pos;
      }
      if (pos >= h.dim()) break;
    }
  }
  return std::nullopt;
}

bool is_isomorphic(const ModuleRep& m, const ModuleRep& n, std::uint64_t cap) {
  return find_isomorphism(m, n, cap).has_value();
}

Matrix spin(const ModuleRep& m, const Matrix& vectors) {
  const int d = m.dim();
  Echelon ech(m.field(), d);
  std::vector<std::vector<Fq>> vecs;
  for (int j = 0; j < vectors.cols(); ++j) {
    auto v = vectors.col_vector(j);
    if (ech.add(v)) vecs.push_back(std::move(v));
  }
  const auto gens = m.generator_actions();
  for (std::size_t head = 0; head < vecs.size() && ech.rank() < d; ++head) {
    const Matrix col = Matrix::column(m.field(), vecs[head]);
    for (const Matrix& g : gens) {
      std::vector<Fq> v = (g * col).data();
      if (ech.add(v)) vecs.push_back(std::move(v));
    }
  }
  Matrix b(m.field(), d, static_cast<int>(vecs.size()));
  for (std::size_t k = 0; k < vecs.size(); ++k) b.set_col(static_cast<int>(k), vecs[k]);
  return b;
}

Sub submodule(const ModuleRep& m, const Matrix& basis) {
  const int s = basis.cols();
  if (s == 0) return {ModuleRep::zero(m.algebra()), Matrix(m.field(), m.dim(), 0)};
  Coordinates co(basis);
  std::vector<Matrix> gens;
  for (const Matrix& g : m.generator_actions()) gens.push_back(co.coords(g * basis));
  return {ModuleRep::from_generators(m.algebra(), s, std::move(gens), false), basis};
}

Quot quotient(const ModuleRep& m, const Matrix& sub_basis) {
  const int d = m.dim();
  const int s = sub_basis.cols();
  // Complement: standard vectors at non-pivot rows of the subspace.
  std::vector<char> piv(d, 0);
  if (s > 0) {
    const RrefResult rr = rref(sub_basis.transpose());
    require(rr.rank == s, ErrorKind::Precondition, "quotient: dependent submodule basis");
    for (int c : rr.pivots) piv[c] = 1;
  }
  std::vector<int> comp;
  for (int i = 0; i < d; ++i)
    if (!piv[i]) comp.push_back(i);
  const int k = static_cast<int>(comp.size());
  Matrix section(m.field(), d, k);
  for (int j = 0; j < k; ++j) section.at(comp[j], j) = 1;
  const auto inv = inverse(hstack(sub_basis, section));
  require(inv.has_value(), ErrorKind::Internal, "quotient: complement not complementary");
  const Matrix proj = inv->block(s, 0, k, d);
  std::vector<Matrix> gens;
  for (const Matrix& g : m.generator_actions()) gens.push_back(proj * g * section);
  return {ModuleRep::from_generators(m.algebra(), k, std::move(gens), false), proj, section};
}

ModuleRep direct_sum(const ModuleRep& a, const ModuleRep& b) {
  require(same_algebra(a, b), ErrorKind::Precondition, "direct_sum: algebra mismatch");
  std::vector<Matrix> act;
  for (int i = 0; i < a.algebra()->dim(); ++i) act.push_back(tiltsmith::direct_sum(a.act(i), b.act(i)));
  return ModuleRep::make(a.algebra(), a.dim() + b.dim(), std::move(act));
}

ModuleRep direct_sum(const std::vector<ModuleRep>& parts) {
  require(!parts.empty(), ErrorKind::Precondition, "direct_sum of nothing");
  const AlgebraPtr& alg = parts[0].algebra();
  int total = 0;
  for (const auto& p : parts) total += p.dim();
  std::vector<Matrix> gens;
  for (const Elem& g : alg->generators()) {
    Matrix m(alg->field(), total, total);
    int off = 0;
    for (const auto& p : parts) {
      m.set_block(off, off, p.act(g));
      off += p.dim();
    }
    gens.push_back(std::move(m));
  }
  return ModuleRep::from_generators(alg, total, std::move(gens), false);
}

ModuleRep dual(const ModuleRep& m, AlgebraPtr opposite) {
  require(opposite->dim() == m.algebra()->dim(), ErrorKind::Precondition,
          "dual: opposite algebra dimension mismatch");
  std::vector<Matrix> act;
  for (int i = 0; i < m.algebra()->dim(); ++i) act.push_back(m.act(i).transpose());
  return ModuleRep::make(std::move(opposite), m.dim(), std::move(act));
}

Sub kernel(const ModuleRep& m, const Matrix& f) { return submodule(m, kernel_basis(f)); }

Sub image(const ModuleRep& n, const Matrix& f) { return submodule(n, image_basis(f)); }

Quot cokernel(const ModuleRep& n, const Matrix& f) { return quotient(n, image_basis(f)); }

}  // namespace tiltsmith
