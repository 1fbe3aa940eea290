#include "tiltsmith/modcat.hpp"

#include "tiltsmith/error.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace tiltsmith {

namespace {

Matrix hcat(const FieldPtr& f, int rows, const std::vector<Matrix>& parts) {
  int cols = 0;
  for (const auto& p : parts) cols += p.cols();
  Matrix out(f, rows, cols);
  int off = 0;
  for (const auto& p : parts) {
    out.set_block(0, off, p);
    off += p.cols();
  }
  return out;
}

std::vector<Matrix> actions_of(const ModuleRep& m, const std::vector<Elem>& xs) {
  std::vector<Matrix> out;
  for (const Elem& x : xs) out.push_back(m.act(x));
  return out;
}

Matrix rad_of(const std::vector<Matrix>& gens, const Matrix& basis, const FieldPtr& f, int d) {
  if (basis.cols() == 0) return Matrix(f, d, 0);
  std::vector<Matrix> parts;
  for (const Matrix& g : gens) parts.push_back(g * basis);
  return image_basis(hcat(f, d, parts));
}

// Rows whose common kernel is exactly the span of `basis`.
Matrix annihilator(const Matrix& basis, const FieldPtr& f, int d) {
  if (basis.cols() == 0) return Matrix::identity(f, d);
  return kernel_basis(basis.transpose()).transpose();
}

std::vector<int> e_ranks(const std::vector<Matrix>& es, const Matrix& basis) {
  std::vector<int> out;
  for (const Matrix& e : es) out.push_back(basis.cols() ? rank(e * basis) : 0);
  return out;
}

}  // namespace

Matrix radical(const ModuleRep& m, const SimpleRegistry& reg) {
  return rad_of(actions_of(m, reg.rad_right_gens()), Matrix::identity(m.field(), m.dim()),
                m.field(), m.dim());
}

Matrix socle(const ModuleRep& m, const SimpleRegistry& reg) {
  if (m.dim() == 0) return Matrix(m.field(), 0, 0);
  Matrix stacked(m.field(), 0, m.dim());
  for (const Matrix& g : actions_of(m, reg.rad_left_gens())) stacked = vstack(stacked, g);
  return kernel_basis(stacked);
}

std::vector<Matrix> radical_series(const ModuleRep& m, const SimpleRegistry& reg) {
  const auto gens = actions_of(m, reg.rad_right_gens());
  std::vector<Matrix> out{Matrix::identity(m.field(), m.dim())};
  while (out.back().cols() > 0) {
    out.push_back(rad_of(gens, out.back(), m.field(), m.dim()));
    require(static_cast<int>(out.size()) <= m.dim() + 2, ErrorKind::Internal,
            "radical series does not terminate");
  }
  return out;
}

std::vector<Matrix> socle_series(const ModuleRep& m, const SimpleRegistry& reg) {
  const auto gens = actions_of(m, reg.rad_left_gens());
  std::vector<Matrix> out;
  Matrix cur(m.field(), m.dim(), 0);
  while (cur.cols() < m.dim()) {
    const Matrix ann = annihilator(cur, m.field(), m.dim());
    Matrix stacked(m.field(), 0, m.dim());
    for (const Matrix& g : gens) stacked = vstack(stacked, ann * g);
    Matrix next = kernel_basis(stacked);
    require(next.cols() > cur.cols(), ErrorKind::Internal, "socle series stalls");
    out.push_back(next);
    cur = next;
  }
  return out;
}

Multiplicity multiplicities(const ModuleRep& m, const Matrix& subspace_basis,
                            const SimpleRegistry& reg) {
  std::vector<Matrix> es;
  for (int a = 0; a < reg.count(); ++a) es.push_back(m.act(reg.e(a)));
  return e_ranks(es, subspace_basis);
}

Multiplicity composition_factors(const ModuleRep& m, const SimpleRegistry& reg) {
  return multiplicities(m, Matrix::identity(m.field(), m.dim()), reg);
}

std::vector<Multiplicity> radical_layers(const ModuleRep& m, const SimpleRegistry& reg) {
  std::vector<Matrix> es;
  for (int a = 0; a < reg.count(); ++a) es.push_back(m.act(reg.e(a)));
  const auto series = radical_series(m, reg);
  std::vector<Multiplicity> out;
  for (std::size_t k = 0; k + 1 < series.size(); ++k) {
    const auto hi = e_ranks(es, series[k]);
    const auto lo = e_ranks(es, series[k + 1]);
    Multiplicity layer(reg.count());
    for (int a = 0; a < reg.count(); ++a) layer[a] = hi[a] - lo[a];
    out.push_back(layer);
  }
  return out;
}

std::vector<Multiplicity> socle_layers(const ModuleRep& m, const SimpleRegistry& reg) {
  std::vector<Matrix> es;
  for (int a = 0; a < reg.count(); ++a) es.push_back(m.act(reg.e(a)));
  const auto series = socle_series(m, reg);
  std::vector<Multiplicity> out;
  std::vector<int> prev(reg.count(), 0);
  for (const Matrix& s : series) {
    const auto cur = e_ranks(es, s);
    Multiplicity layer(reg.count());
    for (int a = 0; a < reg.count(); ++a) layer[a] = cur[a] - prev[a];
    out.push_back(layer);
    prev = cur;
  }
  return out;
}

ModuleRep projective_sum(const std::vector<int>& summands, const SimpleRegistry& reg) {
  if (summands.empty()) return ModuleRep::zero(reg.algebra());
  std::vector<ModuleRep> parts;
  for (int a : summands) parts.push_back(reg.projective(a));
  return direct_sum(parts);
}

Cover projective_cover(const ModuleRep& m, const SimpleRegistry& reg) {
  Cover c;
  const int d = m.dim();
  Echelon ech(m.field(), d);
  const Matrix rad = radical(m, reg);
  for (int j = 0; j < rad.cols(); ++j) ech.add(rad.col_vector(j));
  std::vector<Matrix> gens;
  for (int a = 0; a < reg.count() && ech.rank() < d; ++a) {
    const Matrix ea = reg.e_part(a, m);
    for (int j = 0; j < ea.cols(); ++j) {
      auto v = ea.col_vector(j);
      if (ech.add(v)) {
        c.summands.push_back(a);
        gens.push_back(ea.block(0, j, d, 1));
      }
    }
  }
  // The e_a-parts of the top are independent, so the chosen vectors map to
  // a basis of e(top) per simple; each simple of dim d_a contributes d_a
  // dimensions of the top only through its own e_a-line.
  c.module = projective_sum(c.summands, reg);
  c.generators = hcat(m.field(), d, gens);
  std::vector<Matrix> parts;
  for (std::size_t u = 0; u < c.summands.size(); ++u)
    parts.push_back(reg.map_from_projective(c.summands[u], m, gens[u]));
  c.surj = hcat(m.field(), d, parts);
  require(rank(c.surj) == d, ErrorKind::Verification,
          "projective cover is not surjective: top has an unregistered simple");
  return c;
}

Hull injective_hull(const ModuleRep& m, const SimpleRegistry& reg) {
  Hull h;
  const int d = m.dim();
  const Matrix soc = socle(m, reg);
  Matrix comb(m.field(), 0, d);
  int got = 0;
  std::vector<Matrix> blocks;
  for (int a = 0; a < reg.count() && got < soc.cols(); ++a) {
    const HomSpace hs = hom_space(m, reg.projective(a));
    for (const Matrix& f : hs.basis) {
      Matrix trial = vstack(comb, f);
      const int r = rank(trial * soc);
      if (r > got) {
        got = r;
        comb = std::move(trial);
        h.summands.push_back(a);
      }
      if (got == soc.cols()) break;
    }
  }
  require(got == soc.cols(), ErrorKind::Verification,
          "injective hull not found: algebra may not be self-injective");
  h.module = projective_sum(h.summands, reg);
  h.inj = comb;
  require(rank(h.inj) == d, ErrorKind::Internal, "hull map is not injective");
  return h;
}

ModuleRep strip_projective_summands(const ModuleRep& m, const SimpleRegistry& reg) {
  ModuleRep cur = m;
  for (;;) {
    bool found = false;
    for (int a = 0; a < reg.count() && !found; ++a) {
      if (cur.dim() == 0) break;
      const Matrix ea = reg.e_part(a, cur);
      if (ea.cols() == 0) continue;
      const Matrix z = cur.act(reg.socle_elem(a)) * ea;
      for (int j = 0; j < z.cols(); ++j) {
        if (z.block(0, j, z.rows(), 1).is_zero()) continue;
        const Matrix f = reg.map_from_projective(a, cur, ea.block(0, j, ea.rows(), 1));
        require(rank(f) == f.cols(), ErrorKind::Internal, "projective summand map not injective");
        cur = quotient(cur, image_basis(f)).module;
        found = true;
        break;
      }
    }
    if (!found) return cur;
  }
}

bool is_projective(const ModuleRep& m, const SimpleRegistry& reg) {
  return strip_projective_summands(m, reg).dim() == 0;
}

ModuleRep omega(const ModuleRep& m, int n, const SimpleRegistry& reg, int cap) {
  require(std::abs(n) <= cap, ErrorKind::Precondition, "omega: |n| exceeds cap");
  if (n == 0) return strip_projective_summands(m, reg);
  if (n > 0) {
    ModuleRep cur = m;
    for (int i = 0; i < n; ++i) {
      const Cover c = projective_cover(cur, reg);
      cur = kernel(c.module, c.surj).module;
    }
    return cur;
  }
  const AlgebraPtr& alg = reg.algebra();
  require(alg->sym_form().has_value() && check_symmetric(*alg).is_symmetric_form,
          ErrorKind::Precondition, "omega with n < 0 needs a symmetric algebra");
  const RegistryPtr op = reg.opposite();
  const ModuleRep dm = dual(m, op->algebra());
  const ModuleRep od = omega(dm, -n, *op, cap);
  return dual(od, alg);
}

ModuleRep omega_inverse_via_hull(const ModuleRep& m, const SimpleRegistry& reg) {
  const ModuleRep s = strip_projective_summands(m, reg);
  const Hull h = injective_hull(s, reg);
  return cokernel(h.module, h.inj).module;
}

StableHom stable_hom(const ModuleRep& m, const ModuleRep& n, const SimpleRegistry& reg) {
  StableHom r;
  const HomSpace all = hom_space(m, n);
  r.total = all.dim();
  if (r.total == 0 || n.dim() == 0) {
    r.stable = r.total;
    return r;
  }
  const Cover c = projective_cover(n, reg);
  const HomSpace into = hom_space(m, c.module);
  Matrix flat(m.field(), n.dim() * m.dim(), into.dim());
  for (int j = 0; j < into.dim(); ++j) {
    const Matrix g = c.surj * into.basis[j];
    for (int x = 0; x < n.dim(); ++x)
      for (int y = 0; y < m.dim(); ++y) flat.at(x * m.dim() + y, j) = g.at(x, y);
  }
  r.projective_part = into.dim() ? rank(flat) : 0;
  r.stable = r.total - r.projective_part;
  return r;
}

std::vector<Multiplicity> to_multiplicities(const SimpleRegistry& reg, const LoewyDiagram& d) {
  std::vector<Multiplicity> out;
  for (const auto& layer : d) {
    Multiplicity m(reg.count(), 0);
    for (const auto& lab : layer) ++m[reg.index_of(lab)];
    out.push_back(m);
  }
  return out;
}

LoewyDiagram to_diagram(const SimpleRegistry& reg, const std::vector<Multiplicity>& layers) {
  LoewyDiagram d;
  for (const auto& m : layers) {
    std::vector<std::string> layer;
    for (int a = 0; a < reg.count(); ++a)
      for (int k = 0; k < m[a]; ++k) layer.push_back(reg.labels()[a]);
    d.push_back(layer);
  }
  return d;
}

std::string format_diagram(const LoewyDiagram& d) {
  std::ostringstream os;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (i) os << " / ";
    for (std::size_t j = 0; j < d[i].size(); ++j) os << (j ? " " : "") << d[i][j];
  }
  return os.str();
}

namespace {

// All k-dimensional subspaces of F_q^w, as w x k column bases in reduced
// echelon form (by columns).
void enumerate_subspaces(const FieldPtr& f, int w, int k, std::uint64_t cap,
                         const std::function<void(const Matrix&)>& visit) {
  const int q = f->q();
  std::uint64_t visited = 0;
  std::vector<int> piv(k);
  std::function<void(int, int)> choose = [&](int idx, int start) {
    if (idx == k) {
      // free positions: rows > pivot row of column j, not pivots
      std::vector<std::pair<int, int>> free;
      std::vector<char> is_piv(w, 0);
      for (int p : piv) is_piv[p] = 1;
      for (int j = 0; j < k; ++j)
        for (int r = piv[j] + 1; r < w; ++r)
          if (!is_piv[r]) free.push_back({r, j});
      std::vector<int> vals(free.size(), 0);
      for (;;) {
        if (++visited > cap) fail(ErrorKind::Inconclusive, "subspace enumeration exceeds cap");
        Matrix b(f, w, k);
        for (int j = 0; j < k; ++j) b.at(piv[j], j) = 1;
        for (std::size_t t = 0; t < free.size(); ++t)
          b.at(free[t].first, free[t].second) = static_cast<Fq>(vals[t]);
        visit(b);
        std::size_t pos = 0;
        while (pos < vals.size()) {
          if (++vals[pos] < q) break;
          vals[pos] = 0;
          ++pos;
        }
        if (pos == vals.size()) break;
      }
      return;
    }
    for (int p = start; p < w; ++p) {
      piv[idx] = p;
      choose(idx + 1, p + 1);
    }
  };
  choose(0, 0);
}

}  // namespace

ModuleRep realize_from_loewy(const SimpleRegistry& reg, const LoewyDiagram& layers,
                             std::uint64_t cap) {
  require(!layers.empty() && !layers[0].empty(), ErrorKind::Precondition,
          "Loewy diagram needs a nonempty top layer");
  const auto want = to_multiplicities(reg, layers);
  const int L = static_cast<int>(want.size());
  std::vector<int> top;
  for (int a = 0; a < reg.count(); ++a)
    for (int k = 0; k < want[0][a]; ++k) top.push_back(a);
  const ModuleRep P = projective_sum(top, reg);
  const FieldPtr& f = P.field();
  const int d = P.dim();
  const auto R = radical_series(P, reg);
  const auto Players = radical_layers(P, reg);
  require(static_cast<int>(Players.size()) >= L, ErrorKind::Verification,
          "no realization: diagram longer than the projective cover");
  std::vector<std::vector<int>> drop(L, std::vector<int>(reg.count(), 0));
  for (int i = 0; i < L; ++i)
    for (int a = 0; a < reg.count(); ++a) {
      drop[i][a] = Players[i][a] - want[i][a];
      require(drop[i][a] >= 0, ErrorKind::Verification,
              "no realization: layer exceeds the projective cover's layer");
    }
  const auto left = actions_of(P, reg.rad_left_gens());
  std::vector<Matrix> es;
  for (int a = 0; a < reg.count(); ++a) es.push_back(P.act(reg.e(a)));

  std::vector<ModuleRep> found;
  std::uint64_t budget = cap;
  std::function<void(int, const Matrix&)> level = [&](int i, const Matrix& K) {
    if (i < 0) {
      const ModuleRep M = quotient(P, K).module;
      if (radical_layers(M, reg) != want) return;
      for (const auto& g : found)
        if (is_isomorphic(g, M)) return;
      found.push_back(M);
      return;
    }
    // Preimage of soc(R_i / K) inside R_i.
    const Matrix ann = annihilator(K, f, d);
    Matrix stacked(f, 0, R[i].cols());
    for (const Matrix& g : left) stacked = vstack(stacked, ann * g * R[i]);
    const Matrix Wp = R[i] * kernel_basis(stacked);
    // e_a parts of W modulo K, per simple, then choose subspaces.
    std::vector<Matrix> reps(reg.count());
    for (int a = 0; a < reg.count(); ++a) {
      Echelon ech(f, d);
      for (int j = 0; j < K.cols(); ++j) ech.add(K.col_vector(j));
      const Matrix ew = Wp.cols() ? image_basis(es[a] * Wp) : Matrix(f, d, 0);
      std::vector<Matrix> cols;
      for (int j = 0; j < ew.cols(); ++j)
        if (ech.add(ew.col_vector(j))) cols.push_back(ew.block(0, j, d, 1));
      reps[a] = hcat(f, d, cols);
      require(reps[a].cols() >= drop[i][a], ErrorKind::Verification,
              "no realization: socle too small at a layer");
    }
    const int dimK = K.cols();
    const int dimR1 = R[i + 1].cols();
    int expect = dimK;
    for (int a = 0; a < reg.count(); ++a) expect += drop[i][a] * reg.simple_dim(a);
    std::function<void(int, Matrix)> pick = [&](int a, Matrix acc) {
      if (a == reg.count()) {
        const Matrix Ki = image_basis(spin(P, acc));
        if (Ki.cols() != expect) return;
        // K_i ∩ R_{i+1} = K
        if (rank(hstack(Ki, R[i + 1])) != Ki.cols() + dimR1 - dimK) return;
        level(i - 1, Ki);
        return;
      }
      if (drop[i][a] == 0) {
        pick(a + 1, acc);
        return;
      }
      enumerate_subspaces(f, reps[a].cols(), drop[i][a], budget, [&](const Matrix& c) {
        if (budget-- == 0) fail(ErrorKind::Inconclusive, "Loewy realization exceeds cap");
        pick(a + 1, hstack(acc, reps[a] * c));
      });
    };
    pick(0, K);
  };
  // Everything below the diagram's length is killed.
  level(L - 1, R[L]);
  require(!found.empty(), ErrorKind::Verification,
          "no realization of diagram " + format_diagram(layers));
  require(found.size() == 1, ErrorKind::Verification,
          "ambiguous diagram " + format_diagram(layers) + ": " + std::to_string(found.size()) +
              " non-isomorphic realizations");
  return found[0];
}

}  // namespace tiltsmith
