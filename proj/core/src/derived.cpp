#include "tiltsmith/derived.hpp"

#include "tiltsmith/error.hpp"
#include "tiltsmith/modcat.hpp"

namespace tiltsmith {

namespace {

Matrix hcat_cols(const FieldPtr& F, int rows, const std::vector<Matrix>& parts) {
  int cols = 0;
  for (const auto& p : parts) cols += p.cols();
  Matrix out(F, rows, cols);
  int c = 0;
  for (const auto& p : parts) {
    if (p.cols()) out.set_block(0, c, p);
    c += p.cols();
  }
  return out;
}

ModuleRep sum_or_single(const ModuleRep& a, const ModuleRep& b) {
  if (a.dim() == 0) return b;
  if (b.dim() == 0) return a;
  return direct_sum(a, b);
}

}  // namespace

Replacement projective_replacement(const Complex& x, int bottom, const RegistryPtr& regp) {
  const SimpleRegistry& reg = *regp;
  const FieldPtr& F = reg.field();
  Replacement out;
  out.complex = ProjComplex(regp);
  out.certified_below = bottom;
  if (x.is_zero()) {
    out.complete = true;
    return out;
  }
  std::map<int, ModuleRep> pmod;
  std::map<int, Matrix> dP;  // concrete d_P^k : P^k -> P^{k+1}
  std::map<int, Matrix> phi;
  auto pdim = [&](int k) {
    auto it = pmod.find(k);
    return it == pmod.end() ? 0 : it->second.dim();
  };
  auto pm = [&](int k) {
    auto it = pmod.find(k);
    return it == pmod.end() ? ModuleRep::zero(reg.algebra()) : it->second;
  };
  auto getm = [&](std::map<int, Matrix>& mp, int k, int r, int c) {
    auto it = mp.find(k);
    return it == mp.end() ? Matrix(F, r, c) : it->second;
  };

  for (int k = x.hi(); k >= bottom; --k) {
    const int p1 = pdim(k + 1), x0 = x.term_dim(k);
    const int p2 = pdim(k + 2), x1 = x.term_dim(k + 1);
    const ModuleRep amod = sum_or_single(pm(k + 1), x.term(k));
    Matrix dc(F, p2 + x1, p1 + x0);
    if (p2 && p1) dc.set_block(0, 0, -getm(dP, k + 1, p2, p1));
    if (x1 && p1) dc.set_block(p2, 0, getm(phi, k + 1, x1, p1));
    if (x1 && x0) dc.set_block(p2, p1, x.diff(k));
    std::vector<int> summands;
    Matrix lifts(F, p1 + x0, 0);
    if (p1 + x0 > 0) {
      const Matrix zb = kernel_basis(dc);
      if (zb.cols() > 0) {
        const Sub z = submodule(amod, zb);
        Matrix bnd(F, p1 + x0, 0);
        if (x0 && x.term_dim(k - 1)) {
          const Matrix img = image_basis(x.diff(k - 1));
          bnd = Matrix(F, p1 + x0, img.cols());
          if (img.cols()) bnd.set_block(p1, 0, img);
        }
        Coordinates zc(zb);
        const Matrix bz = bnd.cols() ? zc.coords(bnd) : Matrix(F, zb.cols(), 0);
        const Quot q = quotient(z.module, bz);
        if (q.module.dim() > 0) {
          const Cover cov = projective_cover(q.module, reg);
          summands = cov.summands;
          std::vector<Matrix> parts;
          for (std::size_t u = 0; u < summands.size(); ++u) {
            const int a = summands[u];
            Matrix lift = q.section * cov.generators.block(0, static_cast<int>(u), q.module.dim(), 1);
            lift = z.module.act(reg.e(a)) * lift;
            parts.push_back(zb * reg.map_from_projective(a, z.module, lift));
          }
          lifts = hcat_cols(F, p1 + x0, parts);
        }
      }
    }
    if (summands.empty()) {
      if (k < x.lo()) {
        out.complete = true;
        break;
      }
      continue;
    }
    pmod.emplace(k, projective_sum(summands, reg));
    out.complex.set_term(k, summands);
    if (p1) dP.emplace(k, -lifts.block(0, 0, p1, lifts.cols()));
    if (x0) phi.emplace(k, lifts.block(p1, 0, x0, lifts.cols()));
  }
  for (const auto& [k, m] : dP)
    out.complex.set_diff(k, from_concrete(reg, out.complex.term(k), out.complex.term(k + 1), m));
  for (const auto& [k, m] : phi) out.quasi.comps.emplace(k, m);
  if (!out.complete) out.complex.cut_below = bottom;
  return out;
}

Replacement projective_resolution(const ModuleRep& m, int length, const RegistryPtr& reg) {
  return projective_replacement(Complex::stalk(m, 0), -length, reg);
}

Coresolution injective_coresolution(const ModuleRep& m, int length, const RegistryPtr& regp) {
  const SimpleRegistry& reg = *regp;
  Coresolution out;
  out.complex = ProjComplex(regp);
  if (m.dim() == 0) {
    out.complete = true;
    return out;
  }
  ModuleRep cur = m;
  Matrix prev_proj;  // J^{k-1} -> cur
  std::vector<int> prev_summands;
  for (int k = 0; k <= length; ++k) {
    if (cur.dim() == 0) {
      out.complete = true;
      break;
    }
    const Hull h = injective_hull(cur, reg);
    out.complex.set_term(k, h.summands);
    if (k == 0) out.coaug = h.inj;
    else
      out.complex.set_diff(k - 1, from_concrete(reg, prev_summands, h.summands, h.inj * prev_proj));
    const Quot q = cokernel(h.module, h.inj);
    prev_proj = q.projection;
    prev_summands = h.summands;
    cur = q.module;
  }
  if (!out.complete && cur.dim() == 0) out.complete = true;
  if (!out.complete) out.complex.cut_above = length;
  return out;
}

// ---------------------------------------------------------------------------

GradedHom::GradedHom(const ProjComplex& c, const ProjComplex& d) : c_(&c), d_(&d) {}

int GradedHom::min_degree() const {
  if (c_->is_zero() || d_->is_zero()) return 0;
  return d_->lo() - c_->hi();
}

int GradedHom::max_degree() const {
  if (c_->is_zero() || d_->is_zero()) return -1;
  return d_->hi() - c_->lo();
}

std::vector<GradedHom::Slot> GradedHom::layout(int m) const {
  std::vector<Slot> out;
  int off = 0;
  const SimpleRegistry& reg = c_->reg();
  for (const auto& [k, cs] : c_->terms()) {
    const auto& ds = d_->term(k + m);
    for (std::size_t v = 0; v < ds.size(); ++v)
      for (std::size_t u = 0; u < cs.size(); ++u) {
        const int len = reg.edim(cs[u], ds[v]);
        out.push_back({k, static_cast<int>(v), static_cast<int>(u), off, len});
        off += len;
      }
  }
  return out;
}

int GradedHom::dim(int m) const {
  int n = 0;
  for (const auto& s : layout(m)) n += s.len;
  return n;
}

Matrix GradedHom::delta(int m) const {
  const SimpleRegistry& reg = c_->reg();
  const FqField& F = *reg.field();
  const auto src = layout(m), dst = layout(m + 1);
  int ncols = 0, nrows = 0;
  for (const auto& s : src) ncols += s.len;
  for (const auto& s : dst) nrows += s.len;
  Matrix out(reg.field(), nrows, ncols);
  std::map<std::tuple<int, int, int>, int> where;
  for (const auto& s : dst) where[{s.k, s.v, s.u}] = s.offset;
  const Fq sign = (m % 2 == 0) ? F.neg(1) : 1;  // -(-1)^m
  for (const auto& s : src) {
    const auto& cs = c_->term(s.k);
    const auto& ds = d_->term(s.k + m);
    const int a = cs[s.u], b = ds[s.v];
    const ProjMap dd = d_->diff(s.k + m);
    const ProjMap dc = c_->diff(s.k - 1);
    for (int i = 0; i < s.len; ++i) {
      EElem e(s.len, 0);
      e[i] = 1;
      const int col = s.offset + i;
      for (std::size_t w = 0; w < dd.tgt.size(); ++w) {
        const EElem& y = dd.at(static_cast<int>(w), s.v);
        if (reg.eis_zero(y)) continue;
        const EElem p = reg.emul(a, b, dd.tgt[w], e, y);
        const int base = where.at({s.k, static_cast<int>(w), s.u});
        for (std::size_t r = 0; r < p.size(); ++r)
          if (p[r]) out.at(base + static_cast<int>(r), col) = F.add(out.at(base + static_cast<int>(r), col), p[r]);
      }
      for (std::size_t up = 0; up < dc.src.size(); ++up) {
        const EElem& x = dc.at(s.u, static_cast<int>(up));
        if (reg.eis_zero(x)) continue;
        const EElem p = reg.emul(dc.src[up], a, b, x, e);
        const int base = where.at({s.k - 1, s.v, static_cast<int>(up)});
        for (std::size_t r = 0; r < p.size(); ++r)
          if (p[r])
            out.at(base + static_cast<int>(r), col) =
                F.add(out.at(base + static_cast<int>(r), col), F.mul(sign, p[r]));
      }
    }
  }
  return out;
}

int GradedHom::cohomology_dim(int m) const {
  const int n = dim(m);
  if (n == 0) return 0;
  return n - rank(delta(m)) - rank(delta(m - 1));
}

std::vector<Fq> GradedHom::flatten(const ProjChainMap& f) const {
  const auto lay = layout(f.degree);
  std::vector<Fq> out(dim(f.degree), 0);
  for (const auto& s : lay) {
    auto it = f.comps.find(s.k);
    if (it == f.comps.end()) continue;
    const EElem& x = it->second.at(s.v, s.u);
    for (int i = 0; i < s.len; ++i) out[s.offset + i] = x[i];
  }
  return out;
}

ProjChainMap GradedHom::unflatten(int m, const std::vector<Fq>& v) const {
  ProjChainMap f;
  f.degree = m;
  for (const auto& s : layout(m)) {
    auto it = f.comps.find(s.k);
    if (it == f.comps.end())
      it = f.comps.emplace(s.k, ProjMap::zero(c_->reg(), c_->term(s.k), d_->term(s.k + m))).first;
    EElem& x = it->second.at(s.v, s.u);
    for (int i = 0; i < s.len; ++i) x[i] = v[s.offset + i];
  }
  return f;
}

// ---------------------------------------------------------------------------

namespace {

struct EParts {
  const SimpleRegistry& reg;
  const Complex& y;
  std::map<std::pair<int, int>, Matrix> basis;
  std::map<std::pair<int, int>, Coordinates> coords;
  const Matrix& get(int a, int j) {
    auto key = std::make_pair(a, j);
    auto it = basis.find(key);
    if (it != basis.end()) return it->second;
    Matrix b = y.term_dim(j) ? reg.e_part(a, y.term(j)) : Matrix(reg.field(), 0, 0);
    if (b.cols()) coords.emplace(key, Coordinates(b));
    return basis.emplace(key, b).first->second;
  }
  Matrix to_coords(int a, int j, const Matrix& v) {
    get(a, j);
    return coords.at({a, j}).coords(v);
  }
};

struct CSlot {
  int k, u, offset, len;
};

std::vector<CSlot> cm_layout(const ProjComplex& c, EParts& ep, int m) {
  std::vector<CSlot> out;
  int off = 0;
  for (const auto& [k, cs] : c.terms())
    for (std::size_t u = 0; u < cs.size(); ++u) {
      const int len = ep.get(cs[u], k + m).cols();
      out.push_back({k, static_cast<int>(u), off, len});
      off += len;
    }
  return out;
}

Matrix cm_delta(const ProjComplex& c, EParts& ep, int m) {
  const SimpleRegistry& reg = c.reg();
  const FqField& F = *reg.field();
  const auto src = cm_layout(c, ep, m), dst = cm_layout(c, ep, m + 1);
  int nr = 0, nc = 0;
  for (const auto& s : src) nc += s.len;
  for (const auto& s : dst) nr += s.len;
  Matrix out(reg.field(), nr, nc);
  if (nr == 0 || nc == 0) return out;
  std::map<std::pair<int, int>, int> where;
  for (const auto& s : dst) where[{s.k, s.u}] = s.offset;
  const Fq sign = (m % 2 == 0) ? F.neg(1) : 1;
  for (const auto& s : src) {
    if (s.len == 0) continue;
    const int a = c.term(s.k)[s.u];
    const int j = s.k + m;
    const Matrix& eb = ep.get(a, j);
    const ProjMap dc = c.diff(s.k - 1);
    // d_Y f
    if (ep.y.term_dim(j + 1)) {
      const Matrix img = ep.y.diff(j) * eb;
      if (!img.is_zero()) {
        const Matrix co = ep.to_coords(a, j + 1, img);
        out.set_block(where.at({s.k, s.u}), s.offset, co);
      }
    }
    // -(-1)^m f d_C
    for (std::size_t up = 0; up < dc.src.size(); ++up) {
      const EElem& x = dc.at(s.u, static_cast<int>(up));
      if (reg.eis_zero(x)) continue;
      const int b = dc.src[up];
      if (ep.get(b, j).cols() == 0) continue;
      const Matrix img = ep.y.term(j).act(reg.to_elem(b, a, x)) * eb;
      const Matrix co = ep.to_coords(b, j, img).scaled(sign);
      const int r0 = where.at({s.k - 1, static_cast<int>(up)});
      for (int r = 0; r < co.rows(); ++r)
        for (int cc = 0; cc < co.cols(); ++cc)
          out.at(r0 + r, s.offset + cc) = F.add(out.at(r0 + r, s.offset + cc), co.at(r, cc));
    }
  }
  return out;
}

}  // namespace

int hom_dim(const ProjComplex& c, const Complex& y, int m) {
  if (c.is_zero() || y.is_zero()) return 0;
  EParts ep{c.reg(), y, {}, {}};
  int n = 0;
  for (const auto& s : cm_layout(c, ep, m)) n += s.len;
  if (n == 0) return 0;
  return n - rank(cm_delta(c, ep, m)) - rank(cm_delta(c, ep, m - 1));
}

namespace {

Matrix mp_delta(const HomIntoProj& hm, const ProjComplex& c, int s, std::vector<int>* src_off) {
  const auto& ts = c.term(s);
  const auto& tt = c.term(s + 1);
  std::vector<int> so(ts.size() + 1, 0), to(tt.size() + 1, 0);
  for (std::size_t v = 0; v < ts.size(); ++v) so[v + 1] = so[v] + hm.dim(ts[v]);
  for (std::size_t w = 0; w < tt.size(); ++w) to[w + 1] = to[w] + hm.dim(tt[w]);
  if (src_off) *src_off = so;
  Matrix out(c.reg().field(), to.back(), so.back());
  if (out.rows() == 0 || out.cols() == 0) return out;
  const ProjMap d = c.diff(s);
  for (std::size_t w = 0; w < tt.size(); ++w)
    for (std::size_t v = 0; v < ts.size(); ++v) {
      const EElem& x = d.at(static_cast<int>(w), static_cast<int>(v));
      if (c.reg().eis_zero(x) || hm.dim(ts[v]) == 0 || hm.dim(tt[w]) == 0) continue;
      out.set_block(to[w], so[v], hm.post(ts[v], tt[w], x));
    }
  return out;
}

}  // namespace

ModuleToProjHom hom_cocycles(const HomIntoProj& hm, const ProjComplex& c, int s) {
  ModuleToProjHom r;
  const Matrix d = mp_delta(hm, c, s, &r.offsets);
  const Matrix dprev = mp_delta(hm, c, s - 1, nullptr);
  const int n = r.offsets.back();
  const FieldPtr& F = c.reg().field();
  if (n == 0) {
    r.cocycles = r.boundaries = r.reps = Matrix(F, 0, 0);
    return r;
  }
  r.cocycles = d.rows() ? kernel_basis(d) : Matrix::identity(F, n);
  r.boundaries = dprev.cols() ? image_basis(dprev) : Matrix(F, n, 0);
  Echelon ech(F, n);
  for (int j = 0; j < r.boundaries.cols(); ++j) ech.add(r.boundaries.col_vector(j));
  std::vector<Matrix> reps;
  for (int j = 0; j < r.cocycles.cols(); ++j)
    if (ech.add(r.cocycles.col_vector(j))) reps.push_back(r.cocycles.block(0, j, n, 1));
  r.reps = hcat_cols(F, n, reps);
  r.h = r.reps.cols();
  return r;
}

int hom_dim(const HomIntoProj& hm, const ProjComplex& c, int s) {
  return hom_cocycles(hm, c, s).h;
}

int ext_dim(const ModuleRep& m, const ModuleRep& n, int deg, const RegistryPtr& reg) {
  require(deg >= 0, ErrorKind::Precondition, "ext: negative degree");
  const Replacement r = projective_resolution(m, deg + 1, reg);
  return hom_dim(r.complex, Complex::stalk(n, 0), deg);
}

std::map<int, int> derived_hom(const Complex& x, const Complex& y, int mlo, int mhi,
                               const RegistryPtr& reg, int depth_cap) {
  std::map<int, int> out;
  for (int m = mlo; m <= mhi; ++m) out[m] = 0;
  if (x.is_zero() || y.is_zero() || mlo > mhi) return out;
  const int bottom = std::min(x.lo(), y.lo() - mhi - 1);
  if (x.lo() - bottom > depth_cap)
    fail(ErrorKind::Inconclusive, "derived Hom needs resolution depth " +
                                      std::to_string(x.lo() - bottom) +
                                      " beyond the cap; widen the depth");
  const Replacement r = projective_replacement(x, bottom, reg);
  for (int m = mlo; m <= mhi; ++m) out[m] = hom_dim(r.complex, y, m);
  return out;
}

bool duality_check(const Complex& x, const Complex& y, int mlo, int mhi, const RegistryPtr& reg,
                   int depth_cap) {
  const auto a = derived_hom(x, y, mlo, mhi, reg, depth_cap);
  const auto b = derived_hom(y, x, -mhi, -mlo, reg, depth_cap);
  for (int m = mlo; m <= mhi; ++m)
    if (a.at(m) != b.at(-m)) return false;
  return true;
}

}  // namespace tiltsmith
