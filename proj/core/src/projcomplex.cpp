#include "tiltsmith/projcomplex.hpp"

#include "tiltsmith/error.hpp"
#include "tiltsmith/modcat.hpp"

namespace tiltsmith {

ProjMap ProjMap::zero(const SimpleRegistry& reg, std::vector<int> src, std::vector<int> tgt) {
  ProjMap f;
  f.src = std::move(src);
  f.tgt = std::move(tgt);
  f.entries.reserve(f.src.size() * f.tgt.size());
  for (int b : f.tgt)
    for (int a : f.src) f.entries.push_back(reg.ezero(a, b));
  return f;
}

bool ProjMap::is_zero(const SimpleRegistry& reg) const {
  for (const auto& e : entries)
    if (!reg.eis_zero(e)) return false;
  return true;
}

ProjMap compose(const SimpleRegistry& reg, const ProjMap& g, const ProjMap& f) {
  require(f.tgt == g.src, ErrorKind::Internal, "compose: summand mismatch");
  ProjMap h = ProjMap::zero(reg, f.src, g.tgt);
  const FqField& F = *reg.field();
  for (std::size_t w = 0; w < g.tgt.size(); ++w)
    for (std::size_t v = 0; v < f.tgt.size(); ++v) {
      const EElem& y = g.at(static_cast<int>(w), static_cast<int>(v));
      if (reg.eis_zero(y)) continue;
      for (std::size_t u = 0; u < f.src.size(); ++u) {
        const EElem& x = f.at(static_cast<int>(v), static_cast<int>(u));
        if (reg.eis_zero(x)) continue;
        const EElem p = reg.emul(f.src[u], f.tgt[v], g.tgt[w], x, y);
        EElem& dst = h.at(static_cast<int>(w), static_cast<int>(u));
        for (std::size_t i = 0; i < p.size(); ++i) dst[i] = F.add(dst[i], p[i]);
      }
    }
  return h;
}

ProjMap add(const SimpleRegistry& reg, const ProjMap& f, const ProjMap& g) {
  require(f.src == g.src && f.tgt == g.tgt, ErrorKind::Internal, "add: summand mismatch");
  ProjMap h = f;
  for (std::size_t i = 0; i < h.entries.size(); ++i) h.entries[i] = reg.eadd(f.entries[i], g.entries[i]);
  return h;
}

ProjMap scale(const SimpleRegistry& reg, const ProjMap& f, Fq s) {
  ProjMap h = f;
  for (auto& e : h.entries) e = reg.escale(e, s);
  return h;
}

bool equal(const SimpleRegistry& reg, const ProjMap& f, const ProjMap& g) {
  (void)reg;
  return f.src == g.src && f.tgt == g.tgt && f.entries == g.entries;
}

Matrix concrete(const SimpleRegistry& reg, const ProjMap& f) {
  std::vector<int> roff(f.tgt.size() + 1, 0), coff(f.src.size() + 1, 0);
  for (std::size_t v = 0; v < f.tgt.size(); ++v) roff[v + 1] = roff[v] + reg.projective(f.tgt[v]).dim();
  for (std::size_t u = 0; u < f.src.size(); ++u) coff[u + 1] = coff[u] + reg.projective(f.src[u]).dim();
  Matrix m(reg.field(), roff.back(), coff.back());
  for (std::size_t v = 0; v < f.tgt.size(); ++v)
    for (std::size_t u = 0; u < f.src.size(); ++u) {
      const EElem& x = f.at(static_cast<int>(v), static_cast<int>(u));
      if (reg.eis_zero(x)) continue;
      m.set_block(roff[v], coff[u], reg.rmat(f.src[u], f.tgt[v], x));
    }
  return m;
}

ProjMap from_concrete(const SimpleRegistry& reg, const std::vector<int>& src,
                      const std::vector<int>& tgt, const Matrix& m) {
  ProjMap f = ProjMap::zero(reg, src, tgt);
  std::vector<int> roff(tgt.size() + 1, 0);
  for (std::size_t v = 0; v < tgt.size(); ++v) roff[v + 1] = roff[v] + reg.projective(tgt[v]).dim();
  require(m.rows() == roff.back(), ErrorKind::Internal, "from_concrete: row mismatch");
  int col = 0;
  for (std::size_t u = 0; u < src.size(); ++u) {
    const int b = src[u];
    const int pd = reg.projective(b).dim();
    const Matrix gen = reg.projective_coords(b).coords(Matrix::column(reg.field(), reg.e(b)));
    const Matrix img = m.block(0, col, m.rows(), pd) * gen;
    for (std::size_t v = 0; v < tgt.size(); ++v) {
      const int a = tgt[v];
      const Matrix slice = img.block(roff[v], 0, roff[v + 1] - roff[v], 1);
      const Matrix elem = reg.projective_basis(a) * slice;
      f.at(static_cast<int>(v), static_cast<int>(u)) = reg.from_elem(b, a, elem.col_vector(0));
    }
    col += pd;
  }
  return f;
}

// ---------------------------------------------------------------------------

int ProjComplex::lo() const {
  require(!terms_.empty(), ErrorKind::Precondition, "zero complex has no degree range");
  return terms_.begin()->first;
}

int ProjComplex::hi() const {
  require(!terms_.empty(), ErrorKind::Precondition, "zero complex has no degree range");
  return terms_.rbegin()->first;
}

const std::vector<int>& ProjComplex::term(int k) const {
  static const std::vector<int> empty;
  auto it = terms_.find(k);
  return it == terms_.end() ? empty : it->second;
}

ProjMap ProjComplex::diff(int k) const {
  auto it = diffs_.find(k);
  if (it != diffs_.end()) return it->second;
  return ProjMap::zero(*reg_, term(k), term(k + 1));
}

void ProjComplex::set_term(int k, std::vector<int> summands) {
  diffs_.erase(k);
  diffs_.erase(k - 1);
  if (summands.empty()) terms_.erase(k);
  else terms_[k] = std::move(summands);
}

void ProjComplex::set_diff(int k, ProjMap d) {
  require(d.src == term(k) && d.tgt == term(k + 1), ErrorKind::Internal,
          "set_diff: summands do not match the terms");
  if (d.src.empty() || d.tgt.empty() || d.is_zero(*reg_)) {
    diffs_.erase(k);
    return;
  }
  diffs_[k] = std::move(d);
}

void ProjComplex::validate() const {
  for (const auto& [k, d] : diffs_) {
    auto it = diffs_.find(k + 1);
    if (it == diffs_.end()) continue;
    if (!compose(*reg_, it->second, d).is_zero(*reg_))
      fail(ErrorKind::Internal, "projective complex: d∘d nonzero at degree " + std::to_string(k));
  }
}

int ProjComplex::size() const {
  int n = 0;
  for (const auto& [k, t] : terms_) n += static_cast<int>(t.size());
  return n;
}

ProjComplex shift(const ProjComplex& c, int m) {
  ProjComplex out(c.registry());
  const SimpleRegistry& reg = c.reg();
  const Fq sign = (m % 2 == 0) ? 1 : reg.field()->neg(1);
  for (const auto& [k, t] : c.terms()) out.set_term(k - m, t);
  for (const auto& [k, t] : c.terms()) {
    (void)t;
    if (c.rank(k + 1)) out.set_diff(k - m, scale(reg, c.diff(k), sign));
  }
  if (c.cut_below) out.cut_below = *c.cut_below - m;
  if (c.cut_above) out.cut_above = *c.cut_above - m;
  return out;
}

Complex concrete(const ProjComplex& c) {
  const SimpleRegistry& reg = c.reg();
  std::map<int, ModuleRep> terms;
  std::map<int, Matrix> diffs;
  for (const auto& [k, t] : c.terms()) terms.emplace(k, projective_sum(t, reg));
  for (const auto& [k, t] : c.terms()) {
    (void)t;
    if (c.rank(k + 1)) diffs.emplace(k, concrete(reg, c.diff(k)));
  }
  return Complex::make(reg.algebra(), std::move(terms), std::move(diffs));
}

namespace {

void drop_src(ProjMap& f, int u) {
  const std::size_t ns = f.src.size();
  std::vector<EElem> e;
  e.reserve(f.tgt.size() * (ns - 1));
  for (std::size_t v = 0; v < f.tgt.size(); ++v)
    for (std::size_t x = 0; x < ns; ++x)
      if (static_cast<int>(x) != u) e.push_back(std::move(f.entries[v * ns + x]));
  f.entries = std::move(e);
  f.src.erase(f.src.begin() + u);
}

void drop_tgt(ProjMap& f, int v) {
  const std::size_t ns = f.src.size();
  f.entries.erase(f.entries.begin() + static_cast<std::ptrdiff_t>(v * ns),
                  f.entries.begin() + static_cast<std::ptrdiff_t>((v + 1) * ns));
  f.tgt.erase(f.tgt.begin() + v);
}

}  // namespace

ProjComplex minimal_reduce(const ProjComplex& c) {
  const SimpleRegistry& reg = c.reg();
  const FqField& F = *reg.field();
  std::map<int, std::vector<int>> terms = c.terms();
  std::map<int, ProjMap> diffs;
  for (const auto& [k, t] : terms) {
    (void)t;
    if (terms.count(k + 1)) diffs.emplace(k, c.diff(k));
  }
  auto term_of = [&](int k) -> std::vector<int>& { return terms[k]; };

  for (auto it = diffs.begin(); it != diffs.end();) {
    const int k = it->first;
    ProjMap& d = it->second;
    int fu = -1, fv = -1;
    for (std::size_t v = 0; v < d.tgt.size() && fu < 0; ++v)
      for (std::size_t u = 0; u < d.src.size(); ++u)
        if (d.src[u] == d.tgt[v] && reg.eis_unit(d.src[u], d.at(static_cast<int>(v), static_cast<int>(u)))) {
          fu = static_cast<int>(u);
          fv = static_cast<int>(v);
          break;
        }
    if (fu < 0) {
      ++it;
      continue;
    }
    const int a = d.src[fu];
    const EElem inv = reg.einv(a, d.at(fv, fu));
    // d[v'][u'] -= d[v][u'] · α^{-1} · d[v'][u]
    for (std::size_t up = 0; up < d.src.size(); ++up) {
      if (static_cast<int>(up) == fu) continue;
      const EElem& left = d.at(fv, static_cast<int>(up));
      if (reg.eis_zero(left)) continue;
      const EElem t = reg.emul(d.src[up], a, a, left, inv);
      for (std::size_t vp = 0; vp < d.tgt.size(); ++vp) {
        if (static_cast<int>(vp) == fv) continue;
        const EElem& right = d.at(static_cast<int>(vp), fu);
        if (reg.eis_zero(right)) continue;
        const EElem p = reg.emul(d.src[up], a, d.tgt[vp], t, right);
        EElem& dst = d.at(static_cast<int>(vp), static_cast<int>(up));
        for (std::size_t i = 0; i < p.size(); ++i) dst[i] = F.sub(dst[i], p[i]);
      }
    }
    drop_src(d, fu);
    drop_tgt(d, fv);
    if (auto prev = diffs.find(k - 1); prev != diffs.end()) drop_tgt(prev->second, fu);
    if (auto next = diffs.find(k + 1); next != diffs.end()) drop_src(next->second, fv);
    auto& tk = term_of(k);
    tk.erase(tk.begin() + fu);
    auto& tk1 = term_of(k + 1);
    tk1.erase(tk1.begin() + fv);
    // d^{k-1} and d^{k+1} only lose rows/columns, so one pass suffices.
  }

  ProjComplex out(c.registry());
  for (auto& [k, t] : terms)
    if (!t.empty()) out.set_term(k, t);
  for (auto& [k, d] : diffs)
    if (!d.src.empty() && !d.tgt.empty()) out.set_diff(k, std::move(d));
  out.cut_below = c.cut_below;
  out.cut_above = c.cut_above;
  return out;
}

ProjMap ProjChainMap::at(const ProjComplex& c, const ProjComplex& d, int k) const {
  auto it = comps.find(k);
  if (it != comps.end()) return it->second;
  return ProjMap::zero(c.reg(), c.term(k), d.term(k + degree));
}

namespace {

/// Block map [[a, b], [c, d]] on concatenated summand lists.
ProjMap block2(const SimpleRegistry& reg, const std::vector<int>& s1, const std::vector<int>& s2,
               const std::vector<int>& t1, const std::vector<int>& t2, const ProjMap* a,
               const ProjMap* b, const ProjMap* c, const ProjMap* d) {
  std::vector<int> src = s1, tgt = t1;
  src.insert(src.end(), s2.begin(), s2.end());
  tgt.insert(tgt.end(), t2.begin(), t2.end());
  ProjMap m = ProjMap::zero(reg, src, tgt);
  auto put = [&](const ProjMap* blk, int r0, int c0) {
    if (!blk) return;
    for (std::size_t v = 0; v < blk->tgt.size(); ++v)
      for (std::size_t u = 0; u < blk->src.size(); ++u)
        m.at(r0 + static_cast<int>(v), c0 + static_cast<int>(u)) =
            blk->at(static_cast<int>(v), static_cast<int>(u));
  };
  const int n1 = static_cast<int>(s1.size()), m1 = static_cast<int>(t1.size());
  put(a, 0, 0);
  put(b, 0, n1);
  put(c, m1, 0);
  put(d, m1, n1);
  return m;
}

}  // namespace

ProjComplex cone(const ProjComplex& c, const ProjComplex& d, const ProjChainMap& f) {
  require(f.degree == 0, ErrorKind::Internal, "cone: chain map must have degree 0");
  const SimpleRegistry& reg = c.reg();
  ProjComplex out(c.registry());
  if (c.is_zero() && d.is_zero()) return out;
  int lo = 1 << 29, hi = -(1 << 29);
  if (!c.is_zero()) {
    lo = std::min(lo, c.lo() - 1);
    hi = std::max(hi, c.hi() - 1);
  }
  if (!d.is_zero()) {
    lo = std::min(lo, d.lo());
    hi = std::max(hi, d.hi());
  }
  for (int k = lo; k <= hi; ++k) {
    std::vector<int> t = c.term(k + 1);
    const auto& dk = d.term(k);
    t.insert(t.end(), dk.begin(), dk.end());
    out.set_term(k, t);
  }
  const Fq m1 = reg.field()->neg(1);
  for (int k = lo; k < hi; ++k) {
    const ProjMap a = scale(reg, c.diff(k + 1), m1);
    const ProjMap fk = f.at(c, d, k + 1);
    const ProjMap dd = d.diff(k);
    out.set_diff(k, block2(reg, c.term(k + 1), d.term(k), c.term(k + 2), d.term(k + 1), &a,
                           nullptr, &fk, &dd));
  }
  if (c.cut_above || d.cut_above) {
    int v = 1 << 29;
    if (c.cut_above) v = std::min(v, *c.cut_above - 1);
    if (d.cut_above) v = std::min(v, *d.cut_above);
    out.cut_above = v;
  }
  if (c.cut_below || d.cut_below) {
    int v = -(1 << 29);
    if (c.cut_below) v = std::max(v, *c.cut_below - 1);
    if (d.cut_below) v = std::max(v, *d.cut_below);
    out.cut_below = v;
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

Matrix flatten(const Matrix& f) { return Matrix::column(f.field(), f.data()); }

}  // namespace

HomIntoProj::HomIntoProj(RegistryPtr reg, ModuleRep m) : reg_(std::move(reg)), m_(std::move(m)) {
  const SimpleRegistry& r = *reg_;
  const int n = r.count();
  basis_.resize(n);
  for (int a = 0; a < n; ++a) {
    const HomSpace hs = hom_space(m_, r.projective(a));
    basis_[a] = hs.basis;
    const int amb = r.projective(a).dim() * m_.dim();
    Matrix cols(r.field(), amb, 0);
    for (const auto& f : hs.basis) cols = hstack(cols, flatten(f));
    coords_.emplace_back(cols);
  }
  post_.assign(n, std::vector<std::vector<Matrix>>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int i = 0; i < r.edim(a, b); ++i) {
        EElem x(r.edim(a, b), 0);
        x[i] = 1;
        const Matrix rm = r.rmat(a, b, x);
        Matrix t(r.field(), dim(b), dim(a));
        for (int j = 0; j < dim(a); ++j) {
          if (dim(b) == 0) break;
          const Matrix c = coords_[b].coords(flatten(rm * basis_[a][j]));
          t.set_block(0, j, c);
        }
        post_[a][b].push_back(t);
      }
}

std::vector<Fq> HomIntoProj::coords(int a, const Matrix& f) const {
  if (dim(a) == 0) return {};
  return coords_[a].coords(flatten(f)).col_vector(0);
}

Matrix HomIntoProj::post(int a, int b, const EElem& x) const {
  Matrix t(reg_->field(), dim(b), dim(a));
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i]) t.add_scaled(post_[a][b][i], x[i]);
  return t;
}

}  // namespace tiltsmith
