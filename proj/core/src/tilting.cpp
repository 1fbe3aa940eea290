#include "tiltsmith/tilting.hpp"

#include "combinations.hpp"

#include "tiltsmith/error.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>

namespace tiltsmith {

const char* to_string(TiltingStatus s) {
  switch (s) {
    case TiltingStatus::Certified: return "certified";
    case TiltingStatus::Failed: return "failed";
    case TiltingStatus::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

namespace {

struct StalkObj {
  ModuleRep module;
  int delta = 0;
};

StalkObj as_stalk(const Complex& x, int i) {
  const auto s = stalkify(x);
  require(s.has_value(), ErrorKind::Precondition,
          "X_" + std::to_string(i) + " is not a stalk complex; the construction needs stalk objects");
  return {s->module, s->degree};
}

std::pair<int, int> delta_range(const SMCollection& c) {
  int lo = 1 << 29, hi = -(1 << 29);
  for (std::size_t i = 0; i < c.objects.size(); ++i) {
    const auto s = as_stalk(c.objects[i], static_cast<int>(i));
    lo = std::min(lo, s.delta);
    hi = std::max(hi, s.delta);
  }
  return {lo, hi};
}

/// Y with Y∘A = R, entries solved per target summand.
std::optional<ProjMap> extend_along(const SimpleRegistry& reg, const ProjMap& a, const ProjMap& r) {
  const FieldPtr& F = reg.field();
  const auto& src = a.src;
  const auto& mid = a.tgt;
  const auto& tgt = r.tgt;
  ProjMap y = ProjMap::zero(reg, mid, tgt);
  for (std::size_t v = 0; v < tgt.size(); ++v) {
    const int c = tgt[v];
    std::vector<int> row_off{0}, col_off{0};
    for (int s : src) row_off.push_back(row_off.back() + reg.edim(s, c));
    for (int m : mid) col_off.push_back(col_off.back() + reg.edim(m, c));
    if (col_off.back() == 0) {
      for (std::size_t u = 0; u < src.size(); ++u)
        if (!reg.eis_zero(r.at(static_cast<int>(v), static_cast<int>(u)))) return std::nullopt;
      continue;
    }
    Matrix sys(F, row_off.back(), col_off.back());
    Matrix rhs(F, row_off.back(), 1);
    for (std::size_t u = 0; u < src.size(); ++u) {
      const EElem& ru = r.at(static_cast<int>(v), static_cast<int>(u));
      for (std::size_t i = 0; i < ru.size(); ++i) rhs.at(row_off[u] + static_cast<int>(i), 0) = ru[i];
      for (std::size_t w = 0; w < mid.size(); ++w) {
        const EElem& awu = a.at(static_cast<int>(w), static_cast<int>(u));
        if (reg.eis_zero(awu)) continue;
        const int len = reg.edim(mid[w], c);
        for (int b = 0; b < len; ++b) {
          EElem unit(len, 0);
          unit[b] = 1;
          const EElem p = reg.emul(src[u], mid[w], c, awu, unit);
          for (std::size_t i = 0; i < p.size(); ++i)
            sys.at(row_off[u] + static_cast<int>(i), col_off[w] + b) = p[i];
        }
      }
    }
    const auto sol = solve_right(sys, rhs);
    if (!sol) return std::nullopt;
    for (std::size_t w = 0; w < mid.size(); ++w) {
      EElem& yw = y.at(static_cast<int>(v), static_cast<int>(w));
      for (std::size_t b = 0; b < yw.size(); ++b) yw[b] = sol->at(col_off[w] + static_cast<int>(b), 0);
    }
  }
  return y;
}

ProjMap block_diag(const SimpleRegistry& reg, const std::vector<ProjMap>& parts) {
  std::vector<int> src, tgt;
  for (const auto& p : parts) {
    src.insert(src.end(), p.src.begin(), p.src.end());
    tgt.insert(tgt.end(), p.tgt.begin(), p.tgt.end());
  }
  ProjMap out = ProjMap::zero(reg, src, tgt);
  int r0 = 0, c0 = 0;
  for (const auto& p : parts) {
    for (std::size_t v = 0; v < p.tgt.size(); ++v)
      for (std::size_t u = 0; u < p.src.size(); ++u)
        out.at(r0 + static_cast<int>(v), c0 + static_cast<int>(u)) =
            p.at(static_cast<int>(v), static_cast<int>(u));
    r0 += static_cast<int>(p.tgt.size());
    c0 += static_cast<int>(p.src.size());
  }
  return out;
}

/// [p_0 p_1 ...] on concatenated sources.
ProjMap hcat(const SimpleRegistry& reg, const std::vector<int>& tgt, const std::vector<ProjMap>& parts) {
  std::vector<int> src;
  for (const auto& p : parts) src.insert(src.end(), p.src.begin(), p.src.end());
  ProjMap out = ProjMap::zero(reg, src, tgt);
  int c0 = 0;
  for (const auto& p : parts) {
    for (std::size_t v = 0; v < tgt.size(); ++v)
      for (std::size_t u = 0; u < p.src.size(); ++u)
        out.at(static_cast<int>(v), c0 + static_cast<int>(u)) = p.at(static_cast<int>(v), static_cast<int>(u));
    c0 += static_cast<int>(p.src.size());
  }
  return out;
}

ProjComplex truncate_above(const ProjComplex& c, int top) {
  ProjComplex out(c.registry());
  for (const auto& [k, t] : c.terms())
    if (k <= top) out.set_term(k, t);
  for (const auto& [k, t] : c.terms()) {
    (void)t;
    if (k + 1 <= top && c.rank(k + 1)) out.set_diff(k, c.diff(k));
  }
  out.cut_below = c.cut_below;
  if (!c.is_zero() && c.hi() > top) out.cut_above = top;
  else out.cut_above = c.cut_above;
  return out;
}

ProjComplex slice(const ProjComplex& c, int lo, int hi) {
  ProjComplex out(c.registry());
  for (int k = lo; k <= hi; ++k) out.set_term(k, c.term(k));
  for (int k = lo; k < hi; ++k)
    if (out.rank(k) && out.rank(k + 1)) out.set_diff(k, c.diff(k));
  return out;
}

ProjMap identity_map(const SimpleRegistry& reg, const std::vector<int>& t) {
  ProjMap f = ProjMap::zero(reg, t, t);
  for (std::size_t u = 0; u < t.size(); ++u) f.at(static_cast<int>(u), static_cast<int>(u)) = reg.eunit(t[u]);
  return f;
}

bool is_proj_chain_map(const ProjComplex& c, const ProjComplex& d, const ProjChainMap& f, int upto) {
  const SimpleRegistry& reg = c.reg();
  if (c.is_zero()) return true;
  for (int k = c.lo() - 1; k + f.degree + 1 <= upto && k <= c.hi(); ++k) {
    const ProjMap lhs = compose(reg, d.diff(k + f.degree), f.at(c, d, k));
    const ProjMap rhs = compose(reg, f.at(c, d, k + 1), c.diff(k));
    if (!equal(reg, lhs, rhs)) return false;
  }
  return true;
}

}  // namespace

TiltingCaps resolve_caps(const SMCollection& c, TiltingCaps caps) {
  const auto [lo, hi] = delta_range(c);
  const int def = (hi - lo) + 4;
  if (caps.window < 0) caps.window = def;
  if (caps.degree < 0) caps.degree = def;
  if (caps.stages <= 0) caps.stages = 32;
  if (caps.threads <= 0) caps.threads = 1;
  return caps;
}

// ---------------------------------------------------------------------------

TiltingEngine::TiltingEngine(const SMCollection& c, TiltingCaps caps)
    : reg_(c.reg), caps_(resolve_caps(c, caps)) {
  require(!c.objects.empty(), ErrorKind::Precondition, "empty collection");
  int maxd = -(1 << 29);
  for (std::size_t j = 0; j < c.objects.size(); ++j) {
    StalkObj s = as_stalk(c.objects[j], static_cast<int>(j));
    mods_.push_back(s.module);
    delta_.push_back(s.delta);
    maxd = std::max(maxd, s.delta);
  }
  top_ = maxd + std::max(caps_.window, caps_.degree) + 2;
  for (std::size_t j = 0; j < mods_.size(); ++j) {
    homs_.emplace_back(reg_, mods_[j]);
    cores_.push_back(injective_coresolution(mods_[j], top_ - delta_[j], reg_));
  }
}

StageState TiltingEngine::initial_state() const {
  StageState s;
  s.window = caps_.window;
  s.degree = caps_.degree;
  s.top = top_;
  for (int i = 0; i < count(); ++i) {
    ProjComplex x = truncate_above(shift(cores_[i].complex, -delta_[i]), top_);
    x.cut_above = top_;
    s.complexes.push_back(std::move(x));
  }
  s.history.resize(count());
  return s;
}

int TiltingEngine::hom_from(int j, int t, const ProjComplex& x) const {
  const int e = delta_[j] - t;
  require(e <= top_ - 1, ErrorKind::Inconclusive,
          "Hom(X_j[t], -) beyond the computed degrees; widen the degree cap");
  return hom_dim(homs_[j], x, e);
}

ProjMap TiltingEngine::lift_first(int j, const ProjComplex& x, int e, const Matrix& cocycle,
                                  const std::vector<int>& offsets) const {
  const SimpleRegistry& reg = *reg_;
  const FieldPtr& F = reg.field();
  const HomIntoProj& hm = homs_[j];
  const Coresolution& J = cores_[j];
  const std::vector<int>& j0 = J.complex.term(0);
  const std::vector<int>& tgt = x.term(e);
  // ι_w as coordinates in Hom(M, P_{j0[w]}).
  std::vector<Matrix> iota;
  int off = 0;
  for (int a : j0) {
    const int pd = reg.projective(a).dim();
    const auto c = hm.coords(a, J.coaug.block(off, 0, pd, J.coaug.cols()));
    iota.push_back(Matrix::column(F, c));
    off += pd;
  }
  ProjMap y = ProjMap::zero(reg, j0, tgt);
  for (std::size_t v = 0; v < tgt.size(); ++v) {
    const int c = tgt[v];
    const int rows = hm.dim(c);
    std::vector<int> col_off{0};
    for (int a : j0) col_off.push_back(col_off.back() + reg.edim(a, c));
    Matrix rhs = cocycle.block(offsets[v], 0, rows, 1);
    if (rows == 0) continue;
    Matrix sys(F, rows, col_off.back());
    for (std::size_t w = 0; w < j0.size(); ++w) {
      const int len = reg.edim(j0[w], c);
      for (int b = 0; b < len; ++b) {
        EElem unit(len, 0);
        unit[b] = 1;
        sys.set_block(0, col_off[w] + b, hm.post(j0[w], c, unit) * iota[w]);
      }
    }
    const auto sol = solve_right(sys, rhs);
    if (!sol) fail(ErrorKind::Internal, "cocycle does not extend over the injective hull");
    for (std::size_t w = 0; w < j0.size(); ++w) {
      EElem& yw = y.at(static_cast<int>(v), static_cast<int>(w));
      for (std::size_t b = 0; b < yw.size(); ++b) yw[b] = sol->at(col_off[w] + static_cast<int>(b), 0);
    }
  }
  return y;
}

ZObject TiltingEngine::build_z(const ProjComplex& x, int tmin, int tmax) const {
  const SimpleRegistry& reg = *reg_;
  struct Block {
    ProjComplex c;  // J_j[-e], degrees <= top + 1
    std::map<int, ProjMap> alpha;
  };
  std::vector<Block> blocks;
  ZObject out;
  out.z = ProjComplex(reg_);
  out.alpha.degree = 0;
  for (int j = 0; j < count(); ++j) {
    for (int t = tmax; t >= tmin; --t) {
      const int e = delta_[j] - t;
      require(e <= top_ - 1, ErrorKind::Inconclusive,
              "shift window reaches beyond the computed degrees; widen the degree cap");
      const ModuleToProjHom h = hom_cocycles(homs_[j], x, e);
      if (h.h == 0) continue;
      out.summands.push_back({j, t, h.h});
      const ProjComplex jc = cores_[j].complex;
      const Fq sign = (e % 2 == 0) ? 1 : reg.field()->neg(1);
      for (int r = 0; r < h.h; ++r) {
        Block b;
        b.c = truncate_above(shift(jc, -e), top_ + 1);
        ProjMap phi = lift_first(j, x, e, h.reps.block(0, r, h.reps.rows(), 1), h.offsets);
        b.alpha.emplace(e, phi);
        for (int k = 0; e + k + 1 <= top_; ++k) {
          const ProjMap rr = scale(reg, compose(reg, x.diff(e + k), phi), sign);
          const ProjMap dj = jc.diff(k);
          if (jc.rank(k + 1) == 0) {
            if (!rr.is_zero(reg)) fail(ErrorKind::Internal, "chain map lift obstructed");
            break;
          }
          auto next = extend_along(reg, dj, rr);
          if (!next) fail(ErrorKind::Internal, "chain map lift has no solution");
          phi = *next;
          b.alpha.emplace(e + k + 1, phi);
        }
        blocks.push_back(std::move(b));
      }
    }
  }
  if (blocks.empty()) return out;
  int lo = 1 << 29, hi = -(1 << 29);
  for (const auto& b : blocks) {
    if (b.c.is_zero()) continue;
    lo = std::min(lo, b.c.lo());
    hi = std::max(hi, b.c.hi());
  }
  for (int p = lo; p <= hi; ++p) {
    std::vector<int> t;
    for (const auto& b : blocks) {
      const auto& bt = b.c.term(p);
      t.insert(t.end(), bt.begin(), bt.end());
    }
    out.z.set_term(p, t);
  }
  for (int p = lo; p < hi; ++p) {
    std::vector<ProjMap> parts;
    for (const auto& b : blocks) parts.push_back(b.c.diff(p));
    if (out.z.rank(p) && out.z.rank(p + 1)) out.z.set_diff(p, block_diag(reg, parts));
  }
  out.z.cut_above = top_ + 1;
  for (int p = lo; p <= std::min(hi, top_); ++p) {
    std::vector<ProjMap> parts;
    for (const auto& b : blocks) {
      auto it = b.alpha.find(p);
      parts.push_back(it != b.alpha.end() ? it->second : ProjMap::zero(reg, b.c.term(p), x.term(p)));
    }
    out.alpha.comps.emplace(p, hcat(reg, x.term(p), parts));
  }
  if (!is_proj_chain_map(out.z, x, out.alpha, top_))
    fail(ErrorKind::Internal, "evaluation map is not a chain map");
  return out;
}

ProjComplex TiltingEngine::advance(const ProjComplex& x, const ZObject& z) const {
  if (z.is_zero()) return x;
  ProjComplex c = minimal_reduce(truncate_above(cone(z.z, x, z.alpha), top_));
  c.cut_above = top_;
  c.validate();
  return c;
}

// ---------------------------------------------------------------------------

StabilizeResult stabilize(const TiltingEngine& eng, int i) {
  StabilizeResult res;
  const TiltingCaps& caps = eng.caps();
  StageState st = eng.initial_state();
  ProjComplex x = st.complexes[i];
  try {
    for (;;) {
      ZObject z;
      if (caps.window >= 1) z = eng.build_z(x, -1, -1);
      if (z.is_zero() && caps.window >= 2) z = eng.build_z(x, -caps.window, -2);
      res.history.push_back({res.stages, z.summands});
      if (z.is_zero()) break;
      if (res.stages >= caps.stages) {
        res.status = TiltingStatus::Inconclusive;
        res.reason = "stage cap " + std::to_string(caps.stages) + " reached for X_" + std::to_string(i);
        return res;
      }
      x = eng.advance(x, z);
      if (x.size() > caps.max_summands) {
        res.status = TiltingStatus::Inconclusive;
        res.reason = "X_" + std::to_string(i) + ": stage " + std::to_string(res.stages) + " exceeds " +
                     std::to_string(caps.max_summands) + " summands";
        return res;
      }
      ++res.stages;
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Inconclusive) throw;
    res.status = TiltingStatus::Inconclusive;
    res.reason = e.what();
    return res;
  }
  const int lo = x.lo();
  int gap = 0;
  bool found = false;
  for (int g = lo + 1; g <= eng.top() - 1; ++g)
    if (x.rank(g) == 0) {
      gap = g;
      found = true;
      break;
    }
  int maxd = -(1 << 29);
  for (int j = 0; j < eng.count(); ++j) maxd = std::max(maxd, eng.delta(j));
  if (!found || gap - 1 > maxd + caps.degree) {
    res.status = TiltingStatus::Inconclusive;
    res.reason = "X_" + std::to_string(i) + ": no bounded candidate within degree cap " +
                 std::to_string(caps.degree) + "; widen the degree cap";
    return res;
  }
  res.summand = slice(x, lo, gap - 1);
  // Residual Homs from X_j[t] can be nonzero only for t >= δ_j - hi; the
  // window must reach that far for the stages to have looked there.
  for (int j = 0; j < eng.count(); ++j) {
    const int need = res.summand.hi() - eng.delta(j);
    if (need > caps.window) {
      res.status = TiltingStatus::Inconclusive;
      res.reason = "X_" + std::to_string(i) + ": window " + std::to_string(caps.window) +
                   " does not cover shift -" + std::to_string(need) + " of X_" + std::to_string(j) +
                   "; widen the window";
      return res;
    }
  }
  res.status = TiltingStatus::Certified;
  return res;
}

// ---------------------------------------------------------------------------

std::optional<Elem> find_symmetrizing_form(const Algebra& a, std::uint64_t cap) {
  const FieldPtr& F = a.field();
  const int n = a.dim();
  // products[i][j] as dense rows
  std::vector<std::vector<Fq>> prod(static_cast<std::size_t>(n) * n, std::vector<Fq>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (const auto& t : a.product(i, j)) prod[static_cast<std::size_t>(i) * n + j][t.index] = t.coeff;
  std::vector<std::vector<Fq>> rows;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      std::vector<Fq> r(n);
      const auto& x = prod[static_cast<std::size_t>(i) * n + j];
      const auto& y = prod[static_cast<std::size_t>(j) * n + i];
      bool nz = false;
      for (int k = 0; k < n; ++k) {
        r[k] = F->sub(x[k], y[k]);
        nz = nz || r[k];
      }
      if (nz) rows.push_back(std::move(r));
    }
  Matrix traces;
  if (rows.empty()) {
    traces = Matrix::identity(F, n);
  } else {
    Matrix c(F, static_cast<int>(rows.size()), n);
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (int k = 0; k < n; ++k) c.at(static_cast<int>(r), k) = rows[r][k];
    traces = kernel_basis(c);
  }
  std::vector<Matrix> basis;
  for (int col = 0; col < traces.cols(); ++col) basis.push_back(traces.block(0, col, n, 1).transpose());
  std::optional<Elem> found;
  detail::for_each_combination(basis, cap, [&](const Matrix& lam) {
    Matrix g(F, n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const auto& p = prod[static_cast<std::size_t>(i) * n + j];
        Fq s = 0;
        for (int k = 0; k < n; ++k)
          if (p[k] && lam.at(0, k)) s = F->add(s, F->mul(p[k], lam.at(0, k)));
        g.at(i, j) = s;
      }
    if (rank(g) == n) {
      found = lam.row_vector(0);
      return true;
    }
    return false;
  });
  return found;
}

GammaAlgebra gamma_algebra(const std::vector<ProjComplex>& ts) {
  require(!ts.empty(), ErrorKind::Precondition, "no summands");
  const SimpleRegistry& reg = ts[0].reg();
  const FieldPtr& F = reg.field();
  const int r = static_cast<int>(ts.size());
  struct Pair {
    std::unique_ptr<GradedHom> gh;
    std::vector<std::vector<Fq>> reps;
    Coordinates coords;
  };
  std::vector<Pair> pairs(static_cast<std::size_t>(r) * r);
  GammaAlgebra out;
  out.hom_dims.assign(r, std::vector<int>(r, 0));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      Pair& p = pairs[static_cast<std::size_t>(i) * r + j];
      p.gh = std::make_unique<GradedHom>(ts[i], ts[j]);
      const int n0 = p.gh->dim(0);
      if (n0 == 0) continue;
      const Matrix d0 = p.gh->delta(0);
      const Matrix z = d0.rows() ? kernel_basis(d0) : Matrix::identity(F, n0);
      const Matrix dm = p.gh->delta(-1);
      const Matrix b = dm.cols() ? image_basis(dm) : Matrix(F, n0, 0);
      Echelon ech(F, n0);
      for (int c = 0; c < b.cols(); ++c) ech.add(b.col_vector(c));
      if (i == j) {
        ProjChainMap id;
        for (const auto& [k, t] : ts[i].terms()) id.comps.emplace(k, identity_map(reg, t));
        auto v = p.gh->flatten(id);
        if (!ech.add(v)) fail(ErrorKind::Verification, "identity of T_" + std::to_string(i) + " is null-homotopic");
        p.reps.push_back(v);
      }
      for (int c = 0; c < z.cols(); ++c) {
        auto v = z.col_vector(c);
        if (ech.add(v)) p.reps.push_back(v);
      }
      Matrix basis(F, n0, static_cast<int>(p.reps.size()) + b.cols());
      for (std::size_t c = 0; c < p.reps.size(); ++c) basis.set_col(static_cast<int>(c), p.reps[c]);
      for (int c = 0; c < b.cols(); ++c) basis.set_col(static_cast<int>(p.reps.size()) + c, b.col_vector(c));
      p.coords = Coordinates(basis);
      out.hom_dims[i][j] = static_cast<int>(p.reps.size());
    }
  struct Idx {
    int i, j, k;
  };
  std::vector<Idx> idx;
  std::vector<std::vector<int>> start(r, std::vector<int>(r, 0));
  std::vector<std::string> labels;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      start[i][j] = static_cast<int>(idx.size());
      for (int k = 0; k < out.hom_dims[i][j]; ++k) {
        idx.push_back({i, j, k});
        labels.push_back("t" + std::to_string(i) + "_" + std::to_string(j) + "_" + std::to_string(k));
      }
    }
  const int n = static_cast<int>(idx.size());
  std::vector<std::vector<ProjChainMap>> maps(static_cast<std::size_t>(r) * r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      const Pair& p = pairs[static_cast<std::size_t>(i) * r + j];
      for (const auto& v : p.reps) maps[static_cast<std::size_t>(i) * r + j].push_back(p.gh->unflatten(0, v));
    }
  std::vector<Algebra::Triple> triples;
  // x_a * x_b = x_b ∘ x_a (opposite ring).
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const Idx A = idx[a], B = idx[b];
      if (A.j != B.i) continue;
      const ProjChainMap& f = maps[static_cast<std::size_t>(A.i) * r + A.j][A.k];
      const ProjChainMap& g = maps[static_cast<std::size_t>(B.i) * r + B.j][B.k];
      ProjChainMap h;
      for (const auto& [k, t] : ts[A.i].terms()) {
        (void)t;
        h.comps.emplace(k, compose(reg, g.at(ts[B.i], ts[B.j], k), f.at(ts[A.i], ts[A.j], k)));
      }
      const Pair& p = pairs[static_cast<std::size_t>(A.i) * r + B.j];
      if (p.reps.empty()) continue;
      const auto v = p.gh->flatten(h);
      const Matrix c = p.coords.coords(Matrix::column(F, v));
      for (std::size_t k = 0; k < p.reps.size(); ++k) {
        const Fq x = c.at(static_cast<int>(k), 0);
        if (x) triples.push_back({a, b, start[A.i][B.j] + static_cast<int>(k), x});
      }
    }
  Elem unit(n, 0);
  for (int i = 0; i < r; ++i) unit[start[i][i]] = 1;
  out.algebra = Algebra::make(F, labels, triples, unit);
  // One character per summand: the residue of each endomorphism of T_i.
  std::vector<ModuleRep> chars;
  std::vector<std::string> slabels;
  for (int i = 0; i < r; ++i) {
    const int s0 = start[i][i], d = out.hom_dims[i][i];
    std::vector<Fq> lam(n, 0);
    for (int k = 0; k < d; ++k) {
      Matrix m(F, d, d);
      for (int c = 0; c < d; ++c)
        for (const auto& t : out.algebra->product(s0 + k, s0 + c))
          if (t.index >= s0 && t.index < s0 + d) m.at(t.index - s0, c) = t.coeff;
      int hits = 0;
      for (int q = 0; q < F->q(); ++q) {
        Matrix s = m - Matrix::identity(F, d).scaled(static_cast<Fq>(q));
        if (rank(s) < d) {
          lam[s0 + k] = static_cast<Fq>(q);
          ++hits;
        }
      }
      if (hits != 1)
        fail(ErrorKind::Verification, "End(T_" + std::to_string(i) + ") is not local with residue field k");
    }
    std::vector<Matrix> act;
    for (int b = 0; b < n; ++b) {
      Matrix m(F, 1, 1);
      m.at(0, 0) = lam[b];
      act.push_back(m);
    }
    chars.push_back(ModuleRep::make(out.algebra, 1, act));
    slabels.push_back("T" + std::to_string(i));
  }
  out.registry = register_simples(out.algebra, chars, slabels);
  return out;
}

TiltingReport verify_and_extract(const std::vector<ProjComplex>& ts, const SMCollection& c,
                                 const TiltingCaps& caps) {
  TiltingReport rep;
  rep.caps = caps;
  rep.summands = ts;
  const int r = static_cast<int>(ts.size());
  require(r == static_cast<int>(c.objects.size()), ErrorKind::Precondition,
          "summand count differs from the collection size");
  std::vector<StalkObj> xs;
  std::vector<HomIntoProj> homs;
  for (int j = 0; j < r; ++j) {
    xs.push_back(as_stalk(c.objects[j], j));
    homs.emplace_back(c.reg, xs.back().module);
  }
  auto bad = [&](const std::string& s) { rep.reasons.push_back(s); };
  rep.hom_tt.assign(r, std::vector<std::map<int, int>>(r));
  rep.hom_tx = rep.hom_xt = rep.hom_tt;
  for (int i = 0; i < r; ++i) {
    if (ts[i].is_zero() || ts[i].cut_above || ts[i].cut_below) {
      bad("T_" + std::to_string(i) + " is zero or truncated");
      continue;
    }
    for (int j = 0; j < r; ++j) {
      if (ts[j].is_zero()) continue;
      GradedHom gh(ts[i], ts[j]);
      for (int m = gh.min_degree(); m <= gh.max_degree(); ++m) {
        const int d = gh.cohomology_dim(m);
        rep.hom_tt[i][j][m] = d;
        if (m != 0 && d != 0)
          bad("Hom(T_" + std::to_string(i) + ", T_" + std::to_string(j) + "[" + std::to_string(m) +
              "]) has dim " + std::to_string(d));
      }
      const Complex& xj = c.objects[j];
      for (int m = xj.lo() - ts[i].hi(); m <= xj.hi() - ts[i].lo(); ++m) {
        const int d = hom_dim(ts[i], xj, m);
        const int dd = hom_dim(homs[j], ts[i], xs[j].delta - m);
        rep.hom_tx[i][j][m] = d;
        rep.hom_xt[i][j][m] = dd;
        const int want = (i == j && m == 0) ? 1 : 0;
        if (d != want)
          bad("Hom(T_" + std::to_string(i) + ", X_" + std::to_string(j) + "[" + std::to_string(m) +
              "]) has dim " + std::to_string(d) + ", expected " + std::to_string(want));
        if (dd != d)
          bad("duality fails for (T_" + std::to_string(i) + ", X_" + std::to_string(j) + ") at " +
              std::to_string(m));
      }
      // Residual vanishing over the window (outside the range above it is
      // zero for degree reasons).
      for (int t = -caps.window; t <= -1; ++t) {
        const int e = xs[j].delta - t;
        if (e < ts[i].lo() - 1 || e > ts[i].hi() + 1) continue;
        if (hom_dim(homs[j], ts[i], e) != 0)
          bad("Hom(X_" + std::to_string(j) + "[" + std::to_string(t) + "], T_" + std::to_string(i) +
              ") is nonzero");
      }
    }
  }
  if (!rep.reasons.empty()) {
    rep.status = TiltingStatus::Failed;
    return rep;
  }
  try {
    GammaAlgebra g = gamma_algebra(ts);
    rep.gamma = g.algebra;
    rep.gamma_registry = g.registry;
    rep.gamma_cartan = g.registry->cartan();
    if (g.registry->count() != r) bad("Γ has the wrong number of simples");
    std::vector<std::vector<int>> tr(r, std::vector<int>(r));
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) tr[i][j] = g.hom_dims[j][i];
    if (rep.gamma_cartan != tr) bad("Γ Cartan matrix disagrees with dim Hom(T_j, T_i)");
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Inconclusive) {
      rep.status = TiltingStatus::Inconclusive;
      rep.reasons.push_back(e.what());
      return rep;
    }
    if (e.kind() != ErrorKind::Verification) throw;
    bad(e.what());
  }
  if (!rep.reasons.empty()) {
    rep.status = TiltingStatus::Failed;
    return rep;
  }
  try {
    rep.gamma_symmetric_witness = find_symmetrizing_form(*rep.gamma, caps.enum_cap);
    rep.symmetric_search = rep.gamma_symmetric_witness ? "found" : "none";
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Inconclusive) throw;
    rep.symmetric_search = "inconclusive";
  }
  if (rep.gamma_symmetric_witness) {
    rep.gamma = Algebra::make(rep.gamma->field(), rep.gamma->labels(), rep.gamma->structure_triples(),
                              rep.gamma->unit(), rep.gamma_symmetric_witness);
    if (!check_symmetric(*rep.gamma).is_symmetric_form) bad("symmetrizing form fails its own check");
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j)
        if (rep.gamma_cartan[i][j] != rep.gamma_cartan[j][i]) bad("Γ Cartan matrix is not symmetric");
  }
  rep.status = rep.reasons.empty() ? TiltingStatus::Certified : TiltingStatus::Failed;
  return rep;
}

TiltingReport build_tilting(const SMCollection& c, TiltingCaps caps) {
  caps = resolve_caps(c, caps);
  const TiltingEngine eng(c, caps);
  const int r = eng.count();
  std::vector<StabilizeResult> res(r);
  std::vector<std::exception_ptr> errs(r);
  std::atomic<int> next{0};
  auto work = [&] {
    for (int i; (i = next++) < r;) {
      try {
        res[i] = stabilize(eng, i);
      } catch (...) {
        errs[i] = std::current_exception();
      }
    }
  };
  const int nt = std::max(1, std::min(caps.threads, r));
  std::vector<std::thread> pool;
  for (int t = 1; t < nt; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
  TiltingReport rep;
  rep.caps = caps;
  for (auto& s : res) rep.history.push_back(s.history);
  for (int i = 0; i < r; ++i)
    if (res[i].status != TiltingStatus::Certified) {
      rep.status = res[i].status;
      rep.reasons.push_back(res[i].reason);
    }
  if (!rep.reasons.empty()) {
    for (auto& s : res) rep.summands.push_back(s.summand);
    return rep;
  }
  std::vector<ProjComplex> ts;
  for (auto& s : res) ts.push_back(s.summand);
  TiltingReport out = verify_and_extract(ts, c, caps);
  out.history = rep.history;
  return out;
}

}  // namespace tiltsmith
