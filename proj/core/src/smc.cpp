#include "tiltsmith/smc.hpp"

#include "combinations.hpp"

#include "tiltsmith/error.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <random>
#include <set>
#include <thread>

namespace tiltsmith {

Complex syzygy_object(const ModuleRep& y, int n, const SimpleRegistry& reg) {
  // n = 0 keeps y as given, projective summands included.
  return Complex::stalk(n == 0 ? y : omega(y, n, reg), -n);
}

namespace {

bool single_term(const Complex& x) { return !x.is_zero() && x.lo() == x.hi(); }

std::optional<Matrix> find_map(const ModuleRep& m, const ModuleRep& n, bool surjective,
                               std::uint64_t cap = 1000000) {
  const HomSpace hs = hom_space(m, n);
  const int want = surjective ? n.dim() : m.dim();
  std::optional<Matrix> found;
  detail::for_each_combination(hs.basis, cap, [&](const Matrix& f) {
    if (rank(f) == want) {
      found = f;
      return true;
    }
    return false;
  });
  return found;
}

}  // namespace

EndRing module_end_ring(const ModuleRep& m, std::uint64_t cap) {
  EndRing e;
  const HomSpace hs = hom_space(m, m);
  e.dim = hs.dim();
  e.commutative = true;
  for (int a = 0; a < e.dim && e.commutative; ++a)
    for (int b = a + 1; b < e.dim; ++b)
      if (hs.basis[a] * hs.basis[b] != hs.basis[b] * hs.basis[a]) {
        e.commutative = false;
        break;
      }
  if (e.dim == 1) {
    e.is_field = true;
    return e;
  }
  if (e.dim == 0 || !e.commutative) return e;
  // Field iff every nonzero element is invertible.
  bool singular = false;
  const bool stopped = detail::for_each_combination(hs.basis, cap, [&](const Matrix& f) {
    if (f.is_zero()) return false;
    if (rank(f) < m.dim()) {
      singular = true;
      return true;
    }
    return false;
  });
  (void)stopped;
  e.is_field = !singular;
  return e;
}

ABReport check_conditions_ab(const SMCollection& c, bool relaxed, int depth_cap) {
  ABReport rep;
  const int r = static_cast<int>(c.objects.size());
  for (int i = 0; i < r; ++i)
    if (c.objects[i].is_zero()) {
      rep.pass_b = false;
      rep.failures.push_back("(b) X_" + std::to_string(i) + " is zero");
    }
  if (!rep.pass_b) return rep;
  int ylo = 1 << 29;
  for (const auto& x : c.objects) ylo = std::min(ylo, x.lo());
  std::vector<Replacement> repl;
  for (int i = 0; i < r; ++i) {
    const Complex& x = c.objects[i];
    const int bottom = std::min(x.lo(), ylo - 1);
    if (x.lo() - bottom > depth_cap)
      fail(ErrorKind::Inconclusive, "conditions (a)-(b) need resolution depth beyond the cap");
    repl.push_back(projective_replacement(x, bottom, c.reg));
  }
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      PairHom ph;
      ph.i = i;
      ph.j = j;
      const int mlo = std::min(0, c.objects[j].lo() - c.objects[i].hi());
      for (int m = mlo; m <= 0; ++m) {
        const int d = hom_dim(repl[i].complex, c.objects[j], m);
        ph.dims[m] = d;
        if (m < 0 && d != 0) {
          rep.pass_a = false;
          rep.failures.push_back("(a) Hom(X_" + std::to_string(i) + ", X_" + std::to_string(j) +
                                 "[" + std::to_string(m) + "]) has dim " + std::to_string(d));
        }
      }
      if (i != j && ph.dims[0] != 0) {
        rep.pass_b = false;
        rep.failures.push_back("(b) Hom(X_" + std::to_string(i) + ", X_" + std::to_string(j) +
                               ") has dim " + std::to_string(ph.dims[0]));
      }
      rep.table.push_back(std::move(ph));
    }
  for (int i = 0; i < r; ++i) {
    const Complex& x = c.objects[i];
    EndRing e;
    const int d = rep.table[static_cast<std::size_t>(i * r + i)].dims.at(0);
    if (single_term(x)) {
      e = module_end_ring(x.term(x.lo()));
    } else {
      e.dim = d;
      e.is_field = d == 1;
      e.commutative = d <= 1;
      if (d > 1) e.note = "ring structure is only computed for stalk objects";
    }
    const bool ok = e.dim == 1 || (relaxed && e.is_field && e.dim > 0);
    if (!ok) {
      rep.pass_b = false;
      rep.failures.push_back("(b) End(X_" + std::to_string(i) + ") has dim " +
                             std::to_string(e.dim) +
                             (relaxed ? (e.is_field ? "" : " and is not a field") : ""));
    }
    rep.ends.push_back(e);
  }
  return rep;
}

// ---------------------------------------------------------------------------

namespace {

Matrix sub_in(const Matrix& upper, const Matrix& lower) {
  if (lower.cols() == 0) return Matrix(upper.field(), upper.cols(), 0);
  return Coordinates(upper).coords(lower);
}

ModuleRep layer_module(const ModuleRep& m, const Matrix& upper, const Matrix& lower) {
  const Sub s = submodule(m, upper);
  return quotient(s.module, sub_in(upper, lower)).module;
}

bool is_submodule_basis(const ModuleRep& m, const Matrix& b) {
  if (b.cols() == 0) return true;
  return rank(b) == b.cols() && spin(m, b).cols() == b.cols();
}

Complex replay_step(const SMCollection& c, const std::vector<Complex>& objs, const CertStep& s,
                    int idx, std::vector<int>& covered) {
  const SimpleRegistry& reg = *c.reg;
  auto obj = [&](int ref) -> const Complex& {
    if (ref < 0 || ref >= idx)
      fail(ErrorKind::Verification, "reference " + std::to_string(ref) + " is not an earlier step");
    return objs[ref];
  };
  auto stalk_module = [&](const Complex& x, int* degree) {
    if (!single_term(x)) fail(ErrorKind::Verification, "object is not a stalk complex");
    if (degree) *degree = x.lo();
    return x.term(x.lo());
  };
  switch (s.kind) {
    case StepKind::Seed:
      if (s.index < 0 || s.index >= static_cast<int>(c.objects.size()))
        fail(ErrorKind::Verification, "SEED index out of range");
      return c.objects[s.index];
    case StepKind::Shift:
      return shift(obj(s.ref), s.shift);
    case StepKind::Cone: {
      const Complex& x = obj(s.ref);
      const Complex& y = obj(s.ref2);
      ChainMap f;
      if (s.directive == ConeDirective::Explicit) {
        f.comps = s.map;
        if (!is_chain_map(x, y, f)) fail(ErrorKind::Verification, "CONE map is not a chain map");
      } else {
        int dx = 0, dy = 0;
        const ModuleRep mx = stalk_module(x, &dx), my = stalk_module(y, &dy);
        if (dx != dy) fail(ErrorKind::Verification, "CONE directive needs stalks in one degree");
        const bool surj = s.directive == ConeDirective::Surjection;
        const auto g = find_map(mx, my, surj);
        if (!g) fail(ErrorKind::Verification, surj ? "no surjection found" : "no injection found");
        f = stalk_map(*g, dx);
      }
      return cone(x, y, f).cone;
    }
    case StepKind::Stalkify: {
      const auto st = stalkify(obj(s.ref));
      if (!st) fail(ErrorKind::Verification, "cohomology is not concentrated in one degree");
      return Complex::stalk(st->module, st->degree);
    }
    case StepKind::Filtration: {
      int d = 0;
      ModuleRep m = stalk_module(obj(s.ref), &d);
      if (s.quotient_by == "socle") m = quotient(m, socle(m, reg)).module;
      else if (s.quotient_by == "radical") m = quotient(m, radical(m, reg)).module;
      else if (!s.quotient_by.empty()) fail(ErrorKind::Verification, "unknown quotient: " + s.quotient_by);
      // Increasing chain 0 = C_0 ⊂ C_1 ⊂ ... ⊂ C_n = M.
      std::vector<Matrix> chain{Matrix(m.field(), m.dim(), 0)};
      if (s.series == "radical") {
        auto rs = radical_series(m, reg);
        for (auto it = rs.rbegin() + 1; it != rs.rend(); ++it) chain.push_back(*it);
      } else if (s.series == "socle") {
        for (const auto& b : socle_series(m, reg)) chain.push_back(b);
      } else if (s.series == "explicit") {
        for (const auto& b : s.chain) {
          if (b.rows() != m.dim() || !is_submodule_basis(m, b))
            fail(ErrorKind::Verification, "FILTRATION chain entry is not a submodule");
          if (chain.back().cols() && !Coordinates(b).contains(chain.back()))
            fail(ErrorKind::Verification, "FILTRATION chain is not increasing");
          chain.push_back(b);
        }
        if (chain.back().cols() != m.dim())
          fail(ErrorKind::Verification, "FILTRATION chain does not reach the module");
      } else {
        fail(ErrorKind::Verification, "unknown series: " + s.series);
      }
      const int layers = static_cast<int>(chain.size()) - 1;
      // Layers are listed top first for the radical series, bottom first
      // otherwise; layer_refs follow the same order.
      if (static_cast<int>(s.layer_refs.size()) != layers)
        fail(ErrorKind::Verification, "FILTRATION has " + std::to_string(layers) +
                                          " layers but " + std::to_string(s.layer_refs.size()) +
                                          " factor lists");
      for (int l = 0; l < layers; ++l) {
        const int top = s.series == "radical" ? layers - l : l + 1;
        const ModuleRep layer = layer_module(m, chain[top], chain[top - 1]);
        std::vector<ModuleRep> parts;
        for (int ref : s.layer_refs[l]) parts.push_back(stalk_module(obj(ref), nullptr));
        const ModuleRep sum = parts.empty() ? ModuleRep::zero(reg.algebra()) : direct_sum(parts);
        if (sum.dim() != layer.dim() || (layer.dim() && !is_isomorphic(layer, sum)))
          fail(ErrorKind::Verification, "FILTRATION layer " + std::to_string(l) +
                                            " does not match its factors");
      }
      return Complex::stalk(m, d);
    }
    case StepKind::Iso: {
      const auto st = stalkify(obj(s.ref));
      if (!st) fail(ErrorKind::Verification, "ISO object is not a stalk");
      const int a = reg.index_of(s.simple);
      if (!is_isomorphic(st->module, reg.simple(a)))
        fail(ErrorKind::Verification, "ISO object is not isomorphic to simple " + s.simple);
      covered[a] = 1;
      return obj(s.ref);
    }
  }
  fail(ErrorKind::Internal, "unknown step kind");
}

}  // namespace

GenerationReport verify_generation(const SMCollection& c, const GenerationCertificate& cert) {
  GenerationReport rep;
  const SimpleRegistry& reg = *c.reg;
  std::vector<int> covered(reg.count(), 0);
  std::vector<Complex> objs;
  for (std::size_t i = 0; i < cert.steps.size(); ++i) {
    try {
      objs.push_back(replay_step(c, objs, cert.steps[i], static_cast<int>(i), covered));
    } catch (const Error& e) {
      rep.failed_step = static_cast<int>(i);
      rep.reason = "step " + std::to_string(i) + ": " + e.what();
      return rep;
    }
  }
  for (std::size_t k = 0; k < cert.claims.size(); ++k) {
    const Claim& cl = cert.claims[k];
    try {
      if (cl.step_ref < 0 || cl.step_ref >= static_cast<int>(objs.size()))
        fail(ErrorKind::Verification, "claim refers to a missing step");
      const auto st = stalkify(objs[cl.step_ref]);
      if (!st) fail(ErrorKind::Verification, "claimed object is not a stalk");
      const int a = reg.index_of(cl.simple_label);
      if (!is_isomorphic(st->module, reg.simple(a)))
        fail(ErrorKind::Verification, "claimed object is not isomorphic to " + cl.simple_label);
      covered[a] = 1;
    } catch (const Error& e) {
      rep.failed_step = cl.step_ref;
      rep.reason = "claim " + std::to_string(k) + ": " + e.what();
      return rep;
    }
  }
  for (int a = 0; a < reg.count(); ++a)
    (covered[a] ? rep.covered : rep.missing).push_back(reg.labels()[a]);
  rep.pass = rep.missing.empty();
  if (!rep.pass) rep.reason = "simples not covered";
  return rep;
}

std::optional<GenerationCertificate> auto_certificate(const SMCollection& c, int depth) {
  const SimpleRegistry& reg = *c.reg;
  GenerationCertificate cert;
  std::vector<Complex> objs;
  std::vector<int> covered(reg.count(), 0);
  struct Known {
    int ref;
    ModuleRep m;
  };
  std::vector<Known> known;
  std::vector<int> simple_ref(reg.count(), -1);
  auto push = [&](CertStep s) {
    objs.push_back(replay_step(c, objs, s, static_cast<int>(objs.size()), covered));
    cert.steps.push_back(std::move(s));
    return static_cast<int>(objs.size()) - 1;
  };
  auto add_known = [&](int ref) {
    const Complex& x = objs[ref];
    if (!single_term(x)) return;
    int r = ref;
    if (x.lo() != 0) {
      CertStep s;
      s.kind = StepKind::Shift;
      s.ref = ref;
      s.shift = x.lo();
      r = push(s);
    }
    const ModuleRep m = objs[r].term(0);
    for (const auto& k : known)
      if (k.m.dim() == m.dim() && is_isomorphic(k.m, m)) return;
    known.push_back({r, m});
    const Multiplicity cf = composition_factors(m, reg);
    int total = 0, which = -1;
    for (int a = 0; a < reg.count(); ++a) {
      total += cf[a];
      if (cf[a]) which = a;
    }
    if (total == 1 && simple_ref[which] < 0) {
      simple_ref[which] = r;
      cert.claims.push_back({r, reg.labels()[which]});
      covered[which] = 1;
    }
  };
  auto done = [&] { return std::all_of(covered.begin(), covered.end(), [](int v) { return v; }); };
  try {
    for (std::size_t i = 0; i < c.objects.size(); ++i) {
      CertStep s;
      s.kind = StepKind::Seed;
      s.index = static_cast<int>(i);
      add_known(push(s));
    }
    for (int round = 0; round < depth && !done(); ++round) {
      const std::size_t nk = known.size();
      for (std::size_t a = 0; a < nk && !done() && known.size() < 64; ++a) {
        const Known ka = known[a];
        if (ka.m.dim() <= 1) continue;
        // Quotients by socle / radical whose layers are covered.
        for (const char* q : {"socle", "radical"}) {
          const ModuleRep mq = quotient(ka.m, std::string(q) == "socle" ? socle(ka.m, reg)
                                                                        : radical(ka.m, reg))
                                   .module;
          if (mq.dim() == 0) continue;
          const auto layers = radical_layers(mq, reg);
          bool ok = true;
          std::vector<std::vector<int>> refs;
          for (const auto& l : layers) {
            refs.emplace_back();
            for (int s = 0; s < reg.count(); ++s) {
              if (l[s] && simple_ref[s] < 0) ok = false;
              for (int t = 0; t < l[s]; ++t) refs.back().push_back(simple_ref[s]);
            }
          }
          if (!ok) continue;
          CertStep s;
          s.kind = StepKind::Filtration;
          s.ref = ka.ref;
          s.quotient_by = q;
          s.series = "radical";
          s.layer_refs = refs;
          add_known(push(s));
        }
        // Kernels of surjections onto / cokernels of injections from known.
        for (std::size_t b = 0; b < nk && !done(); ++b) {
          const Known kb = known[b];
          if (a == b || kb.m.dim() >= ka.m.dim()) continue;
          for (bool surj : {true, false}) {
            const auto f = surj ? find_map(ka.m, kb.m, true, 4096) : find_map(kb.m, ka.m, false, 4096);
            if (!f) continue;
            CertStep s;
            s.kind = StepKind::Cone;
            s.ref = surj ? ka.ref : kb.ref;
            s.ref2 = surj ? kb.ref : ka.ref;
            s.directive = surj ? ConeDirective::Surjection : ConeDirective::Injection;
            const int cr = push(s);
            CertStep st;
            st.kind = StepKind::Stalkify;
            st.ref = cr;
            add_known(push(st));
          }
        }
      }
    }
  } catch (const Error&) {
    return std::nullopt;
  }
  if (!done()) return std::nullopt;
  return cert;
}

// ---------------------------------------------------------------------------

namespace {

struct StalkTables {
  int r = 0, span = 0;
  std::vector<std::vector<ModuleRep>> om;  // om[i][n + span] = Ω^n Y_i
  const ModuleRep& at(int i, int n) const { return om[i][n + span]; }
};

StalkTables make_tables(const RegistryPtr& reg, const std::vector<ModuleRep>& images, int span) {
  StalkTables t;
  t.r = static_cast<int>(images.size());
  t.span = span;
  for (const auto& y : images) {
    std::vector<ModuleRep> row;
    for (int n = -span; n <= span; ++n) row.push_back(omega(y, n, *reg));
    t.om.push_back(std::move(row));
  }
  return t;
}

StalkCriteria criteria(const RegistryPtr& reg, const StalkTables& t, const std::vector<int>& n) {
  StalkCriteria c;
  const int r = t.r;
  for (int i = 0; i < r && c.end_is_k; ++i)
    if (hom_space(t.at(i, n[i]), t.at(i, n[i])).dim() != 1) {
      c.end_is_k = false;
      c.reason = "(i) End(Ω^" + std::to_string(n[i]) + " Y_" + std::to_string(i) + ") is not k";
    }
  for (int i = 0; i < r && c.pass(); ++i)
    for (int j = 0; j < r && c.pass(); ++j) {
      if (i == j || n[i] > n[j]) continue;
      if (hom_space(t.at(i, n[i]), t.at(j, n[j])).dim() != 0) {
        c.hom_vanishing = false;
        c.reason = "(ii) Hom(X_" + std::to_string(i) + ", X_" + std::to_string(j) + ") != 0";
      }
    }
  for (int i = 0; i < r && c.pass(); ++i)
    for (int j = 0; j < r && c.pass(); ++j)
      for (int m = n[i] - n[j] + 1; m < -1; ++m)
        if (stable_hom(t.at(i, m), t.at(j, 0), *reg).stable != 0) {
          c.stable_vanishing = false;
          c.reason = "(iii) stable Hom(Ω^" + std::to_string(m) + " Y_" + std::to_string(i) +
                     ", Y_" + std::to_string(j) + ") != 0";
          break;
        }
  return c;
}

// [0, 2 box]^r with some entry 0, lexicographic.
std::vector<std::vector<int>> normalized_vectors(int r, int box) {
  std::vector<std::vector<int>> vectors;
  if (r == 0) return vectors;
  std::vector<int> v(r, 0);
  const int top = 2 * box;
  for (;;) {
    if (*std::min_element(v.begin(), v.end()) == 0) vectors.push_back(v);
    int k = r - 1;
    while (k >= 0 && v[k] == top) v[k--] = 0;
    if (k < 0) break;
    ++v[k];
  }
  return vectors;
}

int spread(const std::vector<int>& n) {
  return *std::max_element(n.begin(), n.end()) - *std::min_element(n.begin(), n.end());
}

}  // namespace

StalkCriteria stalk_criteria(const RegistryPtr& reg, const std::vector<ModuleRep>& images,
                             const std::vector<int>& n) {
  return criteria(reg, make_tables(reg, images, std::max(1, spread(n))), n);
}

bool phom_criterion(const RegistryPtr& reg, const std::vector<ModuleRep>& images,
                    const std::vector<int>& n, int i, int j) {
  const ModuleRep a = omega(images[i], n[i], *reg), b = omega(images[j], n[j], *reg);
  if (stable_hom(a, b, *reg).projective_part != 0) return false;
  const int gap = n[j] - n[i];
  if (gap < 2) return true;
  return stable_hom(omega(images[j], gap - 1, *reg), images[i], *reg).stable == 0;
}

std::vector<std::pair<std::vector<int>, StalkCriteria>> stalk_criteria_box(
    const RegistryPtr& reg, const std::vector<ModuleRep>& images, int box) {
  require(box >= 0, ErrorKind::Config, "search box must be non-negative");
  const StalkTables t = make_tables(reg, images, 2 * box);
  std::vector<std::pair<std::vector<int>, StalkCriteria>> out;
  for (auto& n : normalized_vectors(static_cast<int>(images.size()), box)) {
    StalkCriteria c = criteria(reg, t, n);
    out.emplace_back(std::move(n), std::move(c));
  }
  return out;
}

std::vector<StalkCandidate> stalk_search(const RegistryPtr& reg, const std::vector<ModuleRep>& images,
                                         int box, int threads) {
  require(box >= 0, ErrorKind::Config, "search box must be non-negative");
  const int r = static_cast<int>(images.size());
  for (int i = 0; i < r; ++i) {
    require(images[i].dim() > 0 && strip_projective_summands(images[i], *reg).dim() == images[i].dim(),
            ErrorKind::Config, "image " + std::to_string(i) + " has a projective summand");
    const HomSpace e = hom_space(images[i], images[i]);
    bool indecomposable = true;
    detail::for_each_combination(e.basis, 1000000, [&](const Matrix& f) {
      // Fitting: every endomorphism of an indecomposable is nilpotent or invertible.
      Matrix p = f;
      for (int k = 1; k < images[i].dim(); k *= 2) p = p * p;
      if (!p.is_zero() && rank(f) < images[i].dim()) {
        indecomposable = false;
        return true;
      }
      return false;
    });
    require(indecomposable, ErrorKind::Config, "image " + std::to_string(i) + " is decomposable");
  }
  const StalkTables t = make_tables(reg, images, 2 * box);
  std::vector<std::vector<int>> survivors;
  for (const auto& n : normalized_vectors(r, box))
    if (criteria(reg, t, n).pass()) survivors.push_back(n);

  std::vector<std::optional<StalkCandidate>> out(survivors.size());
  auto work = [&](std::size_t idx) {
    StalkCandidate cand;
    cand.shifts = survivors[idx];
    cand.collection.reg = reg;
    cand.collection.shift_vector = survivors[idx];
    for (int i = 0; i < r; ++i)
      cand.collection.objects.push_back(Complex::stalk(t.at(i, survivors[idx][i]), -survivors[idx][i]));
    cand.report = check_conditions_ab(cand.collection);
    if (cand.report.pass()) out[idx] = std::move(cand);
  };
  const int nt = std::max(1, threads);
  if (nt == 1 || survivors.size() < 2) {
    for (std::size_t i = 0; i < survivors.size(); ++i) work(i);
  } else {
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errs(survivors.size());
    for (int w = 0; w < nt; ++w)
      pool.emplace_back([&] {
        for (std::size_t i; (i = next++) < survivors.size();) {
          try {
            work(i);
          } catch (...) {
            errs[i] = std::current_exception();
          }
        }
      });
    for (auto& th : pool) th.join();
    for (auto& e : errs)
      if (e) std::rethrow_exception(e);
  }
  std::vector<StalkCandidate> res;
  for (auto& o : out)
    if (o) res.push_back(std::move(*o));
  return res;
}

}  // namespace tiltsmith
