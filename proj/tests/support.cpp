#include "support.hpp"

#include "tiltsmith/derived.hpp"
#include "tiltsmith/error.hpp"
#include "tiltsmith/modcat.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace tiltsmith::testing {

std::string Tally::summary() const {
  std::ostringstream o;
  o << checked << " checked, " << failures.size() << " failed";
  for (std::size_t i = 0; i < failures.size() && i < 5; ++i) o << "; " << failures[i];
  return o.str();
}

IntMatrix a5_decomposition() {
  // characters 1, 5, 5', 3+3' restricted; columns k, 2a, 2b
  return {{1, 0, 0}, {1, 1, 0}, {1, 0, 1}, {1, 1, 1}};
}

IntMatrix a7_decomposition() {
  // rows 1, 10, 10', 14a, 14b, 35; columns 1, 13, 10, 10'
  return {{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {1, 1, 0, 0}, {1, 1, 0, 0}, {2, 1, 1, 1}};
}

IntMatrix transpose_times_self(const IntMatrix& d) {
  const std::size_t n = d.front().size();
  IntMatrix c(n, std::vector<int>(n, 0));
  for (const auto& row : d)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) c[i][j] += row[i] * row[j];
  return c;
}

bool equal_up_to_permutation(const IntMatrix& a, const IntMatrix& b) {
  if (a.size() != b.size()) return false;
  std::vector<int> p(a.size());
  std::iota(p.begin(), p.end(), 0);
  do {
    bool same = true;
    for (std::size_t i = 0; i < a.size() && same; ++i)
      for (std::size_t j = 0; j < a.size() && same; ++j) same = a[p[i]][p[j]] == b[i][j];
    if (same) return true;
  } while (std::next_permutation(p.begin(), p.end()));
  return false;
}

bool is_symmetric(const IntMatrix& a) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if (a[i][j] != a[j][i]) return false;
  return true;
}

std::vector<ModuleRep> fixture_modules(const Fixture& f) {
  std::vector<ModuleRep> out;
  for (int a = 0; a < f.reg->count(); ++a) out.push_back(f.reg->simple(a));
  for (const auto& y : f.y_modules) {
    out.push_back(y);
    const ModuleRep w = omega(y, 1, *f.reg);
    if (w.dim() > 0) out.push_back(w);
  }
  return out;
}

EElem random_eelem(const SimpleRegistry& reg, int a, int b, std::mt19937& rng) {
  std::uniform_int_distribution<int> d(0, reg.field()->q() - 1);
  EElem x(reg.edim(a, b));
  for (auto& c : x) c = static_cast<Fq>(d(rng));
  return x;
}

std::vector<int> random_summands(const SimpleRegistry& reg, int max_count, std::mt19937& rng) {
  std::uniform_int_distribution<int> n(1, max_count), a(0, reg.count() - 1);
  std::vector<int> s(n(rng));
  for (int& x : s) x = a(rng);
  std::sort(s.begin(), s.end());
  return s;
}

ProjMap random_projmap(const SimpleRegistry& reg, const std::vector<int>& src,
                       const std::vector<int>& tgt, std::mt19937& rng) {
  ProjMap f = ProjMap::zero(reg, src, tgt);
  for (std::size_t v = 0; v < tgt.size(); ++v)
    for (std::size_t u = 0; u < src.size(); ++u)
      f.at(static_cast<int>(v), static_cast<int>(u)) = random_eelem(reg, src[u], tgt[v], rng);
  return f;
}

ProjComplex random_two_term(const RegistryPtr& reg, int k, std::mt19937& rng) {
  ProjComplex c(reg);
  const auto s = random_summands(*reg, 2, rng), t = random_summands(*reg, 2, rng);
  c.set_term(k, s);
  c.set_term(k + 1, t);
  c.set_diff(k, random_projmap(*reg, s, t, rng));
  c.validate();
  return c;
}

ProjComplex random_cone(const RegistryPtr& reg, std::mt19937& rng) {
  const ProjComplex x = random_two_term(reg, 0, rng);
  const ProjComplex y = random_two_term(reg, 0, rng);
  const GradedHom h(x, y);
  const Matrix z = kernel_basis(h.delta(0));
  std::vector<Fq> v(h.dim(0), 0);
  const FqField& F = reg->algebra()->F();
  std::uniform_int_distribution<int> d(0, F.q() - 1);
  for (int c = 0; c < z.cols(); ++c) {
    const Fq s = static_cast<Fq>(d(rng));
    for (int r = 0; r < z.rows(); ++r) v[r] = F.add(v[r], F.mul(s, z.at(r, c)));
  }
  ProjComplex out = cone(x, y, h.unflatten(0, v));
  out.validate();
  return out;
}

Tally duality_random_pairs(const Fixture& f, int pairs, std::uint32_t seed) {
  Tally t;
  std::mt19937 rng(seed);
  const auto mods = fixture_modules(f);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(mods.size()) - 1), shift(-1, 1);
  for (int n = 0; n < pairs; ++n) {
    const ModuleRep& m = mods[pick(rng)];
    const ProjComplex p = n % 2 ? random_cone(f.reg, rng) : random_two_term(f.reg, shift(rng), rng);
    const HomIntoProj into(f.reg, m);
    const Complex stalk = Complex::stalk(m, 0);
    for (int s = -p.hi() - 1; s <= -p.lo() + 1; ++s) {
      const int lhs = hom_dim(p, stalk, s);
      const int rhs = hom_dim(into, p, -s);
      t.expect(lhs == rhs, f.name + " pair " + std::to_string(n) + " m=" + std::to_string(s) + ": " +
                               std::to_string(lhs) + " vs " + std::to_string(rhs));
    }
  }
  return t;
}

namespace {

// \hat{Ext}^t(M, N) = stable Hom(Ω^t M, N), read as stable Hom(M, Ω^{-t} N)
// for t < 0; both only use forward syzygies.
class TateTable {
 public:
  TateTable(const Fixture& f, int depth) : f_(f) {
    for (const auto& m : fixture_modules(f)) {
      std::vector<ModuleRep> row{strip_projective_summands(m, *f.reg)};
      for (int n = 1; n <= depth; ++n) row.push_back(omega(row.back(), 1, *f.reg));
      om_.push_back(row);
    }
  }
  int count() const { return static_cast<int>(om_.size()); }
  int hat(int i, int j, int t) const {
    if (t >= 0) return stable_hom(om_[i][t], om_[j][0], *f_.reg).stable;
    return stable_hom(om_[i][0], om_[j][-t], *f_.reg).stable;
  }

 private:
  const Fixture& f_;
  std::vector<std::vector<ModuleRep>> om_;
};

}  // namespace

Tally tate_symmetry(const Fixture& f, int tmin, int tmax) {
  Tally out;
  const TateTable tab(f, std::max(std::abs(tmin), std::abs(tmax)) + 1);
  for (int i = 0; i < tab.count(); ++i)
    for (int j = 0; j < tab.count(); ++j)
      for (int t = tmin; t <= tmax; ++t) {
        const int a = tab.hat(i, j, t), b = tab.hat(j, i, -t - 1);
        out.expect(a == b, f.name + " (" + std::to_string(i) + "," + std::to_string(j) + ") t=" +
                               std::to_string(t) + ": " + std::to_string(a) + " vs " + std::to_string(b));
      }
  return out;
}

Tally omega_round_trip(const Fixture& f) {
  Tally t;
  int idx = 0;
  for (const auto& m0 : fixture_modules(f)) {
    const ModuleRep m = strip_projective_summands(m0, *f.reg);
    ++idx;
    if (m.dim() == 0) continue;
    const ModuleRep down_up = omega_inverse_via_hull(omega(m, 1, *f.reg), *f.reg);
    const ModuleRep up_down = omega(omega_inverse_via_hull(m, *f.reg), 1, *f.reg);
    t.expect(is_isomorphic(down_up, m), f.name + " module " + std::to_string(idx) + ": Ω^-1 Ω");
    t.expect(is_isomorphic(up_down, m), f.name + " module " + std::to_string(idx) + ": Ω Ω^-1");
  }
  return t;
}

Tally ext_equals_stable_hom(const Fixture& f, int dmin, int dmax) {
  Tally t;
  const int r = f.reg->count();
  for (int a = 0; a < r; ++a) {
    ModuleRep om = omega(f.reg->simple(a), dmin, *f.reg);
    for (int n = dmin; n <= dmax; ++n) {
      for (int b = 0; b < r; ++b) {
        const int e = ext_dim(f.reg->simple(a), f.reg->simple(b), n, f.reg);
        const int s = stable_hom(om, f.reg->simple(b), *f.reg).stable;
        t.expect(e == s, f.name + " Ext^" + std::to_string(n) + "(" + f.reg->labels()[a] + "," +
                             f.reg->labels()[b] + "): " + std::to_string(e) + " vs " + std::to_string(s));
      }
      om = omega(om, 1, *f.reg);
    }
  }
  return t;
}

Tally minimal_reduce_invariance(const Fixture& f, int cones, std::uint32_t seed) {
  Tally t;
  std::mt19937 rng(seed);
  const SimpleRegistry& reg = *f.reg;
  for (int n = 0; n < cones; ++n) {
    const ProjComplex c = random_cone(f.reg, rng);
    const ProjComplex m = minimal_reduce(c);
    const ProjComplex mm = minimal_reduce(m);
    const std::string tag = f.name + " cone " + std::to_string(n);
    bool same = m.terms() == mm.terms();
    if (same)
      for (const auto& [k, s] : m.terms()) {
        (void)s;
        if (m.terms().count(k + 1)) same = same && equal(reg, m.diff(k), mm.diff(k));
      }
    t.expect(same, tag + ": minimal_reduce not idempotent");
    // Minimal: no component of a differential is invertible.
    bool radical = true;
    for (const auto& [k, s] : m.terms()) {
      if (!m.terms().count(k + 1)) continue;
      const ProjMap d = m.diff(k);
      for (std::size_t v = 0; v < d.tgt.size(); ++v)
        for (std::size_t u = 0; u < d.src.size(); ++u)
          if (d.src[u] == d.tgt[v] && reg.eis_unit(d.src[u], d.at(static_cast<int>(v), static_cast<int>(u))))
            radical = false;
    }
    t.expect(radical, tag + ": reduced complex has a unit component");
    t.expect(m.size() <= c.size(), tag + ": reduction grew the complex");
    for (int a = 0; a < reg.count(); ++a) {
      const Complex s = Complex::stalk(reg.simple(a), 0);
      for (int k = -c.hi() - 1; k <= -c.lo() + 1; ++k)
        t.expect(hom_dim(c, s, k) == hom_dim(m, s, k),
                 tag + ": Hom into " + reg.labels()[a] + "[" + std::to_string(k) + "] changed");
    }
    const GradedHom hc(c, c), hm(m, m);
    for (int k = -2; k <= 2; ++k)
      t.expect(hc.cohomology_dim(k) == hm.cohomology_dim(k), tag + ": End^" + std::to_string(k) + " changed");
  }
  return t;
}

Tally report_duality(const TiltingReport& r) {
  Tally t;
  for (std::size_t i = 0; i < r.hom_tx.size(); ++i)
    for (std::size_t j = 0; j < r.hom_tx[i].size(); ++j)
      t.expect(r.hom_tx[i][j] == r.hom_xt[i][j],
               "Hom(T_" + std::to_string(i) + ", X_" + std::to_string(j) + "[m]) differs from its dual");
  return t;
}

Tally projective_hom_symmetry(const Fixture& f) {
  Tally t;
  const auto mods = fixture_modules(f);
  for (int a = 0; a < f.reg->count(); ++a)
    for (std::size_t i = 0; i < mods.size(); ++i) {
      const int x = hom_space(f.reg->projective(a), mods[i]).dim();
      const int y = hom_space(mods[i], f.reg->projective(a)).dim();
      t.expect(x == y, f.name + " P(" + f.reg->labels()[a] + ") vs module " + std::to_string(i) + ": " +
                           std::to_string(x) + " vs " + std::to_string(y));
    }
  return t;
}

bool is_basic(const SimpleRegistry& reg) {
  for (int a = 0; a < reg.count(); ++a)
    if (reg.simple_dim(a) != 1) return false;
  return true;
}

bool algebras_isomorphic(const Algebra& a, const Algebra& b) {
  if (a.dim() != b.dim() || !a.F().same_as(b.F())) return false;
  const int n = a.dim();
  const int q = a.F().q();
  std::uint64_t total = 1;
  for (int i = 0; i < n * n; ++i) {
    total *= static_cast<std::uint64_t>(q);
    if (total > 50000000ull) fail(ErrorKind::Inconclusive, "algebra too large for brute force");
  }
  Matrix phi(a.field(), n, n);
  const auto image = [&](const Elem& x) {
    Elem y(n, 0);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) y[r] = a.F().add(y[r], a.F().mul(phi.at(r, c), x[c]));
    return y;
  };
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t x = code;
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) {
        phi.at(r, c) = static_cast<Fq>(x % q);
        x /= q;
      }
    if (rank(phi) != n || image(a.unit()) != b.unit()) continue;
    bool hom = true;
    for (int i = 0; i < n && hom; ++i)
      for (int j = 0; j < n && hom; ++j)
        hom = image(a.mul(a.basis_elem(i), a.basis_elem(j))) ==
              b.mul(image(a.basis_elem(i)), image(a.basis_elem(j)));
    if (hom) return true;
  }
  return false;
}

}  // namespace tiltsmith::testing
