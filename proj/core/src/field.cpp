#include "tiltsmith/field.hpp"

#include "tiltsmith/error.hpp"

#include <sstream>

namespace tiltsmith {

namespace {

using Poly = std::vector<int>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo monic b over GF(p).
Poly poly_mod(Poly a, const Poly& b, int p) {
  trim(a);
  const int db = static_cast<int>(b.size()) - 1;
  while (static_cast<int>(a.size()) - 1 >= db) {
    const int shift = static_cast<int>(a.size()) - 1 - db;
    const int lead = a.back();
    for (int i = 0; i <= db; ++i) {
      a[i + shift] = ((a[i + shift] - lead * b[i]) % p + p) % p;
    }
    trim(a);
  }
  return a;
}

int mod_inverse(int a, int p) {
  for (int x = 1; x < p; ++x)
    if ((a * x) % p == 1) return x;
  return 0;
}

}  // namespace

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

bool is_irreducible(int p, const std::vector<int>& poly) {
  Poly f = poly;
  trim(f);
  const int deg = static_cast<int>(f.size()) - 1;
  if (deg < 1) return false;
  if (deg == 1) return true;
  // Make monic.
  const int li = mod_inverse(f.back(), p);
  for (int& c : f) c = (c * li) % p;
  for (int d = 1; d <= deg / 2; ++d) {
    long long count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (long long code = 0; code < count; ++code) {
      Poly g(d + 1, 0);
      long long c = code;
      for (int i = 0; i < d; ++i) {
        g[i] = static_cast<int>(c % p);
        c /= p;
      }
      g[d] = 1;
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

FieldPtr FqField::make(int p, int e, std::vector<int> modulus) {
  require(is_prime(p), ErrorKind::Config, "field characteristic must be prime");
  require(e >= 1, ErrorKind::Config, "extension degree must be >= 1");
  long long q = 1;
  for (int i = 0; i < e; ++i) q *= p;
  require(q <= 256, ErrorKind::Config, "field order above 256 is not supported");
  if (e == 1 && modulus.empty()) modulus = {0, 1};
  require(static_cast<int>(modulus.size()) == e + 1 && modulus.back() == 1,
          ErrorKind::Config, "modulus must be monic of degree e");
  for (int& c : modulus) c = ((c % p) + p) % p;
  require(is_irreducible(p, modulus), ErrorKind::Config,
          "modulus is reducible over GF(p)");

  auto f = std::shared_ptr<FqField>(new FqField());
  f->p_ = p;
  f->e_ = e;
  f->q_ = static_cast<int>(q);
  f->modulus_ = modulus;
  const int qq = f->q_;
  f->add_.resize(static_cast<std::size_t>(qq) * qq);
  f->mul_.resize(static_cast<std::size_t>(qq) * qq);
  f->neg_.resize(qq);
  f->inv_.resize(qq);

  auto digits = [&](int idx) {
    Poly d(e, 0);
    for (int i = 0; i < e; ++i) {
      d[i] = idx % p;
      idx /= p;
    }
    return d;
  };
  auto index = [&](const Poly& d) {
    int idx = 0;
    for (int i = static_cast<int>(d.size()) - 1; i >= 0; --i) idx = idx * p + d[i];
    return idx;
  };

  for (int a = 0; a < qq; ++a) {
    const Poly da = digits(a);
    Poly na(e);
    for (int i = 0; i < e; ++i) na[i] = (p - da[i]) % p;
    f->neg_[a] = static_cast<Fq>(index(na));
    for (int b = 0; b < qq; ++b) {
      const Poly db = digits(b);
      Poly s(e);
      for (int i = 0; i < e; ++i) s[i] = (da[i] + db[i]) % p;
      f->add_[a * qq + b] = static_cast<Fq>(index(s));
      Poly prod(2 * e, 0);
      for (int i = 0; i < e; ++i)
        for (int j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
      Poly r = poly_mod(prod, modulus, p);
      r.resize(e, 0);
      f->mul_[a * qq + b] = static_cast<Fq>(index(r));
    }
  }
  for (int a = 1; a < qq; ++a)
    for (int b = 1; b < qq; ++b)
      if (f->mul_[a * qq + b] == 1) f->inv_[a] = static_cast<Fq>(b);

  for (int g = 1; g < qq; ++g) {
    int order = 1;
    Fq x = static_cast<Fq>(g);
    while (x != 1) {
      x = f->mul_[x * qq + g];
      ++order;
    }
    if (order == qq - 1) {
      f->primitive_ = static_cast<Fq>(g);
      break;
    }
  }
  return f;
}

FieldPtr FqField::prime(int p) { return make(p, 1, {0, 1}); }

FieldPtr FqField::builtin(int q) {
  if (q == 4) return make(2, 2, {1, 1, 1});
  if (q == 8) return make(2, 3, {1, 1, 0, 1});
  if (q == 9) return make(3, 2, {1, 0, 1});
  if (q == 16) return make(2, 4, {1, 1, 0, 0, 1});
  if (q == 25) return make(5, 2, {2, 4, 1});
  if (q == 27) return make(3, 3, {1, 2, 0, 1});
  require(is_prime(q), ErrorKind::Config,
          "no built-in modulus for GF(" + std::to_string(q) + ")");
  return prime(q);
}

Fq FqField::inv(Fq a) const {
  require(a != 0, ErrorKind::Precondition, "inverse of zero");
  return inv_[a];
}

Fq FqField::pow(Fq a, long long n) const {
  if (n < 0) {
    a = inv(a);
    n = -n;
  }
  Fq r = 1;
  while (n > 0) {
    if (n & 1) r = mul(r, a);
    a = mul(a, a);
    n >>= 1;
  }
  return r;
}

Fq FqField::from_int(long long v) const {
  return static_cast<Fq>(((v % p_) + p_) % p_);
}

Fq FqField::from_coeffs(const std::vector<int>& coeffs) const {
  require(static_cast<int>(coeffs.size()) <= e_, ErrorKind::Config,
          "field element has too many coefficients");
  int idx = 0;
  for (int i = static_cast<int>(coeffs.size()) - 1; i >= 0; --i)
    idx = idx * p_ + (((coeffs[i] % p_) + p_) % p_);
  return static_cast<Fq>(idx);
}

std::vector<int> FqField::to_coeffs(Fq a) const {
  std::vector<int> c(e_, 0);
  int idx = a;
  for (int i = 0; i < e_; ++i) {
    c[i] = idx % p_;
    idx /= p_;
  }
  return c;
}

int FqField::prime_value(Fq a) const { return a < p_ ? a : -1; }

std::string FqField::name() const {
  std::ostringstream os;
  os << "GF(" << q_ << ")";
  return os.str();
}

}  // namespace tiltsmith
