#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace tiltsmith {

// A field element is an index in [0, q): the base-p digits of the index are
// the coefficients (little-endian by degree) of its polynomial representative.
using Fq = std::uint8_t;

class FqField;
using FieldPtr = std::shared_ptr<const FqField>;

/// GF(p^e) as GF(p)[x]/(modulus), with full addition and multiplication
/// tables. Supports q <= 256.
class FqField {
 public:
  /// `modulus` is monic of degree e, coefficients little-endian (length e+1).
  /// Throws ErrorKind::Config if p is not prime or the modulus is reducible.
  static FieldPtr make(int p, int e, std::vector<int> modulus);
  /// Prime field GF(p).
  static FieldPtr prime(int p);
  /// Built-in moduli: GF(4) = GF(2)[x]/(x^2+x+1), GF(9) = GF(3)[x]/(x^2+1),
  /// Conway polynomials for 8, 16, 25, 27, plus any prime q.
  static FieldPtr builtin(int q);

  int p() const { return p_; }
  int e() const { return e_; }
  int q() const { return q_; }
  const std::vector<int>& modulus() const { return modulus_; }

  Fq add(Fq a, Fq b) const { return add_[a * q_ + b]; }
  Fq sub(Fq a, Fq b) const { return add_[a * q_ + neg_[b]]; }
  Fq mul(Fq a, Fq b) const { return mul_[a * q_ + b]; }
  Fq neg(Fq a) const { return neg_[a]; }
  Fq inv(Fq a) const;
  Fq div(Fq a, Fq b) const { return mul(a, inv(b)); }
  Fq pow(Fq a, long long n) const;

  /// Row of the multiplication table for a fixed left factor.
  const Fq* mul_row(Fq a) const { return &mul_[a * q_]; }
  const Fq* add_row(Fq a) const { return &add_[a * q_]; }

  Fq from_int(long long v) const;
  Fq from_coeffs(const std::vector<int>& coeffs) const;
  std::vector<int> to_coeffs(Fq a) const;
  /// The embedded prime-field value, or -1 when `a` is not in GF(p).
  int prime_value(Fq a) const;
  /// A generator of the multiplicative group.
  Fq primitive_element() const { return primitive_; }

  bool same_as(const FqField& other) const {
    return p_ == other.p_ && e_ == other.e_ && modulus_ == other.modulus_;
  }
  std::string name() const;

 private:
  FqField() = default;

  int p_ = 0;
  int e_ = 0;
  int q_ = 0;
  std::vector<int> modulus_;
  std::vector<Fq> add_;
  std::vector<Fq> mul_;
  std::vector<Fq> neg_;
  std::vector<Fq> inv_;
  Fq primitive_ = 1;
};

bool is_prime(int n);
/// Irreducibility over GF(p) by trial division against every monic
/// polynomial of degree <= deg/2.
bool is_irreducible(int p, const std::vector<int>& poly);

}  // namespace tiltsmith
