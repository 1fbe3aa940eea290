#pragma once

#include "tiltsmith/error.hpp"
#include "tiltsmith/matrix.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace tiltsmith::detail {

/// Linear combinations of a basis, visited deterministically: the basis
/// itself, a batch of pseudo-random combinations, then all combinations up
/// to `cap`. Stops when `fn` returns true.
template <class Fn>
bool for_each_combination(const std::vector<Matrix>& basis, std::uint64_t cap, Fn&& fn) {
  if (basis.empty()) return false;
  const FieldPtr& F = basis[0].field();
  const int d = static_cast<int>(basis.size());
  const int q = F->q();
  for (const auto& b : basis)
    if (fn(b)) return true;
  std::mt19937 rng(0x7157);
  std::uniform_int_distribution<int> pick(0, q - 1);
  for (int t = 0; t < 64; ++t) {
    Matrix m(F, basis[0].rows(), basis[0].cols());
    for (int i = 0; i < d; ++i) {
      const Fq c = static_cast<Fq>(pick(rng));
      if (c) m.add_scaled(basis[i], c);
    }
    if (fn(m)) return true;
  }
  std::uint64_t total = 1;
  bool over = false;
  for (int i = 0; i < d; ++i) {
    if (total > cap / static_cast<std::uint64_t>(q) + 1) {
      over = true;
      break;
    }
    total *= static_cast<std::uint64_t>(q);
  }
  if (over || total > cap)
    fail(ErrorKind::Inconclusive, "map search exceeds the enumeration cap");
  std::vector<int> digits(d, 0);
  for (std::uint64_t n = 1; n < total; ++n) {
    for (int i = 0; i < d; ++i) {
      if (++digits[i] < q) break;
      digits[i] = 0;
    }
    Matrix m(F, basis[0].rows(), basis[0].cols());
    for (int i = 0; i < d; ++i)
      if (digits[i]) m.add_scaled(basis[i], static_cast<Fq>(digits[i]));
    if (fn(m)) return true;
  }
  return false;
}

}  // namespace tiltsmith::detail
