#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "ppinv/poly.hpp"

namespace testing {

using ppinv::FieldPtr;
using ppinv::MapTable;
using ppinv::Poly;
using ppinv::Rank;

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(0x5eed1234u);
  return gen;
}

inline Rank random_rank(const FieldPtr& f) {
  return static_cast<Rank>(std::uniform_int_distribution<std::uint32_t>(0, f->size() - 1)(rng()));
}

inline Poly random_poly(const FieldPtr& f, std::size_t max_len) {
  const auto len = std::uniform_int_distribution<std::size_t>(0, max_len)(rng());
  std::vector<Rank> c(len);
  for (auto& x : c) x = random_rank(f);
  return Poly(f, std::move(c));
}

inline MapTable random_map(const FieldPtr& f) {
  std::vector<Rank> v(f->size());
  for (auto& x : v) x = random_rank(f);
  return {f, std::move(v)};
}

inline MapTable random_permutation(const FieldPtr& f) {
  std::vector<Rank> v(f->size());
  std::iota(v.begin(), v.end(), 0);
  std::shuffle(v.begin(), v.end(), rng());
  return {f, std::move(v)};
}

/// Horner evaluation with schoolbook exponent handling, independent of the
/// library's log-table evaluator.
inline Rank naive_eval(const Poly& f, Rank a) {
  const auto& F = *f.field();
  Rank acc = 0;
  for (std::size_t i = f.coeffs().size(); i-- > 0;) acc = F.add(F.mul(acc, a), f.coeffs()[i]);
  return acc;
}

inline std::vector<Rank> naive_table(const Poly& f) {
  std::vector<Rank> out(f.field()->size());
  for (Rank a = 0; a < out.size(); ++a) out[a] = naive_eval(f, a);
  return out;
}

inline bool is_bijection(const std::vector<Rank>& v) {
  std::vector<bool> seen(v.size(), false);
  for (Rank x : v) {
    if (x >= v.size() || seen[x]) return false;
    seen[x] = true;
  }
  return true;
}

inline std::uint64_t gcd(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

}  // namespace testing
