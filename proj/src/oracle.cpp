#include "ppinv/oracle.hpp"

namespace ppinv {

bool is_permutation(const MapTable& t) {
  std::vector<char> seen(t.size(), 0);
  for (Rank v : t.values) {
    if (seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

bool permutes(const MapTable& t, const RankSet& carrier) {
  std::vector<char> in_carrier(t.size(), 0);
  for (Rank a : carrier) in_carrier[a] = 1;
  std::vector<char> seen(t.size(), 0);
  for (Rank a : carrier) {
    const Rank v = t[a];
    if (!in_carrier[v] || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

MapTable brute_inverse(const MapTable& t) {
  if (!is_permutation(t)) throw NotAPermutation("table is not a bijection");
  std::vector<Rank> inv(t.size());
  for (Rank a = 0; a < t.size(); ++a) inv[t[a]] = a;
  return {t.field, std::move(inv)};
}

MapTable brute_inverse_on(const MapTable& t, const RankSet& carrier) {
  if (!permutes(t, carrier)) throw NotAPermutation("table does not permute the carrier");
  std::vector<Rank> inv(t.size(), 0);
  for (Rank a : carrier) inv[t[a]] = a;
  return {t.field, std::move(inv)};
}

Poly brute_inverse_poly(const Poly& f) { return interpolate(brute_inverse(tabulate(f))); }

}  // namespace ppinv
