#pragma once

#include "ppinv/poly.hpp"

namespace ppinv {

/// Single occupancy pass: every rank hit exactly once.
bool is_permutation(const MapTable& t);

/// True when `t` maps `carrier` bijectively onto itself.
bool permutes(const MapTable& t, const RankSet& carrier);

/// Table U with U(T(a)) = a and T(U(a)) = a. Throws NotAPermutation.
MapTable brute_inverse(const MapTable& t);

/// Inverse of a bijection of `carrier`; entries off the carrier are 0.
MapTable brute_inverse_on(const MapTable& t, const RankSet& carrier);

/// interpolate(brute_inverse(tabulate(f))).
Poly brute_inverse_poly(const Poly& f);

}  // namespace ppinv
