#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ppinv/field.hpp"
#include "ppinv/linearized.hpp"
#include "ppinv/local_method.hpp"
#include "ppinv/poly.hpp"

namespace ppinv {

struct Condition {
  std::string name;
  bool holds;
};

/// Named condition checks for one family instance.
struct VerificationReport {
  std::string family;
  std::vector<Condition> conditions;
  std::vector<std::string> notes;

  bool all_hold() const;
  /// Throws RangeError for an unknown name.
  bool holds(std::string_view name) const;
};

struct BezoutPair {
  std::int64_t a;
  std::int64_t b;
};

/// a*s + b*r = 1, with 0 <= a < r (a = 0 when r = 1). Throws NoBezout when
/// gcd(r, s) != 1.
BezoutPair bezout(std::int64_t r, std::int64_t s);

/// Least positive x with m*x = 1 (mod modulus), if any.
std::optional<std::uint64_t> mod_inverse(std::uint64_t m, std::uint64_t modulus);

/// Compositional inverse of a PP of F_q as a polynomial, from the oracle.
Poly oracle_inverse_poly(const Poly& g);

/// Lowest rank a where g(f(a)) != a or f(g(a)) != a, over `domain` (whole
/// field when empty).
std::optional<Rank> first_inverse_failure(const MapTable& f, const MapTable& g,
                                          const RankSet& domain = {});

// -- x^r h(x^s) ---------------------------------------------------------------

struct CyclotomicParams {
  FieldPtr field;
  std::uint32_t r;
  std::uint32_t ell;
  Poly h;

  /// Throws PreconditionFailed unless r, ell >= 1 and ell | q - 1.
  CyclotomicParams(FieldPtr field, std::uint32_t r, std::uint32_t ell, Poly h);

  std::uint32_t s() const { return (field->size() - 1) / ell; }
  /// The ell-th roots of unity.
  RankSet mu() const;
  /// g(a) = a^r h(a)^s.
  Rank g(Rank a) const;
};

Poly cyclotomic_build(const CyclotomicParams& p);
/// Conditions gcd_rs and g_permutes_mu.
VerificationReport cyclotomic_check(const CyclotomicParams& p);
/// g^{-1} on mu, extended by 0 off mu, as a polynomial.
Poly cyclotomic_g_inverse(const CyclotomicParams& p);
/// f^{-1}(x) = g^{-1}(x^s)^a x^b h(g^{-1}(x^s))^{-b}, f^{-1}(0) = 0.
/// Throws NotAPermutation when the conditions fail.
Poly cyclotomic_inverse(const CyclotomicParams& p);
/// Legs (g^{-1}(x^s), x^s) and (x, f) with F(y1, y2) = y1^a (y2 / h(y1))^b.
InverseDiagram cyclotomic_diagram(const CyclotomicParams& p);

// -- f1(x) h(lambda(x)) on F_q^* ---------------------------------------------

/// All maps are full tables; only entries on F_q^* (for f1, lambda,
/// lambda_bar) or on S = lambda(F_q^*) (for h, g) are consulted.
struct TwistParams {
  FieldPtr field;
  MapTable f1;
  MapTable h;
  MapTable lambda;
  MapTable lambda_bar;
  MapTable g;

  RankSet carrier() const;
  RankSet S() const;
  RankSet S_bar() const;
};

/// f = f1 * h(lambda) on F_q^*; entry 0 is 0.
MapTable twist_build(const TwistParams& p);
VerificationReport twist_check(const TwistParams& p);
/// a -> f1^{-1}(a / h(g^{-1}(lambda_bar(a)))) on F_q^*; entry 0 is 0.
/// Throws PreconditionFailed naming the first failed condition.
MapTable twist_inverse(const TwistParams& p);
InverseDiagram twist_diagram(const TwistParams& p);

// -- g(A_0) + sum u_i A_i^{m_i} over F_{q^d} ---------------------------------

struct LinearizedFamilyParams {
  std::shared_ptr<const LinearizedContext> ctx;
  Poly g;
  std::vector<Rank> u;
  std::vector<std::uint64_t> m;

  /// u and m hold the entries for i = 1..d-1.
  LinearizedFamilyParams(std::shared_ptr<const LinearizedContext> ctx, Poly g, std::vector<Rank> u,
                         std::vector<std::uint64_t> m);

  /// r_i, least positive with m_i r_i = 1 (mod d(q-1)), when all exist.
  std::optional<std::vector<std::uint64_t>> r() const;
  /// j = i m_i mod d for i = 1..d-1.
  std::uint32_t target_index(std::uint32_t i) const;
};

Poly linearized_build(const LinearizedFamilyParams& p);
/// Conditions complete_residue, u_product_nonzero, gcd_m_q1, g_permutes.
VerificationReport linearized_check(const LinearizedFamilyParams& p);
Poly linearized_inverse(const LinearizedFamilyParams& p);
/// Legs (psi_i, A_i) for i = 0..d-1 with F(y) = (1/d) sum w^i y_i.
InverseDiagram linearized_diagram(const LinearizedFamilyParams& p);

/// g <- g + u0 x, absorbing a u0 A_0 term into g(A_0).
LinearizedFamilyParams fold_u0(const LinearizedFamilyParams& p, Rank u0);
/// Conditions product_nonzero, g_permutes, dg_plus_x_permutes. Requires all
/// m_i = 1. A nonzero u0 is folded into g first and noted.
VerificationReport cpp_check(const LinearizedFamilyParams& p, Rank u0 = 0);

// -- x^q - x + g(Tr(x)) over F_{q^n} -----------------------------------------

struct TraceFamilyParams {
  FieldSpec spec;
  Poly g;

  /// n is the top-extension degree; throws PreconditionFailed without one.
  TraceFamilyParams(FieldSpec spec, Poly g);

  std::uint32_t n() const { return spec.e(); }
};

/// Tr(x) = x + x^q + ... + x^{q^{n-1}} over the top field of `spec`.
Poly trace_poly(const FieldSpec& spec);
Poly trace_build(const TraceFamilyParams& p);
/// Conditions gcd_n_q and g_permutes; carries the formula_corrected note.
VerificationReport trace_check(const TraceFamilyParams& p);
/// f^{-1}(x) = (1/n)(g^{-1}(Tr(x)/n) + sum_{i=1}^{n} i (x - Tr(x)/n)^{q^{i-1}}).
Poly trace_inverse(const TraceFamilyParams& p);
/// Legs (g^{-1}(Tr/n), Tr) and (x, f) with
/// F(y1, y2) = (1/n)(y1 + sum_i i (y2 - g(y1))^{q^{i-1}}).
InverseDiagram trace_diagram(const TraceFamilyParams& p);

}  // namespace ppinv
