#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ppinv/field.hpp"

namespace ppinv {

/// Univariate polynomial over one field level, ascending coefficient ranks,
/// no trailing zeros. The zero polynomial has no coefficients.
///
/// Equality is structural (same coefficients). Two polynomials that induce
/// the same map compare equal only after reduce_mod_qx; use same_map() to
/// compare the induced functions.
class Poly {
 public:
  explicit Poly(FieldPtr field, std::vector<Rank> coeffs = {});

  static Poly x(FieldPtr field) { return monomial(std::move(field), 1, 1); }
  static Poly constant(FieldPtr field, Rank c) { return monomial(std::move(field), c, 0); }
  static Poly monomial(FieldPtr field, Rank c, std::uint64_t e);

  const FieldPtr& field() const { return field_; }
  const std::vector<Rank>& coeffs() const { return coeffs_; }
  Rank coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : 0; }
  /// -1 for the zero polynomial.
  std::int64_t degree() const { return static_cast<std::int64_t>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  std::size_t term_count() const;

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  Poly operator-() const;
  /// Plain product, no reduction.
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly scaled(Rank c) const;

  friend bool operator==(const Poly& a, const Poly& b);

 private:
  void trim();

  FieldPtr field_;
  std::vector<Rank> coeffs_;
};

/// A total function on a field, entry n being the image of the element of
/// rank n.
struct MapTable {
  FieldPtr field;
  std::vector<Rank> values;

  MapTable(FieldPtr f, std::vector<Rank> v);

  static MapTable identity(FieldPtr f);
  static MapTable constant(FieldPtr f, Rank c);

  std::size_t size() const { return values.size(); }
  Rank operator[](Rank a) const { return values[a]; }

  friend bool operator==(const MapTable& a, const MapTable& b);
};

/// Exponent folding modulo x^Q - x: 0 stays 0, e >= 1 maps into [1, Q-1].
std::uint64_t fold_exponent(std::uint64_t e, std::uint64_t field_size);

Rank evaluate(const Poly& f, Rank a);
FieldElement evaluate(const Poly& f, const FieldElement& a);

Poly reduce_mod_qx(const Poly& f);

/// Product reduced modulo x^Q - x.
Poly mul_mod_qx(const Poly& a, const Poly& b);
Poly pow_mod_qx(const Poly& f, std::uint64_t e);
/// f^{p^t} computed coefficient-wise (Frobenius on coefficients, exponents
/// scaled by p^t and folded).
Poly frobenius_power(const Poly& f, std::uint32_t t);

/// Reduced representative of f(g(x)) in the composition ring.
Poly compose(const Poly& f, const Poly& g);

MapTable tabulate(const Poly& f);

/// The unique reduced polynomial inducing `t`, via
/// sum_a t(a) * (1 - (x - a)^{Q-1}).
Poly interpolate(const MapTable& t);

/// outer o inner as tables.
MapTable compose_tables(const MapTable& outer, const MapTable& inner);

bool same_map(const Poly& a, const Poly& b);
bool equal_reduced(const Poly& a, const Poly& b);

/// Sorted set of values taken by `t` on `domain` (all ranks when empty).
RankSet image(const MapTable& t, const RankSet& domain = {});

/// `0,3,0,1` is x^3 + 3x. The empty string and `0` both denote zero.
Poly parse_poly(FieldPtr field, std::string_view csv);
std::string to_csv(const Poly& f);
std::string to_csv(const std::vector<Rank>& ranks);

}  // namespace ppinv
