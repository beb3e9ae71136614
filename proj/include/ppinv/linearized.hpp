#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ppinv/field.hpp"
#include "ppinv/poly.hpp"

namespace ppinv {

/// F_{q^d} over F_q with q = 1 (mod d), a primitive d-th root of unity w in
/// F_q and the polynomials
///
///   A_i(x) = sum_{j=0}^{d-1} w^{ij} x^{q^{d-1-j}},   0 <= i < d.
///
/// Each A_i is tabulated once at construction.
class LinearizedContext {
 public:
  /// d is the top-extension degree of `spec`; throws PreconditionFailed when
  /// there is no top extension or q != 1 (mod d).
  explicit LinearizedContext(FieldSpec spec);

  const FieldSpec& spec() const { return spec_; }
  const FieldPtr& field() const { return spec_.top(); }
  const FieldPtr& base() const { return spec_.base(); }
  std::uint32_t d() const { return d_; }
  std::uint32_t q() const { return spec_.q(); }
  /// Smallest-rank primitive d-th root of unity in F_q.
  Rank omega() const { return omega_; }
  /// w^e for any integer e, as a top-field rank.
  Rank omega_pow(std::int64_t e) const;
  /// d as a field element.
  Rank d_element() const { return field()->from_integer(d_); }

  const Poly& A(std::uint32_t i) const;
  const MapTable& A_table(std::uint32_t i) const;

 private:
  FieldSpec spec_;
  std::uint32_t d_;
  Rank omega_;
  std::vector<Poly> polys_;
  std::vector<MapTable> tables_;
};

/// The reduced polynomial A_i over F_{q^d}. Throws RangeError for i >= d.
Poly build_A(const LinearizedContext& ctx, std::uint32_t i);

/// Image B_i = {A_i(x)} of one A_i: a line {0} u y_i F_q^*.
struct ImageLine {
  std::uint32_t index;
  RankSet elements;
  /// Smallest-rank nonzero member.
  Rank representative;
};

/// Enumerates B_i and asserts its structure; InternalError when the
/// structure is violated.
ImageLine image_line(const LinearizedContext& ctx, std::uint32_t i);

struct AIdentityVerdict {
  /// A_i(x)^q = w^i A_i(x).
  bool eigen = false;
  /// A_j o A_i^m equals d w^{-j} A_i^m when j = im (mod d), else 0.
  bool composition = false;
  bool composition_matches = false;
  /// A_j o g(A_0) = 0; only defined for j >= 1.
  std::optional<bool> annihilation;
};

/// Every clause is checked pointwise over all of F_{q^d}. `g` lives over F_q.
AIdentityVerdict a_identities(const LinearizedContext& ctx, std::uint32_t i, std::uint32_t j,
                                  std::uint32_t m, const Poly& g);

/// (1/d) sum_i w^i A_i(x) = x pointwise.
bool reconstruction_identity(const LinearizedContext& ctx);

}  // namespace ppinv
