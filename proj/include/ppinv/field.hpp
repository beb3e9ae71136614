#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ppinv/errors.hpp"

namespace ppinv {

/// Position of an element in the canonical enumeration of its field. The rank
/// is the positional encoding of the coefficient sequence over the immediate
/// subfield, least-significant coefficient first.
using Rank = std::uint32_t;

/// Sorted, duplicate-free collection of ranks.
using RankSet = std::vector<Rank>;

/// One level of a field tower: either a prime field F_p or a simple extension
/// F[t]/(m(t)) of a smaller level. Instances are immutable and shared.
///
/// Because ranks are positional encodings, an element of the subfield embeds
/// as the constant coefficient and keeps its rank. Addition works digit-wise
/// in base p; multiplication goes through discrete log tables built once at
/// construction.
class Field {
 public:
  static constexpr std::uint64_t kMaxSize = 1'000'000;

  static std::shared_ptr<const Field> prime(std::uint32_t p);

  /// `modulus` is monic over `sub`, ascending coefficients given as ranks of
  /// `sub`. Irreducibility is verified exhaustively.
  static std::shared_ptr<const Field> extension(std::shared_ptr<const Field> sub,
                                                std::vector<Rank> modulus);

  std::uint32_t size() const { return size_; }
  std::uint32_t characteristic() const { return p_; }
  /// Degree over the immediate subfield (1 for a prime field).
  std::uint32_t degree() const { return degree_; }
  /// Degree over the prime field.
  std::uint32_t absolute_degree() const { return digits_; }
  bool is_prime_field() const { return sub_ == nullptr; }
  const std::shared_ptr<const Field>& subfield() const { return sub_; }
  const std::vector<Rank>& modulus() const { return modulus_; }

  bool contains(Rank a) const { return a < size_; }
  void check(Rank a) const;

  Rank add(Rank a, Rank b) const;
  Rank sub(Rank a, Rank b) const;
  Rank neg(Rank a) const;
  Rank mul(Rank a, Rank b) const;
  Rank inv(Rank a) const;
  Rank div(Rank a, Rank b) const { return mul(a, inv(b)); }
  /// a^e with 0^0 = 1; negative exponents invert first.
  Rank pow(Rank a, std::int64_t e) const;
  /// Image of an integer under Z -> F_p -> this field.
  Rank from_integer(std::int64_t n) const;

  std::vector<Rank> coeffs(Rank a) const;
  Rank from_coeffs(std::span<const Rank> coeffs) const;

  /// a^{|subfield|}; the generator of Gal(this / subfield).
  Rank frobenius(Rank a) const;
  /// Sum of the conjugates of `a` over the immediate subfield.
  Rank relative_trace(Rank a) const;

  std::uint64_t multiplicative_order(Rank a) const;
  /// Smallest-rank element of multiplicative order exactly d.
  Rank primitive_root_of_unity(std::uint64_t d) const;
  Rank generator() const { return generator_; }

  /// Index of a nonzero element relative to generator().
  std::uint32_t log(Rank a) const;
  Rank exp(std::uint64_t e) const { return exp_[e % (size_ - 1)]; }

  /// Structural equality: same characteristic, same tower of moduli.
  friend bool operator==(const Field& a, const Field& b);

 private:
  Field() = default;

  Rank slow_mul(Rank a, Rank b) const;
  Rank slow_pow(Rank a, std::uint64_t e) const;
  void build_log_tables();

  std::uint32_t p_ = 0;
  std::uint32_t degree_ = 1;
  std::uint32_t digits_ = 1;
  std::uint32_t size_ = 0;
  std::shared_ptr<const Field> sub_;
  std::vector<Rank> modulus_;
  Rank generator_ = 0;
  std::vector<Rank> exp_;
  std::vector<std::uint32_t> log_;
};

using FieldPtr = std::shared_ptr<const Field>;

bool same_field(const FieldPtr& a, const FieldPtr& b);
void require_same_field(const FieldPtr& a, const FieldPtr& b, std::string_view where);

/// Exhaustive divisor check of a monic polynomial over `sub`.
bool is_irreducible(const Field& sub, std::span<const Rank> monic);

/// Smallest monic irreducible of the given degree, ordered by the rank
/// encoding of its non-leading coefficients (c0 least significant).
std::vector<Rank> smallest_irreducible(const Field& sub, std::uint32_t degree);

bool is_prime(std::uint64_t n);

/// A value in a specific field level. Arithmetic between elements of
/// different levels raises LevelMismatch; use FieldSpec::embed to lift.
class FieldElement {
 public:
  FieldElement(FieldPtr field, Rank rank);

  const FieldPtr& field() const { return field_; }
  Rank rank() const { return rank_; }
  std::vector<Rank> coeffs() const { return field_->coeffs(rank_); }
  bool is_zero() const { return rank_ == 0; }

  FieldElement inv() const;
  FieldElement pow(std::int64_t e) const;

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b);
  FieldElement operator-() const;
  friend bool operator==(const FieldElement& a, const FieldElement& b);

 private:
  FieldPtr field_;
  Rank rank_;
};

enum class Level { prime, base, top };

/// F_p, F_q = F_p[t]/(irr) and an optional top extension F_{q^e}.
///
/// Text grammar: `p` | `p^k:c0,...,ck` | `p^k:c0,...,ck|e:b0,...,be`, where
/// the c are integers mod p and the b are ranks of F_q elements, ascending.
/// `p|e:b0,...,be` is accepted as shorthand for a tower directly over F_p.
class FieldSpec {
 public:
  static FieldSpec parse(std::string_view text);
  /// `base_irreducible` empty means k = 1.
  static FieldSpec make(std::uint32_t p, std::vector<Rank> base_irreducible,
                        std::optional<std::vector<Rank>> top_irreducible = std::nullopt);
  /// Tower built from the smallest irreducibles of each degree.
  static FieldSpec smallest(std::uint32_t p, std::uint32_t k, std::uint32_t e = 1);
  /// Smallest-irreducible tower F_{q^e} for a prime power q.
  static FieldSpec for_order(std::uint64_t q, std::uint32_t e = 1);

  std::string to_string() const;

  std::uint32_t p() const { return prime_->size(); }
  std::uint32_t k() const { return base_->absolute_degree(); }
  std::uint32_t e() const { return top_ ? top_->degree() : 1; }
  std::uint32_t q() const { return base_->size(); }
  /// Size of the ambient (top-most) level.
  std::uint32_t Q() const { return ambient()->size(); }

  const FieldPtr& prime_field() const { return prime_; }
  const FieldPtr& base() const { return base_; }
  const FieldPtr& top() const { return top_; }
  bool has_top() const { return top_ != nullptr; }
  const FieldPtr& ambient() const { return top_ ? top_ : base_; }
  const FieldPtr& level(Level l) const;

  FieldElement element(Level l, Rank r) const { return {level(l), r}; }
  FieldElement unrank(Level l, std::uint64_t n) const;
  Rank rank(const FieldElement& a) const { return a.rank(); }
  std::vector<FieldElement> enumerate(Level l) const;

  FieldElement embed(const FieldElement& base_element) const;
  /// a^q for a in the top extension.
  FieldElement frobenius(const FieldElement& a) const;
  /// Trace from the top extension down to F_q.
  FieldElement rel_trace(const FieldElement& a) const;
  FieldElement primitive_root_of_unity(std::uint64_t d) const;

 private:
  FieldPtr prime_;
  FieldPtr base_;
  FieldPtr top_;
  std::vector<Rank> base_irreducible_;
};

}  // namespace ppinv
