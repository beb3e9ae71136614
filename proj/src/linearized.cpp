#include "ppinv/linearized.hpp"

#include <algorithm>
#include <string>

namespace ppinv {

namespace {

std::uint64_t ipow(std::uint64_t b, std::uint32_t e) {
  std::uint64_t out = 1;
  while (e-- > 0) out *= b;
  return out;
}

}  // namespace

LinearizedContext::LinearizedContext(FieldSpec spec) : spec_(std::move(spec)) {
  if (!spec_.has_top()) {
    throw PreconditionFailed("tower", "linearized context needs a top extension F_{q^d}");
  }
  d_ = spec_.e();
  if (d_ < 2) throw PreconditionFailed("d", "d must be at least 2");
  if ((spec_.q() - 1) % d_ != 0) {
    throw PreconditionFailed("q_mod_d", "q = " + std::to_string(spec_.q()) +
                                            " is not 1 mod d = " + std::to_string(d_));
  }
  omega_ = spec_.base()->primitive_root_of_unity(d_);

  const auto& top = *field();
  const std::uint32_t size = top.size();
  std::vector<std::vector<Rank>> values(d_, std::vector<Rank>(size, 0));
  std::vector<Rank> conj(d_);
  for (Rank a = 0; a < size; ++a) {
    conj[0] = a;
    for (std::uint32_t k = 1; k < d_; ++k) conj[k] = top.frobenius(conj[k - 1]);
    for (std::uint32_t i = 0; i < d_; ++i) {
      Rank acc = 0;
      for (std::uint32_t j = 0; j < d_; ++j) {
        acc = top.add(acc, top.mul(omega_pow(static_cast<std::int64_t>(i) * j), conj[d_ - 1 - j]));
      }
      values[i][a] = acc;
    }
  }
  for (std::uint32_t i = 0; i < d_; ++i) {
    tables_.emplace_back(field(), std::move(values[i]));
  }
  for (std::uint32_t i = 0; i < d_; ++i) polys_.push_back(build_A(*this, i));
}

Rank LinearizedContext::omega_pow(std::int64_t e) const {
  return spec_.base()->pow(omega_, e);
}

const Poly& LinearizedContext::A(std::uint32_t i) const {
  if (i >= d_) throw RangeError("A_i index out of range");
  return polys_[i];
}

const MapTable& LinearizedContext::A_table(std::uint32_t i) const {
  if (i >= d_) throw RangeError("A_i index out of range");
  return tables_[i];
}

Poly build_A(const LinearizedContext& ctx, std::uint32_t i) {
  if (i >= ctx.d()) {
    throw RangeError("A_i needs 0 <= i < d, got i = " + std::to_string(i));
  }
  const std::uint64_t top_exp = ipow(ctx.q(), ctx.d() - 1);
  std::vector<Rank> coeffs(top_exp + 1, 0);
  for (std::uint32_t j = 0; j < ctx.d(); ++j) {
    coeffs[ipow(ctx.q(), ctx.d() - 1 - j)] = ctx.omega_pow(static_cast<std::int64_t>(i) * j);
  }
  return reduce_mod_qx(Poly(ctx.field(), std::move(coeffs)));
}

ImageLine image_line(const LinearizedContext& ctx, std::uint32_t i) {
  const auto& top = *ctx.field();
  const auto& base = *ctx.base();
  ImageLine line{i, image(ctx.A_table(i)), 0};
  const auto fail = [&](const std::string& what) {
    throw InternalError("image line B_" + std::to_string(i) + ": " + what);
  };

  if (line.elements.size() != ctx.q()) fail("size is not q");
  if (line.elements.front() != 0) fail("0 missing");
  line.representative = line.elements[1];

  if (i == 0) {
    for (Rank r = 0; r < ctx.q(); ++r) {
      if (line.elements[r] != r) fail("B_0 differs from F_q");
    }
  }

  RankSet scaled{0};
  for (Rank c = 1; c < base.size(); ++c) scaled.push_back(top.mul(line.representative, c));
  std::sort(scaled.begin(), scaled.end());
  if (scaled != line.elements) fail("not of the form {0} u y F_q^*");

  const Rank w_i = ctx.omega_pow(i);
  for (Rank a : line.elements) {
    if (a != 0 && top.frobenius(a) != top.mul(w_i, a)) fail("eigen-property a^q = w^i a fails");
  }
  return line;
}

AIdentityVerdict a_identities(const LinearizedContext& ctx, std::uint32_t i, std::uint32_t j,
                                  std::uint32_t m, const Poly& g) {
  const std::uint32_t d = ctx.d();
  if (i >= d || j >= d) throw RangeError("lemma identities need 0 <= i, j < d");
  if (m == 0) throw RangeError("m must be positive");
  require_same_field(g.field(), ctx.base(), "a_identities");

  const auto& top = *ctx.field();
  const auto& Ai = ctx.A_table(i);
  const auto& Aj = ctx.A_table(j);
  const auto& A0 = ctx.A_table(0);
  const std::uint32_t size = top.size();

  AIdentityVerdict v;
  v.composition_matches = (static_cast<std::uint64_t>(i) * m) % d == j % d;
  const Rank w_i = ctx.omega_pow(i);
  const Rank scale = top.mul(ctx.d_element(), ctx.omega_pow(-static_cast<std::int64_t>(j)));

  v.eigen = true;
  v.composition = true;
  bool annihilates = true;
  for (Rank a = 0; a < size; ++a) {
    const Rank y = Ai[a];
    if (top.frobenius(y) != top.mul(w_i, y)) v.eigen = false;

    const Rank ym = top.pow(y, m);
    const Rank expected = v.composition_matches ? top.mul(scale, ym) : 0;
    if (Aj[ym] != expected) v.composition = false;

    if (j >= 1 && Aj[evaluate(g, A0[a])] != 0) annihilates = false;
  }
  if (j >= 1) v.annihilation = annihilates;
  return v;
}

bool reconstruction_identity(const LinearizedContext& ctx) {
  const auto& top = *ctx.field();
  const Rank inv_d = top.inv(ctx.d_element());
  for (Rank a = 0; a < top.size(); ++a) {
    Rank acc = 0;
    for (std::uint32_t i = 0; i < ctx.d(); ++i) {
      acc = top.add(acc, top.mul(ctx.omega_pow(i), ctx.A_table(i)[a]));
    }
    if (top.mul(inv_d, acc) != a) return false;
  }
  return true;
}

}  // namespace ppinv
