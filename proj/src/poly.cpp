#include "ppinv/poly.hpp"

#include <algorithm>
#include <charconv>

namespace ppinv {

Poly::Poly(FieldPtr field, std::vector<Rank> coeffs)
    : field_(std::move(field)), coeffs_(std::move(coeffs)) {
  for (Rank c : coeffs_) field_->check(c);
  trim();
}

Poly Poly::monomial(FieldPtr field, Rank c, std::uint64_t e) {
  std::vector<Rank> coeffs;
  if (c != 0) {
    coeffs.assign(e + 1, 0);
    coeffs[e] = c;
  }
  return Poly(std::move(field), std::move(coeffs));
}

void Poly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

std::size_t Poly::term_count() const {
  return static_cast<std::size_t>(std::count_if(coeffs_.begin(), coeffs_.end(),
                                                [](Rank c) { return c != 0; }));
}

Poly operator+(const Poly& a, const Poly& b) {
  require_same_field(a.field_, b.field_, "poly add");
  std::vector<Rank> out(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.field_->add(a.coeff(i), b.coeff(i));
  return Poly(a.field_, std::move(out));
}

Poly Poly::operator-() const {
  std::vector<Rank> out(coeffs_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = field_->neg(coeffs_[i]);
  return Poly(field_, std::move(out));
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
  require_same_field(a.field_, b.field_, "poly mul");
  if (a.is_zero() || b.is_zero()) return Poly(a.field_);
  const auto& f = *a.field_;
  std::vector<Rank> out(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
      if (b.coeffs_[j] == 0) continue;
      out[i + j] = f.add(out[i + j], f.mul(a.coeffs_[i], b.coeffs_[j]));
    }
  }
  return Poly(a.field_, std::move(out));
}

Poly Poly::scaled(Rank c) const {
  std::vector<Rank> out(coeffs_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = field_->mul(coeffs_[i], c);
  return Poly(field_, std::move(out));
}

bool operator==(const Poly& a, const Poly& b) {
  return a.coeffs_ == b.coeffs_ && same_field(a.field_, b.field_);
}

// ---------------------------------------------------------------------------

MapTable::MapTable(FieldPtr f, std::vector<Rank> v) : field(std::move(f)), values(std::move(v)) {
  if (values.size() != field->size()) {
    throw RangeError("map table must have exactly one entry per field element");
  }
  for (Rank r : values) field->check(r);
}

MapTable MapTable::identity(FieldPtr f) {
  std::vector<Rank> v(f->size());
  for (Rank r = 0; r < v.size(); ++r) v[r] = r;
  return {std::move(f), std::move(v)};
}

MapTable MapTable::constant(FieldPtr f, Rank c) {
  std::vector<Rank> v(f->size(), c);
  return {std::move(f), std::move(v)};
}

bool operator==(const MapTable& a, const MapTable& b) {
  return a.values == b.values && same_field(a.field, b.field);
}

// ---------------------------------------------------------------------------

std::uint64_t fold_exponent(std::uint64_t e, std::uint64_t field_size) {
  if (e == 0) return 0;
  return (e - 1) % (field_size - 1) + 1;
}

Rank evaluate(const Poly& f, Rank a) {
  const auto& field = *f.field();
  field.check(a);
  const auto& c = f.coeffs();
  if (c.empty()) return 0;
  if (a == 0) return c[0];
  const std::uint64_t n = field.size() - 1;
  const std::uint64_t la = field.log(a);
  Rank acc = 0;
  std::uint64_t e = 0;  // la * i mod n
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] != 0) acc = field.add(acc, field.exp(field.log(c[i]) + e));
    e += la;
    if (e >= n) e %= n;
  }
  return acc;
}

FieldElement evaluate(const Poly& f, const FieldElement& a) {
  require_same_field(f.field(), a.field(), "evaluate");
  return {f.field(), evaluate(f, a.rank())};
}

Poly reduce_mod_qx(const Poly& f) {
  const std::uint64_t q = f.field()->size();
  if (f.coeffs().size() <= q) return f;
  const auto& field = *f.field();
  std::vector<Rank> out(q, 0);
  for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
    const Rank c = f.coeffs()[i];
    if (c == 0) continue;
    const auto e = fold_exponent(i, q);
    out[e] = field.add(out[e], c);
  }
  return Poly(f.field(), std::move(out));
}

Poly mul_mod_qx(const Poly& a, const Poly& b) {
  require_same_field(a.field(), b.field(), "mul_mod_qx");
  const auto& field = *a.field();
  const std::uint64_t q = field.size();
  const Poly ra = reduce_mod_qx(a);
  const Poly rb = reduce_mod_qx(b);
  if (ra.is_zero() || rb.is_zero()) return Poly(a.field());

  std::vector<std::pair<std::size_t, Rank>> bt;
  for (std::size_t j = 0; j < rb.coeffs().size(); ++j) {
    if (rb.coeffs()[j] != 0) bt.emplace_back(j, rb.coeffs()[j]);
  }
  std::vector<Rank> out(std::min<std::uint64_t>(q, ra.coeffs().size() + rb.coeffs().size() - 1), 0);
  for (std::size_t i = 0; i < ra.coeffs().size(); ++i) {
    const Rank ci = ra.coeffs()[i];
    if (ci == 0) continue;
    for (const auto& [j, cj] : bt) {
      const auto e = fold_exponent(i + j, q);
      out[e] = field.add(out[e], field.mul(ci, cj));
    }
  }
  return Poly(a.field(), std::move(out));
}

Poly pow_mod_qx(const Poly& f, std::uint64_t e) {
  Poly result = Poly::constant(f.field(), 1);
  Poly base = reduce_mod_qx(f);
  while (e > 0) {
    if (e & 1) result = mul_mod_qx(result, base);
    e >>= 1;
    if (e > 0) base = mul_mod_qx(base, base);
  }
  return result;
}

Poly frobenius_power(const Poly& f, std::uint32_t t) {
  const auto& field = *f.field();
  const std::uint64_t q = field.size();
  const std::uint64_t n = q - 1;
  std::uint64_t pt = 1 % n;  // p^t mod (Q-1)
  for (std::uint32_t i = 0; i < t; ++i) pt = pt * field.characteristic() % n;

  std::vector<Rank> out(q, 0);
  for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
    const Rank c = f.coeffs()[i];
    if (c == 0) continue;
    // p^t >= 1, so a zero residue means the full exponent is a multiple of n.
    const Rank cp = field.pow(c, static_cast<std::int64_t>(pt == 0 ? n : pt));
    std::uint64_t e = 0;
    if (i != 0) {
      const std::uint64_t r = (i % n) * pt % n;
      e = r == 0 ? n : r;
    }
    out[e] = field.add(out[e], cp);
  }
  return Poly(f.field(), std::move(out));
}

Poly compose(const Poly& f, const Poly& g) {
  require_same_field(f.field(), g.field(), "compose");
  const Poly rf = reduce_mod_qx(f);
  const Poly rg = reduce_mod_qx(g);
  if (rf.is_zero()) return rf;

  // Sparse outer polynomial: sum of c_i * g^i by repeated squaring.
  if (2 * rf.term_count() < rf.coeffs().size()) {
    Poly acc(f.field());
    for (std::size_t i = 0; i < rf.coeffs().size(); ++i) {
      if (rf.coeffs()[i] != 0) acc = acc + pow_mod_qx(rg, i).scaled(rf.coeffs()[i]);
    }
    return acc;
  }

  Poly acc(f.field());
  for (std::size_t i = rf.coeffs().size(); i-- > 0;) {
    acc = mul_mod_qx(acc, rg) + Poly::constant(f.field(), rf.coeffs()[i]);
  }
  return acc;
}

MapTable tabulate(const Poly& f) {
  const auto& field = f.field();
  std::vector<Rank> out(field->size());
  for (Rank a = 0; a < out.size(); ++a) out[a] = evaluate(f, a);
  return {field, std::move(out)};
}

Poly interpolate(const MapTable& t) {
  const auto& field = *t.field;
  const std::uint64_t q = field.size();
  const std::uint64_t n = q - 1;
  // (x - a)^{Q-1} = sum_{k=0}^{Q-1} a^{Q-1-k} x^k, so for k >= 1 the
  // coefficient of x^k is -sum_a t(a) a^{Q-1-k} (with 0^0 = 1), and the
  // constant term is t(0).
  std::vector<Rank> acc(q, 0);
  if (t[0] != 0) acc[q - 1] = t[0];
  for (Rank a = 1; a < q; ++a) {
    if (t[a] == 0) continue;
    const std::uint64_t la = field.log(a);
    std::uint64_t e = field.log(t[a]);
    for (std::uint64_t j = 0; j < n; ++j) {
      const std::uint64_t k = n - j;
      acc[k] = field.add(acc[k], field.exp(e));
      e += la;
      if (e >= n) e -= n;
    }
  }
  std::vector<Rank> out(q);
  out[0] = t[0];
  for (std::uint64_t k = 1; k < q; ++k) out[k] = field.neg(acc[k]);
  return Poly(t.field, std::move(out));
}

MapTable compose_tables(const MapTable& outer, const MapTable& inner) {
  require_same_field(outer.field, inner.field, "compose_tables");
  std::vector<Rank> out(inner.size());
  for (std::size_t a = 0; a < out.size(); ++a) out[a] = outer[inner[static_cast<Rank>(a)]];
  return {outer.field, std::move(out)};
}

bool same_map(const Poly& a, const Poly& b) { return tabulate(a) == tabulate(b); }

bool equal_reduced(const Poly& a, const Poly& b) { return reduce_mod_qx(a) == reduce_mod_qx(b); }

RankSet image(const MapTable& t, const RankSet& domain) {
  std::vector<char> hit(t.size(), 0);
  if (domain.empty()) {
    for (Rank v : t.values) hit[v] = 1;
  } else {
    for (Rank a : domain) hit[t[a]] = 1;
  }
  RankSet out;
  for (Rank r = 0; r < hit.size(); ++r) {
    if (hit[r]) out.push_back(r);
  }
  return out;
}

Poly parse_poly(FieldPtr field, std::string_view csv) {
  if (csv.empty()) throw ParseError("empty coefficient list");
  std::vector<Rank> coeffs;
  std::size_t start = 0;
  while (start <= csv.size()) {
    const auto comma = csv.find(',', start);
    auto tok = csv.substr(start, comma == std::string_view::npos ? csv.npos : comma - start);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size()) {
      throw ParseError("bad polynomial coefficient '" + std::string(tok) + "'");
    }
    if (v >= field->size()) {
      throw ParseError("coefficient rank " + std::to_string(v) + " outside field of size " +
                       std::to_string(field->size()));
    }
    coeffs.push_back(static_cast<Rank>(v));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return Poly(std::move(field), std::move(coeffs));
}

std::string to_csv(const std::vector<Rank>& ranks) {
  std::string out;
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(ranks[i]);
  }
  return out;
}

std::string to_csv(const Poly& f) { return f.is_zero() ? "0" : to_csv(f.coeffs()); }

}  // namespace ppinv
