#include "ppinv/field.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>

namespace ppinv {

namespace {

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t f = 2; f * f <= n; ++f) {
    if (n % f == 0) {
      out.push_back(f);
      while (n % f == 0) n /= f;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Remainder of `a` modulo the monic polynomial `m`, both over `f`.
std::vector<Rank> poly_rem(const Field& f, std::vector<Rank> a, std::span<const Rank> m) {
  const std::size_t dm = m.size() - 1;
  while (a.size() > dm) {
    const Rank lead = a.back();
    if (lead != 0) {
      const std::size_t shift = a.size() - 1 - dm;
      for (std::size_t j = 0; j < dm; ++j) {
        a[shift + j] = f.sub(a[shift + j], f.mul(lead, m[j]));
      }
    }
    a.pop_back();
  }
  return a;
}

std::uint64_t checked_power(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t out = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    out *= base;
    if (out > Field::kMaxSize) {
      throw InvalidField("field size exceeds " + std::to_string(Field::kMaxSize));
    }
  }
  return out;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t f = 2; f * f <= n; ++f) {
    if (n % f == 0) return false;
  }
  return true;
}

std::shared_ptr<const Field> Field::prime(std::uint32_t p) {
  if (!is_prime(p)) throw InvalidField(std::to_string(p) + " is not prime");
  if (p > kMaxSize) throw InvalidField("field size exceeds " + std::to_string(kMaxSize));
  std::shared_ptr<Field> f(new Field());
  f->p_ = p;
  f->size_ = p;
  f->modulus_ = {0, 1};
  f->build_log_tables();
  return f;
}

std::shared_ptr<const Field> Field::extension(std::shared_ptr<const Field> sub,
                                              std::vector<Rank> modulus) {
  if (!sub) throw InvalidField("extension of a null field");
  if (modulus.size() < 2) throw InvalidField("modulus must have degree >= 1");
  for (Rank c : modulus) {
    if (!sub->contains(c)) throw InvalidField("modulus coefficient out of range");
  }
  if (modulus.back() != 1) throw InvalidField("modulus must be monic");
  const auto n = static_cast<std::uint32_t>(modulus.size() - 1);
  const std::uint64_t size = checked_power(sub->size(), n);
  if (!is_irreducible(*sub, modulus)) throw InvalidField("modulus is reducible");

  std::shared_ptr<Field> f(new Field());
  f->p_ = sub->characteristic();
  f->degree_ = n;
  f->digits_ = sub->absolute_degree() * n;
  f->size_ = static_cast<std::uint32_t>(size);
  f->sub_ = std::move(sub);
  f->modulus_ = std::move(modulus);
  f->build_log_tables();
  return f;
}

void Field::check(Rank a) const {
  if (!contains(a)) {
    throw RangeError("rank " + std::to_string(a) + " outside field of size " +
                     std::to_string(size_));
  }
}

Rank Field::add(Rank a, Rank b) const {
  if (p_ == 2) return a ^ b;
  Rank out = 0;
  Rank place = 1;
  for (std::uint32_t i = 0; i < digits_; ++i) {
    out += ((a % p_ + b % p_) % p_) * place;
    a /= p_;
    b /= p_;
    place *= p_;
  }
  return out;
}

Rank Field::neg(Rank a) const {
  if (p_ == 2) return a;
  Rank out = 0;
  Rank place = 1;
  for (std::uint32_t i = 0; i < digits_; ++i) {
    out += ((p_ - a % p_) % p_) * place;
    a /= p_;
    place *= p_;
  }
  return out;
}

Rank Field::sub(Rank a, Rank b) const { return add(a, neg(b)); }

Rank Field::mul(Rank a, Rank b) const {
  if (a == 0 || b == 0) return 0;
  if (sub_ == nullptr) {
    return static_cast<Rank>(static_cast<std::uint64_t>(a) * b % p_);
  }
  std::uint64_t e = static_cast<std::uint64_t>(log_[a]) + log_[b];
  if (e >= size_ - 1) e -= size_ - 1;
  return exp_[e];
}

Rank Field::inv(Rank a) const {
  if (a == 0) throw DivisionByZero();
  const std::uint32_t l = log_[a];
  return exp_[l == 0 ? 0 : size_ - 1 - l];
}

Rank Field::pow(Rank a, std::int64_t e) const {
  if (e < 0) {
    a = inv(a);
    e = -e;
  }
  if (e == 0) return 1;
  if (a == 0) return 0;
  const std::uint64_t order = size_ - 1;
  const std::uint64_t r = static_cast<std::uint64_t>(e) % order;
  return exp_[log_[a] * r % order];
}

Rank Field::from_integer(std::int64_t n) const {
  std::int64_t r = n % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return static_cast<Rank>(r);
}

std::vector<Rank> Field::coeffs(Rank a) const {
  check(a);
  if (sub_ == nullptr) return {a};
  std::vector<Rank> out(degree_);
  const Rank base = sub_->size();
  for (auto& c : out) {
    c = a % base;
    a /= base;
  }
  return out;
}

Rank Field::from_coeffs(std::span<const Rank> coeffs) const {
  if (sub_ == nullptr) {
    if (coeffs.size() != 1 || coeffs[0] >= p_) throw RangeError("bad prime-field coefficient");
    return coeffs[0];
  }
  if (coeffs.size() != degree_) throw RangeError("coefficient count must equal field degree");
  std::uint64_t out = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    sub_->check(coeffs[i]);
    out = out * sub_->size() + coeffs[i];
  }
  return static_cast<Rank>(out);
}

Rank Field::frobenius(Rank a) const {
  if (sub_ == nullptr) throw LevelMismatch("frobenius needs a subfield; use pow(a, p) on F_p");
  return pow(a, sub_->size());
}

Rank Field::relative_trace(Rank a) const {
  if (sub_ == nullptr) throw LevelMismatch("relative trace needs a subfield");
  Rank acc = 0;
  Rank conj = a;
  for (std::uint32_t i = 0; i < degree_; ++i) {
    acc = add(acc, conj);
    conj = frobenius(conj);
  }
  return acc;
}

std::uint32_t Field::log(Rank a) const {
  if (a == 0) throw DivisionByZero();
  check(a);
  return log_[a];
}

std::uint64_t Field::multiplicative_order(Rank a) const {
  const std::uint64_t n = size_ - 1;
  return n / std::gcd<std::uint64_t>(log(a), n);
}

Rank Field::primitive_root_of_unity(std::uint64_t d) const {
  if (d == 0 || (size_ - 1) % d != 0) {
    throw NoSuchRoot("no primitive " + std::to_string(d) + "-th root of unity in field of size " +
                     std::to_string(size_));
  }
  for (Rank a = 1; a < size_; ++a) {
    if (multiplicative_order(a) == d) return a;
  }
  throw InternalError("cyclic group lacks an element of order dividing its size");
}

bool operator==(const Field& a, const Field& b) {
  if (&a == &b) return true;
  if (a.size_ != b.size_ || a.p_ != b.p_ || a.modulus_ != b.modulus_) return false;
  if ((a.sub_ == nullptr) != (b.sub_ == nullptr)) return false;
  return a.sub_ == nullptr || *a.sub_ == *b.sub_;
}

Rank Field::slow_mul(Rank a, Rank b) const {
  if (sub_ == nullptr) return static_cast<Rank>(static_cast<std::uint64_t>(a) * b % p_);
  const auto ca = coeffs(a);
  const auto cb = coeffs(b);
  std::vector<Rank> prod(2 * degree_ - 1, 0);
  for (std::size_t i = 0; i < ca.size(); ++i) {
    if (ca[i] == 0) continue;
    for (std::size_t j = 0; j < cb.size(); ++j) {
      prod[i + j] = sub_->add(prod[i + j], sub_->mul(ca[i], cb[j]));
    }
  }
  auto rem = poly_rem(*sub_, std::move(prod), modulus_);
  rem.resize(degree_, 0);
  return from_coeffs(rem);
}

Rank Field::slow_pow(Rank a, std::uint64_t e) const {
  Rank result = 1;
  while (e > 0) {
    if (e & 1) result = slow_mul(result, a);
    a = slow_mul(a, a);
    e >>= 1;
  }
  return result;
}

void Field::build_log_tables() {
  const std::uint64_t n = size_ - 1;
  const auto factors = prime_factors(n);
  Rank g = 1;
  for (; g < size_; ++g) {
    bool ok = true;
    for (auto f : factors) {
      if (slow_pow(g, n / f) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) break;
  }
  if (g == size_) throw InvalidField("no multiplicative generator; modulus not irreducible");
  generator_ = g;
  exp_.assign(n, 0);
  log_.assign(size_, 0);
  Rank cur = 1;
  for (std::uint64_t i = 0; i < n; ++i) {
    exp_[i] = cur;
    log_[cur] = static_cast<std::uint32_t>(i);
    cur = slow_mul(cur, g);
  }
  if (cur != 1) throw InternalError("generator cycle did not close");
}

bool same_field(const FieldPtr& a, const FieldPtr& b) {
  return a == b || (a && b && *a == *b);
}

void require_same_field(const FieldPtr& a, const FieldPtr& b, std::string_view where) {
  if (!same_field(a, b)) {
    throw LevelMismatch(std::string(where) + ": operands live in different fields");
  }
}

bool is_irreducible(const Field& sub, std::span<const Rank> monic) {
  if (monic.size() < 2 || monic.back() != 1) return false;
  const std::size_t n = monic.size() - 1;
  if (n == 1) return true;
  const std::vector<Rank> target(monic.begin(), monic.end());
  for (std::size_t dd = 1; dd <= n / 2; ++dd) {
    const std::uint64_t count = checked_power(sub.size(), dd);
    std::vector<Rank> divisor(dd + 1, 0);
    divisor[dd] = 1;
    for (std::uint64_t code = 0; code < count; ++code) {
      std::uint64_t c = code;
      for (std::size_t i = 0; i < dd; ++i) {
        divisor[i] = static_cast<Rank>(c % sub.size());
        c /= sub.size();
      }
      const auto rem = poly_rem(sub, target, divisor);
      if (std::all_of(rem.begin(), rem.end(), [](Rank r) { return r == 0; })) return false;
    }
  }
  return true;
}

std::vector<Rank> smallest_irreducible(const Field& sub, std::uint32_t degree) {
  if (degree == 0) throw RangeError("irreducible degree must be >= 1");
  const std::uint64_t count = checked_power(sub.size(), degree);
  std::vector<Rank> m(degree + 1, 0);
  m[degree] = 1;
  for (std::uint64_t code = 0; code < count; ++code) {
    std::uint64_t c = code;
    for (std::uint32_t i = 0; i < degree; ++i) {
      m[i] = static_cast<Rank>(c % sub.size());
      c /= sub.size();
    }
    if (is_irreducible(sub, m)) return m;
  }
  throw InternalError("no irreducible polynomial found");
}

// ---------------------------------------------------------------------------

FieldElement::FieldElement(FieldPtr field, Rank rank) : field_(std::move(field)), rank_(rank) {
  field_->check(rank_);
}

FieldElement FieldElement::inv() const { return {field_, field_->inv(rank_)}; }

FieldElement FieldElement::pow(std::int64_t e) const { return {field_, field_->pow(rank_, e)}; }

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  require_same_field(a.field_, b.field_, "add");
  return {a.field_, a.field_->add(a.rank_, b.rank_)};
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) {
  require_same_field(a.field_, b.field_, "sub");
  return {a.field_, a.field_->sub(a.rank_, b.rank_)};
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  require_same_field(a.field_, b.field_, "mul");
  return {a.field_, a.field_->mul(a.rank_, b.rank_)};
}

FieldElement operator/(const FieldElement& a, const FieldElement& b) {
  require_same_field(a.field_, b.field_, "div");
  return {a.field_, a.field_->div(a.rank_, b.rank_)};
}

FieldElement FieldElement::operator-() const { return {field_, field_->neg(rank_)}; }

bool operator==(const FieldElement& a, const FieldElement& b) {
  return a.rank_ == b.rank_ && same_field(a.field_, b.field_);
}

// ---------------------------------------------------------------------------

namespace {

std::uint64_t parse_uint(std::string_view s) {
  std::uint64_t v = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (s.empty() || ec != std::errc() || ptr != end) {
    throw ParseError("expected a non-negative integer, got '" + std::string(s) + "'");
  }
  return v;
}

std::vector<Rank> parse_rank_list(std::string_view s) {
  std::vector<Rank> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = s.find(',', start);
    const auto tok = s.substr(start, comma == std::string_view::npos ? s.npos : comma - start);
    const auto v = parse_uint(tok);
    if (v > 0xffffffffu) throw ParseError("value out of range");
    out.push_back(static_cast<Rank>(v));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string join(const std::vector<Rank>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  return out;
}

}  // namespace

FieldSpec FieldSpec::make(std::uint32_t p, std::vector<Rank> base_irreducible,
                          std::optional<std::vector<Rank>> top_irreducible) {
  FieldSpec spec;
  spec.prime_ = Field::prime(p);
  if (base_irreducible.size() > 2) {
    spec.base_ = Field::extension(spec.prime_, base_irreducible);
  } else {
    if (base_irreducible.size() == 1) throw InvalidField("base irreducible must have degree >= 1");
    if (base_irreducible.size() == 2) {
      if (base_irreducible[1] != 1) throw InvalidField("base irreducible must be monic");
      if (base_irreducible[0] >= p) throw InvalidField("base irreducible coefficient out of range");
    }
    spec.base_ = spec.prime_;
  }
  spec.base_irreducible_ = std::move(base_irreducible);
  if (top_irreducible) {
    if (top_irreducible->size() < 3) throw InvalidField("top extension degree must be >= 2");
    spec.top_ = Field::extension(spec.base_, std::move(*top_irreducible));
  }
  return spec;
}

FieldSpec FieldSpec::smallest(std::uint32_t p, std::uint32_t k, std::uint32_t e) {
  auto prime = Field::prime(p);
  std::vector<Rank> base_irr;
  FieldPtr base = prime;
  if (k > 1) {
    base_irr = smallest_irreducible(*prime, k);
    base = Field::extension(prime, base_irr);
  } else if (k == 0) {
    throw InvalidField("base degree must be >= 1");
  }
  std::optional<std::vector<Rank>> top;
  if (e > 1) top = smallest_irreducible(*base, e);
  return make(p, std::move(base_irr), std::move(top));
}

FieldSpec FieldSpec::for_order(std::uint64_t q, std::uint32_t e) {
  if (q < 2) throw InvalidField("field order must be >= 2");
  std::uint64_t p = 2;
  while (q % p != 0) ++p;
  std::uint32_t k = 0;
  std::uint64_t rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++k;
  }
  if (rest != 1) throw InvalidField(std::to_string(q) + " is not a prime power");
  return smallest(static_cast<std::uint32_t>(p), k, e);
}

FieldSpec FieldSpec::parse(std::string_view text) {
  std::string_view head = text;
  std::string_view tail;
  if (const auto bar = text.find('|'); bar != std::string_view::npos) {
    head = text.substr(0, bar);
    tail = text.substr(bar + 1);
    if (tail.empty()) throw ParseError("empty top extension in field spec");
  }

  std::uint64_t p = 0;
  std::vector<Rank> base_irr;
  if (const auto caret = head.find('^'); caret != std::string_view::npos) {
    p = parse_uint(head.substr(0, caret));
    const auto colon = head.find(':', caret);
    if (colon == std::string_view::npos) throw ParseError("expected ':' after p^k");
    const auto k = parse_uint(head.substr(caret + 1, colon - caret - 1));
    base_irr = parse_rank_list(head.substr(colon + 1));
    if (k == 0) throw ParseError("base degree must be >= 1");
    if (base_irr.size() != k + 1) {
      throw ParseError("base irreducible must have k+1 coefficients");
    }
  } else {
    p = parse_uint(head);
  }
  if (p > Field::kMaxSize) throw InvalidField("characteristic too large");

  std::optional<std::vector<Rank>> top;
  if (!tail.empty()) {
    const auto colon = tail.find(':');
    if (colon == std::string_view::npos) throw ParseError("expected ':' after e");
    const auto e = parse_uint(tail.substr(0, colon));
    top = parse_rank_list(tail.substr(colon + 1));
    if (top->size() != e + 1) throw ParseError("top irreducible must have e+1 coefficients");
  }
  return make(static_cast<std::uint32_t>(p), std::move(base_irr), std::move(top));
}

std::string FieldSpec::to_string() const {
  std::string out = std::to_string(p());
  if (!base_irreducible_.empty()) {
    out += "^" + std::to_string(base_irreducible_.size() - 1) + ":" + join(base_irreducible_);
  }
  if (top_) out += "|" + std::to_string(top_->degree()) + ":" + join(top_->modulus());
  return out;
}

const FieldPtr& FieldSpec::level(Level l) const {
  switch (l) {
    case Level::prime:
      return prime_;
    case Level::base:
      return base_;
    case Level::top:
      if (!top_) throw LevelMismatch("no top extension configured");
      return top_;
  }
  throw RangeError("unknown level");
}

FieldElement FieldSpec::unrank(Level l, std::uint64_t n) const {
  const auto& f = level(l);
  if (n >= f->size()) {
    throw RangeError("rank " + std::to_string(n) + " out of range for size " +
                     std::to_string(f->size()));
  }
  return {f, static_cast<Rank>(n)};
}

std::vector<FieldElement> FieldSpec::enumerate(Level l) const {
  const auto& f = level(l);
  std::vector<FieldElement> out;
  out.reserve(f->size());
  for (Rank r = 0; r < f->size(); ++r) out.emplace_back(f, r);
  return out;
}

FieldElement FieldSpec::embed(const FieldElement& a) const {
  if (!top_) throw LevelMismatch("no top extension configured");
  require_same_field(a.field(), base_, "embed");
  return {top_, a.rank()};
}

FieldElement FieldSpec::frobenius(const FieldElement& a) const {
  if (!top_ || !same_field(a.field(), top_)) {
    throw LevelMismatch("frobenius applies to top-extension elements; use pow(a, p) on F_q");
  }
  return {top_, top_->frobenius(a.rank())};
}

FieldElement FieldSpec::rel_trace(const FieldElement& a) const {
  if (!top_) throw LevelMismatch("no top extension configured");
  require_same_field(a.field(), top_, "rel_trace");
  return {top_, top_->relative_trace(a.rank())};
}

FieldElement FieldSpec::primitive_root_of_unity(std::uint64_t d) const {
  return {base_, base_->primitive_root_of_unity(d)};
}

}  // namespace ppinv
