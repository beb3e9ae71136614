#include "ppinv/families.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "ppinv/oracle.hpp"

namespace ppinv {

namespace {

struct ExtGcd {
  std::int64_t g, x, y;  // x*a + y*b = g
};

ExtGcd ext_gcd(std::int64_t a, std::int64_t b) {
  std::int64_t old_r = a, r = b;
  std::int64_t old_x = 1, x = 0;
  std::int64_t old_y = 0, y = 1;
  while (r != 0) {
    const std::int64_t quot = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - quot * r);
    std::tie(old_x, x) = std::make_pair(x, old_x - quot * x);
    std::tie(old_y, y) = std::make_pair(y, old_y - quot * y);
  }
  if (old_r < 0) return {-old_r, -old_x, -old_y};
  return {old_r, old_x, old_y};
}

RankSet nonzero_ranks(const FieldPtr& f) {
  RankSet out(f->size() - 1);
  std::iota(out.begin(), out.end(), Rank{1});
  return out;
}

// Lift a polynomial over F_q into F_{q^e}; ranks embed unchanged.
Poly lift(const Poly& g, const FieldPtr& top) { return Poly(top, g.coeffs()); }

MapTable table_from(const FieldPtr& f, auto&& fn) {
  std::vector<Rank> v(f->size());
  for (Rank a = 0; a < v.size(); ++a) v[a] = fn(a);
  return {f, std::move(v)};
}

void require_conditions(const VerificationReport& rep) {
  for (const auto& c : rep.conditions) {
    if (!c.holds) {
      throw NotAPermutation(rep.family + ": condition " + c.name + " fails");
    }
  }
}

}  // namespace

bool VerificationReport::all_hold() const {
  return std::all_of(conditions.begin(), conditions.end(), [](const auto& c) { return c.holds; });
}

bool VerificationReport::holds(std::string_view name) const {
  for (const auto& c : conditions) {
    if (c.name == name) return c.holds;
  }
  throw RangeError("no condition named " + std::string(name));
}

BezoutPair bezout(std::int64_t r, std::int64_t s) {
  if (r < 1 || s < 1) throw NoBezout("bezout needs positive r and s");
  const auto [g, x, y] = ext_gcd(s, r);
  if (g != 1) {
    throw NoBezout("gcd(" + std::to_string(r) + ", " + std::to_string(s) + ") = " +
                   std::to_string(g));
  }
  std::int64_t a = x % r;
  if (a < 0) a += r;
  const std::int64_t b = (1 - a * s) / r;
  return {a, b};
}

std::optional<std::uint64_t> mod_inverse(std::uint64_t m, std::uint64_t modulus) {
  if (modulus == 0) return std::nullopt;
  if (modulus == 1) return 1;
  const auto [g, x, y] = ext_gcd(static_cast<std::int64_t>(m % modulus),
                                 static_cast<std::int64_t>(modulus));
  (void)y;
  if (g != 1) return std::nullopt;
  std::int64_t r = x % static_cast<std::int64_t>(modulus);
  if (r <= 0) r += static_cast<std::int64_t>(modulus);
  return static_cast<std::uint64_t>(r);
}

Poly oracle_inverse_poly(const Poly& g) { return interpolate(brute_inverse(tabulate(g))); }

std::optional<Rank> first_inverse_failure(const MapTable& f, const MapTable& g,
                                          const RankSet& domain) {
  require_same_field(f.field, g.field, "first_inverse_failure");
  const auto bad = [&](Rank a) { return g[f[a]] != a || f[g[a]] != a; };
  if (domain.empty()) {
    for (Rank a = 0; a < f.size(); ++a) {
      if (bad(a)) return a;
    }
  } else {
    for (Rank a : domain) {
      if (bad(a)) return a;
    }
  }
  return std::nullopt;
}

// -- cyclotomic ---------------------------------------------------------------

CyclotomicParams::CyclotomicParams(FieldPtr field_, std::uint32_t r_, std::uint32_t ell_, Poly h_)
    : field(std::move(field_)), r(r_), ell(ell_), h(std::move(h_)) {
  if (r < 1) throw PreconditionFailed("r", "r must be >= 1");
  if (ell < 1 || (field->size() - 1) % ell != 0) {
    throw PreconditionFailed("ell", "ell must divide q - 1");
  }
  require_same_field(field, h.field(), "CyclotomicParams");
}

RankSet CyclotomicParams::mu() const {
  RankSet out;
  for (Rank a = 1; a < field->size(); ++a) {
    if (field->pow(a, ell) == 1) out.push_back(a);
  }
  return out;
}

Rank CyclotomicParams::g(Rank a) const {
  return field->mul(field->pow(a, r), field->pow(evaluate(h, a), s()));
}

Poly cyclotomic_build(const CyclotomicParams& p) {
  std::vector<Rank> coeffs;
  const std::uint64_t s = p.s();
  for (std::size_t k = 0; k < p.h.coeffs().size(); ++k) {
    const Rank c = p.h.coeffs()[k];
    if (c == 0) continue;
    const std::uint64_t e = p.r + k * s;
    if (coeffs.size() <= e) coeffs.resize(e + 1, 0);
    coeffs[e] = p.field->add(coeffs[e], c);
  }
  return reduce_mod_qx(Poly(p.field, std::move(coeffs)));
}

VerificationReport cyclotomic_check(const CyclotomicParams& p) {
  VerificationReport rep{"cyclotomic", {}, {}};
  rep.conditions.push_back({"gcd_rs", std::gcd(p.r, p.s()) == 1});

  const RankSet mu = p.mu();
  std::set<Rank> hit;
  bool into = true;
  for (Rank a : mu) {
    const Rank v = p.g(a);
    if (!std::binary_search(mu.begin(), mu.end(), v)) into = false;
    hit.insert(v);
  }
  rep.conditions.push_back({"g_permutes_mu", into && hit.size() == mu.size()});
  return rep;
}

Poly cyclotomic_g_inverse(const CyclotomicParams& p) {
  require_conditions(cyclotomic_check(p));
  std::vector<Rank> t(p.field->size(), 0);
  for (Rank a : p.mu()) t[p.g(a)] = a;
  return interpolate(MapTable(p.field, std::move(t)));
}

Poly cyclotomic_inverse(const CyclotomicParams& p) {
  require_conditions(cyclotomic_check(p));
  const auto& F = *p.field;
  const auto [a, b] = bezout(p.r, p.s());
  std::vector<Rank> g_inv(F.size(), 0);
  for (Rank w : p.mu()) g_inv[p.g(w)] = w;

  std::vector<Rank> out(F.size(), 0);
  for (Rank x = 1; x < F.size(); ++x) {
    const Rank w = g_inv[F.pow(x, p.s())];
    const Rank hw = evaluate(p.h, w);
    out[x] = F.mul(F.mul(F.pow(w, a), F.pow(x, b)), F.pow(hw, -b));
  }
  return interpolate(MapTable(p.field, std::move(out)));
}

InverseDiagram cyclotomic_diagram(const CyclotomicParams& p) {
  require_conditions(cyclotomic_check(p));
  const auto field = p.field;
  const Poly xs = Poly::monomial(field, 1, p.s());
  const Poly f = cyclotomic_build(p);
  const auto [a, b] = bezout(p.r, p.s());
  const Poly h = p.h;

  std::vector<DiagramLeg> legs;
  legs.emplace_back(tabulate(compose(cyclotomic_g_inverse(p), xs)), tabulate(xs));
  legs.emplace_back(MapTable::identity(field), tabulate(f));
  Recombinator F(field, 2, [field, h, a = a, b = b](std::span<const Rank> y) -> Rank {
    // y2 = f(x) vanishes exactly at x = 0.
    if (y[1] == 0) return 0;
    const Rank hy = evaluate(h, y[0]);
    if (hy == 0) return 0;
    return field->mul(field->pow(y[0], a), field->pow(field->div(y[1], hy), b));
  });
  return {std::move(legs), std::move(F), {}};
}

// -- twist --------------------------------------------------------------------

RankSet TwistParams::carrier() const { return nonzero_ranks(field); }

RankSet TwistParams::S() const { return image(lambda, carrier()); }

RankSet TwistParams::S_bar() const { return image(lambda_bar, carrier()); }

MapTable twist_build(const TwistParams& p) {
  return table_from(p.field, [&](Rank a) -> Rank {
    if (a == 0) return 0;
    return p.field->mul(p.f1[a], p.h[p.lambda[a]]);
  });
}

VerificationReport twist_check(const TwistParams& p) {
  for (const auto* t : {&p.f1, &p.h, &p.lambda, &p.lambda_bar, &p.g}) {
    require_same_field(p.field, t->field, "TwistParams");
  }
  VerificationReport rep{"twist", {}, {}};
  const RankSet carrier = p.carrier();
  const RankSet s = p.S();
  const RankSet s_bar = p.S_bar();
  const MapTable f = twist_build(p);

  rep.conditions.push_back({"lambda_into_units", s.front() != 0 && s_bar.front() != 0});
  rep.conditions.push_back({"set_sizes", s.size() == s_bar.size()});
  rep.conditions.push_back(
      {"h_nonzero", std::all_of(s.begin(), s.end(), [&](Rank x) { return p.h[x] != 0; })});
  rep.conditions.push_back(
      {"commutes", std::all_of(carrier.begin(), carrier.end(),
                               [&](Rank a) { return p.lambda_bar[f[a]] == p.g[p.lambda[a]]; })});
  std::set<Rank> g_image;
  bool g_into = true;
  for (Rank x : s) {
    g_image.insert(p.g[x]);
    if (!std::binary_search(s_bar.begin(), s_bar.end(), p.g[x])) g_into = false;
  }
  rep.conditions.push_back(
      {"g_bijective", g_into && g_image.size() == s.size() && s.size() == s_bar.size()});
  rep.conditions.push_back({"f1_permutes", permutes(p.f1, carrier)});
  rep.conditions.push_back({"f_permutes", permutes(f, carrier)});
  return rep;
}

namespace {

struct TwistPieces {
  MapTable f1_inv;
  std::vector<Rank> g_inv;
};

TwistPieces twist_pieces(const TwistParams& p) {
  const auto rep = twist_check(p);
  for (const auto& c : rep.conditions) {
    if (!c.holds) throw PreconditionFailed(c.name, "twist precondition fails");
  }
  std::vector<Rank> g_inv(p.field->size(), 0);
  for (Rank x : p.S()) g_inv[p.g[x]] = x;
  return {brute_inverse_on(p.f1, p.carrier()), std::move(g_inv)};
}

}  // namespace

MapTable twist_inverse(const TwistParams& p) {
  const auto pieces = twist_pieces(p);
  const auto& F = *p.field;
  return table_from(p.field, [&](Rank a) -> Rank {
    if (a == 0) return 0;
    const Rank denom = p.h[pieces.g_inv[p.lambda_bar[a]]];
    return pieces.f1_inv[F.div(a, denom)];
  });
}

InverseDiagram twist_diagram(const TwistParams& p) {
  auto pieces = twist_pieces(p);
  const auto field = p.field;
  const MapTable psi1 = table_from(field, [&](Rank a) -> Rank {
    return a == 0 ? 0 : pieces.g_inv[p.lambda_bar[a]];
  });
  std::vector<DiagramLeg> legs;
  legs.emplace_back(psi1, p.lambda);
  legs.emplace_back(MapTable::identity(field), twist_build(p));
  Recombinator F(field, 2,
                 [field, h = p.h, f1_inv = std::move(pieces.f1_inv)](std::span<const Rank> y) -> Rank {
                   const Rank hy = h[y[0]];
                   if (hy == 0) return 0;
                   return f1_inv[field->div(y[1], hy)];
                 });
  return {std::move(legs), std::move(F), p.carrier()};
}

// -- linearized ---------------------------------------------------------------

LinearizedFamilyParams::LinearizedFamilyParams(std::shared_ptr<const LinearizedContext> ctx_,
                                               Poly g_, std::vector<Rank> u_,
                                               std::vector<std::uint64_t> m_)
    : ctx(std::move(ctx_)), g(std::move(g_)), u(std::move(u_)), m(std::move(m_)) {
  const std::size_t want = ctx->d() - 1;
  if (u.size() != want || m.size() != want) {
    throw PreconditionFailed("arity", "u and m need d - 1 = " + std::to_string(want) + " entries");
  }
  for (Rank x : u) ctx->base()->check(x);
  for (auto mi : m) {
    if (mi == 0) throw PreconditionFailed("m_positive", "every m_i must be positive");
  }
  require_same_field(g.field(), ctx->base(), "LinearizedFamilyParams");
}

std::optional<std::vector<std::uint64_t>> LinearizedFamilyParams::r() const {
  const std::uint64_t modulus = static_cast<std::uint64_t>(ctx->d()) * (ctx->q() - 1);
  std::vector<std::uint64_t> out;
  for (auto mi : m) {
    const auto ri = mod_inverse(mi, modulus);
    if (!ri) return std::nullopt;
    out.push_back(*ri);
  }
  return out;
}

std::uint32_t LinearizedFamilyParams::target_index(std::uint32_t i) const {
  return static_cast<std::uint32_t>((i * (m.at(i - 1) % ctx->d())) % ctx->d());
}

Poly linearized_build(const LinearizedFamilyParams& p) {
  const auto& ctx = *p.ctx;
  Poly f = compose(lift(p.g, ctx.field()), ctx.A(0));
  for (std::uint32_t i = 1; i < ctx.d(); ++i) {
    const Rank ui = p.u[i - 1];
    if (ui == 0) continue;
    f = f + pow_mod_qx(ctx.A(i), p.m[i - 1]).scaled(ui);
  }
  return f;
}

VerificationReport linearized_check(const LinearizedFamilyParams& p) {
  const auto& ctx = *p.ctx;
  VerificationReport rep{"linearized", {}, {}};

  std::set<std::uint32_t> residues{0};
  for (std::uint32_t i = 1; i < ctx.d(); ++i) {
    if (p.u[i - 1] != 0) residues.insert(p.target_index(i));
  }
  rep.conditions.push_back({"complete_residue", residues.size() == ctx.d()});

  rep.conditions.push_back(
      {"u_product_nonzero", std::all_of(p.u.begin(), p.u.end(), [](Rank x) { return x != 0; })});

  const std::uint64_t q1 = ctx.q() - 1;
  rep.conditions.push_back({"gcd_m_q1", std::all_of(p.m.begin(), p.m.end(), [&](auto mi) {
                              return std::gcd(mi, q1) == 1;
                            })});
  rep.conditions.push_back({"g_permutes", is_permutation(tabulate(p.g))});
  return rep;
}

namespace {

struct LinearizedPieces {
  Rank inv_d;
  Poly g_inv;  // over F_q
  std::vector<std::uint64_t> r;
  // (j, coefficient c^{-r_i}) for i = 1..d-1, c = d u_i w^{-j}.
  std::vector<std::pair<std::uint32_t, Rank>> legs;
};

LinearizedPieces linearized_pieces(const LinearizedFamilyParams& p) {
  require_conditions(linearized_check(p));
  const auto& ctx = *p.ctx;
  const auto& top = *ctx.field();
  LinearizedPieces out{top.inv(ctx.d_element()), oracle_inverse_poly(p.g), *p.r(), {}};
  for (std::uint32_t i = 1; i < ctx.d(); ++i) {
    const std::uint32_t j = p.target_index(i);
    const Rank c =
        top.mul(top.mul(ctx.d_element(), p.u[i - 1]), ctx.omega_pow(-static_cast<std::int64_t>(j)));
    out.legs.emplace_back(j, top.pow(c, -static_cast<std::int64_t>(out.r[i - 1])));
  }
  return out;
}

}  // namespace

Poly linearized_inverse(const LinearizedFamilyParams& p) {
  const auto& ctx = *p.ctx;
  const auto pieces = linearized_pieces(p);
  Poly acc = compose(lift(pieces.g_inv, ctx.field()), ctx.A(0).scaled(pieces.inv_d));
  for (std::uint32_t i = 1; i < ctx.d(); ++i) {
    const auto [j, c] = pieces.legs[i - 1];
    const Rank coeff = ctx.field()->mul(ctx.omega_pow(i), c);
    acc = acc + pow_mod_qx(ctx.A(j), pieces.r[i - 1]).scaled(coeff);
  }
  return acc.scaled(pieces.inv_d);
}

InverseDiagram linearized_diagram(const LinearizedFamilyParams& p) {
  const auto& ctx = *p.ctx;
  const auto& top = ctx.field();
  const auto pieces = linearized_pieces(p);
  const MapTable g_inv = tabulate(pieces.g_inv);
  const MapTable& A0 = ctx.A_table(0);

  std::vector<DiagramLeg> legs;
  legs.emplace_back(table_from(top, [&](Rank a) { return g_inv[top->mul(A0[a], pieces.inv_d)]; }),
                    A0);
  for (std::uint32_t i = 1; i < ctx.d(); ++i) {
    const auto [j, c] = pieces.legs[i - 1];
    const auto ri = static_cast<std::int64_t>(pieces.r[i - 1]);
    const MapTable& Aj = ctx.A_table(j);
    legs.emplace_back(table_from(top, [&](Rank a) { return top->mul(c, top->pow(Aj[a], ri)); }),
                      ctx.A_table(i));
  }

  std::vector<RecombinatorTerm> terms;
  for (std::uint32_t i = 0; i < ctx.d(); ++i) {
    std::vector<std::uint32_t> e(ctx.d(), 0);
    e[i] = 1;
    terms.push_back({top->mul(pieces.inv_d, ctx.omega_pow(i)), std::move(e)});
  }
  return {std::move(legs), Recombinator::from_terms(top, ctx.d(), std::move(terms)), {}};
}

LinearizedFamilyParams fold_u0(const LinearizedFamilyParams& p, Rank u0) {
  p.ctx->base()->check(u0);
  return {p.ctx, p.g + Poly::monomial(p.ctx->base(), u0, 1), p.u, p.m};
}

VerificationReport cpp_check(const LinearizedFamilyParams& p_in, Rank u0) {
  if (!std::all_of(p_in.m.begin(), p_in.m.end(), [](auto mi) { return mi == 1; })) {
    throw PreconditionFailed("m_all_one", "complete-permutation check needs every m_i = 1");
  }
  const LinearizedFamilyParams p = u0 == 0 ? p_in : fold_u0(p_in, u0);
  const auto& ctx = *p.ctx;
  const auto& base = *ctx.base();
  VerificationReport rep{"cpp", {}, {}};
  if (u0 != 0) rep.notes.push_back("u0_folded");

  const Rank d = base.from_integer(ctx.d());
  Rank product = 1;
  for (std::uint32_t i = 1; i < ctx.d(); ++i) {
    const Rank ui = p.u[i - 1];
    const Rank factor =
        base.add(1, base.mul(base.mul(d, ui), ctx.omega_pow(-static_cast<std::int64_t>(i))));
    product = base.mul(product, base.mul(ui, factor));
  }
  rep.conditions.push_back({"product_nonzero", product != 0});
  rep.conditions.push_back({"g_permutes", is_permutation(tabulate(p.g))});
  rep.conditions.push_back(
      {"dg_plus_x_permutes", is_permutation(tabulate(p.g.scaled(d) + Poly::x(ctx.base())))});
  return rep;
}

// -- trace --------------------------------------------------------------------

TraceFamilyParams::TraceFamilyParams(FieldSpec spec_, Poly g_)
    : spec(std::move(spec_)), g(std::move(g_)) {
  if (!spec.has_top()) {
    throw PreconditionFailed("n", "trace family needs a top extension of degree n > 1");
  }
  require_same_field(g.field(), spec.base(), "TraceFamilyParams");
}

Poly trace_poly(const FieldSpec& spec) {
  if (!spec.has_top()) throw LevelMismatch("no top extension configured");
  const std::uint64_t q = spec.q();
  std::uint64_t e = 1;
  std::vector<Rank> coeffs;
  for (std::uint32_t i = 0; i < spec.e(); ++i) {
    coeffs.resize(e + 1, 0);
    coeffs[e] = 1;
    e *= q;
  }
  return Poly(spec.top(), std::move(coeffs));
}

Poly trace_build(const TraceFamilyParams& p) {
  const auto& top = p.spec.top();
  const Poly xq = Poly::monomial(top, 1, p.spec.q());
  return reduce_mod_qx(xq - Poly::x(top) + compose(lift(p.g, top), trace_poly(p.spec)));
}

VerificationReport trace_check(const TraceFamilyParams& p) {
  VerificationReport rep{"trace", {}, {"formula_corrected"}};
  rep.conditions.push_back({"gcd_n_q", std::gcd<std::uint64_t>(p.n(), p.spec.q()) == 1});
  rep.conditions.push_back({"g_permutes", is_permutation(tabulate(p.g))});
  return rep;
}

Poly trace_inverse(const TraceFamilyParams& p) {
  require_conditions(trace_check(p));
  const auto& top = p.spec.top();
  const Rank inv_n = top->inv(top->from_integer(p.n()));
  const Poly tr = trace_poly(p.spec);
  const Poly g_inv = lift(oracle_inverse_poly(p.g), top);

  Poly acc = compose(g_inv, tr.scaled(inv_n));
  const Poly u = Poly::x(top) - tr.scaled(inv_n);
  for (std::uint32_t i = 1; i <= p.n(); ++i) {
    const Poly ui = frobenius_power(u, p.spec.k() * (i - 1));
    acc = acc + ui.scaled(top->from_integer(i));
  }
  return reduce_mod_qx(acc.scaled(inv_n));
}

InverseDiagram trace_diagram(const TraceFamilyParams& p) {
  require_conditions(trace_check(p));
  const auto top = p.spec.top();
  const std::uint32_t q = p.spec.q();
  const std::uint32_t n = p.n();
  const Rank inv_n = top->inv(top->from_integer(n));
  const MapTable tr = tabulate(trace_poly(p.spec));
  const MapTable g_inv = tabulate(oracle_inverse_poly(p.g));

  RankSet fq(q);
  std::iota(fq.begin(), fq.end(), Rank{0});
  std::vector<DiagramLeg> legs;
  legs.emplace_back(table_from(top, [&](Rank a) { return g_inv[top->mul(tr[a], inv_n)]; }), tr, fq);
  legs.emplace_back(MapTable::identity(top), tabulate(trace_build(p)));

  Recombinator F(top, 2, [top, g = p.g, q, n, inv_n](std::span<const Rank> y) -> Rank {
    if (y[0] >= q) return 0;
    const Rank diff = top->sub(y[1], evaluate(g, y[0]));
    Rank acc = y[0];
    std::int64_t qi = 1;  // q^{i-1}
    for (std::uint32_t i = 1; i <= n; ++i) {
      acc = top->add(acc, top->mul(top->from_integer(i), top->pow(diff, qi)));
      qi *= q;
    }
    return top->mul(inv_n, acc);
  });
  return {std::move(legs), std::move(F), {}};
}

}  // namespace ppinv
