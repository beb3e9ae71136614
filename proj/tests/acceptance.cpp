// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <memory>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "ppinv/families.hpp"
#include "ppinv/linearized.hpp"
#include "ppinv/oracle.hpp"

using namespace ppinv;

namespace {

struct Tally {
  std::size_t instances = 0;
  std::size_t passing = 0;
  std::vector<std::string> problems;

  void fail(const std::string& what) {
    if (problems.size() < 5) problems.push_back(what);
    else if (problems.size() == 5) problems.push_back("...");
  }
  bool ok() const { return problems.empty(); }
};

// Diagram coherence, accumulated across the family criteria.
Tally g_diagrams;

void check_diagram(const MapTable& f, const InverseDiagram& diagram, const MapTable& closed,
                   const std::string& label) {
  ++g_diagrams.instances;
  const bool legs = verify_legs(f, diagram.legs, diagram.domain);
  const auto phis = diagram.phis();
  const bool rec = verify_recombinator(diagram.recombinator, phis, diagram.domain);
  if (!legs || !rec) {
    g_diagrams.fail(label + (legs ? " recombinator" : " legs"));
    return;
  }
  const auto psis = diagram.psis();
  if (assemble_inverse(diagram.recombinator, psis, diagram.domain) != closed) {
    g_diagrams.fail(label + " assembled table");
    return;
  }
  ++g_diagrams.passing;
}

std::string tag(const std::string& name, std::uint64_t a, std::uint64_t b, std::uint64_t c = 0) {
  return name + "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
}

Poly random_poly(std::mt19937_64& rng, const FieldPtr& F, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(1, max_len);
  std::uniform_int_distribution<Rank> coef(0, F->size() - 1);
  std::vector<Rank> c(len(rng));
  for (auto& x : c) x = coef(rng);
  return Poly(F, std::move(c));
}

MapTable random_table(std::mt19937_64& rng, const FieldPtr& F, bool bijective) {
  std::vector<Rank> v(F->size());
  if (bijective) {
    std::iota(v.begin(), v.end(), 0);
    std::shuffle(v.begin(), v.end(), rng);
  } else {
    std::uniform_int_distribution<Rank> coef(0, F->size() - 1);
    for (auto& x : v) x = coef(rng);
  }
  return {F, std::move(v)};
}

/// Monomial candidates x^e (e = 1..q-1) plus `extra` interpolated maps, half
/// of them bijective.
std::vector<Poly> g_candidates(std::mt19937_64& rng, const FieldPtr& B, int extra, bool monomial_pps_only) {
  std::vector<Poly> out;
  const std::uint32_t q = B->size();
  for (std::uint32_t e = 1; e < q; ++e) {
    if (monomial_pps_only && std::gcd(e, q - 1) != 1) continue;
    out.push_back(Poly::monomial(B, 1, e));
  }
  for (int k = 0; k < extra; ++k) out.push_back(interpolate(random_table(rng, B, monomial_pps_only || k % 2 == 0)));
  return out;
}

// -- 1 ------------------------------------------------------------------------

Tally criterion_cyclotomic() {
  Tally t;
  std::mt19937_64 rng(101);
  for (std::uint32_t q : {7u, 11u, 13u}) {
    const auto F = Field::prime(q);
    for (std::uint32_t ell = 2; ell < q; ++ell) {
      if ((q - 1) % ell) continue;
      for (std::uint32_t r = 1; r < q; ++r) {
        for (int k = 0; k < 25; ++k) {
          const CyclotomicParams p(F, r, ell, random_poly(rng, F, 4));
          const auto label = tag("cyclotomic", q, ell, r);
          ++t.instances;
          const auto f = tabulate(cyclotomic_build(p));
          const bool conj = cyclotomic_check(p).all_hold();
          if (conj != is_permutation(f)) {
            t.fail(label + " verdict");
            continue;
          }
          if (!conj) continue;
          ++t.passing;
          const auto inv = tabulate(cyclotomic_inverse(p));
          if (compose_tables(inv, f) != MapTable::identity(F) || compose_tables(f, inv) != MapTable::identity(F)) {
            t.fail(label + " inverse");
          }
          check_diagram(f, cyclotomic_diagram(p), inv, label);
        }
      }
    }
  }
  return t;
}

// -- 2, 3 ---------------------------------------------------------------------

const std::vector<std::pair<std::uint32_t, std::uint32_t>> kTowerGrid{{5, 2}, {7, 2}, {7, 3}, {13, 3}, {13, 4}};

Tally criterion_a_identities() {
  Tally t;
  std::mt19937_64 rng(202);
  for (const auto& [q, d] : kTowerGrid) {
    const LinearizedContext ctx(FieldSpec::for_order(q, d));
    const auto& B = ctx.base();
    const std::vector<Poly> gs{Poly::x(B), random_poly(rng, B, 4), random_poly(rng, B, 6)};
    for (std::uint32_t i = 0; i < d; ++i) {
      for (std::uint32_t j = 0; j < d; ++j) {
        for (std::uint32_t m = 1; m <= 2 * d; ++m) {
          for (const auto& g : gs) {
            ++t.instances;
            const auto v = a_identities(ctx, i, j, m, g);
            const bool ok = v.eigen && v.composition && (j == 0 || v.annihilation.value_or(false)) &&
                            v.composition_matches == ((i * m) % d == j);
            if (ok) ++t.passing;
            else t.fail(tag("identities", q, d) + " i=" + std::to_string(i) + " j=" + std::to_string(j) + " m=" + std::to_string(m));
          }
        }
      }
    }
    ++t.instances;
    if (reconstruction_identity(ctx)) ++t.passing;
    else t.fail(tag("reconstruction", q, d));
  }
  return t;
}

Tally criterion_image_lines() {
  Tally t;
  for (const auto& [q, d] : kTowerGrid) {
    const LinearizedContext ctx(FieldSpec::for_order(q, d));
    const auto& F = *ctx.field();
    for (std::uint32_t i = 0; i < d; ++i) {
      ++t.instances;
      const auto label = tag("B", q, d, i);
      // Independent enumeration of the image.
      std::vector<bool> hit(F.size(), false);
      for (Rank a = 0; a < F.size(); ++a) hit[ctx.A_table(i)[a]] = true;
      RankSet members;
      for (Rank a = 0; a < F.size(); ++a) {
        if (hit[a]) members.push_back(a);
      }
      bool ok = members.size() == q;
      if (ok) {
        const Rank y = members[1];
        RankSet line{0};
        for (Rank c = 1; c < q; ++c) line.push_back(F.mul(y, c));
        std::sort(line.begin(), line.end());
        ok = line == members;
      }
      if (ok && i == 0) {
        for (Rank r = 0; r < q; ++r) ok = ok && members[r] == r;
      }
      try {
        ok = ok && image_line(ctx, i).elements == members;
      } catch (const Error&) {
        ok = false;
      }
      if (ok) ++t.passing;
      else t.fail(label);
    }
  }
  return t;
}

// -- 4, 5 ---------------------------------------------------------------------

Tally criterion_linearized() {
  Tally t;
  std::mt19937_64 rng(404);
  const auto run_one = [&](const LinearizedFamilyParams& p, const std::string& label) {
    ++t.instances;
    const auto f = tabulate(linearized_build(p));
    const bool conj = linearized_check(p).all_hold();
    if (conj != is_permutation(f)) {
      t.fail(label + " verdict");
      return;
    }
    if (!conj) return;
    ++t.passing;
    const auto inv = tabulate(linearized_inverse(p));
    if (inv != brute_inverse(f)) t.fail(label + " inverse");
    check_diagram(f, linearized_diagram(p), inv, label);
  };

  const auto c52 = std::make_shared<const LinearizedContext>(FieldSpec::for_order(5, 2));
  const auto gs = g_candidates(rng, c52->base(), 10, false);
  for (std::size_t gi = 0; gi < gs.size(); ++gi) {
    for (Rank u = 0; u < 5; ++u) {
      for (std::uint64_t m = 1; m <= 8; ++m) {
        run_one(LinearizedFamilyParams(c52, gs[gi], {u}, {m}), tag("lin52", gi, u, m));
      }
    }
  }

  const auto c72 = std::make_shared<const LinearizedContext>(FieldSpec::for_order(7, 2));
  for (std::uint64_t m = 1; m <= 12; ++m) {
    for (Rank u : {1u, 3u}) {
      run_one(LinearizedFamilyParams(c72, Poly::x(c72->base()), {u}, {m}), tag("lin72", u, m));
    }
  }

  const auto c73 = std::make_shared<const LinearizedContext>(FieldSpec::for_order(7, 3));
  const std::vector<std::vector<std::uint64_t>> ms{{1, 1}, {7, 1}, {5, 5}, {5, 1}, {2, 2}, {1, 5}, {11, 7}};
  const std::vector<Poly> g73{Poly::x(c73->base()), Poly::monomial(c73->base(), 3, 5)};
  for (const auto& m : ms) {
    for (const auto& g : g73) {
      run_one(LinearizedFamilyParams(c73, g, {1, 2}, m), tag("lin73", m[0], m[1]));
    }
  }
  // Spot expectations.
  const auto expect = [&](const std::vector<std::uint64_t>& m, bool pp) {
    ++t.instances;
    const LinearizedFamilyParams p(c73, Poly::x(c73->base()), {1, 2}, m);
    if (linearized_check(p).all_hold() == pp && is_permutation(tabulate(linearized_build(p))) == pp) ++t.passing;
    else t.fail(tag("spot73", m[0], m[1]));
  };
  expect({1, 1}, true);
  expect({7, 1}, true);
  expect({5, 5}, true);
  expect({5, 1}, false);
  expect({2, 2}, false);
  return t;
}

Tally criterion_cpp() {
  Tally t;
  std::mt19937_64 rng(404);
  const auto ctx = std::make_shared<const LinearizedContext>(FieldSpec::for_order(5, 2));
  const auto gs = g_candidates(rng, ctx->base(), 10, false);
  const Poly x = Poly::x(ctx->field());
  for (std::size_t gi = 0; gi < gs.size(); ++gi) {
    for (Rank u = 0; u < 5; ++u) {
      ++t.instances;
      const LinearizedFamilyParams p(ctx, gs[gi], {u}, {1});
      const Poly f = linearized_build(p);
      const bool oracle = is_permutation(tabulate(f)) && is_permutation(tabulate(f + x));
      if (cpp_check(p).all_hold() == oracle) {
        if (oracle) ++t.passing;
      } else {
        t.fail(tag("cpp", gi, u));
      }
    }
  }
  return t;
}

// -- 6 ------------------------------------------------------------------------

Tally criterion_trace() {
  Tally t;
  std::mt19937_64 rng(606);
  const std::vector<std::pair<std::uint32_t, std::uint32_t>> grid{{3, 2}, {3, 3}, {5, 2}, {5, 3}, {7, 2}, {9, 2}};
  for (const auto& [q, n] : grid) {
    const auto spec = FieldSpec::for_order(q, n);
    auto gs = g_candidates(rng, spec.base(), 10, true);
    gs.push_back(Poly::monomial(spec.base(), 1, 2));
    gs.push_back(Poly::constant(spec.base(), 1));
    for (std::size_t gi = 0; gi < gs.size(); ++gi) {
      const TraceFamilyParams p(spec, gs[gi]);
      const auto label = tag("trace", q, n, gi);
      ++t.instances;
      const auto f = tabulate(trace_build(p));
      const bool conj = trace_check(p).all_hold();
      if (conj != is_permutation(f)) {
        t.fail(label + " verdict");
        continue;
      }
      if (!conj) continue;
      ++t.passing;
      const auto inv = tabulate(trace_inverse(p));
      if (inv != brute_inverse(f)) t.fail(label + " inverse");
      check_diagram(f, trace_diagram(p), inv, label);
    }
  }

  // The printed closed form against the corrected one at q = 3, n = 2, g = x.
  ++t.instances;
  const auto spec = FieldSpec::for_order(3, 2);
  const auto& F = *spec.top();
  const TraceFamilyParams p(spec, Poly::x(spec.base()));
  const auto f = tabulate(trace_build(p));
  const Rank inv_n = F.inv(F.from_integer(2));
  const Rank mid = F.mul(F.from_integer(3), inv_n);
  std::vector<Rank> printed(F.size());
  for (Rank a = 0; a < F.size(); ++a) {
    const Rank tr = F.relative_trace(a);
    Rank acc = F.sub(F.mul(tr, inv_n), F.mul(mid, tr));
    acc = F.add(acc, F.pow(a, 3));
    acc = F.add(acc, F.mul(2, F.pow(a, 9)));
    printed[a] = F.mul(inv_n, acc);
  }
  const MapTable printed_table(spec.top(), printed);
  const bool regression = printed_table == tabulate(Poly::monomial(spec.top(), 2, 1)) &&
                          first_inverse_failure(f, printed_table).has_value() &&
                          tabulate(trace_inverse(p)) == tabulate(Poly::monomial(spec.top(), 2, 3)) &&
                          !first_inverse_failure(f, tabulate(trace_inverse(p))).has_value();
  if (regression) ++t.passing;
  else t.fail("printed-form regression");
  return t;
}

// -- 8 ------------------------------------------------------------------------

Tally criterion_ring_laws() {
  Tally t;
  std::mt19937_64 rng(808);
  const std::vector<FieldSpec> fields{FieldSpec::parse("2"),        FieldSpec::parse("3"),
                                      FieldSpec::parse("7"),        FieldSpec::for_order(4),
                                      FieldSpec::for_order(9),      FieldSpec::for_order(25),
                                      FieldSpec::for_order(5, 2),   FieldSpec::for_order(64),
                                      FieldSpec::for_order(3, 4),   FieldSpec::for_order(7, 3),
                                      FieldSpec::for_order(343)};
  for (const auto& spec : fields) {
    const auto& F = spec.ambient();
    for (int k = 0; k < 200; ++k) {
      ++t.instances;
      const Poly f = random_poly(rng, F, 2 * F->size() + 3);
      const Poly r = reduce_mod_qx(f);
      const auto table = tabulate(f);
      if (interpolate(table) == r && reduce_mod_qx(r) == r && tabulate(r) == table) ++t.passing;
      else t.fail("round trip over " + spec.to_string());
    }
  }
  const auto F25 = FieldSpec::for_order(25).base();
  for (int k = 0; k < 100; ++k) {
    ++t.instances;
    const Poly f = random_poly(rng, F25, 30), g = random_poly(rng, F25, 30);
    if (tabulate(compose(f, g)) == compose_tables(tabulate(f), tabulate(g))) ++t.passing;
    else t.fail("compose over F_25");
  }
  const auto F9 = FieldSpec::for_order(9).base();
  const Poly x = Poly::x(F9);
  for (int k = 0; k < 100; ++k) {
    ++t.instances;
    const Poly f = random_poly(rng, F9, 12), g = random_poly(rng, F9, 12), h = random_poly(rng, F9, 12);
    const bool ok = compose(compose(f, g), h) == compose(f, compose(g, h)) && compose(f, x) == reduce_mod_qx(f) &&
                    compose(x, f) == reduce_mod_qx(f);
    if (ok) ++t.passing;
    else t.fail("ring laws over F_9");
  }
  return t;
}

// -- 9 ------------------------------------------------------------------------

Tally criterion_cli() {
  Tally t;
  const auto run = [](std::vector<std::string> args, std::string& out) {
    args.insert(args.begin(), "ppinv");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream o, e;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), o, e);
    out = o.str();
    return code;
  };
  const auto expect = [&](std::vector<std::string> args, int code, const std::string& want) {
    ++t.instances;
    std::string out;
    const int got = run(std::move(args), out);
    if (got == code && out == want) ++t.passing;
    else t.fail("got exit " + std::to_string(got) + " and " + out);
  };
  expect({"verify", "--field", "5", "--poly", "0,0,0,1"}, 0, "{\"is_pp\": true}\n");
  expect({"invert", "--field", "5", "--poly", "0,0,0,1", "--method", "brute"}, 0,
         "{\"inverse_coeffs\": \"0,0,0,1\"}\n");
  expect({"verify", "--field", "5", "--poly", "0,0,1"}, 1, "{\"is_pp\": false}\n");

  ++t.instances;
  const std::string path = "acceptance_sbox.bin";
  std::remove(path.c_str());
  std::string out;
  if (run({"export-sbox", "--field", "5", "--poly", "0,0,0,1", "--out", path}, out) == 0) {
    std::FILE* fp = std::fopen(path.c_str(), "rb");
    std::vector<int> bytes;
    if (fp) {
      for (int c; (c = std::fgetc(fp)) != EOF;) bytes.push_back(c);
      std::fclose(fp);
    }
    if (bytes == std::vector<int>{0, 1, 3, 2, 4}) ++t.passing;
    else t.fail("export-sbox table");
  } else {
    t.fail("export-sbox exit");
  }
  std::remove(path.c_str());
  std::remove((path + ".json").c_str());
  return t;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Tally()> run;
    double budget_s;
  };
  const std::vector<Criterion> criteria{
      {1, "cyclotomic conditions match the oracle; inverses exact", criterion_cyclotomic, 60},
      {2, "A_i identities hold pointwise", criterion_a_identities, 60},
      {3, "image lines have q elements and line structure", criterion_image_lines, 60},
      {4, "linearized conditions match the oracle; inverses exact", criterion_linearized, 120},
      {5, "complete-permutation conditions match the oracle", criterion_cpp, 60},
      {6, "trace family conditions and corrected inverse", criterion_trace, 60},
      {7, "diagram legs and recombinators reproduce closed forms", [] { return g_diagrams; }, 60},
      {8, "composition-ring laws and interpolation round trip", criterion_ring_laws, 30},
      {9, "CLI contract", criterion_cli, 30},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Tally t;
    try {
      t = c.run();
    } catch (const std::exception& e) {
      t.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.budget_s) t.fail("over time budget");
    if (c.id == 7 && t.instances == 0) t.fail("no instances reached the diagram check");
    const bool ok = t.ok();
    failed += !ok;
    std::printf("%s criterion %d: %s (%zu instances, %zu passing, %.2f s)\n", ok ? "PASS" : "FAIL", c.id, c.name,
                t.instances, t.passing, secs);
    for (const auto& p : t.problems) std::printf("    %s\n", p.c_str());
  }
  return failed;
}
