#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ppinv/families.hpp"
#include "ppinv/family_io.hpp"
#include "ppinv/linearized.hpp"
#include "ppinv/oracle.hpp"

namespace ppinv::cli {

namespace {

namespace fs = std::filesystem;

struct Options {
  std::string field;
  std::string poly;
  std::string params;
  std::string method = "brute";
  std::string out;
  std::uint32_t q = 0;
  std::uint32_t d = 0;
  std::uint32_t m_max = 0;
};

struct Failure {
  int code;
  std::string message;
  std::optional<Rank> failing_rank;
};

void emit(std::ostream& out, const ordered_json& j) { out << dump_line(j) << '\n'; }

Poly read_poly(const Options& o) {
  if (o.field.empty()) throw ParseError("--field is required");
  if (o.poly.empty()) throw ParseError("--poly is required");
  const auto spec = FieldSpec::parse(o.field);
  return parse_poly(spec.ambient(), o.poly);
}

int cmd_verify(const Options& o, std::ostream& out) {
  const bool pp = is_permutation(tabulate(read_poly(o)));
  emit(out, {{"is_pp", pp}});
  return pp ? ok : not_pp;
}

struct Inversion {
  Poly inverse;
  std::string method;
};

std::optional<FamilyInstance> load_polynomial_family(const Options& o) {
  if (o.params.empty()) return std::nullopt;
  auto inst = load_family(o.params);
  if (inst.kind == "twist") throw ParseError("the twist family has no polynomial inverse");
  return inst;
}

void require_matches(const Options& o, const FamilyInstance& inst) {
  if (o.poly.empty() && o.field.empty()) return;
  const Poly given = read_poly(o);
  const Poly built = family_poly(inst);
  if (!same_field(given.field(), built.field()) || !equal_reduced(given, built)) {
    throw ParseError("--poly does not match the family given by --params");
  }
}

Failure cross_check_failure(Rank r) {
  return {cross_check, "closed-form inverse disagrees with the oracle", r};
}

int cmd_invert(const Options& o, std::ostream& out) {
  const bool is_auto = o.method == "auto";
  std::optional<Inversion> result;

  if (o.method == "brute" || is_auto) {
    std::optional<FamilyInstance> inst;
    if (is_auto) inst = load_polynomial_family(o);
    if (inst) {
      require_matches(o, *inst);
      auto outcome = evaluate_family(*inst);
      if (!outcome.oracle_verified()) {
        throw cross_check_failure(outcome.failing_rank.value_or(0));
      }
      if (outcome.inverse) result = Inversion{*outcome.inverse, inst->kind};
    }
    if (!result) {
      const Poly f = read_poly(o);
      const auto table = tabulate(f);
      if (!is_permutation(table)) {
        emit(out, {{"is_pp", false}});
        return not_pp;
      }
      const Poly inv = brute_inverse_poly(f);
      if (const auto bad = first_inverse_failure(table, tabulate(inv))) {
        throw cross_check_failure(*bad);
      }
      result = Inversion{inv, "brute"};
    }
  } else {
    if (o.params.empty()) throw ParseError("--method " + o.method + " needs --params");
    auto inst = load_polynomial_family(o);
    if (inst->kind != o.method) {
      throw ParseError("--params describes a " + inst->kind + " family, not " + o.method);
    }
    require_matches(o, *inst);
    const auto outcome = evaluate_family(*inst);
    if (!outcome.oracle_verified()) throw cross_check_failure(outcome.failing_rank.value_or(0));
    if (!outcome.inverse) {
      emit(out, {{"is_pp", outcome.is_pp}});
      return not_pp;
    }
    result = Inversion{*outcome.inverse, inst->kind};
  }

  ordered_json j{{"inverse_coeffs", to_csv(result->inverse)}};
  if (is_auto) j["method"] = result->method;
  emit(out, j);
  return ok;
}

int cmd_family(const Options& o, std::ostream& out) {
  if (o.params.empty()) throw ParseError("--params is required");
  const auto inst = load_family(o.params);
  const auto outcome = evaluate_family(inst);
  emit(out, report_json(inst, outcome));
  if (!outcome.oracle_verified()) return cross_check;
  return outcome.report.all_hold() ? ok : not_pp;
}

int cmd_cpp(const Options& o, std::ostream& out) {
  if (o.params.empty()) throw ParseError("--params is required");
  const auto inst = load_family(o.params);
  const auto* params = std::get_if<LinearizedFamilyParams>(&inst.params);
  if (!params) throw ParseError("cpp needs a linearized parameter file");
  const auto report = cpp_check(*params, inst.u0);

  const Poly f = linearized_build(fold_u0(*params, inst.u0));
  const bool f_pp = is_permutation(tabulate(f));
  const bool fx_pp = is_permutation(tabulate(f + Poly::x(f.field())));
  const bool cpp = f_pp && fx_pp;
  const bool verified = cpp == report.all_hold();

  ordered_json conds = ordered_json::array();
  for (const auto& c : report.conditions) conds.push_back({{"name", c.name}, {"holds", c.holds}});
  ordered_json j{{"family", "cpp"},
                 {"field", inst.spec.to_string()},
                 {"conditions", conds},
                 {"is_cpp", cpp},
                 {"poly", to_csv(f)},
                 {"oracle_verified", verified},
                 {"notes", report.notes}};
  emit(out, j);
  if (!verified) return cross_check;
  return cpp ? ok : not_pp;
}

std::vector<Poly> sample_gs(const FieldPtr& base) {
  const Rank two = base->from_integer(2);
  return {Poly::x(base), Poly(base, {1, 0, 1}), Poly(base, {0, 1, 0, two})};
}

int cmd_identities(const Options& o, std::ostream& out) {
  FieldSpec spec;
  if (!o.field.empty()) {
    spec = FieldSpec::parse(o.field);
    if (o.q && o.q != spec.q()) throw ParseError("--q disagrees with --field");
    if (o.d && o.d != spec.e()) throw ParseError("--d disagrees with --field");
  } else {
    if (!o.q || !o.d) throw ParseError("identities needs --q and --d, or --field");
    spec = FieldSpec::for_order(o.q, o.d);
  }
  const LinearizedContext ctx(spec);
  const std::uint32_t d = ctx.d();
  const std::uint32_t m_max = o.m_max ? o.m_max : 2 * d;
  const auto gs = sample_gs(ctx.base());

  bool all = true;
  ordered_json clauses = ordered_json::array();
  for (std::uint32_t i = 0; i < d; ++i) {
    for (std::uint32_t j = 0; j < d; ++j) {
      for (std::uint32_t m = 1; m <= m_max; ++m) {
        for (std::size_t k = 0; k < gs.size(); ++k) {
          const auto v = a_identities(ctx, i, j, m, gs[k]);
          ordered_json c{{"i", i}, {"j", j}, {"m", m}, {"g", to_csv(gs[k])},
                         {"eigen", v.eigen}, {"composition", v.composition}};
          all = all && v.eigen && v.composition;
          if (v.annihilation) {
            c["annihilation"] = *v.annihilation;
            all = all && *v.annihilation;
          }
          clauses.push_back(c);
        }
      }
    }
  }
  ordered_json lines = ordered_json::array();
  for (std::uint32_t i = 0; i < d; ++i) {
    const auto line = image_line(ctx, i);
    lines.push_back({{"i", i}, {"size", line.elements.size()}, {"representative", line.representative}});
  }
  const bool recon = reconstruction_identity(ctx);
  all = all && recon;

  emit(out, {{"field", spec.to_string()},
             {"q", ctx.q()},
             {"d", d},
             {"omega", ctx.omega()},
             {"clauses", clauses},
             {"image_lines", lines},
             {"reconstruction", recon},
             {"all_hold", all}});
  return all ? ok : cross_check;
}

void write_atomically(const fs::path& path, const std::string& bytes) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw ParseError("cannot write " + tmp.string());
    f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!f) throw ParseError("cannot write " + tmp.string());
  }
  fs::rename(tmp, path);
}

int cmd_export_sbox(const Options& o, std::ostream& out) {
  if (o.out.empty()) throw ParseError("--out is required");
  const fs::path path(o.out);
  const auto ext = path.extension().string();
  if (ext != ".bin" && ext != ".hex") throw ParseError("--out must end in .bin or .hex");

  const Poly f = read_poly(o);
  const auto table = tabulate(f);
  if (!is_permutation(table)) {
    emit(out, {{"is_pp", false}});
    return not_pp;
  }
  const Poly inv = brute_inverse_poly(f);
  const auto inv_table = tabulate(inv);
  if (const auto bad = first_inverse_failure(table, inv_table)) throw cross_check_failure(*bad);

  const std::uint32_t top = f.field()->size() - 1;
  const unsigned width = top <= 0xff ? 1 : top <= 0xffff ? 2 : 4;
  std::string bytes;
  if (ext == ".bin") {
    for (Rank v : table.values) {
      for (unsigned b = 0; b < width; ++b) bytes.push_back(static_cast<char>((v >> (8 * b)) & 0xff));
    }
  } else {
    char buf[16];
    for (Rank v : table.values) {
      std::snprintf(buf, sizeof buf, "%0*x\n", static_cast<int>(2 * width), v);
      bytes += buf;
    }
  }
  const bool involution = table == inv_table;
  const ordered_json cert{{"field", FieldSpec::parse(o.field).to_string()},
                          {"poly", to_csv(f)},
                          {"inverse_coeffs", to_csv(inv)},
                          {"involution", involution}};
  write_atomically(path, bytes);
  write_atomically(path.string() + ".json", dump_line(cert) + "\n");

  emit(out, {{"out", path.string()}, {"entries", table.size()}, {"width", width}, {"involution", involution}});
  return ok;
}

struct Check {
  const char* name;
  std::function<bool()> run;
};

std::vector<Check> selftest_checks() {
  return {
      {"prime_inverse",
       [] {
         const auto f5 = Field::prime(5);
         return f5->inv(2) == 3;
       }},
      {"extension_frobenius",
       [] {
         const auto spec = FieldSpec::parse("3^2:1,0,1");
         return spec.base()->frobenius(3) == 6;
       }},
      {"cube_self_inverse",
       [] {
         const auto f5 = Field::prime(5);
         const Poly c = Poly::monomial(f5, 1, 3);
         return brute_inverse_poly(c) == c;
       }},
      {"interpolation_round_trip",
       [] {
         const auto spec = FieldSpec::parse("2^3:1,1,0,1");
         const Poly f(spec.base(), {3, 0, 5, 1, 0, 0, 7});
         return interpolate(tabulate(f)) == reduce_mod_qx(f);
       }},
      {"cyclotomic_inverse",
       [] {
         const auto f7 = Field::prime(7);
         const CyclotomicParams p(f7, 1, 2, Poly(f7, {3, 1}));
         if (!cyclotomic_check(p).all_hold()) return false;
         return !first_inverse_failure(tabulate(cyclotomic_build(p)), tabulate(cyclotomic_inverse(p)));
       }},
      {"linearized_inverse",
       [] {
         auto ctx = std::make_shared<const LinearizedContext>(FieldSpec::smallest(5, 1, 2));
         const LinearizedFamilyParams p(ctx, Poly::x(ctx->base()), {1}, {1});
         if (!linearized_check(p).all_hold()) return false;
         return !first_inverse_failure(tabulate(linearized_build(p)), tabulate(linearized_inverse(p)));
       }},
      {"trace_inverse",
       [] {
         const auto spec = FieldSpec::smallest(3, 1, 2);
         const TraceFamilyParams p(spec, Poly::x(spec.base()));
         if (!trace_check(p).all_hold()) return false;
         return !first_inverse_failure(tabulate(trace_build(p)), tabulate(trace_inverse(p)));
       }},
      {"image_lines",
       [] {
         const LinearizedContext ctx(FieldSpec::smallest(7, 1, 3));
         for (std::uint32_t i = 0; i < ctx.d(); ++i) image_line(ctx, i);
         return reconstruction_identity(ctx);
       }},
  };
}

int cmd_selftest(std::ostream& out) {
  ordered_json failed = ordered_json::array();
  const auto checks = selftest_checks();
  for (const auto& c : checks) {
    bool pass = false;
    try {
      pass = c.run();
    } catch (const std::exception&) {
      pass = false;
    }
    if (!pass) failed.push_back(c.name);
  }
  emit(out, {{"checks", checks.size()}, {"failed", failed}, {"passed", failed.empty()}});
  return failed.empty() ? ok : cross_check;
}

int report_error(std::ostream& err, int code, const std::string& message) {
  err << dump_line({{"error", message}, {"exit", code}}) << '\n';
  return code;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Permutation polynomials over finite fields and their compositional inverses", "ppinv"};
  app.require_subcommand(1);
  Options o;

  auto* verify = app.add_subcommand("verify", "Decide whether a polynomial permutes its field");
  verify->add_option("--field", o.field, "Field spec")->required();
  verify->add_option("--poly", o.poly, "Coefficient ranks, ascending degree")->required();

  auto* invert = app.add_subcommand("invert", "Compositional inverse of a permutation polynomial");
  invert->add_option("--field", o.field, "Field spec");
  invert->add_option("--poly", o.poly, "Coefficient ranks, ascending degree");
  invert->add_option("--params", o.params, "Family parameter file");
  invert->add_option("--method", o.method, "Inversion route")
      ->check(CLI::IsMember({"brute", "cyclotomic", "linearized", "trace", "auto"}));

  auto* family = app.add_subcommand("family", "Check a family instance and cross-validate its inverse");
  family->add_option("--params", o.params, "Family parameter file")->required();

  auto* cpp = app.add_subcommand("cpp", "Complete-permutation check for a linearized instance");
  cpp->add_option("--params", o.params, "Linearized parameter file")->required();

  auto* identities = app.add_subcommand("identities", "Check the A_i identities over F_{q^d}");
  identities->add_option("--q", o.q, "Base field order");
  identities->add_option("--d", o.d, "Extension degree");
  identities->add_option("--field", o.field, "Explicit tower field spec");
  identities->add_option("--m-max", o.m_max, "Largest exponent m (default 2d)");

  auto* sbox = app.add_subcommand("export-sbox", "Write the lookup table of a permutation polynomial");
  sbox->add_option("--field", o.field, "Field spec")->required();
  sbox->add_option("--poly", o.poly, "Coefficient ranks, ascending degree")->required();
  sbox->add_option("--out", o.out, "Output path ending in .bin or .hex")->required();

  auto* selftest = app.add_subcommand("selftest", "Run the built-in consistency checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return malformed;
  }

  try {
    if (verify->parsed()) return cmd_verify(o, out);
    if (invert->parsed()) return cmd_invert(o, out);
    if (family->parsed()) return cmd_family(o, out);
    if (cpp->parsed()) return cmd_cpp(o, out);
    if (identities->parsed()) return cmd_identities(o, out);
    if (sbox->parsed()) return cmd_export_sbox(o, out);
    if (selftest->parsed()) return cmd_selftest(out);
  } catch (const Failure& f) {
    ordered_json j{{"error", f.message}};
    if (f.failing_rank) j["failing_rank"] = *f.failing_rank;
    emit(out, j);
    return f.code;
  } catch (const NotAPermutation& e) {
    return report_error(err, not_pp, e.what());
  } catch (const InternalError& e) {
    return report_error(err, cross_check, e.what());
  } catch (const Error& e) {
    return report_error(err, malformed, e.what());
  } catch (const nlohmann::json::exception& e) {
    return report_error(err, malformed, e.what());
  } catch (const std::exception& e) {
    return report_error(err, cross_check, e.what());
  }
  return malformed;
}

}  // namespace ppinv::cli
