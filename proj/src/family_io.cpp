#include "ppinv/family_io.hpp"

#include <fstream>
#include <memory>

#include "ppinv/oracle.hpp"

namespace ppinv {

namespace {

const ordered_json& require_key(const ordered_json& doc, const char* key) {
  if (!doc.contains(key)) throw ParseError(std::string("parameter file lacks \"") + key + "\"");
  return doc.at(key);
}

std::uint64_t as_uint(const ordered_json& v, const char* key) {
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
    throw ParseError(std::string("\"") + key + "\" must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

std::vector<Rank> as_ranks(const ordered_json& v, const char* key, const FieldPtr& field) {
  if (!v.is_array()) throw ParseError(std::string("\"") + key + "\" must be an array of ranks");
  std::vector<Rank> out;
  for (const auto& x : v) {
    const auto r = as_uint(x, key);
    if (r >= field->size()) {
      throw ParseError(std::string("\"") + key + "\" holds rank " + std::to_string(r) +
                       " outside a field of size " + std::to_string(field->size()));
    }
    out.push_back(static_cast<Rank>(r));
  }
  return out;
}

MapTable as_table(const ordered_json& doc, const char* key, const FieldPtr& field) {
  auto values = as_ranks(require_key(doc, key), key, field);
  if (values.size() != field->size()) {
    throw ParseError(std::string("\"") + key + "\" must list one rank per field element");
  }
  return {field, std::move(values)};
}

void dump_into(const ordered_json& j, std::string& out) {
  if (j.is_object()) {
    out += '{';
    bool first = true;
    for (const auto& [k, v] : j.items()) {
      if (!first) out += ", ";
      first = false;
      out += ordered_json(k).dump();
      out += ": ";
      dump_into(v, out);
    }
    out += '}';
  } else if (j.is_array()) {
    out += '[';
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i) out += ", ";
      dump_into(j[i], out);
    }
    out += ']';
  } else {
    out += j.dump();
  }
}

}  // namespace

std::string dump_line(const ordered_json& j) {
  std::string out;
  dump_into(j, out);
  return out;
}

FamilyInstance parse_family(const ordered_json& doc) {
  if (!doc.is_object()) throw ParseError("parameter file must hold a JSON object");
  const auto& kind_v = require_key(doc, "kind");
  if (!kind_v.is_string()) throw ParseError("\"kind\" must be a string");
  const std::string kind = kind_v.get<std::string>();
  const auto& field_v = require_key(doc, "field");
  if (!field_v.is_string()) throw ParseError("\"field\" must be a field-spec string");
  FieldSpec spec = FieldSpec::parse(field_v.get<std::string>());
  const auto& base = spec.base();

  if (kind == "cyclotomic") {
    if (spec.has_top()) throw ParseError("cyclotomic family takes a single-level field");
    const auto r = as_uint(require_key(doc, "r"), "r");
    const auto ell = as_uint(require_key(doc, "ell"), "ell");
    Poly h(base, as_ranks(require_key(doc, "h_coeffs"), "h_coeffs", base));
    CyclotomicParams p(base, static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(ell),
                       std::move(h));
    return {kind, spec, std::move(p), 0};
  }
  if (kind == "linearized") {
    auto ctx = std::make_shared<const LinearizedContext>(spec);
    Poly g(base, as_ranks(require_key(doc, "g_coeffs"), "g_coeffs", base));
    auto u = as_ranks(require_key(doc, "u_ranks"), "u_ranks", base);
    std::vector<std::uint64_t> m;
    const auto& m_v = require_key(doc, "m_list");
    if (!m_v.is_array()) throw ParseError("\"m_list\" must be an array");
    for (const auto& x : m_v) m.push_back(as_uint(x, "m_list"));
    Rank u0 = 0;
    if (doc.contains("u0_rank")) {
      const auto v = as_uint(doc.at("u0_rank"), "u0_rank");
      if (v >= base->size()) throw ParseError("\"u0_rank\" outside F_q");
      u0 = static_cast<Rank>(v);
    }
    LinearizedFamilyParams p(std::move(ctx), std::move(g), std::move(u), std::move(m));
    return {kind, spec, std::move(p), u0};
  }
  if (kind == "trace") {
    if (doc.contains("n") && as_uint(doc.at("n"), "n") != spec.e()) {
      throw ParseError("\"n\" disagrees with the field's top-extension degree");
    }
    Poly g(base, as_ranks(require_key(doc, "g_coeffs"), "g_coeffs", base));
    TraceFamilyParams p(spec, std::move(g));
    return {kind, spec, std::move(p), 0};
  }
  if (kind == "twist") {
    if (spec.has_top()) throw ParseError("twist family takes a single-level field");
    TwistParams p{base,
                  as_table(doc, "f1", base),
                  as_table(doc, "h", base),
                  as_table(doc, "lambda", base),
                  as_table(doc, "lambda_bar", base),
                  as_table(doc, "g", base)};
    return {kind, spec, std::move(p), 0};
  }
  throw ParseError("unknown family kind \"" + kind + "\"");
}

FamilyInstance load_family(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read parameter file " + path);
  ordered_json doc;
  try {
    doc = ordered_json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("parameter file is not valid JSON: ") + e.what());
  }
  return parse_family(doc);
}

Poly family_poly(const FamilyInstance& inst) {
  return std::visit(
      [](const auto& p) -> Poly {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, CyclotomicParams>) {
          return cyclotomic_build(p);
        } else if constexpr (std::is_same_v<T, LinearizedFamilyParams>) {
          return linearized_build(p);
        } else if constexpr (std::is_same_v<T, TraceFamilyParams>) {
          return trace_build(p);
        } else {
          throw PreconditionFailed("kind", "the twist family has no polynomial form");
        }
      },
      inst.params);
}

bool FamilyOutcome::oracle_verified() const {
  const bool iff_family = report.family != "twist";
  if (iff_family && report.all_hold() != is_pp) return false;
  if (report.all_hold()) return !failing_rank.has_value() && diagram_agrees;
  return true;
}

namespace {

template <typename Params, typename DiagramFn>
void finish(FamilyOutcome& out, const Params& p, DiagramFn diagram_fn, const RankSet& domain = {}) {
  out.failing_rank = first_inverse_failure(out.f_table, *out.inverse_table, domain);
  const auto run = run_diagram(out.f_table, diagram_fn(p));
  out.diagram_agrees = run.inverse.has_value() && *run.inverse == *out.inverse_table;
}

}  // namespace

FamilyOutcome evaluate_family(const FamilyInstance& inst) {
  return std::visit(
      [&](const auto& p) -> FamilyOutcome {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, TwistParams>) {
          FamilyOutcome out{twist_check(p), std::nullopt, twist_build(p)};
          out.is_pp = permutes(out.f_table, p.carrier());
          if (out.report.all_hold()) {
            out.inverse_table = twist_inverse(p);
            finish(out, p, twist_diagram, p.carrier());
          }
          return out;
        } else {
          const Poly f = family_poly(inst);
          VerificationReport rep;
          if constexpr (std::is_same_v<T, CyclotomicParams>) rep = cyclotomic_check(p);
          if constexpr (std::is_same_v<T, LinearizedFamilyParams>) rep = linearized_check(p);
          if constexpr (std::is_same_v<T, TraceFamilyParams>) rep = trace_check(p);
          FamilyOutcome out{std::move(rep), f, tabulate(f)};
          out.is_pp = is_permutation(out.f_table);
          if (out.report.all_hold()) {
            if constexpr (std::is_same_v<T, CyclotomicParams>) {
              out.inverse = cyclotomic_inverse(p);
              out.inverse_table = tabulate(*out.inverse);
              finish(out, p, cyclotomic_diagram);
            }
            if constexpr (std::is_same_v<T, LinearizedFamilyParams>) {
              out.inverse = linearized_inverse(p);
              out.inverse_table = tabulate(*out.inverse);
              finish(out, p, linearized_diagram);
            }
            if constexpr (std::is_same_v<T, TraceFamilyParams>) {
              out.inverse = trace_inverse(p);
              out.inverse_table = tabulate(*out.inverse);
              finish(out, p, trace_diagram);
            }
          }
          return out;
        }
      },
      inst.params);
}

ordered_json report_json(const FamilyInstance& inst, const FamilyOutcome& out) {
  ordered_json j;
  j["family"] = inst.kind;
  j["field"] = inst.spec.to_string();
  ordered_json conds = ordered_json::array();
  for (const auto& c : out.report.conditions) conds.push_back({{"name", c.name}, {"holds", c.holds}});
  j["conditions"] = conds;
  j["is_pp"] = out.is_pp;
  if (out.f) j["poly"] = to_csv(*out.f);
  if (out.inverse) {
    j["inverse_coeffs"] = to_csv(*out.inverse);
  } else if (out.inverse_table) {
    j["inverse_table"] = out.inverse_table->values;
  }
  j["oracle_verified"] = out.oracle_verified();
  if (out.failing_rank) j["failing_rank"] = *out.failing_rank;
  j["notes"] = out.report.notes;
  return j;
}

}  // namespace ppinv
