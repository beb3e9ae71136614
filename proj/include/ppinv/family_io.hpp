#pragma once

#include <optional>
#include <string>
#include <variant>

#include "json.hpp"
#include "ppinv/families.hpp"

namespace ppinv {

using ordered_json = nlohmann::ordered_json;

/// A parsed family parameter file.
///
///   {"kind": "cyclotomic", "field": "7", "r": 1, "ell": 2, "h_coeffs": [3, 1]}
///   {"kind": "linearized", "field": "5|2:2,0,1", "g_coeffs": [0, 1],
///    "u_ranks": [1], "m_list": [1], "u0_rank": 0}
///   {"kind": "trace", "field": "3|2:1,0,1", "g_coeffs": [0, 1]}
///   {"kind": "twist", "field": "7", "f1": [...], "h": [...], "lambda": [...],
///    "lambda_bar": [...], "g": [...]}
///
/// Coefficient lists are element ranks, ascending degree. Twist maps are full
/// tables of length q.
struct FamilyInstance {
  std::string kind;
  FieldSpec spec;
  std::variant<CyclotomicParams, LinearizedFamilyParams, TraceFamilyParams, TwistParams> params;
  Rank u0 = 0;
};

/// Throws ParseError (or a field/precondition error) on malformed input.
FamilyInstance parse_family(const ordered_json& doc);
FamilyInstance load_family(const std::string& path);

/// Everything the CLI reports about one family instance.
struct FamilyOutcome {
  VerificationReport report;
  /// Absent for the twist family, which is table-only.
  std::optional<Poly> f;
  MapTable f_table;
  /// Oracle verdict; for twist, permutation of F_q^*.
  bool is_pp = false;
  std::optional<Poly> inverse{};
  std::optional<MapTable> inverse_table{};
  /// Lowest rank where the closed form disagrees with f, if any.
  std::optional<Rank> failing_rank{};
  /// Legs and recombinator verified and the assembled table equal to the
  /// closed form (only meaningful when is_pp).
  bool diagram_agrees = false;

  /// Condition conjunction matches the oracle, and on PPs the closed form
  /// inverts f and agrees with the diagram route.
  bool oracle_verified() const;
};

FamilyOutcome evaluate_family(const FamilyInstance& inst);

/// f as a polynomial over the instance's ambient field (not for twist).
Poly family_poly(const FamilyInstance& inst);

ordered_json report_json(const FamilyInstance& inst, const FamilyOutcome& out);

/// Single-line JSON with ", " and ": " separators.
std::string dump_line(const ordered_json& j);

}  // namespace ppinv
