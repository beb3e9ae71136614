#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "ppinv/poly.hpp"

namespace ppinv {

// Maps here are total tables on a field. An optional `domain` restricts every
// check to a subset of ranks (e.g. the multiplicative group); an empty domain
// means the whole field.

struct LocalVerdict {
  bool bijective = false;
  /// Lowest value s of phi = psi o f whose fiber f fails to be injective on.
  std::optional<Rank> failing_value;
  RankSet failing_fiber;
};

/// f is bijective iff phi = psi o f hits all of image(psi) and f is injective
/// on every fiber of phi.
LocalVerdict check_local_criterion(const MapTable& f, const MapTable& psi);

/// Partial map from one finite set to another; the key set is its domain.
using Association = std::map<Rank, Rank>;

Association restrict_to(const MapTable& t, const RankSet& domain);

enum class AgwMode {
  /// Both lambdas are surjective onto their images; h bijectivity is checked.
  agw,
  /// h is required to be a bijection from its key set onto image(lambda_bar);
  /// surjectivity of lambda onto that key set is the derived check.
  corollary,
};

struct AgwVerdict {
  bool commutes = false;
  bool h_bijective = false;
  bool lambda_surjective = false;
  bool fibers_injective = false;
  bool f_bijective = false;
};

/// Verifies lambda_bar o f = h o lambda and reports each side of the
/// equivalence. Throws DiagramMismatch when the square does not commute or h
/// is undefined on part of image(lambda); PreconditionFailed when the set
/// sizes differ or, in corollary mode, h is not a bijection.
AgwVerdict check_agw(const MapTable& f, const MapTable& lambda, const MapTable& lambda_bar,
                     const Association& h, AgwMode mode = AgwMode::agw);

/// One triangle psi o f = phi, both maps landing in `codomain`.
struct DiagramLeg {
  MapTable psi;
  MapTable phi;
  RankSet codomain;

  /// Codomain taken as image(psi) union image(phi).
  DiagramLeg(MapTable psi, MapTable phi);
  /// Throws PreconditionFailed unless both images lie in `codomain`.
  DiagramLeg(MapTable psi, MapTable phi, RankSet codomain);
};

struct RecombinatorTerm {
  Rank coeff;
  std::vector<std::uint32_t> exponents;
};

/// A t-ary operation on field elements. Built either from an arbitrary
/// callable or from a list of multivariate terms (the serializable form).
class Recombinator {
 public:
  using Eval = std::function<Rank(std::span<const Rank>)>;

  Recombinator(FieldPtr field, std::size_t arity, Eval eval);

  static Recombinator from_terms(FieldPtr field, std::size_t arity,
                                 std::vector<RecombinatorTerm> terms);
  static Recombinator identity(FieldPtr field);

  const FieldPtr& field() const { return field_; }
  std::size_t arity() const { return arity_; }
  const std::optional<std::vector<RecombinatorTerm>>& terms() const { return terms_; }

  Rank operator()(std::span<const Rank> args) const;

 private:
  FieldPtr field_;
  std::size_t arity_;
  Eval eval_;
  std::optional<std::vector<RecombinatorTerm>> terms_;
};

bool verify_legs(const MapTable& f, std::span<const DiagramLeg> legs, const RankSet& domain = {});

/// F(phi_1(a), ..., phi_t(a)) = a for every a in the domain.
bool verify_recombinator(const Recombinator& F, std::span<const MapTable> phis,
                         const RankSet& domain = {});

/// a -> F(psi_1(a), ..., psi_t(a)); entries off the domain are 0.
MapTable assemble_inverse(const Recombinator& F, std::span<const MapTable> psis,
                          const RankSet& domain = {});

/// Legs plus recombinator: everything needed to read off an inverse.
struct InverseDiagram {
  std::vector<DiagramLeg> legs;
  Recombinator recombinator;
  RankSet domain;

  std::vector<MapTable> phis() const;
  std::vector<MapTable> psis() const;
};

struct DiagramOutcome {
  bool legs_commute = false;
  bool recombines = false;
  /// Present only when both checks pass.
  std::optional<MapTable> inverse;
};

DiagramOutcome run_diagram(const MapTable& f, const InverseDiagram& diagram);

/// Single leg psi = f^{-1}, phi = x, F = x. Throws NotAPermutation.
InverseDiagram degenerate_diagram(const MapTable& f);

}  // namespace ppinv
