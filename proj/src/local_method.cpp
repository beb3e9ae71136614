#include "ppinv/local_method.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "ppinv/oracle.hpp"

namespace ppinv {

namespace {

RankSet full_domain(const FieldPtr& f) {
  RankSet out(f->size());
  for (Rank r = 0; r < out.size(); ++r) out[r] = r;
  return out;
}

const RankSet& or_full(const RankSet& domain, const FieldPtr& f, RankSet& storage) {
  if (!domain.empty()) return domain;
  storage = full_domain(f);
  return storage;
}

// True when `f` is injective on every class of `key`, restricted to `domain`.
// Reports the lowest class value where it is not.
bool injective_on_classes(const MapTable& f, const MapTable& key, const RankSet& domain,
                          std::optional<Rank>* failing = nullptr) {
  std::map<Rank, std::set<Rank>> seen;
  std::optional<Rank> worst;
  for (Rank a : domain) {
    auto& images = seen[key[a]];
    if (!images.insert(f[a]).second) {
      if (!worst || key[a] < *worst) worst = key[a];
    }
  }
  if (failing) *failing = worst;
  return !worst.has_value();
}

}  // namespace

LocalVerdict check_local_criterion(const MapTable& f, const MapTable& psi) {
  require_same_field(f.field, psi.field, "check_local_criterion");
  const MapTable phi = compose_tables(psi, f);
  const RankSet full = full_domain(f.field);

  LocalVerdict v;
  const bool surjective = image(phi) == image(psi);
  const bool fibers_ok = injective_on_classes(f, phi, full, &v.failing_value);
  v.bijective = surjective && fibers_ok;
  if (v.failing_value) {
    for (Rank a : full) {
      if (phi[a] == *v.failing_value) v.failing_fiber.push_back(a);
    }
  }
  return v;
}

Association restrict_to(const MapTable& t, const RankSet& domain) {
  Association out;
  for (Rank a : domain) out.emplace(a, t[a]);
  return out;
}

AgwVerdict check_agw(const MapTable& f, const MapTable& lambda, const MapTable& lambda_bar,
                     const Association& h, AgwMode mode) {
  require_same_field(f.field, lambda.field, "check_agw");
  require_same_field(f.field, lambda_bar.field, "check_agw");

  const RankSet lambda_image = image(lambda);
  const RankSet s_bar = image(lambda_bar);
  RankSet s;
  if (mode == AgwMode::agw) {
    s = lambda_image;
  } else {
    for (const auto& [k, _] : h) s.push_back(k);
  }
  if (s.size() != s_bar.size()) {
    throw PreconditionFailed("set_sizes", "#S = " + std::to_string(s.size()) +
                                              " but #S_bar = " + std::to_string(s_bar.size()));
  }
  for (Rank a : lambda_image) {
    if (!h.contains(a)) {
      throw DiagramMismatch("h undefined at rank " + std::to_string(a) + " of image(lambda)");
    }
  }

  AgwVerdict v;
  for (Rank a = 0; a < f.size(); ++a) {
    if (lambda_bar[f[a]] != h.at(lambda[a])) {
      throw DiagramMismatch("lambda_bar o f != h o lambda at rank " + std::to_string(a));
    }
  }
  v.commutes = true;

  std::set<Rank> h_values;
  bool h_into = true;
  for (Rank a : s) {
    const auto it = h.find(a);
    if (it == h.end()) {
      h_into = false;
      continue;
    }
    h_values.insert(it->second);
    if (!std::binary_search(s_bar.begin(), s_bar.end(), it->second)) h_into = false;
  }
  v.h_bijective = h_into && h_values.size() == s.size();
  if (mode == AgwMode::corollary && !v.h_bijective) {
    throw PreconditionFailed("h_bijective", "corollary mode requires h to be a bijection S -> S_bar");
  }

  v.lambda_surjective = lambda_image == s;
  v.fibers_injective = injective_on_classes(f, lambda, full_domain(f.field));
  v.f_bijective = is_permutation(f);
  return v;
}

// ---------------------------------------------------------------------------

DiagramLeg::DiagramLeg(MapTable psi_, MapTable phi_) : psi(std::move(psi_)), phi(std::move(phi_)) {
  require_same_field(psi.field, phi.field, "DiagramLeg");
  RankSet a = image(psi);
  RankSet b = image(phi);
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(codomain));
}

DiagramLeg::DiagramLeg(MapTable psi_, MapTable phi_, RankSet codomain_)
    : psi(std::move(psi_)), phi(std::move(phi_)), codomain(std::move(codomain_)) {
  require_same_field(psi.field, phi.field, "DiagramLeg");
  std::sort(codomain.begin(), codomain.end());
  codomain.erase(std::unique(codomain.begin(), codomain.end()), codomain.end());
  auto within = [&](const MapTable& t) {
    const RankSet img = image(t);
    return std::includes(codomain.begin(), codomain.end(), img.begin(), img.end());
  };
  if (!within(psi)) throw PreconditionFailed("psi_codomain", "image(psi) leaves the codomain");
  if (!within(phi)) throw PreconditionFailed("phi_codomain", "image(phi) leaves the codomain");
}

Recombinator::Recombinator(FieldPtr field, std::size_t arity, Eval eval)
    : field_(std::move(field)), arity_(arity), eval_(std::move(eval)) {}

Recombinator Recombinator::from_terms(FieldPtr field, std::size_t arity,
                                      std::vector<RecombinatorTerm> terms) {
  for (const auto& t : terms) {
    field->check(t.coeff);
    if (t.exponents.size() != arity) {
      throw ArityError("term has " + std::to_string(t.exponents.size()) +
                       " exponents, recombinator arity is " + std::to_string(arity));
    }
  }
  auto eval = [field, terms](std::span<const Rank> args) {
    Rank acc = 0;
    for (const auto& t : terms) {
      Rank v = t.coeff;
      for (std::size_t i = 0; i < args.size(); ++i) {
        v = field->mul(v, field->pow(args[i], t.exponents[i]));
      }
      acc = field->add(acc, v);
    }
    return acc;
  };
  Recombinator r(field, arity, std::move(eval));
  r.terms_ = std::move(terms);
  return r;
}

Recombinator Recombinator::identity(FieldPtr field) {
  return from_terms(std::move(field), 1, {{1, {1}}});
}

Rank Recombinator::operator()(std::span<const Rank> args) const {
  if (args.size() != arity_) {
    throw ArityError("recombinator of arity " + std::to_string(arity_) + " applied to " +
                     std::to_string(args.size()) + " arguments");
  }
  return eval_(args);
}

bool verify_legs(const MapTable& f, std::span<const DiagramLeg> legs, const RankSet& domain) {
  RankSet storage;
  const RankSet& dom = or_full(domain, f.field, storage);
  for (const auto& leg : legs) {
    require_same_field(f.field, leg.psi.field, "verify_legs");
    for (Rank a : dom) {
      if (leg.psi[f[a]] != leg.phi[a]) return false;
    }
  }
  return true;
}

bool verify_recombinator(const Recombinator& F, std::span<const MapTable> phis,
                         const RankSet& domain) {
  if (phis.size() != F.arity()) {
    throw ArityError("recombinator arity " + std::to_string(F.arity()) + " but " +
                     std::to_string(phis.size()) + " legs");
  }
  RankSet storage;
  const RankSet& dom = or_full(domain, F.field(), storage);
  std::vector<Rank> args(phis.size());
  for (Rank a : dom) {
    for (std::size_t i = 0; i < phis.size(); ++i) args[i] = phis[i][a];
    if (F(args) != a) return false;
  }
  return true;
}

MapTable assemble_inverse(const Recombinator& F, std::span<const MapTable> psis,
                          const RankSet& domain) {
  if (psis.size() != F.arity()) {
    throw ArityError("recombinator arity " + std::to_string(F.arity()) + " but " +
                     std::to_string(psis.size()) + " legs");
  }
  RankSet storage;
  const RankSet& dom = or_full(domain, F.field(), storage);
  std::vector<Rank> out(F.field()->size(), 0);
  std::vector<Rank> args(psis.size());
  for (Rank a : dom) {
    for (std::size_t i = 0; i < psis.size(); ++i) args[i] = psis[i][a];
    out[a] = F(args);
  }
  return {F.field(), std::move(out)};
}

std::vector<MapTable> InverseDiagram::phis() const {
  std::vector<MapTable> out;
  for (const auto& l : legs) out.push_back(l.phi);
  return out;
}

std::vector<MapTable> InverseDiagram::psis() const {
  std::vector<MapTable> out;
  for (const auto& l : legs) out.push_back(l.psi);
  return out;
}

DiagramOutcome run_diagram(const MapTable& f, const InverseDiagram& diagram) {
  DiagramOutcome out;
  out.legs_commute = verify_legs(f, diagram.legs, diagram.domain);
  out.recombines = verify_recombinator(diagram.recombinator, diagram.phis(), diagram.domain);
  if (out.legs_commute && out.recombines) {
    out.inverse = assemble_inverse(diagram.recombinator, diagram.psis(), diagram.domain);
  }
  return out;
}

InverseDiagram degenerate_diagram(const MapTable& f) {
  return {{DiagramLeg(brute_inverse(f), MapTable::identity(f.field))},
          Recombinator::identity(f.field),
          {}};
}

}  // namespace ppinv
