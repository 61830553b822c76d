#pragma once

#include "surfsat/config.hpp"
#include "surfsat/errors.hpp"
#include "surfsat/fibre.hpp"
#include "surfsat/linalg.hpp"
#include "surfsat/mumford.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace surfsat {

/// Open surface X = Xbar \ D, given by the curves of Xbar that are recorded,
/// the boundary D, and the number of isolated points removed.
struct CompactifiedSurface {
  Configuration ambient;
  NodeSet boundary;
  std::size_t isolated_boundary_points = 0;
  NodeSet interior_curves;
  std::vector<FalseFibreClaim> false_fibre_claims;
  bool fibration_asserted = false;
};

inline void validate(const CompactifiedSurface& s) {
  NodeSet b = make_node_set(s.boundary), in = make_node_set(s.interior_curves);
  if (b != s.boundary || in != s.interior_curves) throw std::invalid_argument("boundary and interior must be sorted node sets");
  check_subset(s.ambient, b);
  check_subset(s.ambient, in);
  NodeSet both;
  std::set_union(b.begin(), b.end(), in.begin(), in.end(), std::back_inserter(both));
  if (both.size() != b.size() + in.size()) throw std::invalid_argument("boundary and interior curves overlap");
  if (both.size() != s.ambient.size()) throw std::invalid_argument("every curve must be either boundary or interior");
  for (const auto& n : s.ambient.nodes())
    if (!n.proper) throw std::invalid_argument("curve '" + n.name + "' of the compactification is not proper");
}

/// Builds a surface whose interior curves are all non-boundary curves.
inline CompactifiedSurface make_surface(Configuration ambient, NodeSet boundary, std::size_t isolated_points = 0) {
  CompactifiedSurface s;
  s.boundary = make_node_set(std::move(boundary));
  for (NodeId i = 0; i < ambient.size(); ++i)
    if (!std::binary_search(s.boundary.begin(), s.boundary.end(), i)) s.interior_curves.push_back(i);
  s.ambient = std::move(ambient);
  s.isolated_boundary_points = isolated_points;
  validate(s);
  return s;
}

namespace criterion {
inline constexpr const char* kNoNegativeDefiniteComponent = "no-negative-definite-component";
inline constexpr const char* kIsolatedBoundaryPoints = "isolated-boundary-points";
inline constexpr const char* kSaturationRecipe = "contract-negative-definite-components";
inline constexpr const char* kEmptyBoundary = "empty-boundary-proper-surface";
inline constexpr const char* kNotSemidefinite = "boundary-not-negative-semidefinite";
inline constexpr const char* kAllFibreType = "every-boundary-component-of-fibre-type";
inline constexpr const char* kFibrationAsserted = "fibration-asserted";
inline constexpr const char* kTwoFibreTypeInX = "two-fibre-type-divisors-in-X";
inline constexpr const char* kFalseFibreCover = "sum-of-disjoint-false-fibres";
inline constexpr const char* kFalseFibrePropagates = "false-fibre-propagates-to-disjoint-fibre-type";
inline constexpr const char* kUndecided = "numerics-cannot-separate-0-and-1";
inline constexpr const char* kRelativeToSupplied = "relative-to-supplied-curves";
inline constexpr const char* kSchemeOracle = "negative-definite-components-not-scheme-contractible";
}  // namespace criterion

struct Reason {
  std::string criterion;
  std::string evidence;

  friend bool operator==(const Reason&, const Reason&) = default;
};

struct SaturationVerdict {
  bool saturated = true;
  std::vector<NodeSet> offending;  // negative definite boundary components
  std::size_t isolated_points = 0;
  std::vector<Reason> reasons;
};

/// Saturated iff no isolated boundary points and no negative definite
/// connected component of the boundary.
inline SaturationVerdict is_saturated(const CompactifiedSurface& s) {
  SaturationVerdict v;
  for (const auto& comp : connected_components(s.ambient, s.boundary))
    if (is_negative_definite(s.ambient.gram().principal(comp))) v.offending.push_back(comp);
  v.isolated_points = s.isolated_boundary_points;
  v.saturated = v.offending.empty() && v.isolated_points == 0;
  if (v.offending.empty()) {
    v.reasons.push_back({criterion::kNoNegativeDefiniteComponent, "no boundary component is negative definite"});
  } else {
    for (const auto& c : v.offending)
      v.reasons.push_back({criterion::kNoNegativeDefiniteComponent, "negative definite component " + describe(s.ambient, c)});
  }
  if (v.isolated_points > 0) {
    v.reasons.push_back({criterion::kIsolatedBoundaryPoints, std::to_string(v.isolated_points) + " isolated boundary point(s)"});
  }
  return v;
}

struct SaturationPlan {
  std::vector<NodeSet> d_minus;  // contract
  std::vector<NodeSet> d_plus;   // keep as boundary
  std::size_t points_to_remove = 0;
  bool resulting_boundary_ok = true;

  bool empty() const { return d_minus.empty() && points_to_remove == 0; }
};

/// Result of applying a plan: the saturated model and how its curves map back.
struct SaturatedModel {
  CompactifiedSurface surface;
  std::vector<NodeId> kept;  // kept[i] = original id of curve i
  std::vector<SingularPoint> singular_points;
};

/// Contracts the plan's negative definite parts and fills in isolated points.
/// Claims touching contracted curves are dropped.
inline SaturatedModel apply_plan(const CompactifiedSurface& s, const SaturationPlan& plan) {
  Contraction c = contract(s.ambient, plan.d_minus);
  std::vector<std::optional<NodeId>> image(s.ambient.size());
  for (NodeId i = 0; i < c.kept.size(); ++i) image[c.kept[i]] = i;
  auto map_set = [&](const NodeSet& in) -> std::optional<NodeSet> {
    NodeSet out;
    for (auto id : in) {
      if (!image[id]) return std::nullopt;
      out.push_back(*image[id]);
    }
    return make_node_set(std::move(out));
  };

  SaturatedModel m;
  m.surface.ambient = c.config;
  for (auto id : s.boundary)
    if (image[id]) m.surface.boundary.push_back(*image[id]);
  for (auto id : s.interior_curves)
    if (image[id]) m.surface.interior_curves.push_back(*image[id]);
  m.surface.boundary = make_node_set(m.surface.boundary);
  m.surface.interior_curves = make_node_set(m.surface.interior_curves);
  m.surface.isolated_boundary_points = s.isolated_boundary_points - std::min(s.isolated_boundary_points, plan.points_to_remove);
  m.surface.fibration_asserted = s.fibration_asserted;
  for (const auto& claim : s.false_fibre_claims) {
    if (auto mapped = map_set(claim.subject)) m.surface.false_fibre_claims.push_back({*mapped, claim.certificate, claim.reference});
  }
  m.kept = std::move(c.kept);
  m.singular_points = std::move(c.singular_points);
  return m;
}

/// Contract every negative definite boundary component, remove the isolated
/// points from the boundary; the rest of the boundary stays.
inline SaturationPlan saturation_plan(const CompactifiedSurface& s) {
  SaturationPlan plan;
  for (const auto& comp : connected_components(s.ambient, s.boundary)) {
    if (is_negative_definite(s.ambient.gram().principal(comp)))
      plan.d_minus.push_back(comp);
    else
      plan.d_plus.push_back(comp);
  }
  plan.points_to_remove = s.isolated_boundary_points;
  plan.resulting_boundary_ok = is_saturated(apply_plan(s, plan).surface).saturated;
  return plan;
}

enum class AffDim { Two, One, Zero, OneOrZero };

inline std::string to_string(AffDim d) {
  switch (d) {
    case AffDim::Two: return "Two";
    case AffDim::One: return "One";
    case AffDim::Zero: return "Zero";
    case AffDim::OneOrZero: return "OneOrZero";
  }
  return "?";
}

struct AffDimReport {
  AffDim verdict = AffDim::OneOrZero;
  std::vector<Reason> reasons;
  std::vector<FibreTypeReport> components;     // one per boundary component
  std::vector<NodeSet> missing_certificates;   // boundary components lacking a false-fibre certificate
  std::vector<NodeSet> interior_fibre_type;    // fibre-type divisors found among proper curves of X
};

inline constexpr std::size_t kInteriorSearchMaxNodes = 16;

/// Curves of the compactification lying entirely in X (disjoint from D).
inline NodeSet proper_curves_in_interior(const CompactifiedSurface& s) {
  NodeSet out;
  for (auto i : s.interior_curves) {
    bool meets = false;
    for (auto b : s.boundary) meets = meets || s.ambient.gram()(i, b) != 0;
    if (!meets) out.push_back(i);
  }
  return out;
}

/// All connected subsets of `pool` that are of fibre type, by enumeration.
inline std::vector<NodeSet> fibre_type_divisors(const Configuration& config, const NodeSet& pool) {
  std::vector<NodeSet> out;
  const std::size_t n = pool.size();
  if (n > kInteriorSearchMaxNodes) throw std::length_error("fibre_type_divisors: search pool exceeds 16 curves");
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n); ++mask) {
    NodeSet s;
    for (std::size_t k = 0; k < n; ++k)
      if (mask & (std::uint32_t{1} << k)) s.push_back(pool[k]);
    if (!is_connected(config, s)) continue;
    if (!config.nodes()[s.front()].proper) continue;
    if (classify_fibre_type(config, s).verdict == FibreVerdict::FibreType) out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Dimension of the affinisation of a saturated surface. Zero needs false-fibre
/// certificates, One needs an asserted fibration or two fibre-type divisors
/// inside X; otherwise the answer is OneOrZero, never a guess.
inline AffDimReport affinisation_dimension(const CompactifiedSurface& s) {
  validate(s);
  if (!is_saturated(s).saturated) {
    throw not_saturated("affinisation_dimension needs a saturated surface; apply saturation_plan first "
                        "(the affinisation is unchanged by it)");
  }
  AffDimReport rep;
  if (s.boundary.empty()) {
    rep.verdict = AffDim::Zero;
    rep.reasons.push_back({criterion::kEmptyBoundary, "X is proper, H0(X,O) = k"});
    return rep;
  }

  const auto comps = connected_components(s.ambient, s.boundary);
  std::vector<NodeSet> positive;
  for (const auto& c : comps) {
    Inertia in = inertia(s.ambient.gram().principal(c));
    if (in.positive > 0) positive.push_back(c);
  }
  if (!positive.empty()) {
    if (comps.size() > 1) {
      throw inconsistent_data("boundary component " + describe(s.ambient, positive.front()) +
                              " is not negative semidefinite but the boundary has other components, which would be "
                              "negative definite by the Hodge index theorem");
    }
    rep.verdict = AffDim::Two;
    rep.reasons.push_back({criterion::kNotSemidefinite, "component " + describe(s.ambient, positive.front()) + " has inertia " +
                                                            to_string(inertia(s.ambient.gram().principal(positive.front())))});
    return rep;
  }

  for (const auto& c : comps) {
    FibreTypeReport r = classify_fibre_type(s.ambient, c);  // throws on a degenerate kernel
    if (r.verdict != FibreVerdict::FibreType) {
      throw inconsistent_data("saturated boundary component " + describe(s.ambient, c) + " is " + to_string(r.verdict));
    }
    rep.components.push_back(std::move(r));
  }
  rep.reasons.push_back({criterion::kAllFibreType, std::to_string(comps.size()) + " fibre-type component(s), dim X^aff <= 1"});

  // Evidence for One.
  std::vector<Reason> one;
  if (s.fibration_asserted) one.push_back({criterion::kFibrationAsserted, "a fibration supported on the boundary is asserted"});
  NodeSet pool = proper_curves_in_interior(s);
  if (pool.size() <= kInteriorSearchMaxNodes) {
    rep.interior_fibre_type = fibre_type_divisors(s.ambient, pool);
    if (rep.interior_fibre_type.size() >= 2) {
      one.push_back({criterion::kTwoFibreTypeInX, describe(s.ambient, rep.interior_fibre_type[0]) + " and " +
                                                      describe(s.ambient, rep.interior_fibre_type[1]) + " lie in X"});
    }
  } else {
    rep.reasons.push_back({criterion::kRelativeToSupplied, "more than 16 proper curves in X; fibre-type search skipped"});
  }

  // Evidence for Zero.
  ClaimsCheck cc = validate_false_fibre_claims(s.false_fibre_claims, s.ambient);
  if (!cc.ok) throw inconsistent_data(cc.message);
  std::vector<NodeSet> certified;
  for (const auto& c : comps)
    for (const auto& claim : s.false_fibre_claims)
      if (make_node_set(claim.subject) == c) {
        certified.push_back(c);
        break;
      }

  if (!one.empty() && !certified.empty()) {
    throw inconsistent_data("boundary component " + describe(s.ambient, certified.front()) +
                            " is certified a false fibre, yet " + one.front().evidence);
  }
  if (!one.empty()) {
    rep.verdict = AffDim::One;
    rep.reasons.insert(rep.reasons.end(), one.begin(), one.end());
    return rep;
  }
  if (!certified.empty()) {
    rep.verdict = AffDim::Zero;
    for (const auto& c : certified)
      rep.reasons.push_back({criterion::kFalseFibreCover, "false-fibre certificate on " + describe(s.ambient, c)});
    if (certified.size() < comps.size()) {
      rep.reasons.push_back({criterion::kFalseFibrePropagates,
                             "fibre-type components disjoint from a false fibre are false fibres on a proper surface"});
    }
    return rep;
  }
  rep.verdict = AffDim::OneOrZero;
  rep.missing_certificates = comps;
  rep.reasons.push_back({criterion::kUndecided, "no fibration asserted and no false-fibre certificate for " +
                                                    describe(s.ambient, comps.front()) +
                                                    (comps.size() > 1 ? " or the other components" : "")});
  rep.reasons.push_back({criterion::kRelativeToSupplied, std::to_string(rep.interior_fibre_type.size()) +
                                                             " fibre-type divisor(s) among the supplied proper curves of X"});
  return rep;
}

enum class SchemeContractibility { SchemeContractible, NotSchemeContractible, Unknown };

inline std::string to_string(SchemeContractibility c) {
  switch (c) {
    case SchemeContractibility::SchemeContractible: return "scheme_contractible";
    case SchemeContractibility::NotSchemeContractible: return "not_scheme_contractible";
    case SchemeContractibility::Unknown: return "unknown";
  }
  return "?";
}

inline SchemeContractibility contractibility_from_string(const std::string& s) {
  if (s == "scheme_contractible") return SchemeContractibility::SchemeContractible;
  if (s == "not_scheme_contractible") return SchemeContractibility::NotSchemeContractible;
  if (s == "unknown") return SchemeContractibility::Unknown;
  throw std::invalid_argument("unknown contractibility '" + s + "'");
}

struct OracleEntry {
  NodeSet component;
  SchemeContractibility value = SchemeContractibility::Unknown;

  friend bool operator==(const OracleEntry&, const OracleEntry&) = default;
};

enum class SchemeSaturation { SchemeSaturated, NotSchemeSaturated, Unknown };

inline std::string to_string(SchemeSaturation s) {
  switch (s) {
    case SchemeSaturation::SchemeSaturated: return "SchemeSaturated";
    case SchemeSaturation::NotSchemeSaturated: return "NotSchemeSaturated";
    case SchemeSaturation::Unknown: return "Unknown";
  }
  return "?";
}

struct SchemeSaturationReport {
  SchemeSaturation verdict = SchemeSaturation::Unknown;
  bool saturated = false;
  std::vector<Reason> reasons;
};

/// Scheme-saturated iff every negative definite boundary component is not
/// contractible within schemes (and no isolated points were removed).
inline SchemeSaturationReport scheme_saturation_check(const CompactifiedSurface& s, const std::vector<OracleEntry>& oracle) {
  SchemeSaturationReport rep;
  SaturationVerdict sat = is_saturated(s);
  rep.saturated = sat.saturated;
  bool unknown = false, contractible = false;
  if (s.isolated_boundary_points > 0) {
    contractible = true;
    rep.reasons.push_back({criterion::kIsolatedBoundaryPoints, "isolated points can be filled in within schemes"});
  }
  for (const auto& comp : sat.offending) {
    auto it = std::find_if(oracle.begin(), oracle.end(), [&](const OracleEntry& e) { return make_node_set(e.component) == comp; });
    if (it == oracle.end()) {
      throw std::invalid_argument("scheme_saturation_check: no oracle entry for negative definite component " + describe(s.ambient, comp));
    }
    rep.reasons.push_back({criterion::kSchemeOracle, describe(s.ambient, comp) + ": " + to_string(it->value)});
    if (it->value == SchemeContractibility::SchemeContractible) contractible = true;
    if (it->value == SchemeContractibility::Unknown) unknown = true;
  }
  if (contractible)
    rep.verdict = SchemeSaturation::NotSchemeSaturated;
  else if (unknown)
    rep.verdict = SchemeSaturation::Unknown;
  else
    rep.verdict = SchemeSaturation::SchemeSaturated;
  if (sat.offending.empty() && s.isolated_boundary_points == 0) {
    rep.reasons.push_back({criterion::kNoNegativeDefiniteComponent, "saturated, hence scheme-saturated"});
  }
  return rep;
}

}  // namespace surfsat
