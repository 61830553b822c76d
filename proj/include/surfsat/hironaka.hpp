#pragma once

#include "surfsat/elliptic.hpp"
#include "surfsat/lattice.hpp"
#include "surfsat/saturation.hpp"

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace surfsat {

/// Blowup of P^2 at n distinct points of a smooth plane cubic, with the
/// strict transform C of the cubic as the boundary.
struct HironakaBuild {
  NSLattice lattice;
  ClassRecord cubic;                      // 3L - E_1 - ... - E_n
  std::vector<ClassRecord> exceptionals;  // E_1, ..., E_n
  Rational boundary_self_intersection;    // 9 - n
  ObstructionResult obstruction;
  CompactifiedSurface surface;            // boundary {C}, interior E_1..E_n
  std::vector<OracleEntry> scheme_oracle; // filled for n >= 10
};

inline HironakaBuild hironaka_build(const WeierstrassCurve& curve, std::span<const WeightedPoint> points,
                                    bool fibration_asserted = false) {
  const std::size_t n = points.size();
  if (n == 0) throw std::invalid_argument("hironaka_build: at least one point is required");
  ObstructionResult obstruction = sum_obstruction(curve, points);  // checks distinct, on curve

  NSLattice lat = projective_plane();
  std::vector<ClassRecord> tracked{{{3}, 1, "C", true}};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<int> mult(tracked.size(), 0);
    mult[0] = 1;  // a smooth cubic passes simply through each point
    BlowupResult b = blowup(lat, tracked, mult, "E" + std::to_string(i + 1));
    lat = std::move(b.lattice);
    tracked = std::move(b.classes);
    tracked.push_back(std::move(b.exceptional));
  }

  Configuration config = configuration_from_classes(lat, tracked);
  HironakaBuild out{lat, tracked[0], {tracked.begin() + 1, tracked.end()}, config.gram()(0, 0), obstruction,
                    make_surface(config, {0}), {}};
  out.surface.fibration_asserted = fibration_asserted;

  if (n == 9 && obstruction.verdict == Obstruction::Found) {
    if (fibration_asserted) {
      throw inconsistent_data("a fibration is asserted but p_1 + ... + p_9 = " + to_string(obstruction.sum) +
                              " is non-torsion, so C supports no fibre");
    }
    out.surface.false_fibre_claims.push_back(
        {{0}, CertificateKind::GroupLawObstruction, "sum of the nine points " + to_string(obstruction.sum) + " is non-torsion"});
  }
  if (n >= 10) {
    out.scheme_oracle.push_back({{0}, obstruction.verdict == Obstruction::Found ? SchemeContractibility::NotSchemeContractible
                                                                                 : SchemeContractibility::Unknown});
  }
  return out;
}

}  // namespace surfsat
