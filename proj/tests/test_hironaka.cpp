#include "surfsat/hironaka.hpp"

#include <gtest/gtest.h>

using namespace surfsat;

namespace {

WeierstrassCurve curve37a() { return {0, 0, 1, -1, 0}; }

std::vector<WeightedPoint> multiples(std::initializer_list<int> ks) {
  std::vector<WeightedPoint> out;
  for (int k : ks) out.push_back({scalar_mul(curve37a(), k, ECPoint::affine(0, 0)), 1});
  return out;
}

}  // namespace

TEST(Hironaka, NineNonTorsionPoints) {
  auto h = hironaka_build(curve37a(), multiples({1, 2, 3, 4, 5, 6, 7, 8, 9}));
  EXPECT_EQ(h.boundary_self_intersection, 0);
  EXPECT_EQ(h.obstruction.verdict, Obstruction::Found);
  EXPECT_EQ(h.cubic.cls, (ClassVector{3, -1, -1, -1, -1, -1, -1, -1, -1, -1}));
  EXPECT_EQ(h.exceptionals.size(), 9u);
  EXPECT_EQ(h.surface.boundary, (NodeSet{0}));
  EXPECT_EQ(h.surface.ambient.node(0).genus, 1);
  EXPECT_EQ(h.surface.ambient.node(4).name, "E4");
  ASSERT_EQ(h.surface.false_fibre_claims.size(), 1u);
  EXPECT_EQ(h.surface.false_fibre_claims[0].certificate, CertificateKind::GroupLawObstruction);
  EXPECT_TRUE(is_saturated(h.surface).saturated);
  EXPECT_EQ(affinisation_dimension(h.surface).verdict, AffDim::Zero);
  EXPECT_TRUE(h.scheme_oracle.empty());
}

TEST(Hironaka, NineTorsionSumPoints) {
  auto pts = multiples({1, 2, 3, 4, 5, -1, -2, -3, -9});
  auto h = hironaka_build(curve37a(), pts);
  EXPECT_EQ(h.obstruction.verdict, Obstruction::Inconclusive);
  EXPECT_TRUE(h.surface.false_fibre_claims.empty());
  EXPECT_EQ(affinisation_dimension(h.surface).verdict, AffDim::OneOrZero);
  auto f = hironaka_build(curve37a(), pts, true);
  EXPECT_EQ(affinisation_dimension(f.surface).verdict, AffDim::One);
}

TEST(Hironaka, FibrationContradictsObstruction) {
  EXPECT_THROW(hironaka_build(curve37a(), multiples({1, 2, 3, 4, 5, 6, 7, 8, 9}), true), inconsistent_data);
}

TEST(Hironaka, TenPoints) {
  auto h = hironaka_build(curve37a(), multiples({1, 2, 3, 4, 5, 6, 7, 8, 9, 10}));
  EXPECT_EQ(h.boundary_self_intersection, -1);
  EXPECT_FALSE(is_saturated(h.surface).saturated);
  auto plan = saturation_plan(h.surface);
  EXPECT_EQ(plan.d_minus, (std::vector<NodeSet>{{0}}));
  EXPECT_TRUE(plan.resulting_boundary_ok);
  EXPECT_EQ(scheme_saturation_check(h.surface, h.scheme_oracle).verdict, SchemeSaturation::SchemeSaturated);
}

TEST(Hironaka, FewerPointsGiveAmpleBoundary) {
  for (int n = 1; n <= 8; ++n) {
    std::vector<WeightedPoint> pts;
    for (int k = 1; k <= n; ++k) pts.push_back({scalar_mul(curve37a(), k, ECPoint::affine(0, 0)), 1});
    auto h = hironaka_build(curve37a(), pts);
    EXPECT_EQ(h.boundary_self_intersection, 9 - n);
    EXPECT_EQ(affinisation_dimension(h.surface).verdict, AffDim::Two);
  }
}

TEST(Hironaka, Rejections) {
  EXPECT_THROW(hironaka_build(curve37a(), {}), std::invalid_argument);
  EXPECT_THROW(hironaka_build(curve37a(), multiples({1, 1})), std::invalid_argument);
  std::vector<WeightedPoint> off{{ECPoint::affine(3, 3), 1}};
  EXPECT_THROW(hironaka_build(curve37a(), off), std::invalid_argument);
}
