#include "surfsat/elliptic.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace surfsat;

namespace {

// 37a1: y^2 + y = x^3 - x, rank 1, generated by (0,0).
WeierstrassCurve curve37a() { return {0, 0, 1, -1, 0}; }
ECPoint P37() { return ECPoint::affine(0, 0); }

ECPoint pt(Rational x, Rational y) { return ECPoint::affine(std::move(x), std::move(y)); }

std::vector<WeightedPoint> multiples(const WeierstrassCurve& e, const ECPoint& p, std::initializer_list<int> ks) {
  std::vector<WeightedPoint> out;
  for (int k : ks) out.push_back({scalar_mul(e, k, p), 1});
  return out;
}

}  // namespace

TEST(GroupLaw, MultiplesOn37a) {
  auto e = curve37a();
  EXPECT_EQ(scalar_mul(e, 2, P37()), pt(1, 0));
  EXPECT_EQ(scalar_mul(e, 3, P37()), pt(-1, -1));
  EXPECT_EQ(scalar_mul(e, 4, P37()), pt(2, -3));
  EXPECT_EQ(scalar_mul(e, 5, P37()), pt(Rational(1, 4), Rational(-5, 8)));
  EXPECT_EQ(scalar_mul(e, 6, P37()), pt(6, 14));
  EXPECT_EQ(scalar_mul(e, 9, P37()), pt(Rational(-20, 49), Rational(-435, 343)));
  EXPECT_EQ(scalar_mul(e, -1, P37()), pt(0, -1));
  EXPECT_EQ(scalar_mul(e, 0, P37()), ECPoint::infinity());
}

TEST(GroupLaw, SmallTorsionCurve) {
  auto e = WeierstrassCurve::short_form(0, 1);
  auto p = pt(2, 3);
  EXPECT_EQ(add(e, p, p), pt(0, 1));
  EXPECT_EQ(scalar_mul(e, 3, p), pt(-1, 0));
  EXPECT_EQ(scalar_mul(e, 6, p), ECPoint::infinity());
  EXPECT_EQ(add(e, p, negate(e, p)), ECPoint::infinity());
  EXPECT_EQ(add(e, ECPoint::infinity(), p), p);
}

TEST(GroupLaw, Rejections) {
  EXPECT_THROW(WeierstrassCurve::short_form(0, 0), std::invalid_argument);
  EXPECT_THROW(WeierstrassCurve::short_form(-3, 2), std::invalid_argument);
  auto e = curve37a();
  EXPECT_THROW(add(e, pt(1, 1), P37()), std::invalid_argument);
  EXPECT_THROW(is_torsion(e, pt(5, 5)), std::invalid_argument);
}

TEST(GroupLaw, Printing) {
  EXPECT_EQ(to_string(ECPoint::infinity()), "O");
  EXPECT_EQ(to_string(pt(Rational(1, 4), Rational(-5, 8))), "(1/4,-5/8)");
}

TEST(Torsion, Examples) {
  EXPECT_EQ(is_torsion(WeierstrassCurve::short_form(0, 1), pt(2, 3)), (TorsionResult{true, 6}));
  EXPECT_EQ(is_torsion(WeierstrassCurve::short_form(0, 1), pt(-1, 0)), (TorsionResult{true, 2}));
  EXPECT_EQ(is_torsion(curve37a(), P37()), (TorsionResult{false, 0}));
  EXPECT_EQ(is_torsion(curve37a(), ECPoint::infinity()), (TorsionResult{true, 1}));
  // y^2 + y = x^3 - x^2 has a rational point of order 5 at (0,0)
  EXPECT_EQ(is_torsion(WeierstrassCurve(0, -1, 1, 0, 0), pt(0, 0)), (TorsionResult{true, 5}));
}

TEST(Obstruction, NinePointsOn37a) {
  auto e = curve37a();
  auto pts = multiples(e, P37(), {1, 2, 3, 4, 5, 6, 7, 8, 9});
  auto r = sum_obstruction(e, pts);
  EXPECT_EQ(r.verdict, Obstruction::Found);
  EXPECT_EQ(r.sum, scalar_mul(e, 45, P37()));
  EXPECT_EQ(to_string(r.verdict), "ObstructionFound");
}

TEST(Obstruction, TorsionSumIsInconclusive) {
  auto e = curve37a();
  auto pts = multiples(e, P37(), {1, 2, 3, 4, 5, -1, -2, -3, -9});
  auto r = sum_obstruction(e, pts);
  EXPECT_EQ(r.verdict, Obstruction::Inconclusive);
  EXPECT_EQ(r.sum, ECPoint::infinity());

  auto two = WeierstrassCurve::short_form(-1, 0);
  std::vector<WeightedPoint> halves{{pt(0, 0), 1}, {pt(1, 0), 1}, {pt(-1, 0), 1}};
  EXPECT_EQ(sum_obstruction(two, halves).verdict, Obstruction::Inconclusive);
}

TEST(Obstruction, Multiplicities) {
  auto e = curve37a();
  std::vector<WeightedPoint> w{{P37(), 2}, {scalar_mul(e, -2, P37()), 1}};
  EXPECT_EQ(sum_obstruction(e, w).verdict, Obstruction::Inconclusive);
  std::vector<WeightedPoint> zero{{P37(), 0}};
  EXPECT_THROW(sum_obstruction(e, zero), std::invalid_argument);
  std::vector<WeightedPoint> repeated{{P37(), 1}, {P37(), 1}};
  EXPECT_THROW(sum_obstruction(e, repeated), std::invalid_argument);
}

TEST(GroupLawProperty, AbelianGroupAxioms) {
  auto e = curve37a();
  std::mt19937_64 rng(71);
  std::uniform_int_distribution<int> k(-8, 8);
  for (int trial = 0; trial < 100; ++trial) {
    auto a = scalar_mul(e, k(rng), P37()), b = scalar_mul(e, k(rng), P37()), c = scalar_mul(e, k(rng), P37());
    EXPECT_EQ(add(e, add(e, a, b), c), add(e, a, add(e, b, c)));
    EXPECT_EQ(add(e, a, b), add(e, b, a));
    EXPECT_EQ(negate(e, negate(e, a)), a);
    EXPECT_TRUE(on_curve(e, add(e, a, b)));
  }
  for (int m = -6; m <= 6; ++m)
    for (int n = -6; n <= 6; ++n)
      EXPECT_EQ(scalar_mul(e, m + n, P37()), add(e, scalar_mul(e, m, P37()), scalar_mul(e, n, P37())));
}

TEST(GroupLawProperty, NagellLutzConsistency) {
  // Integral short forms: torsion points have integer coordinates and y = 0
  // or y^2 divides 4a^3 + 27b^2.
  for (int a = -4; a <= 4; ++a)
    for (int b = -4; b <= 4; ++b) {
      if (4 * a * a * a + 27 * b * b == 0) continue;
      auto e = WeierstrassCurve::short_form(a, b);
      const int d = 4 * a * a * a + 27 * b * b;
      for (int x = -6; x <= 6; ++x)
        for (int y = -12; y <= 12; ++y) {
          if (!e.contains(x, y)) continue;
          auto t = is_torsion(e, pt(x, y));
          bool nl = y == 0 || d % (y * y) == 0;
          if (t.torsion) {
            EXPECT_TRUE(nl) << a << " " << b << " " << x << " " << y;
            for (int m = 1; m < t.order; ++m) {
              auto q = scalar_mul(e, m, pt(x, y));
              EXPECT_TRUE(is_integral(q.x()) && is_integral(q.y()));
            }
          }
          if (!nl) {
            EXPECT_FALSE(t.torsion);
          }
        }
    }
}
