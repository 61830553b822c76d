#include "surfsat/config.hpp"

#include "generators.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace surfsat;

namespace {

Configuration make(std::vector<std::string> names, std::vector<std::vector<Rational>> rows) {
  std::vector<CurveNode> nodes;
  for (std::size_t i = 0; i < names.size(); ++i) nodes.push_back({i, names[i], 0, true});
  return Configuration(std::move(nodes), SymmetricMatrix::from_rows(rows));
}

Configuration i3() { return gen::kodaira_cycle(3); }

}  // namespace

TEST(Configuration, RejectsNegativeOffDiagonal) {
  EXPECT_THROW(make({"A", "B"}, {{-1, -1}, {-1, -1}}), std::invalid_argument);
}

TEST(Configuration, RejectsSizeMismatchAndNegativeGenus) {
  EXPECT_THROW(Configuration({{0, "A", 0, true}}, SymmetricMatrix(2)), std::invalid_argument);
  EXPECT_THROW(Configuration({{0, "A", -1, true}}, SymmetricMatrix(1)), std::invalid_argument);
}

TEST(ConnectedComponents, Examples) {
  auto two = make({"A", "B"}, {{-1, 0}, {0, -1}});
  EXPECT_EQ(connected_components(two, two.all_nodes()), (std::vector<NodeSet>{{0}, {1}}));

  EXPECT_EQ(connected_components(i3(), {0, 1, 2}), (std::vector<NodeSet>{{0, 1, 2}}));

  auto chain_plus = make({"A", "B", "C"}, {{-2, 1, 0}, {1, -2, 0}, {0, 0, -1}});
  EXPECT_EQ(connected_components(chain_plus, chain_plus.all_nodes()), (std::vector<NodeSet>{{0, 1}, {2}}));
}

TEST(ConnectedComponents, RationalEntriesCountAsAdjacent) {
  auto c = make({"A", "B"}, {{Rational(-1, 2), Rational(1, 3)}, {Rational(1, 3), -1}});
  EXPECT_EQ(connected_components(c, c.all_nodes()).size(), 1u);
}

TEST(IntersectionNumber, Examples) {
  auto a = make({"A"}, {{-2}});
  EXPECT_EQ(intersection_number(a, Divisor::prime(0), Divisor::prime(0)), -2);

  auto i2 = make({"A", "B"}, {{-2, 2}, {2, -2}});
  Divisor f = reduced({0, 1});
  EXPECT_EQ(intersection_number(i2, f, f), 0);

  EXPECT_EQ(intersection_number(i2, Divisor{}, f), 0);
}

TEST(IntersectionNumber, UnknownNodeRejected) {
  auto a = make({"A"}, {{-2}});
  EXPECT_THROW(intersection_number(a, Divisor::prime(3), Divisor::prime(0)), std::out_of_range);
}

TEST(Restrict, Examples) {
  Configuration empty = restrict_to(i3(), {});
  EXPECT_EQ(empty.size(), 0u);

  Configuration two = restrict_to(i3(), {0, 2});
  EXPECT_EQ(two.gram(), (SymmetricMatrix{{-2, 1}, {1, -2}}));
  EXPECT_EQ(two.origin(), (std::vector<NodeId>{0, 2}));

  std::vector<CurveNode> nodes{{0, "A", 1, true}, {1, "B", 3, false}};
  Configuration c(nodes, SymmetricMatrix{{0, 1}, {1, -1}});
  Configuration r = restrict_to(c, {1});
  EXPECT_EQ(r.node(0).genus, 3);
  EXPECT_FALSE(r.node(0).proper);
  EXPECT_EQ(r.node(0).name, "B");
}

TEST(Divisor, SupportAndEffectivity) {
  Divisor d = Divisor::prime(0, 2) - Divisor::prime(1);
  EXPECT_EQ(support(d), (NodeSet{0, 1}));
  EXPECT_FALSE(is_effective(d));
  EXPECT_EQ(support(reduced({0, 1})), (NodeSet{0, 1}));
  Divisor zero;
  EXPECT_TRUE(support(zero).empty());
  EXPECT_TRUE(is_effective(zero));
  EXPECT_TRUE((Divisor::prime(0) - Divisor::prime(0)).is_zero());
}

TEST(ConfigProperty, ComponentsMatchBreadthFirstSearch) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    auto c = gen::configuration(rng, 1 + trial % 10, -3, 2, 2, 0.7);
    NodeSet subset;
    for (NodeId i = 0; i < c.size(); ++i)
      if (gen::uniform(rng, 0, 2) > 0) subset.push_back(i);
    auto rows = c.gram().rows();
    auto expected = oracle::components(rows, subset);
    std::sort(expected.begin(), expected.end());
    EXPECT_EQ(connected_components(c, subset), expected);
  }
}

TEST(ConfigProperty, IntersectionIsSymmetricBilinear) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 200; ++trial) {
    auto c = gen::configuration(rng, 1 + trial % 8, -4, 4, 3);
    auto random_divisor = [&] {
      Divisor d;
      for (NodeId i = 0; i < c.size(); ++i) d.set(i, gen::small_rational(rng));
      return d;
    };
    Divisor a = random_divisor(), b = random_divisor(), x = random_divisor();
    Rational s = gen::small_rational(rng);
    EXPECT_EQ(intersection_number(c, a, b), intersection_number(c, b, a));
    EXPECT_EQ(intersection_number(c, a + s * b, x), intersection_number(c, a, x) + s * intersection_number(c, b, x));
  }
}

TEST(ConfigProperty, RestrictPreservesIntersections) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    auto c = gen::configuration(rng, 2 + trial % 8, -4, 4, 3);
    NodeSet subset;
    for (NodeId i = 0; i < c.size(); ++i)
      if (gen::uniform(rng, 0, 1)) subset.push_back(i);
    Configuration r = restrict_to(c, subset);
    Divisor amb_a, amb_b, loc_a, loc_b;
    for (std::size_t k = 0; k < subset.size(); ++k) {
      Rational x = gen::small_rational(rng), y = gen::small_rational(rng);
      amb_a.set(subset[k], x);
      loc_a.set(k, x);
      amb_b.set(subset[k], y);
      loc_b.set(k, y);
    }
    EXPECT_EQ(intersection_number(r, loc_a, loc_b), intersection_number(c, amb_a, amb_b));
  }
}
