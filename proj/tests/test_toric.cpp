#include "support.hpp"

#include <gtest/gtest.h>

using namespace toricy;
using namespace toricy::testing;

TEST(Weights, ParseAndNormalize) {
  WeightSystem w = WeightSystem::parse("1,1,1,3,4");
  EXPECT_EQ(w.weights(), (std::vector<long>{4, 3, 1, 1, 1}));
  EXPECT_EQ(w.to_string(), "1,1,1,3,4");
  EXPECT_EQ(w.sum(), 10);
  EXPECT_TRUE(w.is_normalized());
  EXPECT_FALSE(WeightSystem({1, 2, 2}).is_normalized());
  EXPECT_THROW(WeightSystem::parse("1,x,2"), WeightError);
  EXPECT_THROW(WeightSystem({2, 4}), WeightError);
  EXPECT_THROW(WeightSystem({0, 1}), WeightError);
}

TEST(Wps, RaysSatisfyWeightRelation) {
  Rng rng(31);
  for (int i = 0; i < 100; ++i) {
    std::vector<long> ws;
    std::size_t n = uniform(rng, 2, 6);
    for (std::size_t k = 0; k < n; ++k) ws.push_back(uniform(rng, 1, 9));
    ws[0] = 1;
    WeightSystem w(ws);
    if (!w.is_normalized()) {
      EXPECT_THROW(wps(w), WeightError);
      continue;
    }
    ToricVarietyData x = wps(w);
    ASSERT_EQ(x.rays.size(), n);
    IntVector s(n - 1);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j + 1 < n; ++j) s[j] += w[k] * x.rays[k][j];
    for (const auto& c : s) EXPECT_EQ(c, 0);
    // the rays span N, so the class group is Z
    EXPECT_EQ(x.class_group.free_rank, 1u);
    EXPECT_TRUE(x.class_group.invariant_factors.empty());
  }
}

TEST(Wps, GradingRoundTrip) {
  for (auto ws : {std::vector<long>{1, 1, 1, 1, 1}, {1, 1, 1, 3, 4}, {2, 2, 3, 4, 5}, {1, 2, 3}}) {
    WeightSystem w(ws);
    ToricVarietyData x = wps(w);
    ASSERT_EQ(x.grading.rows(), 1u);
    IntVector g(x.grading.row(0).begin(), x.grading.row(0).end());
    if (g[0] < 0)
      for (auto& c : g) c = -c;
    for (std::size_t k = 0; k < w.size(); ++k) EXPECT_EQ(g[k], w[k]);
  }
}

TEST(Wps, GorensteinArithmeticMatchesPolytope) {
  for (const auto& w : enumerate_normalized_weights(4, 6)) {
    RationalPolytope theta = anticanonical_polytope(wps(w));
    EXPECT_EQ(theta.is_lattice(), wps_is_gorenstein_arith(w)) << w.to_string();
  }
}

TEST(Wps, CanonicalArithmeticMatchesPolytope) {
  for (const auto& w : enumerate_normalized_weights(3, 8)) {
    ToricVarietyData x = wps(w);
    EXPECT_EQ(classify(hull(x.rays)).is_canonical, wps_is_canonical_arith(w)) << w.to_string();
  }
}

TEST(Variety, FromPolytopeOfP4) {
  RationalPolytope fan = hull(std::vector<IntVector>{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {-1, -1, -1, -1}});
  ToricVarietyData x = variety_from_polytope(polar(fan));
  EXPECT_EQ(x.rays.size(), 5u);
  EXPECT_EQ(x.class_group.free_rank, 1u);
  EXPECT_EQ(lattice_points(anticanonical_polytope(x)).size(), 126u);
}

TEST(Variety, NonCanonicalRejected) {
  // (1,0) and (0,1) are interior to this fan polytope
  auto d = polar(hull(std::vector<IntVector>{{3, -1}, {-1, 3}, {-1, -1}}));
  EXPECT_THROW(variety_from_polytope(d), NotCanonicalError);
}

TEST(Variety, MonomialExponents) {
  ToricVarietyData x = wps(WeightSystem({1, 1, 1}));
  for (const auto& u : lattice_points(anticanonical_polytope(x))) {
    IntVector e = monomial_exponents(x, u);
    Integer total = 0;
    for (const auto& a : e) total += a;
    EXPECT_EQ(total, 3);
    EXPECT_EQ(degree(x, e)[0] * (x.grading(0, 0) > 0 ? 1 : -1), 3);
  }
  EXPECT_THROW(monomial_exponents(x, IntVector{5, 5}), PreconditionError);
}

TEST(FiniteQuotient, QuinticMirrorGroup) {
  // P^4 / (Z/5)^3: the ambient of the mirror quintic
  ToricVarietyData x = wps(WeightSystem({1, 1, 1, 1, 1}));
  IntMatrix gens{{1, 4, 0, 0}, {1, 0, 4, 0}, {1, 0, 0, 4}};
  // express the generators in N coordinates: rays are rows of x.p_matrix
  RatMatrix g(3, 4);
  IntMatrix first4 = x.p_matrix.select_rows(std::vector<std::size_t>{0, 1, 2, 3});
  for (std::size_t i = 0; i < 3; ++i) {
    RatVector row(4);
    for (std::size_t j = 0; j < 4; ++j) row[j] = make_rational(gens(i, j), 5);
    auto r = row_times<Rational, Rational>(row, to_rational(first4));
    for (std::size_t j = 0; j < 4; ++j) g(i, j) = r[j];
  }
  QuotientResult q = finite_quotient(x, g);
  EXPECT_EQ(q.group.invariant_factors, (std::vector<Integer>{5, 5, 5}));
  EXPECT_EQ(q.variety.class_group, q.expected);
  EXPECT_EQ(lattice_points(anticanonical_polytope(q.variety)).size(), 6u);
}

TEST(FiniteQuotient, ImprimitiveRay) {
  ToricVarietyData x = variety_from_rays({{1, 0}, {0, 1}, {-1, -1}});
  // N' = N + (1/2)e1 makes e1 twice a lattice vector
  RatMatrix g(1, 2);
  g(0, 0) = make_rational(1, 2);
  EXPECT_THROW(finite_quotient(x, g), ImprimitiveRayError);
}

TEST(Strata, P2WithCubic) {
  ToricVarietyData x = wps(WeightSystem({1, 1, 1}));
  RationalPolytope theta = anticanonical_polytope(x);
  EXPECT_EQ(stratum_status(x, theta, {0}).status, Stratum::meets_general_member);
  EXPECT_EQ(stratum_status(x, theta, {0, 1}).status, Stratum::meets_general_member);
  EXPECT_EQ(stratum_status(x, theta, {0, 1, 2}).status, Stratum::empty);
  // the hexagon's polar drops the pure cubes, so every coordinate point lies on each member
  RationalPolytope small = polar(hull(std::vector<IntVector>{{1, 0}, {0, 1}, {-1, -1}, {1, 1}, {-1, 0}, {0, -1}}));
  std::size_t contained = 0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j)
      if (stratum_status(x, small, {i, j}).status == Stratum::contained_in_general_member) ++contained;
  EXPECT_EQ(contained, 3u);
}
