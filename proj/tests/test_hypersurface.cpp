#include "support.hpp"

#include <gtest/gtest.h>

using namespace toricy;
using namespace toricy::testing;

namespace {

FamilyDatum full_family(const WeightSystem& w) {
  ToricVarietyData x = wps(w);
  RationalPolytope theta = anticanonical_polytope(x);
  auto pts = theta_points_from_exponents(x, anticanonical_exponents(w));
  return FamilyDatum::make(x, hull(pts), pts);
}

}  // namespace

TEST(Exponents, CountsAndDegree) {
  auto e = anticanonical_exponents(WeightSystem({1, 1, 1, 1, 1}));
  EXPECT_EQ(e.size(), 126u);
  WeightSystem w({1, 1, 1, 3, 4});
  for (const auto& a : anticanonical_exponents(w)) {
    long d = 0;
    for (std::size_t i = 0; i < w.size(); ++i) d += a[i].get_si() * w[i];
    EXPECT_EQ(d, w.sum());
  }
}

TEST(Exponents, PointsMatchThetaLatticePoints) {
  for (const auto& w : enumerate_normalized_weights(4, 5)) {
    ToricVarietyData x = wps(w);
    auto from_exps = theta_points_from_exponents(x, anticanonical_exponents(w));
    EXPECT_EQ(from_exps, lattice_points(anticanonical_polytope(x))) << w.to_string();
  }
}

TEST(Family, Validation) {
  ToricVarietyData x = wps(WeightSystem({1, 1, 1}));
  RationalPolytope theta = anticanonical_polytope(x);
  EXPECT_NO_THROW(FamilyDatum::make(x, theta));
  auto big = hull(std::vector<IntVector>{{3, 0}, {0, 3}, {-3, -3}});
  EXPECT_THROW(FamilyDatum::make(x, big), PreconditionError);
  auto off = hull(std::vector<IntVector>{{0, 0}, {1, 0}, {0, 1}});
  EXPECT_THROW(FamilyDatum::make(x, off), PreconditionError);
  EXPECT_THROW(FamilyDatum::make(x, theta, {{0, 0}}), PreconditionError);
}

TEST(Regularity, QuinticIsRegular) {
  auto r = regularity_report(full_family(WeightSystem({1, 1, 1, 1, 1})));
  EXPECT_TRUE(r.irreducible);
  EXPECT_TRUE(r.well_formed);
  EXPECT_TRUE(r.normal_sufficient);
  EXPECT_TRUE(r.canonical_newton);
  EXPECT_TRUE(r.conjectural_witnesses.empty());
}

TEST(Regularity, AlwaysIrreducibleForLatticeNewton) {
  // integral minimum pairing in [-1, 0) forces every ray onto the boundary
  Rng rng(42);
  for (int i = 0; i < 60; ++i) {
    GoodPair gp = random_good_pair(rng, 2 + i % 3);
    ToricVarietyData x = variety_from_polytope(gp.delta2);
    auto r = regularity_report(FamilyDatum::make(x, gp.delta1));
    EXPECT_TRUE(r.irreducible);
    EXPECT_TRUE(r.non_boundary_rays.empty());
  }
}

TEST(Discrepancy, CrepantRaysHaveZeroDiscrepancy) {
  for (auto ws : {std::vector<long>{1, 1, 1, 1, 2}, {1, 1, 2, 2, 2}, {1, 1, 1, 3, 3}}) {
    FamilyDatum fd = full_family(WeightSystem(ws));
    for (const auto& n : crepant_rays(fd)) EXPECT_EQ(discrepancy(fd, n), 0);
    for (const auto& n : fd.ambient.rays) EXPECT_EQ(discrepancy(fd, n), 0);
  }
  FamilyDatum fd = full_family(WeightSystem({1, 1, 1}));
  EXPECT_THROW(discrepancy(fd, IntVector{0, 0}), PreconditionError);
}

TEST(Quasismooth, Examples) {
  for (auto [ws, expect] : std::vector<std::pair<std::vector<long>, bool>>{
           {{1, 1, 1, 1, 1}, true}, {{1, 1, 1, 1, 2}, true}, {{1, 1, 1, 3, 4}, false}, {{1, 1, 1, 1, 1, 2}, true},
           {{1, 1, 2, 3, 3, 3}, false}}) {
    WeightSystem w(ws);
    auto r = quasismooth_general_wps(w, anticanonical_exponents(w));
    EXPECT_EQ(r.quasismooth, expect) << w.to_string();
    EXPECT_EQ(r.witness.empty(), expect);
  }
}

TEST(Quasismooth, MonotoneInSupport) {
  // dropping monomials can only destroy quasismoothness
  Rng rng(41);
  for (const auto& w : enumerate_normalized_weights(4, 4)) {
    auto all = anticanonical_exponents(w);
    bool full = quasismooth_general_wps(w, all).quasismooth;
    std::vector<IntVector> sub;
    for (const auto& a : all)
      if (uniform(rng, 0, 3)) sub.push_back(a);
    if (sub.empty()) continue;
    if (quasismooth_general_wps(w, sub).quasismooth) {
      EXPECT_TRUE(full) << w.to_string();
    }
  }
}

TEST(Wellformed, GcdCriterionMatchesReport) {
  // for P(w) every pair of rays spans a cone, so well-formedness of the family
  // is the codimension-two gcd condition when Theta is integral
  for (const auto& w : enumerate_normalized_weights(4, 6)) {
    if (!wps_is_gorenstein_arith(w)) continue;
    FamilyDatum fd = full_family(w);
    EXPECT_EQ(regularity_report(fd).well_formed, wellformed_wps_gcd(w)) << w.to_string();
  }
}
