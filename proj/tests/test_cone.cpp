#include "dtflux/cone.hpp"
#include "dtflux/simplex.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace dtflux;
using dtflux::testing::in_conic_hull;
using dtflux::testing::random_cone;
using dtflux::testing::rv;

namespace {

// Extreme rays of a pointed cone by brute force: every rank n-1 active set.
std::vector<RatVector> brute_force_rays(const HCone& c) {
  const std::size_t n = c.dim, m = c.ineq.size();
  std::vector<RatVector> out;
  for (std::size_t mask = 0; mask < (std::size_t(1) << m); ++mask) {
    RatMatrix a(0, n);
    for (const auto& r : c.eq) a.append_row(r);
    for (std::size_t i = 0; i < m; ++i)
      if (mask >> i & 1) a.append_row(c.ineq[i]);
    if (a.rows() == 0) continue;
    auto ker = kernel_basis(a);
    if (ker.size() != 1) continue;
    for (int s : {1, -1}) {
      RatVector v = ker[0];
      for (auto& x : v) x *= s;
      if (contains(c, v)) {
        v = primitive(v);
        if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
      }
    }
  }
  return out;
}

}  // namespace

TEST(Simplex, SmallOptimum) {
  // max x + y s.t. x + 2y <= 4, 3x + y <= 6, x, y >= 0  ->  (8/5, 6/5)
  LinearProgram<Rational> lp(2, true);
  lp.add_row(rv({1, 2}), RowSense::le, Rational(4));
  lp.add_row(rv({3, 1}), RowSense::le, Rational(6));
  lp.objective = rv({-1, -1});
  auto r = solve_lp(lp);
  ASSERT_EQ(r.status, LpStatus::optimal);
  EXPECT_EQ(r.x[0], Rational(8, 5));
  EXPECT_EQ(r.x[1], Rational(6, 5));
  EXPECT_EQ(r.objective, Rational(-14, 5));
}

TEST(Simplex, UnboundedAndFreeVariables) {
  LinearProgram<Rational> lp(2, false);
  lp.add_row(rv({1, -1}), RowSense::eq, Rational(3));
  lp.objective = rv({-1, 0});
  EXPECT_EQ(solve_lp(lp).status, LpStatus::unbounded);
  lp.objective = rv({1, 1});
  lp.add_row(rv({0, 1}), RowSense::ge, Rational(-5));
  auto r = solve_lp(lp);
  ASSERT_EQ(r.status, LpStatus::optimal);
  EXPECT_EQ(r.x[0], Rational(-2));
  EXPECT_EQ(r.x[1], Rational(-5));
}

TEST(Simplex, InfeasibleHasVerifiedFarkasCertificate) {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> d(-3, 3), s(0, 2);
  int infeasible = 0;
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t n = 2 + trial % 4, m = 2 + trial % 5;
    LinearProgram<Rational> lp(n, trial % 2 == 0);
    for (std::size_t i = 0; i < m; ++i) {
      RatVector row(n);
      for (auto& x : row) x = d(rng);
      lp.add_row(row, static_cast<RowSense>(s(rng)), Rational(d(rng)));
    }
    auto r = solve_lp(lp);
    if (r.status == LpStatus::infeasible) {
      ++infeasible;
      EXPECT_TRUE(verify_farkas(lp, r.farkas));
    } else {
      for (std::size_t i = 0; i < m; ++i) {
        Rational v = dot(lp.rows[i], r.x);
        if (lp.senses[i] == RowSense::eq) EXPECT_EQ(v, lp.rhs[i]);
        if (lp.senses[i] == RowSense::ge) EXPECT_GE(v, lp.rhs[i]);
        if (lp.senses[i] == RowSense::le) EXPECT_LE(v, lp.rhs[i]);
      }
      for (std::size_t j = 0; j < n; ++j)
        if (lp.nonneg[j]) EXPECT_GE(r.x[j], 0);
    }
  }
  EXPECT_GT(infeasible, 30);
}

TEST(Simplex, DoubleAgreesWithRational) {
  std::mt19937_64 rng(22);
  std::uniform_int_distribution<int> d(-5, 5);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 3, m = 4;
    LinearProgram<Rational> q(n, true);
    LinearProgram<double> f(n, true);
    for (std::size_t i = 0; i < m; ++i) {
      RatVector row(n);
      std::vector<double> rowd(n);
      for (std::size_t j = 0; j < n; ++j) rowd[j] = to_double(row[j] = d(rng));
      int b = d(rng) + 6;
      q.add_row(row, RowSense::le, Rational(b));
      f.add_row(rowd, RowSense::le, b);
    }
    q.objective = rv({-1, -2, -1});
    f.objective = {-1, -2, -1};
    auto rq = solve_lp(q);
    auto rf = solve_lp(f);
    ASSERT_EQ(rq.status, rf.status);
    if (rq.status == LpStatus::optimal) EXPECT_NEAR(to_double(rq.objective), rf.objective, 1e-9);
  }
}

TEST(Cone, FeasibilityCertificates) {
  // {x1 - x2 = 0, x1 >= 0, -x2 >= 1} is empty.
  std::vector<RatVector> eq{rv({1, -1})}, ineq{rv({1, 0}), rv({0, -1})};
  auto r = lp_feasible(2, eq, ineq, {1});
  ASSERT_FALSE(r.feasible);
  EXPECT_TRUE(verify_certificate(2, eq, ineq, {1}, r.certificate));

  std::mt19937_64 rng(23);
  int empty = 0;
  for (int trial = 0; trial < 200; ++trial) {
    auto c = random_cone(rng, 2 + trial % 4, 2 + trial % 6, trial % 2);
    std::vector<std::size_t> strict;
    for (std::size_t i = 0; i < c.ineq.size(); ++i)
      if (i % 2 == 0) strict.push_back(i);
    auto f = lp_feasible(c.dim, c.eq, c.ineq, strict);
    if (f.feasible) {
      EXPECT_TRUE(contains(c, f.witness));
      for (auto s : strict) EXPECT_GE(dot(c.ineq[s], f.witness), 1);
    } else {
      ++empty;
      EXPECT_TRUE(verify_certificate(c.dim, c.eq, c.ineq, strict, f.certificate));
    }
  }
  EXPECT_GT(empty, 10);
}

TEST(Cone, ImplicitEqualitiesAndNormalize) {
  // x >= 0, y >= 0, -x - y >= 0 forces x = y = 0; z free but z >= 0.
  auto c = make_cone(3, {}, {rv({1, 0, 0}), rv({0, 1, 0}), rv({-1, -1, 0}), rv({0, 0, 1}), rv({0, 0, 2}), rv({1, 1, 1})});
  auto n = normalize(c);
  EXPECT_EQ(n.eq.size(), 2u);
  ASSERT_EQ(n.ineq.size(), 1u);
  EXPECT_EQ(n.ineq[0], rv({0, 0, 1}));
  EXPECT_EQ(cone_dim(c), 1u);
  EXPECT_TRUE(cone_equal(c, n));
  EXPECT_EQ(normalize(n).eq, n.eq);
  EXPECT_EQ(normalize(n).ineq, n.ineq);
}

TEST(Cone, NormalizePreservesSetRandom) {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 100; ++trial) {
    auto c = random_cone(rng, 2 + trial % 4, 3 + trial % 5, trial % 3 == 0);
    auto n = normalize(c);
    EXPECT_TRUE(cone_equal(c, n));
    auto p = relative_interior_point(n);
    if (p) {
      EXPECT_TRUE(contains(c, *p));
      for (const auto& r : n.ineq) EXPECT_GT(dot(r, *p), 0);
    }
    // No inequality of a normalized cone is redundant.
    for (std::size_t i = 0; i < n.ineq.size(); ++i) {
      auto rest = n.ineq;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
      auto smaller = make_cone(n.dim, n.eq, rest);
      EXPECT_FALSE(cone_subset(smaller, n));
    }
  }
}

TEST(DoubleDescription, MatchesBruteForceOnPointedCones) {
  std::mt19937_64 rng(25);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = 2 + trial % 3;
    auto c = random_cone(rng, n, 2 + trial % 4);
    for (std::size_t j = 0; j < n; ++j) {  // pointed: inside the orthant
      RatVector r(n);
      r[j] = 1;
      c.ineq.push_back(r);
    }
    auto g = generators(c);
    EXPECT_TRUE(g.lineality.empty());
    auto bf = brute_force_rays(c);
    auto sorted = [](std::vector<RatVector> v) {
      std::sort(v.begin(), v.end(), detail::lex_less);
      return v;
    };
    EXPECT_EQ(sorted(g.rays), sorted(bf)) << "trial " << trial;
  }
}

// Fourier-Motzkin projection agrees with projecting the generators.
TEST(FourierMotzkin, AgreesWithDoubleDescriptionOn200RandomCones) {
  std::mt19937_64 rng(26);
  for (int trial = 0; trial < 200; ++trial) EXPECT_TRUE(dtflux::testing::fm_dd_trial(rng, trial)) << "trial " << trial;
}

TEST(Cone, MembershipClassification) {
  auto c = make_cone(2, {}, {rv({1, 0}), rv({0, 1})});
  EXPECT_EQ(membership(c, {1, 1}).kind, Membership::strict_interior);
  EXPECT_EQ(membership(c, {1, 0}).kind, Membership::boundary);
  EXPECT_EQ(membership(c, {1, -1}).kind, Membership::outside);
  auto line = make_cone(2, {rv({1, -1})}, {rv({1, 0})});
  EXPECT_EQ(membership(line, {2, 2}).kind, Membership::strict_interior);
  EXPECT_EQ(membership(line, {2, 2.1}).kind, Membership::outside);
}

TEST(Cone, JsonRoundTripAndText) {
  auto c = normalize(make_cone(3, {rv({1, -1, 0})}, {rv({0, 1, -1}), rv({0, 0, 1})}, {"b1", "b2", "b3"}));
  auto j = to_json(c);
  EXPECT_EQ(j["eq"][0][0], "1/1");
  auto back = cone_from_json(j);
  EXPECT_TRUE(cone_equal(c, back));
  EXPECT_EQ(back.labels, c.labels);
  auto text = to_text(c);
  EXPECT_NE(text.find("b1 = b2"), std::string::npos) << text;
  EXPECT_NE(text.find("b2 >= b3"), std::string::npos) << text;
}

TEST(Cone, SubsetIntersectPositivity) {
  auto orth = make_cone(2, {}, {rv({1, 0}), rv({0, 1})});
  auto wedge = make_cone(2, {}, {rv({1, -1}), rv({0, 1})});
  EXPECT_TRUE(cone_subset(wedge, orth));
  EXPECT_FALSE(cone_subset(orth, wedge));
  EXPECT_TRUE(cone_equal(intersect(orth, wedge), wedge));
  EXPECT_TRUE(has_positive_point(wedge));
  EXPECT_FALSE(has_positive_point(make_cone(2, {rv({1, 0})}, {})));
}
