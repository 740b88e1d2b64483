#include "dtflux/locus.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <functional>

using namespace dtflux;
using dtflux::testing::net;

TEST(Sampling, PointsLieInTheOpenSimplex) {
  for (std::size_t k : {1u, 2u, 6u, 14u}) {
    for (const auto& v : sample_simplex(k, 500, 3)) {
      double s = 0;
      for (double x : v) {
        EXPECT_GT(x, 0);
        s += x;
      }
      EXPECT_NEAR(s, 1, 1e-12);
    }
  }
}

// Uniform on the simplex: each coordinate has mean 1/k and variance
// (k - 1) / (k^2 (k + 1)).
TEST(Sampling, CoordinateMeansMatchTheUniformLaw) {
  const std::size_t k = 6, n = 20000;
  const double var = double(k - 1) / double(k * k * (k + 1));
  const double sigma = std::sqrt(var / n);
  std::vector<double> mean(k);
  for (const auto& v : sample_simplex(k, n, 11))
    for (std::size_t i = 0; i < k; ++i) mean[i] += v[i] / n;
  for (double m : mean) EXPECT_NEAR(m, 1.0 / k, 4 * sigma);
}

TEST(Sampling, DependsOnlyOnSeedAndIndex) {
  auto all = sample_simplex(5, 100, 77);
  EXPECT_EQ(all[42], simplex_sample(5, 77, 42));
  EXPECT_NE(simplex_sample(5, 77, 42), simplex_sample(5, 78, 42));
  EXPECT_NE(simplex_sample(5, 77, 42), simplex_sample(5, 77, 43));
}

TEST(Fraction, ResultsDoNotDependOnThreadCount) {
  auto g = net("prs");
  FractionOptions one, three;
  three.threads = 3;
  EXPECT_EQ(classify_samples(g, 300, 5, one), classify_samples(g, 300, 5, three));
  auto a = fraction_disguised_toric(g, 300, 5, one), b = fraction_disguised_toric(g, 300, 5, three);
  EXPECT_EQ(a.fraction, b.fraction);
  EXPECT_EQ(a.n_boundary, b.n_boundary);
}

TEST(Fraction, DegenerateNetworks) {
  auto clock = fraction_disguised_toric(net("clock"), 2000, 1);
  EXPECT_EQ(clock.n_failed, 0u);
  EXPECT_EQ(clock.fraction, 1.0);
  auto tet = fraction_disguised_toric(net("tetrahedron"), 500, 1);
  EXPECT_EQ(tet.n_failed, 0u);
  EXPECT_EQ(tet.fraction, 1.0);
  auto split = fraction_disguised_toric(net("split"), 200, 1);
  EXPECT_EQ(split.fraction, 0.0);
  EXPECT_EQ(split.n_outside, 200u);
  EXPECT_TRUE(split.warnings.empty());
}

TEST(Fraction, TalliesAreConsistent) {
  auto f = fraction_disguised_toric(net("square_rev"), 1000, 2);
  EXPECT_EQ(f.n_inside + f.n_boundary + f.n_outside + f.n_failed, f.n_samples);
  EXPECT_EQ(f.seed, 2u);
  double p = double(f.n_inside + f.n_boundary) / double(f.n_samples - f.n_failed);
  EXPECT_DOUBLE_EQ(f.fraction, p);
  EXPECT_NEAR(f.stderr_, std::sqrt(p * (1 - p) / double(f.n_samples - f.n_failed)), 1e-15);
  auto j = to_json(f);
  for (const char* key : {"n_samples", "n_inside", "n_boundary", "n_outside", "n_failed", "fraction", "stderr", "seed",
                          "warnings"})
    EXPECT_TRUE(j.contains(key)) << key;
}

// The numerical decision agrees with the closed-form rate inequalities on at
// least 99.9% of the samples. Any disagreement sits in the tol-width shell:
// the flux was classified as boundary, or the rate lies near the locus edge.
namespace {

struct OracleCase {
  const char* name;
  std::function<bool(const Vec&)> inside;
  std::function<double(const Vec&)> margin;
};

void check_oracle_agreement(const OracleCase& c, std::size_t n) {
  auto g = net(c.name);
  auto code = classify_samples(g, n, 1);
  std::size_t agree = 0, failed = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (code[i] == 3) {
      ++failed;
      continue;
    }
    Vec k = simplex_sample(g.num_edges(), 1, i);
    bool numeric = code[i] != 2;
    if (numeric == c.inside(k))
      ++agree;
    else if (code[i] != 1)
      EXPECT_LT(std::abs(c.margin(k)), 1e-6) << c.name << " sample " << i;
  }
  EXPECT_EQ(failed, 0u) << c.name;
  EXPECT_GE(double(agree), 0.999 * double(n - failed)) << c.name;
}

}  // namespace

TEST(OracleAgreement, PartlyReversibleSquare) {
  check_oracle_agreement({"prs", dtflux::testing::prs_kdt, dtflux::testing::prs_kdt_margin}, 10000);
}

TEST(OracleAgreement, Parallelogram) {
  check_oracle_agreement({"parallelogram", dtflux::testing::prs_kdt, dtflux::testing::prs_kdt_margin}, 10000);
}

TEST(OracleAgreement, ReversibleSquare) {
  check_oracle_agreement({"square_rev", dtflux::testing::square_rev_kdt, dtflux::testing::square_rev_kdt_margin},
                         10000);
}

TEST(OracleAgreement, LotkaVolterraAutocatalator) {
  check_oracle_agreement({"lva", dtflux::testing::lva_kdt, dtflux::testing::lva_kdt_margin}, 10000);
}

TEST(OracleAgreement, BogdanovTakens) {
  check_oracle_agreement({"bt", dtflux::testing::bt_kdt, dtflux::testing::bt_kdt_margin}, 10000);
}

TEST(Report, PartlyReversibleSquare) {
  auto g = net("prs");
  auto r = analyze(g);
  EXPECT_EQ(r.summary.deficiency, 1);
  EXPECT_EQ(r.gmax.graph.num_edges(), 8u);
  EXPECT_EQ(r.f_eq.closure_dim, 4u);
  EXPECT_EQ(r.f_t.closure_dim, 3u);
  EXPECT_EQ(r.f_dt.closure_dim, 4u);
  ASSERT_TRUE(r.codim_kt);
  EXPECT_EQ(*r.codim_kt, 1);
  ASSERT_TRUE(r.dims.dim_kdt);
  EXPECT_EQ(*r.dims.dim_kdt, 6u);
  EXPECT_FALSE(r.fraction);
  auto j = to_json(r, g);
  for (const char* key : {"summary", "edges", "gmax", "cones", "codim_kt", "dims", "fraction"})
    EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_NE(to_text(r, g).find("dim K^dt: 6"), std::string::npos);
}

TEST(Report, NoRealization) {
  auto g = net("split");
  auto r = analyze(g);
  EXPECT_FALSE(r.gmax.realizable);
  EXPECT_FALSE(r.f_dt.positive);
  EXPECT_FALSE(r.dims.dim_kdt);
  EXPECT_FALSE(r.codim_kt);
}
