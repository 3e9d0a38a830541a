#include <gtest/gtest.h>

#include "gallai/constructions.hpp"
#include "helpers.hpp"

using gallai::build_F;
using gallai::build_H;
using gallai::ColouringTemplate;
using gallai::ConstructionKind;
using gallai::Edge;

namespace {

// sorted-descending comparison, mirroring the colour rearrangement
bool dominates_sorted(std::array<double, 3> got, std::array<double, 3> target) {
  std::sort(got.rbegin(), got.rend());
  std::sort(target.rbegin(), target.rend());
  for (int i = 0; i < 3; ++i)
    if (!(got[static_cast<std::size_t>(i)] > target[static_cast<std::size_t>(i)])) return false;
  return true;
}

TEST(BuildF, DegenerateCollapsesToTwoCompleteClasses) {
  ColouringTemplate t = build_F(5, 0, 0);
  EXPECT_EQ(t.class_size(0), gallai::binom2(5));
  EXPECT_EQ(t.class_size(1), gallai::binom2(5));
  EXPECT_EQ(t.class_size(2), 0);
}

TEST(BuildF, CountsAndGallainess) {
  ColouringTemplate t = build_F(2, 2, 2);
  EXPECT_EQ(t.class_sizes(), (std::array<long long, 3>{2, 2, 14}));
  EXPECT_TRUE(t.is_gallai());
  ColouringTemplate u = build_F(4, 3, 3);
  EXPECT_EQ(u.class_sizes(), (std::array<long long, 3>{9, 9, 39}));
}

TEST(BuildH, DegenerateCollapsesToTwoCompleteClasses) {
  ColouringTemplate t = build_H(5, 0, 0);
  EXPECT_EQ(t.class_size(0), gallai::binom2(5));
  EXPECT_EQ(t.class_size(1), gallai::binom2(5));
  EXPECT_EQ(t.class_size(2), 0);
}

TEST(BuildH, CountsAndGallainess) {
  ColouringTemplate t = build_H(4, 3, 3);
  EXPECT_EQ(t.class_sizes(), (std::array<long long, 3>{33, 6, 27}));
  EXPECT_TRUE(t.is_gallai());
}

TEST(BuildH, TwoPartSpecialCase) {
  // c = 0: H1 = A^2 u B^2, H2 = A^2, H3 = B^2 u (A,B)
  ColouringTemplate t = build_H(3, 2, 0);
  std::vector<Edge> a2{{0, 1}, {0, 2}, {1, 2}};
  std::vector<Edge> b2{{3, 4}};
  std::vector<Edge> ab{{0, 3}, {0, 4}, {1, 3}, {1, 4}, {2, 3}, {2, 4}};
  std::vector<Edge> h1 = a2;
  h1.insert(h1.end(), b2.begin(), b2.end());
  std::sort(h1.begin(), h1.end());
  std::vector<Edge> h3 = b2;
  h3.insert(h3.end(), ab.begin(), ab.end());
  std::sort(h3.begin(), h3.end());
  EXPECT_EQ(t.class_edges(0), h1);
  EXPECT_EQ(t.class_edges(1), a2);
  EXPECT_EQ(t.class_edges(2), h3);
}

TEST(Constructions, EdgeCountFormulasHoldOnSmallScale) {
  for (int n = 0; n <= 30; ++n)
    for (int a = 0; a <= n; ++a)
      for (int b = 0; a + b <= n; ++b) {
        int c = n - a - b;
        auto f = build_F(a, b, c).class_sizes();
        ASSERT_EQ(f[0], gallai::binom2(a) + gallai::binom2(b));
        ASSERT_EQ(f[1], gallai::binom2(a) + gallai::binom2(c));
        ASSERT_EQ(f[2], gallai::binom2(n) - gallai::binom2(a));
        auto h = build_H(a, b, c).class_sizes();
        ASSERT_EQ(h[0], gallai::binom2(a) + gallai::binom2(b + c) + static_cast<long long>(a) * c);
        ASSERT_EQ(h[1], gallai::binom2(a));
        ASSERT_EQ(h[2], gallai::binom2(b + c) + static_cast<long long>(a) * b);
      }
}

TEST(Constructions, GallaiForAllSmallPartSizes) {
  for (int n = 0; n <= 18; ++n)
    for (int a = 0; a <= n; ++a)
      for (int b = 0; a + b <= n; ++b) {
        ASSERT_TRUE(build_F(a, b, n - a - b).is_gallai()) << a << "," << b;
        ASSERT_TRUE(build_H(a, b, n - a - b).is_gallai()) << a << "," << b;
      }
}

TEST(PredictedDensity, FFormula) {
  auto d = gallai::predicted_density(ConstructionKind::F, 0.5, 0.25, 0.25);
  EXPECT_DOUBLE_EQ(d[0], 0.3125);
  EXPECT_DOUBLE_EQ(d[1], 0.3125);
  EXPECT_DOUBLE_EQ(d[2], 0.75);
}

TEST(PredictedDensity, HWithEmptyThirdPartMatchesF) {
  for (int i = 0; i <= 20; ++i) {
    double x = i / 20.0;
    auto h = gallai::predicted_density(ConstructionKind::H, x, 1.0 - x, 0.0);
    auto f = gallai::predicted_density(ConstructionKind::F, x, 1.0 - x, 0.0);
    for (int k = 0; k < 3; ++k)
      EXPECT_NEAR(h[static_cast<std::size_t>(k)], f[static_cast<std::size_t>(k)], 1e-12);
    EXPECT_NEAR(h[0], x * x + (1 - x) * (1 - x), 1e-12);
    EXPECT_NEAR(h[1], x * x, 1e-12);
    EXPECT_NEAR(h[2], 1 - x * x, 1e-12);
  }
}

TEST(PredictedDensity, RejectsBadInput) {
  EXPECT_THROW(gallai::predicted_density(ConstructionKind::F, 0.5, 0.6, -0.1),
               std::invalid_argument);
  EXPECT_THROW(gallai::predicted_density(ConstructionKind::F, 0.5, 0.25, 0.5),
               std::invalid_argument);
}

TEST(PredictedDensity, MeasuredDensityConverges) {
  const int n = 300;
  double x = 0.5, y = 0.25, z = 0.25;
  int a = static_cast<int>(x * n), b = static_cast<int>(y * n);
  auto df = build_F(a, b, n - a - b).density_vector();
  auto pf = gallai::predicted_density(ConstructionKind::F, x, y, z);
  auto dh = build_H(a, b, n - a - b).density_vector();
  auto ph = gallai::predicted_density(ConstructionKind::H, x, y, z);
  for (int k = 0; k < 3; ++k) {
    EXPECT_LE(std::abs(df.rho[static_cast<std::size_t>(k)] - pf[static_cast<std::size_t>(k)]),
              5.0 / n);
    EXPECT_LE(std::abs(dh.rho[static_cast<std::size_t>(k)] - ph[static_cast<std::size_t>(k)]),
              5.0 / n);
  }
}

TEST(WitnessNonForcing, CaseA) {
  auto w = gallai::witness_non_forcing(0.5, 0.5, 0.5, 400);
  EXPECT_EQ(w.case_label, 'a');
  int t = static_cast<int>(std::ceil(gallai::constants().tau * 400));
  EXPECT_EQ(w.params.a, 400 - 2 * t);
  EXPECT_EQ(w.params.b, t);
  EXPECT_EQ(w.params.c, t);
  EXPECT_TRUE(w.tmpl.is_gallai());
  EXPECT_TRUE(dominates_sorted(w.tmpl.density_vector().rho, {0.5, 0.5, 0.5}));
}

TEST(WitnessNonForcing, CaseB) {
  auto w = gallai::witness_non_forcing(0.9, 0.2, 0.1, 100);
  EXPECT_EQ(w.case_label, 'b');
  EXPECT_EQ(w.params.a, 0);
  EXPECT_EQ(w.params.b, 50);
  EXPECT_TRUE(dominates_sorted(w.tmpl.density_vector().rho, {0.9, 0.2, 0.1}));
}

TEST(WitnessNonForcing, CaseC) {
  auto w = gallai::witness_non_forcing(0.6, 0.3, 0.1, 400);
  EXPECT_EQ(w.case_label, 'c');
  EXPECT_EQ(w.params.c, 0);
  EXPECT_TRUE(w.tmpl.is_gallai());
  EXPECT_TRUE(dominates_sorted(w.tmpl.density_vector().rho, {0.6, 0.3, 0.1}));
}

TEST(WitnessNonForcing, CaseD) {
  auto w = gallai::witness_non_forcing(0.52, 0.505, 0.4, 800);
  EXPECT_EQ(w.case_label, 'd');
  EXPECT_TRUE(w.tmpl.is_gallai());
  EXPECT_TRUE(dominates_sorted(w.tmpl.density_vector().rho, {0.52, 0.505, 0.4}));
}

TEST(WitnessNonForcing, ErrorsWhenNoCaseApplies) {
  EXPECT_THROW(gallai::witness_non_forcing(0.68, 0.64, 0.3, 100), std::domain_error);
  EXPECT_THROW(gallai::witness_non_forcing(0.2, 0.5, 0.1, 100), std::invalid_argument);
}

TEST(TheoremWitness, OnCurvePairGivesF) {
  ColouringTemplate t = gallai::theorem_witness(0.68, 0.64, 100);
  EXPECT_EQ(t.class_sizes(), (std::array<long long, 3>{3350, 3160, 1790}));
  // within C n of the targets (0.68, 0.64, 0.36) * C(100,2) for C = 1
  double cn2 = 4950.0;
  EXPECT_GE(t.class_size(0), 0.68 * cn2 - 100.0);
  EXPECT_GE(t.class_size(1), 0.64 * cn2 - 100.0);
  EXPECT_GE(t.class_size(2), 0.36 * cn2 - 100.0);
}

TEST(TheoremWitness, R2PairGivesH) {
  ColouringTemplate t = gallai::theorem_witness(0.9, 0.5, 100);
  // H(70, 7, 23)
  EXPECT_EQ(t.class_size(1), gallai::binom2(70));
  EXPECT_EQ(t.class_size(0), gallai::binom2(70) + gallai::binom2(30) + 70LL * 23);
  EXPECT_EQ(t.class_size(2), gallai::binom2(30) + 70LL * 7);
  EXPECT_TRUE(t.is_gallai());
}

TEST(TheoremWitness, DegenerateCorner) {
  ColouringTemplate t = gallai::theorem_witness(1.0, 1.0, 10);
  EXPECT_EQ(t.class_sizes(), (std::array<long long, 3>{45, 45, 0}));
}

TEST(TheoremWitness, ErrorsOutsideBothRegions) {
  EXPECT_THROW(gallai::theorem_witness(0.4, 0.3, 100), std::domain_error);
}

}  // namespace

// appended: witness-consistency and scale checks

namespace {

TEST(TheoremWitness, RandomInRegionPairsStayWithinTwoNOfTargets) {
  std::mt19937_64 rng(909);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int n = 500;
  const double cn2 = static_cast<double>(gallai::binom2(n));
  int seen = 0;
  while (seen < 100) {
    double a2 = 0.25 + 0.75 * unit(rng);
    double a1 = a2 + (1.0 - a2) * unit(rng);
    gallai::RegionClassification c = gallai::classify(a1, a2);
    if (c.label != gallai::RegionLabel::R1prime && c.label != gallai::RegionLabel::R2) continue;
    ++seen;
    ColouringTemplate t = gallai::theorem_witness(a1, a2, n);
    ASSERT_TRUE(t.is_gallai());
    auto s = t.class_sizes();
    EXPECT_GE(static_cast<double>(s[0]), a1 * cn2 - 2.0 * n) << a1 << "," << a2;
    EXPECT_GE(static_cast<double>(s[1]), a2 * cn2 - 2.0 * n) << a1 << "," << a2;
    EXPECT_GE(static_cast<double>(s[2]), *c.alpha3 * cn2 - 2.0 * n) << a1 << "," << a2;
  }
}

TEST(PredictedDensity, SupNormBoundAtSeveralScales) {
  for (int n : {100, 300}) {
    double x = 0.65, y = 0.2, z = 0.15;
    int a = static_cast<int>(x * n), b = static_cast<int>(y * n);
    auto df = gallai::build_F(a, b, n - a - b).density_vector().rho;
    auto pf = gallai::predicted_density(ConstructionKind::F, x, y, z);
    auto dh = gallai::build_H(a, b, n - a - b).density_vector().rho;
    auto ph = gallai::predicted_density(ConstructionKind::H, x, y, z);
    for (std::size_t i = 0; i < 3; ++i) {
      EXPECT_LE(std::abs(df[i] - pf[i]), 5.0 / n) << n;
      EXPECT_LE(std::abs(dh[i] - ph[i]), 5.0 / n) << n;
    }
  }
}

}  // namespace

namespace {

TEST(WitnessNonForcing, EpsilonPicksAreTheLargestFeasiblePowersOfTwo) {
  // case (c) at (0.6, 0.3): 1 - a2 - 4 eps > a1 forces eps < 0.025 -> 2^-6
  EXPECT_DOUBLE_EQ(gallai::witness_non_forcing(0.6, 0.3, 0.1, 400).epsilon, 0.015625);
  // case (d) at (0.52, 0.505): a2 + eps^2 < 1 - (x + eps)^2 forces 2^-8
  EXPECT_DOUBLE_EQ(gallai::witness_non_forcing(0.52, 0.505, 0.4, 800).epsilon, 0.00390625);
}

}  // namespace
