#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "gallai/verifier.hpp"

using gallai::CanonicalRep;
using gallai::PartitionProfile;

namespace {

// independent re-typed transcription of k(d), kept in pow() style on purpose
// so a slip in either copy shows up in the comparison
double k_reference(double d) {
  const double tau = (4.0 - std::sqrt(7.0)) / 9.0;
  const double q = 1.0 - 2.0 * tau;
  const double w2 = d * d + q * q;
  double first = d / (2.0 * std::pow(d * d + 4.0 * tau * tau, 0.5));
  double numer = 4.0 * d * d * std::pow(w2, -0.5) + 4.0 * std::pow(w2, 0.5) - 6.0 * d;
  double denom = 4.0 * std::pow(4.0 * d * std::pow(w2, 0.5) - 3.0 * d * d + 16.0 * tau * tau, 0.5);
  return first + numer / denom + d * std::pow(w2, -0.5) - 1.0;
}

TEST(KOfD, ClosedFormAtZero) {
  double tau = gallai::constants().tau;
  EXPECT_NEAR(gallai::k_of_d(0.0), (1.0 - 2.0 * tau) / (4.0 * tau) - 1.0, 1e-14);
  EXPECT_NEAR(gallai::k_of_d(0.0), 0.161438, 1e-6);
}

TEST(KOfD, ReportedMinimumValue) {
  EXPECT_NEAR(gallai::k_of_d(0.0948007), 0.0264741, 1e-5);
}

TEST(KOfD, PositiveAtOne) { EXPECT_GT(gallai::k_of_d(1.0), 0.0); }

TEST(KOfD, DomainChecks) {
  EXPECT_THROW(gallai::k_of_d(-0.01), std::domain_error);
  EXPECT_THROW(gallai::k_of_d(1.01), std::domain_error);
}

TEST(KOfD, MatchesIndependentTranscription) {
  for (int i = 0; i <= 10000; ++i) {
    double d = i / 10000.0;
    ASSERT_NEAR(gallai::k_of_d(d), k_reference(d), 1e-12) << "d = " << d;
  }
}

TEST(KDerivativeBound, ClosedFormValue) {
  double b = gallai::k_derivative_bound();
  EXPECT_NEAR(b, 196.868, 1e-3);
  EXPECT_LE(b, 200.0);
}

TEST(KDerivativeBound, DominatesSampledDerivative) {
  double b = gallai::k_derivative_bound();
  double h = 1e-6, worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    double d = (i + 0.5) / 10000.0;
    double deriv = std::abs(gallai::k_of_d(d + h) - gallai::k_of_d(d - h)) / (2.0 * h);
    worst = std::max(worst, deriv);
  }
  EXPECT_LE(worst, b);
  EXPECT_LE(worst, 10.0);  // the true derivative is far below the chain bound
}

TEST(CertifyNonnegative, ConstantFunction) {
  auto cert = gallai::certify_nonnegative([](double) { return 1.0; }, 0.0, 1.0, 0.0, 2);
  EXPECT_DOUBLE_EQ(cert.certified_lower_bound, 1.0);
  EXPECT_TRUE(cert.success);
}

TEST(CertifyNonnegative, BoundaryZeroIsConservative) {
  auto cert = gallai::certify_nonnegative([](double x) { return x; }, 0.0, 1.0, 1.0, 11);
  EXPECT_DOUBLE_EQ(cert.grid_min, 0.0);
  EXPECT_DOUBLE_EQ(cert.grid_argmin, 0.0);
  EXPECT_NEAR(cert.certified_lower_bound, -0.1, 1e-12);
  EXPECT_FALSE(cert.success);
}

TEST(CertifyNonnegative, CertifiedPlusSlackIsGridMin) {
  auto cert = gallai::certify_nonnegative(gallai::k_of_d, 0.0, 1.0, 200.0, 1000);
  EXPECT_DOUBLE_EQ(cert.certified_lower_bound + cert.lipschitz_bound * cert.spacing,
                   cert.grid_min);
}

TEST(CertifyNonnegative, RejectsBadArguments) {
  EXPECT_THROW(gallai::certify_nonnegative([](double) { return 1.0; }, 0.0, 1.0, 0.0, 1),
               std::invalid_argument);
  EXPECT_THROW(
      gallai::certify_nonnegative([](double) { return std::nan(""); }, 0.0, 1.0, 0.0, 4),
      std::runtime_error);
}

TEST(VerifyAppendix, ReferenceScaleCertificate) {
  auto cert = gallai::verify_appendix();
  EXPECT_TRUE(cert.success);
  EXPECT_GE(cert.certified_lower_bound, 0.00147 - 1e-4);
  EXPECT_NEAR(cert.grid_min, 0.0264741, 1e-5);
  EXPECT_NEAR(cert.grid_argmin, 0.0948007, 2e-3);
}

TEST(VerifyAppendix, FinerGridOnlyImproves) {
  auto base = gallai::verify_appendix(8000);
  auto fine = gallai::verify_appendix(16000);
  EXPECT_GT(fine.certified_lower_bound, base.certified_lower_bound);
}

TEST(EasyCaseInequalities, WorkedExample) {
  CanonicalRep rep{0.75, 0.125, 0.125, 0.0, 0.0};
  PartitionProfile p{1.0, 0.0, 0.0, 0.0};
  auto r = gallai::easy_case_inequalities(p, rep);
  // (5): 1 > 2*0.5625 + 2*0.015625 - 1 = 0.15625
  EXPECT_TRUE(r[0]);
  EXPECT_FALSE(r[1]);
  EXPECT_FALSE(r[2]);
}

TEST(EasyCaseInequalities, ZeroProfileFailsEverythingWithPositiveRhs) {
  CanonicalRep rep{0.75, 0.125, 0.125, 0.0, 0.0};
  PartitionProfile p{0.0, 0.0, 0.0, 0.0};
  for (bool b : gallai::easy_case_inequalities(p, rep)) EXPECT_FALSE(b);
}

TEST(EasyCaseInequalities, AlphaFormMatchesXyzForm) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int it = 0; it < 1000; ++it) {
    double x = 0.5 + 0.5 * unit(rng);
    double y = (1.0 - x) * unit(rng);
    double z = 1.0 - x - y;
    double a1 = x * x + y * y, a2 = x * x + z * z, a3 = 1.0 - x * x;
    EXPECT_NEAR(2.0 * a1 + 2.0 * a2 + 3.0 * a3 - 3.0, x * x + 2.0 * y * y + 2.0 * z * z, 1e-12);
    EXPECT_NEAR(a1 + a2 - 1.0, 2.0 * x * x + y * y + z * z - 1.0, 1e-12);
    EXPECT_NEAR(a1 + a3 - 1.0, y * y, 1e-12);
    EXPECT_NEAR(a2 + a3 - 1.0, z * z, 1e-12);
  }
}

TEST(EasyCaseInequalities, DeltaAccessor) {
  CanonicalRep rep{0.8, 0.2, 0.0, 0.0, 0.0};
  PartitionProfile p{0.5, 0.3, 0.1, 0.1};
  EXPECT_NEAR(p.delta(rep), 0.3 * 0.4 - 0.04, 1e-15);
}

TEST(Lemma28Search, GoodPairsComeBackEmpty) {
  EXPECT_FALSE(gallai::lemma28_search(0.68, 0.64, 0.02).has_value());
  EXPECT_FALSE(gallai::lemma28_search(0.578125, 0.578125, 0.02).has_value());
}

TEST(Lemma28Search, RelaxedSeventhInequalityStillEmpty) {
  EXPECT_FALSE(gallai::lemma28_search(0.68, 0.64, 0.02, 1.0, true).has_value());
}

TEST(Lemma28Search, RelaxedSumBoundFindsAProfile) {
  auto p = gallai::lemma28_search(0.68, 0.64, 0.02, 1.2);
  ASSERT_TRUE(p.has_value());
  auto rep = gallai::canonical_representation(0.68, 0.64);
  for (bool b : gallai::easy_case_inequalities(*p, rep)) EXPECT_TRUE(b);
  EXPECT_LE(p->a12 + p->a13 + p->a23 + p->d, 1.2 + 1e-12);
}

TEST(Lemma28Search, RejectsNonGoodPairs) {
  EXPECT_THROW(gallai::lemma28_search(0.4, 0.3, 0.02), std::domain_error);
}

TEST(PropSumOfSquares, UnconstrainedCorner) {
  auto r = gallai::prop_sum_of_squares(0.0, 0.0, 1.0);
  EXPECT_EQ(r.argmax, (std::array<double, 3>{1.0, 0.0, 0.0}));
  EXPECT_DOUBLE_EQ(r.value, 1.0);
}

TEST(PropSumOfSquares, InteriorBounds) {
  auto r = gallai::prop_sum_of_squares(0.3, 0.2, 1.0);
  EXPECT_NEAR(r.argmax[0], 0.5, 1e-12);
  EXPECT_NEAR(r.argmax[1], 0.3, 1e-12);
  EXPECT_NEAR(r.argmax[2], 0.2, 1e-12);
  EXPECT_NEAR(r.value, 0.38, 1e-12);
}

TEST(PropSumOfSquares, FullyPinned) {
  auto r = gallai::prop_sum_of_squares(1.0 / 3.0, 1.0 / 3.0, 1.0);
  EXPECT_NEAR(r.value, 1.0 / 3.0, 1e-12);
}

TEST(PropSumOfSquares, RejectsInfeasibleBounds) {
  EXPECT_THROW(gallai::prop_sum_of_squares(0.6, 0.5, 1.0), std::invalid_argument);
  EXPECT_THROW(gallai::prop_sum_of_squares(0.2, 0.3, 1.0), std::invalid_argument);
}

}  // namespace
