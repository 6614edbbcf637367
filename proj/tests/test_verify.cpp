#include <gtest/gtest.h>

#include <cmath>

#include "stbc/rng.hpp"
#include "stbc/verify.hpp"

using namespace stbc;

TEST(Nvd, ExhaustiveSmallCodes) {
  for (const CodeSpec& s : {construct_A(2), construct_B(2)}) {
    const NvdReport r = check_nvd(build_codebook(s, 2), NvdMode::Exhaustive);
    EXPECT_EQ(r.mode, "exhaustive");
    EXPECT_EQ(r.covered, 6560);
    EXPECT_EQ(r.checked, 3280);
    EXPECT_EQ(r.violation_count, 0);
    EXPECT_TRUE(r.passed());
    EXPECT_GE(r.min_abs_det, 1 - 1e-9);
    // differences are even, so det(ΔX) lies in 4·Z[i]; |4(1+i)| is the floor reached
    EXPECT_NEAR(r.min_abs_det, 4 * std::sqrt(2.0), 1e-9);
    EXPECT_LT(r.max_dual_path_error, 1e-6);
  }
}

TEST(Nvd, DifferenceSetSize) {
  EXPECT_DOUBLE_EQ(difference_set_size(build_codebook(construct_A(2), 2)), 6560);
  EXPECT_DOUBLE_EQ(difference_set_size(build_codebook(construct_A(2), 4)), std::pow(7.0, 8) - 1);
}

TEST(Nvd, AutoPicksModeByDifferenceSetSize) {
  EXPECT_EQ(check_nvd(build_codebook(construct_A(2), 2)).mode, "exhaustive");
  const NvdReport r = check_nvd(build_codebook(construct_B(3), 2), NvdMode::Auto, 2000, 7);
  EXPECT_EQ(r.mode, "sampled");
  EXPECT_EQ(r.checked, 2000);
  EXPECT_EQ(r.seed, 7u);
  EXPECT_TRUE(r.passed());
}

TEST(Nvd, SampledLargerCodes) {
  for (const CodeSpec& s : {construct_A(3), construct_HEX(3), perfect_3x3_spec(), construct_A(4), construct_B(5)}) {
    const NvdReport r = check_nvd(build_codebook(s, 2), NvdMode::Sampled, 3000, 11);
    EXPECT_TRUE(r.passed()) << to_string(s.method) << s.n;
    EXPECT_GE(r.min_abs_det, 1 - 1e-9);
    EXPECT_LT(r.max_dual_path_error, 1e-6);
  }
}

TEST(Nvd, IndependentOfWorkerCount) {
  const Codebook b = build_codebook(construct_B(3), 2);
  const NvdReport one = check_nvd(b, NvdMode::Sampled, 3000, 5, 1);
  const NvdReport three = check_nvd(b, NvdMode::Sampled, 3000, 5, 3);
  EXPECT_EQ(one.checked, three.checked);
  EXPECT_EQ(one.min_abs_det, three.min_abs_det);
  EXPECT_EQ(one.min_det_exact, three.min_det_exact);
}

TEST(Nvd, CorruptedGammaIsCaught) {
  const CodeSpec s = construct_A(2);
  const CodeSpec bad = corrupted_gamma_spec(s, CyclotomicInt::root_of_unity(s.conductor, 1));
  const NvdReport r = check_nvd(build_codebook(bad, 2), NvdMode::Exhaustive);
  EXPECT_FALSE(r.passed());
  EXPECT_EQ(r.violation_count, 48);
  ASSERT_FALSE(r.violations.empty());
  EXPECT_EQ(r.violations.front().det, "0");
}

TEST(DetInCenter, TrivialElements) {
  for (int n : {2, 3, 5}) {
    const CodeSpec s = construct_A(n);
    std::vector<CyclotomicInt> ells(n, CyclotomicInt(s.conductor));
    ells[0] = CyclotomicInt::integer(1, s.conductor);
    EXPECT_EQ(exact_det(left_regular_matrix(s, ells).matrix), CyclotomicInt::integer(1, s.conductor));
  }
  const CodeSpec s = construct_A(2);
  const std::vector<CyclotomicInt> ells{CyclotomicInt(s.conductor), CyclotomicInt::integer(1, s.conductor)};
  EXPECT_EQ(exact_det(left_regular_matrix(s, ells).matrix), -s.gamma_numerator().lift(s.conductor));
}

TEST(DetInCenter, RandomElements) {
  for (const CodeSpec& s : {construct_A(2), construct_A(3), construct_B(4), construct_HEX(5), construct_A(6), perfect_3x3_spec()}) {
    const DetInCenterReport r = check_det_in_center(s, 200, 3);
    EXPECT_EQ(r.trials, 200);
    EXPECT_TRUE(r.passed()) << to_string(s.method) << s.n << " " << r.witness;
  }
}

TEST(Scaling, FixedConstellationTracksNt) {
  const ScalingReport r =
      check_clearly_optimal_scaling([](int M) { return build_codebook(construct_A(2), M); }, 2, 0, {10, 20, 30}, 2000, 1);
  EXPECT_EQ(r.target_exponent, 2);
  EXPECT_NEAR(r.fitted_exponent, 2, 0.3);
  for (const auto& p : r.points) EXPECT_EQ(p.M, 2);
}

TEST(Scaling, HalfRateGolden) {
  const ScalingReport r =
      check_clearly_optimal_scaling([](int M) { return build_codebook(construct_A(2), M); }, 2, 1, {20, 30, 40}, 20000, 1);
  EXPECT_EQ(r.target_exponent, 1);
  EXPECT_NEAR(r.fitted_exponent, 1, 0.4);
}

TEST(Scaling, FullRateIsFlat) {
  const ScalingReport r =
      check_clearly_optimal_scaling([](int M) { return build_codebook(construct_A(2), M); }, 2, 2, {10, 20, 30}, 5000, 1);
  EXPECT_EQ(r.target_exponent, 0);
  EXPECT_NEAR(r.fitted_exponent, 0, 0.4);
}

TEST(Scaling, NeedsThreePoints) {
  EXPECT_THROW(check_clearly_optimal_scaling([](int M) { return build_codebook(construct_A(2), M); }, 2, 0, {10, 20}),
               std::invalid_argument);
}

TEST(Inequalities, TrivialCases) {
  Rng rng(40, 1);
  Eigen::MatrixXcd h(3, 3), dx(3, 3);
  for (int i = 0; i < 9; ++i) h(i) = rng.complex_normal();
  dx.setZero();
  EXPECT_NEAR(mismatch_slack(h, dx), 0, 1e-12);

  Eigen::MatrixXcd diag = Eigen::MatrixXcd::Zero(3, 3);
  diag(0, 0) = 1;
  diag(1, 1) = 2;
  diag(2, 2) = 5;
  EXPECT_NEAR(mismatch_slack(Eigen::MatrixXcd::Identity(3, 3), diag), 0, 1e-12);

  Eigen::MatrixXcd full(4, 6);
  for (int i = 0; i < 24; ++i) full(i) = rng.complex_normal();
  EXPECT_NEAR(interlacing_slack(full, {}), 0, 1e-12);
  EXPECT_GE(interlacing_slack(full, {2}), -1e-12);

  Eigen::MatrixXcd a(3, 3);
  for (int i = 0; i < 9; ++i) a(i) = rng.complex_normal();
  EXPECT_NEAR(weyl_slack({a, Eigen::MatrixXcd::Zero(3, 2)}), 0, 1e-12);
}

TEST(Inequalities, RandomSuites) {
  const InequalityReport m = check_mismatch_bound(4, 4, 2000, 1);
  EXPECT_TRUE(m.passed()) << m.witness;
  EXPECT_EQ(m.instances, 2200);
  const EigenSuiteReport e = check_interlacing_and_weyl(1000, 1);
  EXPECT_TRUE(e.passed()) << e.interlacing.witness << e.weyl.witness;
  EXPECT_EQ(e.interlacing.instances, 1100);
  EXPECT_GE(e.interlacing.worst_slack, -1e-9);
  EXPECT_GE(e.weyl.worst_slack, -1e-9);
}
