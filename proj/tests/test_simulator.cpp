#include <gtest/gtest.h>

#include <cmath>

#include "stbc/simulator.hpp"

using namespace stbc;

TEST(Channel, UnitVarianceEntries) {
  const ChannelModel ch{2, 2, 2, 1.0};
  Rng rng(60, 1);
  double power = 0, mean_re = 0;
  const int draws = 250'000;
  for (int i = 0; i < draws; ++i) {
    const Eigen::MatrixXcd h = ch.draw_channel(rng);
    ASSERT_EQ(h.rows(), 2);
    ASSERT_EQ(h.cols(), 2);
    power += h.squaredNorm();
    mean_re += h.sum().real();
  }
  EXPECT_NEAR(power / (4.0 * draws), 1.0, 0.01);
  EXPECT_NEAR(mean_re / (4.0 * draws), 0.0, 0.01);
  const Eigen::MatrixXcd w = ch.draw_noise(rng);
  EXPECT_EQ(w.rows(), 2);
  EXPECT_EQ(w.cols(), 2);
}

TEST(Wilson, KnownValues) {
  const Interval none = wilson_interval(0, 0);
  EXPECT_EQ(none.lo, 0.0);
  EXPECT_EQ(none.hi, 1.0);
  const Interval half = wilson_interval(50, 100);
  EXPECT_NEAR(half.lo, 0.4038, 1e-4);
  EXPECT_NEAR(half.hi, 0.5962, 1e-4);
  const Interval zero = wilson_interval(0, 100);
  EXPECT_EQ(zero.lo, 0.0);
  EXPECT_NEAR(zero.hi, 0.03699, 1e-5);
  EXPECT_EQ(wilson_interval(100, 100).hi, 1.0);
  for (std::int64_t k : {0, 1, 7, 99, 100}) {
    const Interval i = wilson_interval(k, 100);
    EXPECT_LE(i.lo, k / 100.0 + 1e-15);
    EXPECT_GE(i.hi, k / 100.0 - 1e-15);
  }
}

TEST(SimPoint, ZeroTrialsHaveNoEstimate) {
  SimPoint p;
  EXPECT_FALSE(p.wer().has_value());
  EXPECT_FALSE(p.outage().has_value());
  p.trials = 10;
  p.errors = 3;
  EXPECT_DOUBLE_EQ(*p.wer(), 0.3);
}

TEST(Outage, Limits) {
  Rng rng(61, 1);
  Eigen::MatrixXcd h(2, 2);
  for (int i = 0; i < 4; ++i) h(i) = rng.complex_normal();
  EXPECT_NEAR(mutual_information(h, 0.0), 0.0, 1e-12);
  const auto zero_rate = simulate_outage(2, 2, 0.0, {0, 10}, 1000, 1);
  for (const auto& p : zero_rate) EXPECT_EQ(p.outages, 0);
  const auto low = simulate_outage(2, 2, 6.0, {-20}, 1000, 1);
  EXPECT_EQ(low[0].outages, 1000);
}

TEST(Outage, SisoClosedForm) {
  // |h|² ~ Exp(1): P(log2(1 + snr|h|²) < R) = 1 - exp(-(2^R - 1)/snr)
  const double rate = 2.0;
  const auto pts = simulate_outage(1, 1, rate, {0, 10, 20}, 400'000, 3);
  for (const auto& p : pts) {
    const double exact = 1 - std::exp(-(std::exp2(rate) - 1) / db_to_linear(p.snr_db));
    const Interval ci = p.interval();
    EXPECT_LE(ci.lo - 1e-3, exact) << p.snr_db;
    EXPECT_GE(ci.hi + 1e-3, exact) << p.snr_db;
  }
}

TEST(Outage, TwoByTwoSixBitsAtFourteenDb) {
  const auto pts = simulate_outage(2, 2, 6.0, {14}, 400'000, 5);
  EXPECT_NEAR(*pts[0].probability(), 0.1502, 0.005);
}

TEST(Outage, IndependentOfWorkerCount) {
  const auto a = simulate_outage(2, 2, 4.0, {6, 12}, 20'000, 9, 1);
  const auto b = simulate_outage(2, 2, 4.0, {6, 12}, 20'000, 9, 4);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].outages, b[i].outages);
}

TEST(Slope, SyntheticPowerLaw) {
  SimResult r;
  const double wer[] = {1e-4, 1e-8, 1e-12};
  const double db[] = {10, 20, 30};
  for (int i = 0; i < 3; ++i) {
    SimPoint p;
    p.snr_db = db[i];
    p.trials = 100'000'000'000'000LL;
    p.errors = std::llround(wer[i] * p.trials);
    r.points.push_back(p);
  }
  const SlopeEstimate s = estimate_diversity_slope(r);
  ASSERT_TRUE(s.sufficient);
  EXPECT_NEAR(s.slope, 4.0, 1e-6);
  EXPECT_LE(s.slope_lo, s.slope);
  EXPECT_GE(s.slope_hi, s.slope);
  EXPECT_EQ(s.used, (std::vector<int>{0, 1, 2}));
}

TEST(Slope, UsesHighestSufficientPoints) {
  SimResult r;
  const std::int64_t errors[] = {5000, 900, 100, 30, 5};
  for (int i = 0; i < 5; ++i) {
    SimPoint p;
    p.snr_db = 10 + 2 * i;
    p.trials = 10'000;
    p.errors = errors[i];
    r.points.push_back(p);
  }
  const SlopeEstimate s = estimate_diversity_slope(r);
  ASSERT_TRUE(s.sufficient);
  EXPECT_EQ(s.used, (std::vector<int>{1, 2, 3}));
  r.points[1].errors = 10;
  r.points[2].errors = 10;
  EXPECT_FALSE(estimate_diversity_slope(r).sufficient);
}

TEST(Slope, LeastSquaresAndCrossing) {
  EXPECT_NEAR(least_squares_slope({0, 1, 2}, {1, 3, 5}), 2.0, 1e-12);
  EXPECT_THROW(least_squares_slope({1}, {1}), std::invalid_argument);
  const auto c = crossing_db({10, 20}, {1e-1, 1e-3}, 1e-2);
  ASSERT_TRUE(c.has_value());
  EXPECT_NEAR(*c, 15.0, 1e-9);
  EXPECT_FALSE(crossing_db({10, 20}, {1e-1, 5e-2}, 1e-2).has_value());
}

TEST(Simulation, IndependentOfWorkerCount) {
  const Codebook b = build_codebook(construct_A(2), 2);
  SimOptions one, four;
  one.workers = 1;
  four.workers = 4;
  const SimResult a = simulate_wer(b, 2, {4, 8}, 400, 17, one);
  const SimResult c = simulate_wer(b, 2, {4, 8}, 400, 17, four);
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    EXPECT_EQ(a.points[i].errors, c.points[i].errors);
    EXPECT_EQ(a.points[i].outages, c.points[i].outages);
    EXPECT_EQ(a.points[i].nodes, c.points[i].nodes);
  }
  EXPECT_EQ(a.to_csv(), c.to_csv());
}

TEST(Simulation, SphereAgreesWithExhaustive) {
  const Codebook b = build_codebook(construct_A(2), 2);
  SimOptions ex;
  ex.decoder = Decoder::Exhaustive;
  const SimResult s = simulate_wer(b, 2, {6, 12}, 500, 23);
  const SimResult e = simulate_wer(b, 2, {6, 12}, 500, 23, ex);
  for (std::size_t i = 0; i < s.points.size(); ++i) EXPECT_EQ(s.points[i].errors, e.points[i].errors);
}

TEST(Simulation, HighSnrIsNearlyErrorFree) {
  const SimResult r = simulate_wer(build_codebook(construct_A(2), 2), 2, {60}, 2000, 29);
  EXPECT_LT(*r.points[0].wer(), 1e-3);
  EXPECT_DOUBLE_EQ(r.rate_bpcu, 4.0);
}

TEST(Simulation, ZeroTrialsAndCsv) {
  const SimResult r = simulate_wer(build_codebook(construct_A(2), 2), 2, {10}, 0, 1);
  EXPECT_FALSE(r.points[0].wer().has_value());
  const std::string csv = r.to_csv();
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "snr_db,wer,wer_lo,wer_hi,outage,trials");
  EXPECT_NE(csv.find("nan"), std::string::npos);
}

TEST(Simulation, RejectsBadArguments) {
  SimOptions ex;
  ex.decoder = Decoder::Exhaustive;
  EXPECT_THROW(simulate_wer(build_codebook(construct_A(2), 8), 2, {10}, 10, 1, ex), std::invalid_argument);
  EXPECT_THROW(simulate_wer(build_codebook(construct_A(2), 2), 0, {10}, 10, 1), std::invalid_argument);
  EXPECT_THROW(parse_decoder("viterbi"), std::invalid_argument);
  EXPECT_EQ(parse_decoder("exhaustive"), Decoder::Exhaustive);
}
