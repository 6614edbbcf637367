#include <gtest/gtest.h>

#include <algorithm>

#include "stbc/simulator.hpp"
#include "stbc/sphere_decoder.hpp"

using namespace stbc;

namespace {

struct Trial {
  Eigen::MatrixXcd h, y;
  std::vector<std::int64_t> z;
};

Trial draw(const Codebook& b, int n_r, double theta, double noise, Rng& rng) {
  Trial t;
  t.h.resize(n_r, b.n_t);
  for (int i = 0; i < t.h.size(); ++i) t.h(i) = rng.complex_normal();
  t.z.resize(b.real_dim());
  const int M = b.constellation.M;
  for (auto& v : t.z) v = 2 * rng.uniform_int(0, M - 1) - (M - 1);
  t.y = theta * t.h * b.codeword(t.z);
  for (int i = 0; i < t.y.size(); ++i) t.y(i) += noise * rng.complex_normal();
  return t;
}

}  // namespace

TEST(RealModel, ReproducesReceivedSignal) {
  const Codebook b = build_codebook(construct_B(2), 4);
  Rng rng(50, 1);
  const Trial t = draw(b, 3, 0.7, 0.0, rng);
  const RealModel m = real_model(b, t.h, t.y, 0.7);
  EXPECT_EQ(m.B.rows(), 2 * 3 * b.T);
  EXPECT_EQ(m.B.cols(), b.real_dim());
  Eigen::VectorXd z(b.real_dim());
  for (int i = 0; i < z.size(); ++i) z(i) = static_cast<double>(t.z[i]);
  EXPECT_LT((m.B * z - m.y).norm(), 1e-9 * (1 + m.y.norm()));
}

TEST(SphereDecoder, NoiselessRecovery) {
  Rng rng(51, 1);
  for (const Codebook& b : {build_codebook(construct_A(2), 2), build_codebook(construct_A(2), 8), build_codebook(construct_HEX(3), 4),
                            row_delete(build_codebook(perfect_3x3_spec(), 2), {0})})
    for (int k = 0; k < 20; ++k) {
      for (int n_r : {b.n_t, 3}) {
        const Trial t = draw(b, n_r, 1.0, 0.0, rng);
        const DecodeResult r = sphere_decode(b, t.y, t.h, 1.0);
        EXPECT_EQ(r.z, t.z);
        EXPECT_NEAR(r.metric, 0, 1e-9);
        EXPECT_EQ(r.regularized, 2 * std::min(n_r, b.n_t) * b.T < b.real_dim());
      }
    }
}

TEST(SphereDecoder, MatchesExhaustiveSearch) {
  Rng rng(52, 1);
  const Codebook b = build_codebook(construct_A(2), 2);
  for (double noise : {0.3, 1.0, 3.0})
    for (int k = 0; k < 200; ++k) {
      const Trial t = draw(b, 2, 1.0, noise, rng);
      const RealModel m = real_model(b, t.h, t.y, 1.0);
      const DecodeResult s = sphere_decode(m), e = exhaustive_decode(m);
      EXPECT_NEAR(s.metric, e.metric, 1e-9 * (1 + e.metric));
      EXPECT_EQ(s.z, e.z);
    }
}

TEST(SphereDecoder, RankDeficientChannelStaysExact) {
  Rng rng(53, 1);
  const Codebook b = build_codebook(construct_A(2), 2);
  int regularized = 0;
  for (int k = 0; k < 200; ++k) {
    const Trial t = draw(b, 1, 1.0, 0.5, rng);
    const RealModel m = real_model(b, t.h, t.y, 1.0);
    const DecodeResult s = sphere_decode(m), e = exhaustive_decode(m);
    regularized += s.regularized;
    EXPECT_NEAR(s.metric, e.metric, 1e-9 * (1 + e.metric));
  }
  // 4 real rows against 8 unknowns
  EXPECT_EQ(regularized, 200);
}

TEST(ExhaustiveDecoder, RejectsLargeCodebooks) {
  const Codebook b = build_codebook(construct_A(2), 8);  // 8^8 candidates
  Rng rng(54, 1);
  const Trial t = draw(b, 2, 1.0, 0.1, rng);
  EXPECT_THROW(exhaustive_decode(b, t.y, t.h, 1.0), std::invalid_argument);
}
