#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "stbc/cyclotomic.hpp"
#include "stbc/rng.hpp"

using namespace stbc;

namespace {

CyclotomicInt w(int n, std::int64_t k) { return CyclotomicInt::root_of_unity(n, k); }

CyclotomicInt random_element(Rng& rng, int n, int bound) {
  std::vector<wide_int> c(n);
  for (auto& v : c) v = rng.uniform_int(-bound, bound);
  return CyclotomicInt(n, c);
}

std::int64_t random_unit(Rng& rng, int n) {
  for (;;) {
    const std::int64_t k = rng.uniform_int(1, n);
    if (std::gcd<std::int64_t>(k, n) == 1) return k;
  }
}

std::complex<double> numeric_det(const CycMatrix& m) {
  const int n = static_cast<int>(m.size());
  Eigen::MatrixXcd a(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) a(r, c) = m[r][c].embed();
  return a.determinant();
}

}  // namespace

TEST(CyclotomicRing, Examples) {
  EXPECT_EQ(w(4, 1) * w(4, 1), CyclotomicInt::integer(-1, 4));
  EXPECT_EQ((CyclotomicInt::integer(1, 3) + w(3, 1)) * (CyclotomicInt::integer(1, 3) + w(3, 2)), CyclotomicInt::integer(1, 3));
  CyclotomicInt s(7);
  for (int k = 1; k < 7; ++k) s += w(7, k);
  EXPECT_EQ(s, CyclotomicInt::integer(-1, 7));
  EXPECT_NEAR(std::abs(s.embed() + 1.0), 0.0, 1e-12);
}

TEST(CyclotomicRing, MixedConductorsLiftToLcm) {
  const CyclotomicInt x = w(4, 1) * w(3, 1);
  EXPECT_EQ(x.conductor(), 12);
  EXPECT_EQ(x, w(12, 3 + 4));
  EXPECT_EQ(w(8, 2), w(4, 1).lift(8));
}

TEST(CyclotomicRing, EmbeddingIsMultiplicative) {
  Rng rng(21, 1);
  for (int t = 0; t < 10'000; ++t) {
    const int n = static_cast<int>(rng.uniform_int(1, 120));
    const CyclotomicInt x = random_element(rng, n, 100), y = random_element(rng, n, 100);
    const auto ex = x.embed(), ey = y.embed();
    ASSERT_LT(std::abs((x * y).embed() - ex * ey), 1e-9 * (1 + std::abs(ex) * std::abs(ey))) << n;
  }
}

TEST(CyclotomicRing, RingLaws) {
  Rng rng(22, 1);
  for (int t = 0; t < 500; ++t) {
    const int n = static_cast<int>(rng.uniform_int(1, 60));
    const CyclotomicInt x = random_element(rng, n, 20), y = random_element(rng, n, 20), z = random_element(rng, n, 20);
    ASSERT_EQ(x * y, y * x);
    ASSERT_EQ((x * y) * z, x * (y * z));
    ASSERT_EQ(x * (y + z), x * y + x * z);
    ASSERT_TRUE((x - x).is_zero());
    const CyclotomicInt r = x.reduced();
    ASSERT_EQ(r.reduced().coeffs(), r.coeffs());
    ASSERT_EQ(r, x);
  }
}

TEST(CyclotomicRing, TraceIsSumOfConjugates) {
  Rng rng(23, 1);
  for (int n : {5, 7, 8, 12, 15, 28}) {
    const CyclotomicInt x = random_element(rng, n, 9);
    std::complex<double> s = 0;
    for (int k = 1; k <= n; ++k)
      if (std::gcd(k, n) == 1) s += GaloisAuto(n, k)(x).embed();
    EXPECT_NEAR(static_cast<double>(x.trace()), s.real(), 1e-8);
    EXPECT_NEAR(s.imag(), 0.0, 1e-8);
  }
}

TEST(Galois, Examples) {
  Rng rng(24, 1);
  const CyclotomicInt x = random_element(rng, 28, 10);
  EXPECT_EQ(GaloisAuto(28, 1)(x), x);
  EXPECT_EQ(GaloisAuto(8, 5)(w(8, 2)), w(8, 2));
  const GaloisAuto tau(7, 3);
  EXPECT_EQ(tau(tau(w(7, 1))), w(7, 2));
  EXPECT_THROW(GaloisAuto(8, 2), std::invalid_argument);
}

TEST(Galois, HomomorphismAndComposition) {
  Rng rng(25, 1);
  for (int t = 0; t < 500; ++t) {
    const int n = static_cast<int>(rng.uniform_int(2, 90));
    const GaloisAuto g(n, random_unit(rng, n)), h(n, random_unit(rng, n));
    const CyclotomicInt x = random_element(rng, n, 20), y = random_element(rng, n, 20);
    ASSERT_EQ(g(x * y), g(x) * g(y));
    ASSERT_EQ(g(x + y), g(x) + g(y));
    ASSERT_EQ(g(h(x)), GaloisAuto(n, g.exponent * h.exponent % n)(x));
    ASSERT_EQ(g.compose(h)(x), g(h(x)));
  }
}

TEST(GaussPeriod, Examples) {
  const CyclotomicInt eta7 = gauss_period(7, 1, 3);
  EXPECT_EQ(eta7, w(7, 1) + w(7, 6));
  EXPECT_NEAR(eta7.embed().real(), 2 * std::cos(2 * M_PI / 7), 1e-15);
  EXPECT_NEAR(eta7.embed().real(), 1.2469796037174670, 1e-14);
  EXPECT_EQ(gauss_period(7, 1, 1), CyclotomicInt::integer(-1, 7));
  const CyclotomicInt eta11 = gauss_period(11, 1, 5);
  EXPECT_EQ(eta11, w(11, 1) + w(11, 10));
  for (std::int64_t h : index_subgroup(11, 5)) EXPECT_EQ(GaloisAuto(11, h)(eta11), eta11);
  EXPECT_THROW(gauss_period(7, 1, 4), std::invalid_argument);
}

TEST(GaussPeriod, FixedExactlyByItsSubgroup) {
  const std::pair<std::int64_t, int> prime_powers[] = {{7, 1}, {11, 1}, {13, 1}, {9, 1}, {19, 1}, {25, 1}, {27, 1}, {31, 1}};
  for (auto [pe, one] : prime_powers) {
    (void)one;
    const Factorization f = factor(pe);
    const std::int64_t p = f.factors[0].prime;
    const int e = f.factors[0].exponent;
    const std::int64_t phi = euler_phi(pe);
    for (std::int64_t n1 = 2; n1 <= phi; ++n1) {
      if (phi % n1) continue;
      const CyclotomicInt eta = gauss_period(p, e, n1);
      const auto h = index_subgroup(pe, n1);
      EXPECT_EQ(static_cast<std::int64_t>(h.size()), phi / n1);
      for (std::int64_t k : h) ASSERT_EQ(GaloisAuto(static_cast<int>(pe), k)(eta), eta);
      // H ⊇ {1 + j p^{e-1}} makes every coset sum vanish
      if (e >= 2 && (phi / n1) % p == 0) {
        EXPECT_TRUE(eta.is_zero()) << pe << " " << n1;
        continue;
      }
      bool moved = false;
      for (std::int64_t k = 2; k < pe && !moved; ++k)
        if (std::gcd(k, pe) == 1 && std::find(h.begin(), h.end(), k) == h.end())
          moved = !(GaloisAuto(static_cast<int>(pe), k)(eta) == eta);
      EXPECT_TRUE(moved) << pe << " " << n1;
    }
  }
}

TEST(Embedding, Roots) {
  EXPECT_LT(std::abs(embed_complex(w(4, 1)) - std::complex<double>(0, 1)), 1e-15);
  EXPECT_LT(std::abs(embed_complex(w(3, 1)) - std::complex<double>(-0.5, std::sqrt(3.0) / 2)), 1e-15);
}

TEST(Projection, Examples) {
  const CyclotomicInt x = CyclotomicInt(4, {2, 3, 0, 0});
  const auto g = project_to_gaussian(x);
  ASSERT_TRUE(g);
  EXPECT_EQ(*g, (GaussianInt{2, 3}));
  EXPECT_FALSE(project_to_gaussian(w(7, 1)));
  EXPECT_FALSE(project_to_subring(w(7, 1), Subring::Gaussian));
  EXPECT_EQ(*project_to_integer(CyclotomicInt::integer(-1, 7) - gauss_period(7, 1, 1) - CyclotomicInt::integer(5, 7)), -5);
  const auto e = project_to_eisenstein(w(12, 4) * CyclotomicInt::integer(3, 12) + CyclotomicInt::integer(2, 12));
  ASSERT_TRUE(e);
  EXPECT_EQ(*e, (EisensteinInt{2, 3}));
  EXPECT_FALSE(project_to_eisenstein(w(4, 1)));
}

TEST(Projection, RecoversEmbeddedSubringElements) {
  Rng rng(26, 1);
  for (int t = 0; t < 500; ++t) {
    const GaussianInt g{rng.uniform_int(-1000, 1000), rng.uniform_int(-1000, 1000)};
    const int n = 4 * static_cast<int>(rng.uniform_int(1, 15));
    const CyclotomicInt x = CyclotomicInt::from_gaussian(g).lift(n);
    ASSERT_EQ(*project_to_gaussian(x), g);
    const EisensteinInt e{rng.uniform_int(-1000, 1000), rng.uniform_int(-1000, 1000)};
    const int m = 3 * static_cast<int>(rng.uniform_int(1, 15));
    ASSERT_EQ(*project_to_eisenstein(CyclotomicInt::from_eisenstein(e).lift(m)), e);
  }
}

TEST(ExactDet, Examples) {
  const CycMatrix id = {{CyclotomicInt::integer(1, 8), CyclotomicInt(8)}, {CyclotomicInt(8), CyclotomicInt::integer(1, 8)}};
  EXPECT_EQ(exact_det(id), CyclotomicInt::integer(1, 8));
  const CycMatrix d = {{w(8, 1), CyclotomicInt(8)}, {CyclotomicInt(8), w(8, 7)}};
  EXPECT_EQ(exact_det(d), CyclotomicInt::integer(1, 8));

  // [[ℓ0, γσ(ℓ1)], [ℓ1, σ(ℓ0)]] with σ: ω8 -> ω8^5, γ = 2+i
  const GaloisAuto sigma(8, 5);
  const CyclotomicInt l0 = CyclotomicInt::integer(1, 8) + w(8, 1), l1 = w(8, 1);
  const CyclotomicInt gamma = CyclotomicInt::from_gaussian({2, 1}).lift(8);
  const CycMatrix lr = {{l0, gamma * sigma(l1)}, {l1, sigma(l0)}};
  EXPECT_EQ(exact_det(lr), l0 * sigma(l0) - gamma * l1 * sigma(l1));
}

TEST(ExactDet, MatchesFloatingPoint) {
  Rng rng(27, 1);
  for (int t = 0; t < 200; ++t) {
    const int n = static_cast<int>(rng.uniform_int(1, 6));
    const int cond = static_cast<int>(rng.uniform_int(3, 40));
    CycMatrix m(n, std::vector<CyclotomicInt>(n));
    for (auto& row : m)
      for (auto& e : row) e = random_element(rng, cond, 5);
    const CyclotomicInt d = exact_det(m);
    const auto nd = numeric_det(m);
    ASSERT_LT(std::abs(d.embed() - nd), 1e-6 * (1 + std::abs(nd))) << n << " " << cond;
  }
}
