#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>

#include "stbc/cda.hpp"

using namespace stbc;

namespace {

GaussianInt gamma_of(const CodeSpec& s) { return {s.gamma[0], s.gamma[1]}; }

// σ^k for 0 < k < n moves some basis element, σ^n fixes all of them
void expect_sigma_order(const CodeSpec& s) {
  const GaloisAuto sigma = s.sigma();
  for (const auto& b : s.basis) EXPECT_EQ(sigma.power(s.n)(b), b);
  for (int k = 1; k < s.n; ++k) {
    bool moved = false;
    for (const auto& b : s.basis) moved = moved || !(sigma.power(k)(b) == b);
    EXPECT_TRUE(moved) << to_string(s.method) << " n=" << s.n << " k=" << k;
  }
}

}  // namespace

TEST(ConstructA, RowsOfTheNonNormTable) {
  const CodeSpec a2 = construct_A(2);
  EXPECT_EQ(a2.q, 5);
  EXPECT_EQ(gamma_of(a2), (GaussianInt{2, 1}));
  EXPECT_EQ(table_prime_power(a2), 8);
  const CodeSpec a5 = construct_A(5);
  EXPECT_EQ(a5.odd_prime_power, 11);
  EXPECT_EQ(a5.q, 13);
  EXPECT_EQ(gamma_of(a5), (GaussianInt{3, 2}));
  const CodeSpec a14 = construct_A(14);
  EXPECT_EQ(a14.q, 37);  // the reference table says 36, which is not prime; 6+i has norm 37
  EXPECT_EQ(gamma_of(a14), (GaussianInt{6, 1}));
}

TEST(ConstructA, RowNineUsesSmallestValidPrime) {
  // the reference has 29; 13 satisfies the same congruence certificate and is smaller
  const CodeSpec a9 = construct_A(9);
  EXPECT_EQ(a9.odd_prime_power, 19);
  EXPECT_EQ(a9.q, 13);
  CodeSpec reference = a9;
  reference.q = 29;
  for (const auto& c : a9.q_congruences)
    if (c.modulus == 4) {
      EXPECT_TRUE(c.holds(29));
    }
  EXPECT_EQ(reference.relative_order(29), 9);
  EXPECT_EQ(a9.relative_order(13), 9);
}

TEST(ConstructB, RowsOfTheNonNormTable) {
  const CodeSpec b7 = construct_B(7);
  EXPECT_EQ(b7.q, 5);
  EXPECT_EQ(gamma_of(b7), (GaussianInt{2, 1}));
  const CodeSpec b15 = construct_B(15);
  EXPECT_EQ(b15.q, 113);
  EXPECT_TRUE(GaussianInt::associated_up_to_conjugation(gamma_of(b15), {7, 8}));
  const CodeSpec b1 = construct_B(1);
  EXPECT_EQ(b1.n, 1);
  EXPECT_EQ(b1.basis.size(), 1u);
  EXPECT_EQ(gamma_of(b1), (GaussianInt{1, 0}));
}

TEST(ConstructHex, Examples) {
  const CodeSpec h2 = construct_HEX(2);
  EXPECT_EQ(h2.q, 7);
  EXPECT_EQ(h2.gamma[0], 3);
  EXPECT_EQ(h2.gamma[1], 1);
  EXPECT_EQ(h2.base, BaseField::HEX);
  const CodeSpec h3 = construct_HEX(3);
  EXPECT_EQ(h3.odd_prime_power, 7);
  EXPECT_EQ(h3.q % 3, 1);
  EXPECT_EQ(h3.q % 4, 3);
  EXPECT_EQ(multiplicative_order(h3.q, 7), 6);
  EXPECT_EQ(split_in_eisenstein_integers(h3.q).norm(), h3.q);
  EXPECT_THROW(construct_HEX(4), std::domain_error);
  EXPECT_THROW(construct_HEX(8), std::domain_error);
}

TEST(Perfect3x3, Spec) {
  const CodeSpec p = perfect_3x3_spec();
  EXPECT_EQ(p.n, 3);
  EXPECT_EQ(p.conductor, 28);
  EXPECT_NEAR(std::abs(p.gamma_numerator().embed() / p.gamma_denominator().embed()), 1.0, 1e-12);
  EXPECT_NEAR(std::abs(p.gamma_complex()), 1.0, 1e-12);
  const GaloisAuto sigma = p.sigma();
  EXPECT_EQ(sigma(CyclotomicInt::root_of_unity(28, 4)), CyclotomicInt::root_of_unity(28, 12));  // ω7 -> ω7^3
  EXPECT_EQ(sigma(CyclotomicInt::root_of_unity(28, 7)), CyclotomicInt::root_of_unity(28, 7));   // i fixed
  expect_sigma_order(p);
  EXPECT_GT(basis_conditioning(p), 0.99);
}

TEST(Specs, StructuralInvariants) {
  for (int n = 2; n <= 12; ++n)
    for (Method m : {Method::A, Method::B}) {
      SCOPED_TRACE(to_string(m) + " n=" + std::to_string(n));
      const CodeSpec s = construct(m, n);
      EXPECT_EQ(static_cast<int>(s.basis.size()), n);
      EXPECT_TRUE(is_prime(s.q));
      for (const auto& c : s.q_congruences) EXPECT_TRUE(c.holds(s.q));
      EXPECT_EQ(s.gamma_norm(), s.q);
      EXPECT_EQ(s.relative_order(s.q), n);
      EXPECT_EQ(s.relative_order(s.sigma_exponent), n);
      EXPECT_TRUE(s.fixes(1));
      EXPECT_EQ(s.sigma_exponent % 4, 1);  // σ fixes i
      expect_sigma_order(s);
      EXPECT_GT(basis_conditioning(s), 1e-6);
    }
}

TEST(Specs, HexStructuralInvariants) {
  for (int n : {2, 3, 5, 6, 7, 9, 10}) {
    SCOPED_TRACE("HEX n=" + std::to_string(n));
    const CodeSpec s = construct_HEX(n);
    EXPECT_EQ(s.sigma_exponent % 3, 1);  // σ fixes ω3
    EXPECT_EQ(s.relative_order(s.q), n);
    EXPECT_EQ(s.gamma_norm(), s.q);
    expect_sigma_order(s);
    EXPECT_GT(basis_conditioning(s), 1e-6);
  }
}

TEST(NonNorm, InertnessCertificate) {
  const NonNormReport a2 = verify_non_norm(construct_A(2), 1, 1000);
  EXPECT_EQ(a2.frobenius_order, 2);
  EXPECT_EQ(multiplicative_order(5, 8), 2);
  EXPECT_TRUE(a2.passed());
  const NonNormReport a3 = verify_non_norm(construct_A(3), 1, 1000);
  EXPECT_EQ(multiplicative_order(5, 7), 6);
  EXPECT_EQ(a3.frobenius_order, 3);
  EXPECT_TRUE(a3.passed());
  EXPECT_TRUE(verify_non_norm(perfect_3x3_spec(), 1, 500).passed());
  EXPECT_TRUE(verify_non_norm(construct_HEX(3), 2, 500).passed());
}

TEST(NonNorm, UnitGammaIsFalsifiedImmediately) {
  CodeSpec s = construct_A(2);
  s.gamma = {1, 0};
  const NonNormReport r = verify_non_norm(s, 1, 100);
  EXPECT_GE(r.counterexamples, 1);
  EXPECT_FALSE(r.passed());
}

TEST(NonNorm, RelativeNormLandsInTheCenter) {
  for (Method m : {Method::A, Method::B})
    for (int n = 2; n <= 6; ++n) {
      const CodeSpec s = construct(m, n);
      const CyclotomicInt u = s.basis[0] + CyclotomicInt::integer(3, s.conductor);
      const CyclotomicInt nu = relative_norm(s, u);
      EXPECT_EQ(s.sigma()(nu), nu);
      EXPECT_TRUE(project_to_gaussian(nu).has_value());
    }
}

TEST(Parsing, MethodsAndBases) {
  EXPECT_EQ(parse_method("A"), Method::A);
  EXPECT_EQ(parse_method("perfect3x3"), Method::Perfect3x3);
  EXPECT_EQ(parse_method(to_string(Method::HEX)), Method::HEX);
  EXPECT_THROW(parse_method("C"), std::invalid_argument);
  EXPECT_EQ(parse_base_field(to_string(BaseField::HEX)), BaseField::HEX);
}
