#pragma once

// Cyclic division algebra constructions over Q(i) and Q(ω3).
//
// Every field L built here sits inside some Q(ω_N). It is described as the
// fixed field of the subgroup S of Z*_N cut out by `fixing`; σ is ω_N -> ω_N^k
// for the stored exponent k, whose class generates Z*_N / S.

#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "stbc/cyclotomic.hpp"
#include "stbc/numtheory.hpp"

namespace stbc {

enum class BaseField { QAM, HEX };
enum class Method { A, B, HEX, Perfect3x3 };

std::string to_string(BaseField b);
std::string to_string(Method m);
BaseField parse_base_field(const std::string& s);
Method parse_method(const std::string& s);

/// k lies in S iff k^power ≡ 1 (mod modulus) for every condition.
struct SubgroupCondition {
  std::int64_t modulus = 1;
  std::int64_t power = 1;
  bool operator==(const SubgroupCondition&) const = default;
};

struct CodeSpec {
  int n = 1;
  BaseField base = BaseField::QAM;
  Method method = Method::A;
  int conductor = 4;
  std::int64_t sigma_exponent = 1;
  std::int64_t q = 1;
  // γ = gamma / gamma_den, each a pair (re, im) for QAM or (a, c) = a + cω3 for HEX
  std::array<wide_int, 2> gamma{1, 0};
  std::array<wide_int, 2> gamma_den{1, 0};
  std::vector<CyclotomicInt> basis;
  std::vector<SubgroupCondition> fixing;
  std::vector<Congruence> q_congruences;
  int e0 = 0;
  std::int64_t n1 = 1;
  std::int64_t odd_prime_power = 0;  // p^e of Construction A / HEX, 0 when absent

  GaloisAuto sigma() const { return GaloisAuto(conductor, sigma_exponent); }
  Subring center() const { return base == BaseField::QAM ? Subring::Gaussian : Subring::Eisenstein; }
  bool gamma_is_integral() const { return gamma_den == std::array<wide_int, 2>{1, 0}; }
  CyclotomicInt gamma_numerator() const;
  CyclotomicInt gamma_denominator() const;
  std::complex<double> gamma_complex() const;
  wide_int gamma_norm() const;

  bool fixes(std::int64_t k) const;
  /// Order of k in Z*_N / S; throws if k is not a unit.
  std::int64_t relative_order(std::int64_t k) const;

  std::string gamma_string() const;
};

CodeSpec construct_A(int n);
CodeSpec construct_B(int n);
/// Throws std::domain_error for n ≡ 0 (mod 4).
CodeSpec construct_HEX(int n);
CodeSpec perfect_3x3_spec();
CodeSpec construct(Method m, int n);

/// The value shown in the "p^e" column of the Construction A table.
std::int64_t table_prime_power(const CodeSpec& spec);

/// ∏_{j<n} σ^j(u).
CyclotomicInt relative_norm(const CodeSpec& spec, const CyclotomicInt& u);

/// Numerical check that [σ^j(β_i)] is nonsingular; returns smallest/largest singular value.
double basis_conditioning(const CodeSpec& spec);

struct NonNormReport {
  std::int64_t q = 0;
  std::int64_t frobenius_order = 0;  // relative degree f of the primes above q
  bool inert = false;                 // f == n
  bool congruences_hold = false;
  int t = 1;
  std::int64_t samples = 0;
  std::int64_t counterexamples = 0;
  std::string witness;
  bool passed() const { return inert && congruences_hold && counterexamples == 0; }
};

/// Inertness certificate plus a seeded search for u with N(u) = γ^t.
NonNormReport verify_non_norm(const CodeSpec& spec, int t, std::int64_t samples = 10'000, std::uint64_t seed = 1,
                              int coeff_bound = 2);

}  // namespace stbc
