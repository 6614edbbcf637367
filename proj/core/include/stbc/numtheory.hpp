#pragma once

// Elementary and algebraic number theory used by the code constructions:
// factorisation, totients, multiplicative orders, primitive roots, CRT,
// primes in arithmetic progressions, and splitting of rational primes in
// Q(i) and Q(ω3).

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stbc/wide_int.hpp"

namespace stbc {

struct PrimePower {
  std::int64_t prime = 0;
  int exponent = 0;

  std::int64_t value() const;
  bool operator==(const PrimePower&) const = default;
};

/// n = prod prime^exponent with strictly increasing primes.
struct Factorization {
  std::int64_t value = 1;
  std::vector<PrimePower> factors;

  /// Exponent of 2 in value (e0 in n = 2^e0 * n1).
  int two_adic_valuation() const;
  /// Odd part n1.
  std::int64_t odd_part() const;
};

/// x ≡ residue (mod modulus).
struct Congruence {
  std::int64_t residue = 0;
  std::int64_t modulus = 1;

  bool holds(std::int64_t x) const;
  bool operator==(const Congruence&) const = default;
};

// ---- arithmetic -----------------------------------------------------------

std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t m);
std::int64_t pow_mod(std::int64_t a, std::int64_t e, std::int64_t m);
/// Non-negative residue of a mod m.
std::int64_t mod_floor(std::int64_t a, std::int64_t m);
std::int64_t inverse_mod(std::int64_t a, std::int64_t m);

/// Deterministic Miller-Rabin (witnesses 2..37, exact for all 64-bit inputs).
bool is_prime(std::int64_t n);

/// Trial-division factorisation. Throws std::invalid_argument for n < 1.
Factorization factor(std::int64_t n);

std::int64_t euler_phi(std::int64_t n);
int moebius(std::int64_t n);

/// Least f >= 1 with a^f ≡ 1 (mod m). Requires m >= 2 and gcd(a, m) = 1.
std::int64_t multiplicative_order(std::int64_t a, std::int64_t m);

bool is_primitive_root(std::int64_t g, std::int64_t m);

/// Largest multiplicative order of any unit mod m (brute force, small m).
std::int64_t max_unit_order(std::int64_t m);

/// Smallest positive generator of Z*_{p^e}; p must be an odd prime.
std::int64_t primitive_root_mod_prime_power(std::int64_t p, int e);

/// All generators of Z*_m in increasing order (empty if Z*_m is not cyclic).
std::vector<std::int64_t> primitive_roots(std::int64_t m);

/// Smallest odd prime power p^e (by value) with n1 | phi(p^e); nullopt when
/// n1 == 1. Primes listed in `excluded_primes` are skipped.
std::optional<PrimePower> smallest_inert_prime_power(
    std::int64_t n1, std::span<const std::int64_t> excluded_primes = {});

/// Combines pairwise-coprime congruences. Throws std::invalid_argument on
/// non-coprime moduli.
Congruence crt(std::span<const Congruence> parts);

/// Smallest prime satisfying every congruence, scanning the CRT class in
/// ascending order. Throws std::invalid_argument for non-coprime input and
/// std::runtime_error once `max_candidates` members have been examined.
std::int64_t prime_in_progression(std::span<const Congruence> parts,
                                  std::int64_t max_candidates = 10'000'000);

// ---- Gaussian and Eisenstein integers -----------------------------------

/// a + b i in Z[i].
struct GaussianInt {
  wide_int re = 0;
  wide_int im = 0;

  wide_int norm() const;
  GaussianInt conj() const { return {re, -im}; }
  bool is_zero() const { return re == 0 && im == 0; }

  friend GaussianInt operator+(const GaussianInt& x, const GaussianInt& y);
  friend GaussianInt operator-(const GaussianInt& x, const GaussianInt& y);
  friend GaussianInt operator*(const GaussianInt& x, const GaussianInt& y);
  GaussianInt operator-() const { return {-re, -im}; }
  bool operator==(const GaussianInt&) const = default;

  /// True when x and y differ by a unit, possibly after conjugation.
  static bool associated_up_to_conjugation(const GaussianInt& x, const GaussianInt& y);
  std::string to_string() const;
};

/// a + c ω3 in Z[ω3], with ω3² = -1 - ω3.
struct EisensteinInt {
  wide_int a = 0;
  wide_int c = 0;

  wide_int norm() const;
  EisensteinInt conj() const { return {a - c, -c}; }
  bool is_zero() const { return a == 0 && c == 0; }

  friend EisensteinInt operator+(const EisensteinInt& x, const EisensteinInt& y);
  friend EisensteinInt operator-(const EisensteinInt& x, const EisensteinInt& y);
  friend EisensteinInt operator*(const EisensteinInt& x, const EisensteinInt& y);
  EisensteinInt operator-() const { return {-a, -c}; }
  bool operator==(const EisensteinInt&) const = default;

  static bool associated_up_to_conjugation(const EisensteinInt& x, const EisensteinInt& y);
  std::string to_string() const;
};

/// Cornacchia: x, y >= 0 with x² + d y² = m for prime m, if any.
std::optional<std::pair<std::int64_t, std::int64_t>> cornacchia(std::int64_t d, std::int64_t m);

/// Gaussian prime a+bi of norm q with a > b > 0. Requires q prime, q ≡ 1 (mod 4).
GaussianInt split_in_gaussian_integers(std::int64_t q);

/// Eisenstein prime a+cω3 of norm q in the sector a > 2c > 0.
/// Requires q prime, q ≡ 1 (mod 3).
EisensteinInt split_in_eisenstein_integers(std::int64_t q);

}  // namespace stbc
