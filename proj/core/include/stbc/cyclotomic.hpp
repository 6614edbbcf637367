#pragma once

// Exact arithmetic in Z[ω_N]. Elements are stored on the full power basis
// ω_N^0..ω_N^{N-1}; products are cyclic convolutions, Galois action is an
// index permutation, and canonical form is the remainder modulo Φ_N.

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "stbc/numtheory.hpp"
#include "stbc/wide_int.hpp"

namespace stbc {

/// Per-conductor constants, interned for the lifetime of the process.
struct CyclotomicRing {
  int conductor = 1;
  int phi = 1;
  std::vector<wide_int> cyclotomic_poly;  // Φ_N, monic, degree phi, low order first
  std::vector<std::pair<int, wide_int>> phi_terms;  // nonzero terms of Φ_N below the leading one
  std::vector<wide_int> trace_of_power;  // Tr(ω_N^j) for j in [0, N)
  std::vector<std::complex<double>> roots;  // exp(2πij/N)

  static const CyclotomicRing& get(int conductor);
};

class CyclotomicInt {
 public:
  CyclotomicInt() : conductor_(1), coeffs_(1, 0) {}
  explicit CyclotomicInt(int conductor);
  CyclotomicInt(int conductor, std::vector<wide_int> coeffs);

  static CyclotomicInt integer(wide_int v, int conductor = 1);
  /// ω_N^k
  static CyclotomicInt root_of_unity(int conductor, std::int64_t k);
  static CyclotomicInt from_gaussian(const GaussianInt& g, int conductor = 4);
  static CyclotomicInt from_eisenstein(const EisensteinInt& e, int conductor = 3);

  int conductor() const { return conductor_; }
  const std::vector<wide_int>& coeffs() const { return coeffs_; }

  /// Same element written over Z[ω_M]; M must be a multiple of the conductor.
  CyclotomicInt lift(int m) const;
  /// Canonical representative: coefficients beyond index φ(N)-1 are zero.
  CyclotomicInt reduced() const;
  void reduce_in_place();
  bool is_zero() const;

  wide_int trace() const;
  std::complex<double> embed() const;
  std::string to_string() const;

  CyclotomicInt& operator+=(const CyclotomicInt& y);
  CyclotomicInt& operator-=(const CyclotomicInt& y);
  CyclotomicInt& operator*=(const CyclotomicInt& y);
  CyclotomicInt operator-() const;
  CyclotomicInt scaled(wide_int s) const;

  friend CyclotomicInt operator+(CyclotomicInt x, const CyclotomicInt& y) { return x += y; }
  friend CyclotomicInt operator-(CyclotomicInt x, const CyclotomicInt& y) { return x -= y; }
  friend CyclotomicInt operator*(const CyclotomicInt& x, const CyclotomicInt& y);
  friend bool operator==(const CyclotomicInt& x, const CyclotomicInt& y);

  /// x += a * y without temporaries; conductors must already agree.
  void add_scaled(const CyclotomicInt& y, wide_int a);

 private:
  int conductor_;
  std::vector<wide_int> coeffs_;
};

/// σ_k : ω_N -> ω_N^k.
struct GaloisAuto {
  int conductor = 1;
  std::int64_t exponent = 1;

  GaloisAuto() = default;
  GaloisAuto(int conductor, std::int64_t exponent);

  GaloisAuto compose(const GaloisAuto& other) const;
  GaloisAuto power(std::int64_t e) const;
  CyclotomicInt apply(const CyclotomicInt& x) const;
  CyclotomicInt operator()(const CyclotomicInt& x) const { return apply(x); }
};

CyclotomicInt apply_galois(const GaloisAuto& g, const CyclotomicInt& x);

/// Σ_{h∈H} ω_{p^e}^{coset_rep·h} over the index-n1 subgroup H of Z*_{p^e}.
CyclotomicInt gauss_period(std::int64_t p, int e, std::int64_t n1, std::int64_t coset_rep = 1);

/// Elements h of the unique index-n1 subgroup of Z*_m (m with cyclic unit group).
std::vector<std::int64_t> index_subgroup(std::int64_t m, std::int64_t n1);

std::complex<double> embed_complex(const CyclotomicInt& x);

enum class Subring { Integers, Gaussian, Eisenstein };

using SubringElement = std::variant<wide_int, GaussianInt, EisensteinInt>;

/// Exact recognition of x as an element of Z, Z[i] or Z[ω3]; nullopt if x lies outside.
std::optional<SubringElement> project_to_subring(const CyclotomicInt& x, Subring target);
std::optional<GaussianInt> project_to_gaussian(const CyclotomicInt& x);
std::optional<EisensteinInt> project_to_eisenstein(const CyclotomicInt& x);
std::optional<wide_int> project_to_integer(const CyclotomicInt& x);

using CycMatrix = std::vector<std::vector<CyclotomicInt>>;

/// Division-free determinant by Laplace expansion over row subsets.
CyclotomicInt exact_det(const CycMatrix& m);

/// Common conductor of every entry.
int common_conductor(const CycMatrix& m);

}  // namespace stbc
