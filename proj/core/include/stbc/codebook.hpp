#pragma once

// Linear-dispersion view of CDA codes. A codebook maps 2K odd integer
// coordinates z (real and ω-part of each of the K constellation symbols) to
// vec(X) = L z, with vec taken column-major over the n_t x T code matrix and
// symbol k = i*n + j carrying f_ij (thread i, basis element j).

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "stbc/cda.hpp"
#include "stbc/cyclotomic.hpp"

namespace stbc {

struct Constellation {
  BaseField kind = BaseField::QAM;
  int M = 2;

  Constellation() = default;
  Constellation(BaseField kind, int M);

  std::size_t size() const { return static_cast<std::size_t>(M) * M; }
  /// Odd levels -(M-1), ..., M-1.
  std::vector<int> levels() const;
  /// a + i b (QAM) or a + ω3 b (HEX).
  std::complex<double> point(int a, int b) const;
  std::vector<std::complex<double>> points() const;
  /// i for QAM, ω3 for HEX.
  std::complex<double> unit() const;
};

/// den-scaled left regular representation: the algebra element is matrix / scale.
struct LeftRegular {
  CycMatrix matrix;
  CyclotomicInt scale;
};

/// Entry (r, c) = σ^c(ℓ_{(r-c) mod n}), times γ when r < c.
LeftRegular left_regular_matrix(const CodeSpec& spec, const std::vector<CyclotomicInt>& ells);

/// ℓ_i = Σ_j f_ij β_j from integer coordinates z (length 2 n²).
std::vector<CyclotomicInt> ells_from_coordinates(const CodeSpec& spec, const std::vector<std::int64_t>& z);

enum class Shape { Square, RowDeleted, Cartesian };
std::string to_string(Shape s);

class Codebook {
 public:
  CodeSpec spec;  // square parent (first part for Cartesian products)
  Constellation constellation;
  int n_t = 1;
  int T = 1;
  Shape shape = Shape::Square;
  std::vector<int> deleted_rows;
  std::vector<Codebook> parts;
  Eigen::MatrixXcd generator;  // (n_t T) x K, symbol k -> vec(X)
  double e_max = 0.0;          // max ||X||_F² over the codebook (or a certified upper bound)
  bool e_max_exact = false;

  int symbols() const { return static_cast<int>(generator.cols()); }
  int real_dim() const { return 2 * symbols(); }
  /// (n_t T) x 2K complex matrix acting on integer coordinates.
  Eigen::MatrixXcd lattice_generator() const;
  double log2_size() const;
  double rate_bpcu() const { return log2_size() / T; }

  /// θ = sqrt(T snr / E_max).
  double theta(double snr) const;

  Eigen::MatrixXcd codeword(const std::vector<std::int64_t>& z) const;
  /// Integer coordinates of codeword number `index` (mixed radix M per coordinate).
  std::vector<std::int64_t> coordinates(std::uint64_t index) const;

  std::string describe() const;
};

Codebook build_codebook(const CodeSpec& spec, int M, int T = 0);
Codebook row_delete(const Codebook& book, const std::vector<int>& rows);
Codebook cartesian_product(const std::vector<Codebook>& books);

/// Max of ||L z||² over z with odd entries in [-(M-1), M-1]. Exact vertex
/// enumeration up to `exact_limit` real dimensions, else an upper bound.
std::pair<double, bool> max_codeword_energy(const Eigen::MatrixXcd& lattice, int M, int exact_limit = 20);

double normalize(const Codebook& book, double snr);

/// Smallest even M with M² >= snr^(r/n), at least 2.
int constellation_side_for_rate(double snr, double r, int n);

/// vec index of entry (row, col) in an n_t x T matrix.
inline int vec_index(int row, int col, int n_t) { return row + col * n_t; }

}  // namespace stbc
