#include "stbc/codebook.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace stbc {

Constellation::Constellation(BaseField kind_, int M_) : kind(kind_), M(M_) {
  if (M < 2 || M % 2 != 0) throw std::invalid_argument("constellation side M must be a positive even integer");
}

std::vector<int> Constellation::levels() const {
  std::vector<int> v;
  for (int a = -(M - 1); a <= M - 1; a += 2) v.push_back(a);
  return v;
}

std::complex<double> Constellation::unit() const {
  if (kind == BaseField::QAM) return {0.0, 1.0};
  return {-0.5, std::numbers::sqrt3 / 2.0};
}

std::complex<double> Constellation::point(int a, int b) const { return static_cast<double>(a) + static_cast<double>(b) * unit(); }

std::vector<std::complex<double>> Constellation::points() const {
  std::vector<std::complex<double>> out;
  for (int a : levels())
    for (int b : levels()) out.push_back(point(a, b));
  return out;
}

LeftRegular left_regular_matrix(const CodeSpec& spec, const std::vector<CyclotomicInt>& ells) {
  const int n = spec.n;
  if (static_cast<int>(ells.size()) != n) throw std::invalid_argument("left_regular_matrix: expected n elements");
  const int cond = spec.conductor;
  const GaloisAuto sigma = spec.sigma();
  const bool integral = spec.gamma_is_integral();
  const CyclotomicInt num = spec.gamma_numerator().lift(cond);
  const CyclotomicInt den = spec.gamma_denominator().lift(cond);

  // images[c][i] = σ^c(ℓ_i)
  std::vector<std::vector<CyclotomicInt>> images(n);
  for (int i = 0; i < n; ++i) {
    CyclotomicInt x = ells[i].lift(cond);
    for (int c = 0; c < n; ++c) {
      images[c].push_back(x);
      if (c + 1 < n) x = sigma.apply(x);
    }
  }
  LeftRegular out;
  out.scale = integral ? CyclotomicInt::integer(1, cond) : den;
  out.matrix.assign(n, std::vector<CyclotomicInt>(n, CyclotomicInt(cond)));
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      const CyclotomicInt& e = images[c][((r - c) % n + n) % n];
      CyclotomicInt v = r < c ? e * num : (integral ? e : e * den);
      v.reduce_in_place();
      out.matrix[r][c] = std::move(v);
    }
  }
  return out;
}

std::vector<CyclotomicInt> ells_from_coordinates(const CodeSpec& spec, const std::vector<std::int64_t>& z) {
  const int n = spec.n;
  if (static_cast<int>(z.size()) != 2 * n * n) throw std::invalid_argument("ells_from_coordinates: expected 2 n² coordinates");
  const int cond = spec.conductor;
  const int unit_index = spec.base == BaseField::QAM ? cond / 4 : cond / 3;
  std::vector<CyclotomicInt> ells;
  for (int i = 0; i < n; ++i) {
    CyclotomicInt acc(cond);
    for (int j = 0; j < n; ++j) {
      const int k = i * n + j;
      if (z[2 * k] == 0 && z[2 * k + 1] == 0) continue;
      std::vector<wide_int> c(cond, 0);
      c[0] = z[2 * k];
      c[unit_index] = z[2 * k + 1];
      acc += CyclotomicInt(cond, std::move(c)) * spec.basis[j].lift(cond);
    }
    acc.reduce_in_place();
    ells.push_back(std::move(acc));
  }
  return ells;
}

std::string to_string(Shape s) {
  switch (s) {
    case Shape::Square: return "square";
    case Shape::RowDeleted: return "row_deleted";
    case Shape::Cartesian: return "cartesian";
  }
  return "?";
}

Eigen::MatrixXcd Codebook::lattice_generator() const {
  const std::complex<double> u = constellation.unit();
  Eigen::MatrixXcd l(generator.rows(), 2 * generator.cols());
  for (Eigen::Index k = 0; k < generator.cols(); ++k) {
    l.col(2 * k) = generator.col(k);
    l.col(2 * k + 1) = generator.col(k) * u;
  }
  return l;
}

double Codebook::log2_size() const { return static_cast<double>(real_dim()) * std::log2(static_cast<double>(constellation.M)); }

double Codebook::theta(double snr) const {
  if (!(snr > 0)) throw std::invalid_argument("theta: snr must be positive");
  return std::sqrt(T * snr / e_max);
}

Eigen::MatrixXcd Codebook::codeword(const std::vector<std::int64_t>& z) const {
  if (static_cast<int>(z.size()) != real_dim()) throw std::invalid_argument("codeword: wrong coordinate count");
  Eigen::VectorXd zz(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) zz(i) = static_cast<double>(z[i]);
  Eigen::VectorXcd v = lattice_generator() * zz.cast<std::complex<double>>();
  return Eigen::Map<Eigen::MatrixXcd>(v.data(), n_t, T);
}

std::vector<std::int64_t> Codebook::coordinates(std::uint64_t index) const {
  const int M = constellation.M;
  std::vector<std::int64_t> z(real_dim());
  for (auto& v : z) {
    v = 2 * static_cast<std::int64_t>(index % M) - (M - 1);
    index /= M;
  }
  return z;
}

std::string Codebook::describe() const {
  std::string s = to_string(shape) + " " + to_string(spec.method) + "(n=" + std::to_string(spec.n) + ") M=" +
                  std::to_string(constellation.M) + " n_t=" + std::to_string(n_t) + " T=" + std::to_string(T);
  return s;
}

std::pair<double, bool> max_codeword_energy(const Eigen::MatrixXcd& lattice, int M, int exact_limit) {
  const Eigen::MatrixXd q = (lattice.adjoint() * lattice).real();
  const int d = static_cast<int>(q.rows());
  const double amp2 = static_cast<double>(M - 1) * (M - 1);
  if (d == 0) return {0.0, true};
  if (d <= exact_limit) {
    // Gray-code walk over sign vectors with s_0 = +1 (s and -s give the same energy)
    Eigen::VectorXd s = Eigen::VectorXd::Ones(d);
    Eigen::VectorXd w = q * s;
    double v = s.dot(w);
    double best = v;
    const std::uint64_t steps = std::uint64_t{1} << (d - 1);
    for (std::uint64_t g = 1; g < steps; ++g) {
      const int i = 1 + std::countr_zero(g);
      v += -4.0 * s(i) * w(i) + 4.0 * q(i, i);
      w -= 2.0 * s(i) * q.col(i);
      s(i) = -s(i);
      best = std::max(best, v);
    }
    return {best * amp2, true};
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(q, Eigen::EigenvaluesOnly);
  const double by_eigen = es.eigenvalues().maxCoeff() * d;
  double col_sum = 0;
  for (int k = 0; k < d; ++k) col_sum += lattice.col(k).norm();
  return {std::min(by_eigen, col_sum * col_sum) * amp2, false};
}

namespace {

void refresh_energy(Codebook& b) {
  auto [e, exact] = max_codeword_energy(b.lattice_generator(), b.constellation.M);
  b.e_max = e;
  b.e_max_exact = exact;
}

}  // namespace

Codebook build_codebook(const CodeSpec& spec, int M, int T) {
  const int n = spec.n;
  if (T == 0) T = n;
  if (T != n) throw std::invalid_argument("build_codebook: square codebooks have T = n; use row_delete or cartesian_product");
  if (static_cast<int>(spec.basis.size()) != n) throw std::invalid_argument("build_codebook: spec basis has wrong size");
  Codebook b;
  b.spec = spec;
  b.constellation = Constellation(spec.base, M);
  b.n_t = n;
  b.T = n;
  b.shape = Shape::Square;

  const GaloisAuto sigma = spec.sigma();
  const std::complex<double> g = spec.gamma_complex();
  std::vector<std::vector<std::complex<double>>> emb(n, std::vector<std::complex<double>>(n));
  for (int j = 0; j < n; ++j) {
    CyclotomicInt x = spec.basis[j].lift(spec.conductor);
    for (int c = 0; c < n; ++c) {
      emb[c][j] = x.embed();
      x = sigma.apply(x);
    }
  }
  b.generator = Eigen::MatrixXcd::Zero(n * n, n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int c = 0; c < n; ++c) {
        const int r = (i + c) % n;
        b.generator(vec_index(r, c, n), i * n + j) = emb[c][j] * (r < c ? g : std::complex<double>(1.0));
      }
  refresh_energy(b);
  return b;
}

Codebook row_delete(const Codebook& book, const std::vector<int>& rows) {
  std::vector<int> del = rows;
  std::sort(del.begin(), del.end());
  del.erase(std::unique(del.begin(), del.end()), del.end());
  for (int r : del)
    if (r < 0 || r >= book.n_t) throw std::invalid_argument("row_delete: row index out of range");
  if (static_cast<int>(del.size()) >= book.n_t) throw std::invalid_argument("row_delete: cannot delete every row");
  if (del.empty()) return book;

  std::vector<int> keep;
  for (int r = 0; r < book.n_t; ++r)
    if (!std::binary_search(del.begin(), del.end(), r)) keep.push_back(r);
  Codebook out = book;
  out.n_t = static_cast<int>(keep.size());
  out.generator.resize(out.n_t * out.T, book.generator.cols());
  for (int c = 0; c < book.T; ++c)
    for (int r = 0; r < out.n_t; ++r) out.generator.row(vec_index(r, c, out.n_t)) = book.generator.row(vec_index(keep[r], c, book.n_t));
  // record deleted rows relative to the square parent
  std::vector<int> parent_rows;
  if (book.shape == Shape::RowDeleted) {
    std::vector<int> parent_keep;
    for (int r = 0; r < book.spec.n; ++r)
      if (!std::binary_search(book.deleted_rows.begin(), book.deleted_rows.end(), r)) parent_keep.push_back(r);
    parent_rows = book.deleted_rows;
    for (int r : del) parent_rows.push_back(parent_keep[r]);
    std::sort(parent_rows.begin(), parent_rows.end());
  } else if (book.shape == Shape::Square) {
    parent_rows = del;
  } else {
    throw std::invalid_argument("row_delete: Cartesian products are not row-deleted");
  }
  out.shape = Shape::RowDeleted;
  out.deleted_rows = parent_rows;
  refresh_energy(out);
  return out;
}

Codebook cartesian_product(const std::vector<Codebook>& books) {
  if (books.empty()) throw std::invalid_argument("cartesian_product: no parts");
  if (books.size() == 1) return books[0];
  const int n_t = books[0].n_t;
  int T = 0, K = 0;
  for (const auto& b : books) {
    if (b.n_t != n_t) throw std::invalid_argument("cartesian_product: parts must share n_t");
    if (b.constellation.M != books[0].constellation.M || b.constellation.kind != books[0].constellation.kind)
      throw std::invalid_argument("cartesian_product: parts must share the constellation");
    T += b.T;
    K += b.symbols();
  }
  Codebook out;
  out.spec = books[0].spec;
  out.constellation = books[0].constellation;
  out.n_t = n_t;
  out.T = T;
  out.shape = Shape::Cartesian;
  out.parts = books;
  out.generator = Eigen::MatrixXcd::Zero(n_t * T, K);
  int row = 0, col = 0;
  out.e_max = 0.0;
  out.e_max_exact = true;
  for (const auto& b : books) {
    out.generator.block(row, col, b.generator.rows(), b.generator.cols()) = b.generator;
    row += static_cast<int>(b.generator.rows());
    col += b.symbols();
    out.e_max += b.e_max;
    out.e_max_exact = out.e_max_exact && b.e_max_exact;
  }
  return out;
}

double normalize(const Codebook& book, double snr) { return book.theta(snr); }

int constellation_side_for_rate(double snr, double r, int n) {
  const double target = std::sqrt(std::pow(snr, r / n));
  int M = static_cast<int>(std::ceil(target - 1e-9));
  if (M % 2 != 0) ++M;
  return std::max(M, 2);
}

}  // namespace stbc
