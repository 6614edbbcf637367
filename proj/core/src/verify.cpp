#include "stbc/verify.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "stbc/parallel.hpp"
#include "stbc/rng.hpp"

namespace stbc {

namespace {

constexpr double kDualPathTolerance = 1e-6;
constexpr std::size_t kMaxRecordedViolations = 8;

std::string subring_string(const SubringElement& e) {
  if (auto* g = std::get_if<GaussianInt>(&e)) return g->to_string();
  if (auto* h = std::get_if<EisensteinInt>(&e)) return h->to_string();
  return to_string(std::get<wide_int>(e));
}

bool subring_is_zero(const SubringElement& e) {
  if (auto* g = std::get_if<GaussianInt>(&e)) return g->is_zero();
  if (auto* h = std::get_if<EisensteinInt>(&e)) return h->is_zero();
  return std::get<wide_int>(e) == 0;
}

// Exact and numeric images of the unit coordinate vectors of the square parent.
struct UnitImages {
  int n = 0;
  int cond = 1;
  std::vector<CycMatrix> exact;
  std::vector<Eigen::MatrixXcd> numeric;
  double scale_abs_pow = 1.0;  // |den|^n
};

UnitImages unit_images(const CodeSpec& spec) {
  UnitImages u;
  u.n = spec.n;
  u.cond = spec.conductor;
  const int d = 2 * spec.n * spec.n;
  for (int t = 0; t < d; ++t) {
    std::vector<std::int64_t> z(d, 0);
    z[t] = 1;
    LeftRegular lr = left_regular_matrix(spec, ells_from_coordinates(spec, z));
    Eigen::MatrixXcd m(spec.n, spec.n);
    for (int r = 0; r < spec.n; ++r)
      for (int c = 0; c < spec.n; ++c) m(r, c) = lr.matrix[r][c].embed();
    u.exact.push_back(std::move(lr.matrix));
    u.numeric.push_back(std::move(m));
  }
  u.scale_abs_pow = std::pow(std::abs(spec.gamma_denominator().embed()), spec.n);
  return u;
}

struct NvdAcc {
  std::int64_t checked = 0;
  double min_abs = std::numeric_limits<double>::infinity();
  std::int64_t min_index = -1;
  std::vector<std::int64_t> min_z;
  std::string min_det;
  std::int64_t violation_count = 0;
  std::vector<std::pair<std::int64_t, NvdViolation>> violations;
  double max_err = 0.0;
};

void merge_nvd(NvdAcc& a, const NvdAcc& b) {
  a.checked += b.checked;
  if (b.min_index >= 0 && (b.min_abs < a.min_abs || (b.min_abs == a.min_abs && b.min_index < a.min_index))) {
    a.min_abs = b.min_abs;
    a.min_index = b.min_index;
    a.min_z = b.min_z;
    a.min_det = b.min_det;
  }
  a.violation_count += b.violation_count;
  a.violations.insert(a.violations.end(), b.violations.begin(), b.violations.end());
  std::sort(a.violations.begin(), a.violations.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  if (a.violations.size() > kMaxRecordedViolations) a.violations.resize(kMaxRecordedViolations);
  a.max_err = std::max(a.max_err, b.max_err);
}

void record_violation(NvdAcc& acc, std::int64_t index, const std::vector<std::int64_t>& z, std::string det, std::string reason) {
  ++acc.violation_count;
  acc.violations.push_back({index, NvdViolation{z, std::move(det), std::move(reason)}});
  std::sort(acc.violations.begin(), acc.violations.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  if (acc.violations.size() > kMaxRecordedViolations) acc.violations.resize(kMaxRecordedViolations);
}

void check_difference(const UnitImages& u, Subring center, std::int64_t index, const std::vector<std::int64_t>& z, NvdAcc& acc) {
  const int n = u.n;
  CycMatrix m(n, std::vector<CyclotomicInt>(n, CyclotomicInt(u.cond)));
  Eigen::MatrixXcd num = Eigen::MatrixXcd::Zero(n, n);
  for (std::size_t t = 0; t < z.size(); ++t) {
    if (z[t] == 0) continue;
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) m[r][c].add_scaled(u.exact[t][r][c], z[t]);
    num += static_cast<double>(z[t]) * u.numeric[t];
  }
  const CyclotomicInt det = exact_det(m);
  ++acc.checked;
  const std::complex<double> exact_value = det.embed();
  const std::complex<double> float_value = n == 1 ? num(0, 0) : num.partialPivLu().determinant();
  const double err = std::abs(exact_value - float_value) / std::max(1.0, std::abs(float_value));
  acc.max_err = std::max(acc.max_err, err);

  auto proj = project_to_subring(det, center);
  if (!proj) {
    record_violation(acc, index, z, det.to_string(), "determinant does not lie in the center");
    return;
  }
  const std::string det_str = subring_string(*proj);
  if (subring_is_zero(*proj)) {
    record_violation(acc, index, z, det_str, "zero determinant");
    return;
  }
  if (err > kDualPathTolerance) record_violation(acc, index, z, det_str, "exact and floating-point determinants disagree");
  const double a = std::abs(exact_value);
  if (a < 1.0 - 1e-9) record_violation(acc, index, z, det_str, "nonzero determinant of magnitude below 1");
  if (a < acc.min_abs || (a == acc.min_abs && index < acc.min_index)) {
    acc.min_abs = a;
    acc.min_index = index;
    acc.min_z = z;
    acc.min_det = det_str;
  }
}

double ipow(double b, int e) {
  double r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

}  // namespace

double difference_set_size(const Codebook& book) {
  const int d = 2 * book.spec.n * book.spec.n;
  return ipow(2.0 * book.constellation.M - 1.0, d) - 1.0;
}

NvdReport check_nvd(const Codebook& book, NvdMode mode, std::int64_t samples, std::uint64_t seed, int workers,
                    std::int64_t exhaustive_limit) {
  const CodeSpec& spec = book.spec;
  const int M = book.constellation.M;
  const int d = 2 * spec.n * spec.n;
  const std::int64_t radix = 2 * M - 1;
  const double total_d = ipow(static_cast<double>(radix), d);
  if (mode == NvdMode::Auto) mode = total_d - 1 <= static_cast<double>(exhaustive_limit) ? NvdMode::Exhaustive : NvdMode::Sampled;

  const UnitImages u = unit_images(spec);
  const Subring center = spec.center();
  NvdReport rep;
  rep.book = book.describe();
  rep.seed = seed;

  NvdAcc acc;
  if (mode == NvdMode::Exhaustive) {
    if (total_d > 4e18) throw std::invalid_argument("check_nvd: difference set too large for exhaustive mode");
    rep.mode = "exhaustive";
    const auto total = static_cast<std::int64_t>(std::llround(total_d));
    const std::int64_t half = (total - 1) / 2;  // index half + k is the negation of half - k
    acc = parallel_reduce(
        half, workers, NvdAcc{},
        [&](std::int64_t i, NvdAcc& a) {
          std::int64_t idx = half + 1 + i;
          std::vector<std::int64_t> z(d);
          for (int t = 0; t < d; ++t) {
            z[t] = 2 * (idx % radix - (M - 1));
            idx /= radix;
          }
          check_difference(u, center, i, z, a);
        },
        merge_nvd, 512);
  } else {
    rep.mode = "sampled";
    acc = parallel_reduce(
        samples, workers, NvdAcc{},
        [&](std::int64_t i, NvdAcc& a) {
          Rng rng(seed, 0x6e7664ULL, static_cast<std::uint64_t>(i));
          std::vector<std::int64_t> z(d);
          bool zero = true;
          while (zero) {
            for (int t = 0; t < d; ++t) {
              z[t] = 2 * (rng.uniform_int(0, radix - 1) - (M - 1));
              zero = zero && z[t] == 0;
            }
          }
          check_difference(u, center, i, z, a);
        },
        merge_nvd, 64);
  }
  rep.checked = acc.checked;
  rep.covered = rep.mode == "exhaustive" ? 2 * acc.checked : acc.checked;
  rep.min_abs_det = acc.min_abs;
  rep.min_abs_det_unscaled = acc.min_abs / u.scale_abs_pow;
  rep.min_det_exact = acc.min_det;
  rep.min_witness = acc.min_z;
  rep.violation_count = acc.violation_count;
  for (auto& [idx, v] : acc.violations) rep.violations.push_back(v);
  rep.max_dual_path_error = acc.max_err;
  return rep;
}

// ---- determinant in the center -------------------------------------------

DetInCenterReport check_det_in_center(const CodeSpec& spec, std::int64_t trials, std::uint64_t seed, int coeff_bound, int workers) {
  struct Acc {
    std::int64_t trials = 0, failures = 0, first = -1;
    std::string witness;
  };
  const GaloisAuto sigma = spec.sigma();
  const int cond = spec.conductor;
  const int unit_index = spec.base == BaseField::QAM ? cond / 4 : cond / 3;
  const Subring center = spec.center();
  Acc acc = parallel_reduce(
      trials, workers, Acc{},
      [&](std::int64_t t, Acc& a) {
        Rng rng(seed, 0x646963ULL, static_cast<std::uint64_t>(t));
        std::vector<CyclotomicInt> ells;
        for (int i = 0; i < spec.n; ++i) {
          CyclotomicInt ell(cond);
          for (int j = 0; j < spec.n; ++j) {
            std::vector<wide_int> c(cond, 0);
            c[0] = rng.uniform_int(-coeff_bound, coeff_bound);
            c[unit_index] = rng.uniform_int(-coeff_bound, coeff_bound);
            ell += CyclotomicInt(cond, std::move(c)) * spec.basis[j].lift(cond);
          }
          ell.reduce_in_place();
          ells.push_back(std::move(ell));
        }
        if (t == 0) {
          // ℓ = (1, 0, ..., 0) has determinant 1
          for (auto& e : ells) e = CyclotomicInt(cond);
          ells[0] = CyclotomicInt::integer(1, cond);
        }
        const CyclotomicInt det = exact_det(left_regular_matrix(spec, ells).matrix);
        std::vector<CyclotomicInt> moved;
        for (const auto& e : ells) moved.push_back(sigma.apply(e));
        const CyclotomicInt det_moved = exact_det(left_regular_matrix(spec, moved).matrix);
        ++a.trials;
        std::string why;
        if (!(sigma.apply(det) == det)) why = "σ(det) != det";
        else if (!(det_moved == det)) why = "det of σ-image differs";
        else if (!project_to_subring(det, center)) why = "projection to the center failed";
        if (!why.empty()) {
          ++a.failures;
          if (a.first < 0 || t < a.first) {
            a.first = t;
            a.witness = why + " at trial " + std::to_string(t) + ": det = " + det.to_string();
          }
        }
      },
      [](Acc& a, const Acc& b) {
        a.trials += b.trials;
        a.failures += b.failures;
        if (b.first >= 0 && (a.first < 0 || b.first < a.first)) {
          a.first = b.first;
          a.witness = b.witness;
        }
      },
      16);
  return {acc.trials, acc.failures, acc.witness};
}

CodeSpec corrupted_gamma_spec(const CodeSpec& spec, const CyclotomicInt& u) {
  const CyclotomicInt nu = relative_norm(spec, u);
  CodeSpec out = spec;
  if (spec.base == BaseField::QAM) {
    auto g = project_to_gaussian(nu);
    if (!g) throw std::logic_error("corrupted_gamma_spec: norm is not in Z[i]");
    out.gamma = {g->re, g->im};
  } else {
    auto e = project_to_eisenstein(nu);
    if (!e) throw std::logic_error("corrupted_gamma_spec: norm is not in Z[ω3]");
    out.gamma = {e->a, e->c};
  }
  out.gamma_den = {1, 0};
  return out;
}

// ---- determinant scaling --------------------------------------------------

ScalingReport check_clearly_optimal_scaling(const std::function<Codebook(int)>& factory, int n, double r,
                                            const std::vector<double>& snr_db, std::int64_t random_samples, std::uint64_t seed,
                                            int workers) {
  if (snr_db.size() < 3) throw std::invalid_argument("check_clearly_optimal_scaling: need at least 3 SNR points");
  ScalingReport rep;
  rep.r = r;
  for (std::size_t p = 0; p < snr_db.size(); ++p) {
    const double snr = std::pow(10.0, snr_db[p] / 10.0);
    ScalingPoint pt;
    pt.snr_db = snr_db[p];
    pt.M = constellation_side_for_rate(snr, r, n);
    const Codebook book = factory(pt.M);
    rep.n_t = book.n_t;
    const Eigen::MatrixXcd lat = book.lattice_generator();
    const int d = book.real_dim();
    const int M = pt.M;
    auto det_of = [&](const std::vector<std::int64_t>& z) {
      Eigen::VectorXcd v = Eigen::VectorXcd::Zero(lat.rows());
      for (int t = 0; t < d; ++t)
        if (z[t] != 0) v += static_cast<double>(z[t]) * lat.col(t);
      Eigen::Map<Eigen::MatrixXcd> dx(v.data(), book.n_t, book.T);
      Eigen::MatrixXcd g = dx * dx.adjoint();
      return std::real(g.partialPivLu().determinant());
    };
    // all differences with entries in {0, ±2} (up to sign), then random ones
    const double small_count = ipow(3.0, d);
    const std::int64_t small_half = small_count <= 2e7 ? static_cast<std::int64_t>((small_count - 1) / 2) : 0;
    auto minimum = [](double& a, const double& b) { a = std::min(a, b); };
    const double inf = std::numeric_limits<double>::infinity();
    double m1 = parallel_reduce(
        small_half, workers, inf,
        [&](std::int64_t i, double& a) {
          std::int64_t idx = small_half + 1 + i;
          std::vector<std::int64_t> z(d);
          for (int t = 0; t < d; ++t) {
            z[t] = 2 * (idx % 3 - 1);
            idx /= 3;
          }
          a = std::min(a, det_of(z));
        },
        minimum, 1024);
    double m2 = parallel_reduce(
        random_samples, workers, inf,
        [&](std::int64_t i, double& a) {
          Rng rng(seed, 0x7363616cULL + p, static_cast<std::uint64_t>(i));
          std::vector<std::int64_t> z(d);
          bool zero = true;
          while (zero) {
            for (int t = 0; t < d; ++t) {
              z[t] = 2 * (rng.uniform_int(0, 2 * M - 2) - (M - 1));
              zero = zero && z[t] == 0;
            }
          }
          a = std::min(a, det_of(z));
        },
        minimum, 1024);
    pt.theta2 = book.T * snr / book.e_max;
    pt.min_det = std::min(m1, m2) * ipow(pt.theta2, book.n_t);
    rep.points.push_back(pt);
  }
  rep.target_exponent = rep.n_t - r;
  // least squares of log10(min det) against log10(snr)
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double k = static_cast<double>(rep.points.size());
  for (const auto& pt : rep.points) {
    const double x = pt.snr_db / 10.0, y = std::log10(pt.min_det);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  rep.fitted_exponent = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  return rep;
}

// ---- eigenvalue inequalities ---------------------------------------------

namespace {

Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixXcd& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a, Eigen::EigenvaluesOnly);
  return es.eigenvalues();  // ascending
}

Eigen::MatrixXcd random_complex(Rng& rng, int rows, int cols) {
  Eigen::MatrixXcd m(rows, cols);
  for (int c = 0; c < cols; ++c)
    for (int r = 0; r < rows; ++r) m(r, c) = rng.complex_normal();
  return m;
}

void note(InequalityReport& rep, double slack, double scale, double tol, const std::string& what) {
  ++rep.instances;
  const double rel = slack / std::max(scale, std::numeric_limits<double>::min());
  rep.worst_slack = std::min(rep.worst_slack, rel);
  if (slack < -tol * scale) {
    if (rep.failures++ == 0) rep.witness = what;
  }
}

std::vector<std::int64_t> random_difference(Rng& rng, const Codebook& b) {
  const int M = b.constellation.M;
  std::vector<std::int64_t> z(b.real_dim());
  bool zero = true;
  while (zero) {
    for (auto& v : z) {
      v = 2 * (rng.uniform_int(0, 2 * M - 2) - (M - 1));
      zero = zero && v == 0;
    }
  }
  return z;
}

}  // namespace

double mismatch_slack(const Eigen::MatrixXcd& h, const Eigen::MatrixXcd& dx, double* scale) {
  const Eigen::MatrixXcd d = dx * dx.adjoint();
  const double lhs = std::real((h * d * h.adjoint()).trace());
  const Eigen::VectorXd lam = hermitian_eigenvalues(h.adjoint() * h);  // ascending
  const Eigen::VectorXd l = hermitian_eigenvalues(d);                  // ascending
  const int n = static_cast<int>(l.size());
  double rhs = 0;
  for (int i = 0; i < n; ++i) rhs += lam(n - 1 - i) * l(i);
  if (scale) *scale = std::max(std::abs(std::real(h.squaredNorm())) * std::real(d.trace()), std::abs(lhs));
  return lhs - rhs;
}

double interlacing_slack(const Eigen::MatrixXcd& full, const std::vector<int>& deleted_rows, double* scale) {
  std::vector<int> keep;
  for (int r = 0; r < full.rows(); ++r)
    if (std::find(deleted_rows.begin(), deleted_rows.end(), r) == deleted_rows.end()) keep.push_back(r);
  Eigen::MatrixXcd part(keep.size(), full.cols());
  for (std::size_t i = 0; i < keep.size(); ++i) part.row(i) = full.row(keep[i]);
  const Eigen::VectorXd nu = hermitian_eigenvalues(full * full.adjoint());
  const Eigen::VectorXd mu = hermitian_eigenvalues(part * part.adjoint());
  const int shift = static_cast<int>(full.rows() - part.rows());
  double slack = std::numeric_limits<double>::infinity();
  for (int k = 0; k < mu.size(); ++k) {
    slack = std::min(slack, mu(k) - nu(k));
    slack = std::min(slack, nu(k + shift) - mu(k));
  }
  if (scale) *scale = std::max(1e-300, std::abs(nu(nu.size() - 1)));
  return slack;
}

double weyl_slack(const std::vector<Eigen::MatrixXcd>& blocks, double* scale) {
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(blocks.at(0).rows(), blocks.at(0).rows());
  for (const auto& b : blocks) sum += b * b.adjoint();
  const Eigen::VectorXd total = hermitian_eigenvalues(sum);
  double slack = std::numeric_limits<double>::infinity();
  for (const auto& b : blocks) {
    const Eigen::VectorXd part = hermitian_eigenvalues(b * b.adjoint());
    for (int i = 0; i < part.size(); ++i) slack = std::min(slack, total(i) - part(i));
  }
  if (scale) *scale = std::max(1e-300, std::abs(total(total.size() - 1)));
  return slack;
}

InequalityReport check_mismatch_bound(int n_t, int n_r, std::int64_t trials, std::uint64_t seed, double rel_tol) {
  InequalityReport rep;
  rep.name = "mismatched eigenvalue bound";
  for (std::int64_t t = 0; t < trials; ++t) {
    Rng rng(seed, 0x6d6d62ULL, static_cast<std::uint64_t>(t));
    Eigen::MatrixXcd h = random_complex(rng, n_r, n_t);
    Eigen::MatrixXcd dx = random_complex(rng, n_t, n_t);
    if (t % 4 == 3) dx = dx.col(0) * random_complex(rng, 1, n_t);  // rank one
    double scale = 0;
    const double s = mismatch_slack(h, dx, &scale);
    note(rep, s, scale, rel_tol, "trial " + std::to_string(t));
  }
  // real code differences through a random channel
  const Codebook golden = build_codebook(construct_A(2), 2);
  for (std::int64_t t = 0; t < std::max<std::int64_t>(1, trials / 10); ++t) {
    Rng rng(seed, 0x6d6d63ULL, static_cast<std::uint64_t>(t));
    Eigen::MatrixXcd h = random_complex(rng, n_r, golden.n_t);
    Eigen::MatrixXcd dx = golden.codeword(random_difference(rng, golden));
    double scale = 0;
    const double s = mismatch_slack(h, dx, &scale);
    note(rep, s, scale, rel_tol, "code difference " + std::to_string(t));
  }
  return rep;
}

EigenSuiteReport check_interlacing_and_weyl(std::int64_t trials, std::uint64_t seed, double rel_tol) {
  EigenSuiteReport rep;
  rep.interlacing.name = "row-deletion interlacing";
  rep.weyl.name = "Weyl dominance";
  for (std::int64_t t = 0; t < trials; ++t) {
    Rng rng(seed, 0x696e74ULL, static_cast<std::uint64_t>(t));
    Eigen::MatrixXcd full = random_complex(rng, 4, 6);
    std::vector<int> del{static_cast<int>(rng.uniform_int(0, 3))};
    double scale = 0;
    double s = interlacing_slack(full, del, &scale);
    note(rep.interlacing, s, scale, rel_tol, "random 4x6 trial " + std::to_string(t));

    std::vector<Eigen::MatrixXcd> blocks{random_complex(rng, 3, 3), random_complex(rng, 3, 2)};
    if (t % 5 == 4) blocks[1].setZero();
    s = weyl_slack(blocks, &scale);
    note(rep.weyl, s, scale, rel_tol, "random Weyl trial " + std::to_string(t));
  }
  const Codebook perfect = build_codebook(perfect_3x3_spec(), 2);
  const Codebook a2 = build_codebook(construct_A(2), 2);
  const Codebook b2 = build_codebook(construct_B(2), 2);
  const Codebook product = cartesian_product({a2, b2});
  for (std::int64_t t = 0; t < std::max<std::int64_t>(1, trials / 10); ++t) {
    Rng rng(seed, 0x636f64ULL, static_cast<std::uint64_t>(t));
    double scale = 0;
    Eigen::MatrixXcd dz = perfect.codeword(random_difference(rng, perfect));
    double s = interlacing_slack(dz, {0}, &scale);
    note(rep.interlacing, s, scale, rel_tol, "perfect 3x3 difference " + std::to_string(t));

    Eigen::MatrixXcd dp = product.codeword(random_difference(rng, product));
    std::vector<Eigen::MatrixXcd> blocks{dp.leftCols(a2.T), dp.rightCols(b2.T)};
    s = weyl_slack(blocks, &scale);
    note(rep.weyl, s, scale, rel_tol, "cartesian A(2)xB(2) difference " + std::to_string(t));
  }
  return rep;
}

}  // namespace stbc
