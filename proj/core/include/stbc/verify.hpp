#pragma once

// Property checks: non-vanishing determinants (exact and floating point),
// determinants in the center, determinant scaling with SNR, and the
// eigenvalue inequalities behind row deletion and Cartesian products.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "stbc/cda.hpp"
#include "stbc/codebook.hpp"

namespace stbc {

enum class NvdMode { Auto, Exhaustive, Sampled };

struct NvdViolation {
  std::vector<std::int64_t> z;  // difference coordinates
  std::string det;              // exact determinant (den-scaled)
  std::string reason;
};

struct NvdReport {
  std::string book;
  std::string mode;  // "exhaustive" or "sampled"
  std::uint64_t seed = 0;
  std::int64_t checked = 0;  // determinants evaluated
  std::int64_t covered = 0;  // difference vectors covered; exhaustive mode evaluates one of each ±Δ pair
  double min_abs_det = 0.0;         // |det(den·ΔX)|, an absolute value of an element of the center ring
  double min_abs_det_unscaled = 0;  // |det(ΔX)|
  std::string min_det_exact;
  std::vector<std::int64_t> min_witness;
  std::int64_t violation_count = 0;
  std::vector<NvdViolation> violations;  // first few
  double max_dual_path_error = 0.0;      // relative, exact vs floating point
  bool passed() const { return violation_count == 0 && checked > 0; }
};

/// Exhaustive difference-set scan is used for Auto when the set has at most
/// `exhaustive_limit` elements.
NvdReport check_nvd(const Codebook& book, NvdMode mode = NvdMode::Auto, std::int64_t samples = 100'000,
                    std::uint64_t seed = 1, int workers = 0, std::int64_t exhaustive_limit = 100'000);

/// Number of nonzero difference vectors (2M-1)^{2n²} - 1 for the square parent.
double difference_set_size(const Codebook& book);

struct DetInCenterReport {
  std::int64_t trials = 0;
  std::int64_t failures = 0;
  std::string witness;
  bool passed() const { return failures == 0 && trials > 0; }
};

DetInCenterReport check_det_in_center(const CodeSpec& spec, std::int64_t trials, std::uint64_t seed, int coeff_bound = 50,
                                      int workers = 0);

/// Replaces γ by the relative norm ∏σ^j(u); the resulting algebra is not a division algebra.
CodeSpec corrupted_gamma_spec(const CodeSpec& spec, const CyclotomicInt& u);

struct ScalingPoint {
  double snr_db = 0;
  int M = 2;
  double theta2 = 0;
  double min_det = 0;  // min det(ΔZ ΔZ†) over the sampled differences
};

struct ScalingReport {
  double r = 0;
  int n_t = 0;
  std::vector<ScalingPoint> points;
  double fitted_exponent = 0;
  double target_exponent = 0;
};

/// `factory(M)` builds the (unnormalized) codebook with constellation side M.
ScalingReport check_clearly_optimal_scaling(const std::function<Codebook(int)>& factory, int n, double r,
                                            const std::vector<double>& snr_db, std::int64_t random_samples = 20'000,
                                            std::uint64_t seed = 1, int workers = 0);

struct InequalityReport {
  std::string name;
  std::int64_t instances = 0;
  std::int64_t failures = 0;
  double worst_slack = 0;  // most negative (lhs - rhs)/scale seen
  std::string witness;
  bool passed() const { return failures == 0 && instances > 0; }
};

InequalityReport check_mismatch_bound(int n_t, int n_r, std::int64_t trials, std::uint64_t seed, double rel_tol = 1e-9);

struct EigenSuiteReport {
  InequalityReport interlacing;
  InequalityReport weyl;
  bool passed() const { return interlacing.passed() && weyl.passed(); }
};

/// Random complex matrices plus real code differences from row_delete and cartesian_product.
EigenSuiteReport check_interlacing_and_weyl(std::int64_t trials, std::uint64_t seed, double rel_tol = 1e-9);

/// Single-instance helpers, also used by the randomized suites.
/// Tr(H D D† H†) - Σ λ_i l_i, with the inputs' natural scale.
double mismatch_slack(const Eigen::MatrixXcd& h, const Eigen::MatrixXcd& dx, double* scale = nullptr);
/// min_k (μ_k - ν_k) with μ from the rows kept, ν from the full matrix (ascending).
double interlacing_slack(const Eigen::MatrixXcd& full, const std::vector<int>& deleted_rows, double* scale = nullptr);
/// min over blocks and i of μ_i(Σ Z_k Z_k†) - μ_i(Z_b Z_b†).
double weyl_slack(const std::vector<Eigen::MatrixXcd>& blocks, double* scale = nullptr);

}  // namespace stbc
