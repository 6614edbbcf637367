#pragma once

// Quasi-static i.i.d. Rayleigh Monte Carlo: Y = θ H X + W with unit-variance
// noise, codeword error rate sweeps, outage probability and diversity slope.

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stbc/codebook.hpp"
#include "stbc/rng.hpp"
#include "stbc/sphere_decoder.hpp"

namespace stbc {

struct ChannelModel {
  int n_t = 1;
  int n_r = 1;
  int T = 1;
  double snr = 1.0;  // linear

  Eigen::MatrixXcd draw_channel(Rng& rng) const;
  Eigen::MatrixXcd draw_noise(Rng& rng) const;
};

enum class Decoder { Sphere, Exhaustive };
std::string to_string(Decoder d);
Decoder parse_decoder(const std::string& s);

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

/// Wilson score interval at 95% confidence; [0, 1] when trials == 0.
Interval wilson_interval(std::int64_t successes, std::int64_t trials, double z = 1.959963984540054);

struct SimPoint {
  double snr_db = 0.0;
  std::int64_t trials = 0;
  std::int64_t errors = 0;
  std::int64_t outages = 0;
  std::int64_t outage_trials = 0;  // channel draws behind the outage estimate
  std::int64_t regularized = 0;  // trials decoded through the rank-deficient path
  std::uint64_t nodes = 0;

  /// nullopt when trials == 0.
  std::optional<double> wer() const;
  std::optional<double> outage() const;
  Interval wer_interval() const { return wilson_interval(errors, trials); }
  Interval outage_interval() const { return wilson_interval(outages, outage_trials); }
};

struct SimResult {
  std::string code;
  Decoder decoder = Decoder::Sphere;
  std::uint64_t seed = 0;
  int n_t = 1;
  int n_r = 1;
  int T = 1;
  double rate_bpcu = 0.0;
  std::vector<SimPoint> points;

  std::string to_csv() const;
};

struct SimOptions {
  Decoder decoder = Decoder::Sphere;
  int workers = 0;
  SphereOptions sphere;
};

/// Per point s and trial t the stream Rng(seed, s, t) draws H, the codeword
/// and W, in that order. Outage is evaluated on the same H.
SimResult simulate_wer(const Codebook& book, int n_r, const std::vector<double>& snr_db, std::int64_t trials,
                       std::uint64_t seed, const SimOptions& opt = {});

/// log₂ det(I + (snr/n_t) H H†).
double mutual_information(const Eigen::MatrixXcd& h, double snr);

struct OutagePoint {
  double snr_db = 0.0;
  std::int64_t trials = 0;
  std::int64_t outages = 0;
  std::optional<double> probability() const;
  Interval interval() const { return wilson_interval(outages, trials); }
};

std::vector<OutagePoint> simulate_outage(int n_t, int n_r, double rate_bpcu, const std::vector<double>& snr_db,
                                         std::int64_t trials, std::uint64_t seed, int workers = 0);

std::string outage_csv(const std::vector<OutagePoint>& pts);

struct SlopeEstimate {
  bool sufficient = false;  // false: fewer than `window` points with enough errors
  double slope = 0.0;
  double slope_lo = 0.0;
  double slope_hi = 0.0;
  std::vector<int> used;  // indices into the grid
};

/// Least-squares slope of -log₁₀ WER against snr_db / 10 over the highest
/// `window` grid points having at least `min_errors` errors. The band comes
/// from refitting with the Wilson bounds tilted against each other.
SlopeEstimate estimate_diversity_slope(const SimResult& r, int window = 3, std::int64_t min_errors = 20);

/// Plain least-squares slope of y against x.
double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y);

/// SNR (dB) where a curve first crosses `level`, by log-linear interpolation
/// between grid points; nullopt if it never does.
std::optional<double> crossing_db(const std::vector<double>& snr_db, const std::vector<double>& values, double level);

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

}  // namespace stbc
