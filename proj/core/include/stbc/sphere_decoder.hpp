#pragma once

// ML decoding over the codebook lattice. The channel and the code generator
// are folded into a real matrix B with received y ≈ B z, z having odd
// entries in [-(M-1), M-1]; decoders minimize ||y - B z||.

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "stbc/codebook.hpp"

namespace stbc {

struct RealModel {
  Eigen::MatrixXd B;  // 2 n_r T x 2K
  Eigen::VectorXd y;  // 2 n_r T
  int M = 2;
};

/// B = θ [Re; Im] of (I_T ⊗ H) L, y = [Re; Im] vec(Y).
RealModel real_model(const Codebook& book, const Eigen::MatrixXcd& h, const Eigen::MatrixXcd& y, double theta);

struct DecodeResult {
  std::vector<std::int64_t> z;
  double metric = 0.0;  // ||y - B z||²
  bool regularized = false;
  std::uint64_t nodes = 0;
};

struct SphereOptions {
  /// Weight of the augmentation rows used when B has deficient column rank.
  double regularization = 1.0;
  /// Relative threshold on |R_kk| below which B is treated as rank deficient.
  double rank_tolerance = 1e-10;
};

/// Schnorr-Euchner enumeration with box clipping; exact ML within the box.
DecodeResult sphere_decode(const RealModel& m, const SphereOptions& opt = {});
DecodeResult sphere_decode(const Codebook& book, const Eigen::MatrixXcd& y, const Eigen::MatrixXcd& h, double theta,
                           const SphereOptions& opt = {});

/// Brute force over all M^{2K} candidates (at most 10^6). First minimum wins.
DecodeResult exhaustive_decode(const RealModel& m);
DecodeResult exhaustive_decode(const Codebook& book, const Eigen::MatrixXcd& y, const Eigen::MatrixXcd& h, double theta);

constexpr double kExhaustiveLimit = 1e6;

}  // namespace stbc
