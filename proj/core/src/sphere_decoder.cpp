#include "stbc/sphere_decoder.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace stbc {

RealModel real_model(const Codebook& book, const Eigen::MatrixXcd& h, const Eigen::MatrixXcd& y, double theta) {
  if (h.cols() != book.n_t) throw std::invalid_argument("real_model: channel has wrong number of columns");
  const int n_r = static_cast<int>(h.rows());
  if (y.rows() != n_r || y.cols() != book.T) throw std::invalid_argument("real_model: received matrix has wrong shape");
  const Eigen::MatrixXcd lat = book.lattice_generator();
  const int d = static_cast<int>(lat.cols());
  const int rows = n_r * book.T;
  RealModel m;
  m.M = book.constellation.M;
  m.B.resize(2 * rows, d);
  for (int t = 0; t < d; ++t) {
    Eigen::Map<const Eigen::MatrixXcd> x(lat.col(t).data(), book.n_t, book.T);
    const Eigen::MatrixXcd hx = theta * (h * x);
    Eigen::Map<const Eigen::VectorXcd> v(hx.data(), rows);
    m.B.col(t).head(rows) = v.real();
    m.B.col(t).tail(rows) = v.imag();
  }
  Eigen::Map<const Eigen::VectorXcd> yv(y.data(), rows);
  m.y.resize(2 * rows);
  m.y.head(rows) = yv.real();
  m.y.tail(rows) = yv.imag();
  return m;
}

namespace {

std::vector<std::int64_t> to_odd(const std::vector<int>& u, int M) {
  std::vector<std::int64_t> z(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) z[i] = 2 * u[i] - (M - 1);
  return z;
}

double metric_of(const RealModel& m, const std::vector<std::int64_t>& z) {
  Eigen::VectorXd r = m.y;
  for (std::size_t t = 0; t < z.size(); ++t) r -= static_cast<double>(z[t]) * m.B.col(t);
  return r.squaredNorm();
}

}  // namespace

DecodeResult sphere_decode(const RealModel& m, const SphereOptions& opt) {
  const int d = static_cast<int>(m.B.cols());
  const int M = m.M;
  const int rows = static_cast<int>(m.B.rows());
  // u = (z + M - 1) / 2 in {0..M-1}:  y - B z = (y + (M-1) B 1) - 2 B u
  Eigen::VectorXd yp = m.y + static_cast<double>(M - 1) * m.B.rowwise().sum();
  Eigen::MatrixXd bp = 2.0 * m.B;

  auto qr_of = [&](const Eigen::MatrixXd& a, const Eigen::VectorXd& b, Eigen::MatrixXd& r, Eigen::VectorXd& yh, double& rho0) {
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
    r = qr.matrixQR().topRows(d).triangularView<Eigen::Upper>();
    Eigen::VectorXd qtb = qr.householderQ().transpose() * b;
    yh = qtb.head(d);
    rho0 = qtb.size() > d ? qtb.tail(qtb.size() - d).squaredNorm() : 0.0;
  };

  Eigen::MatrixXd r;
  Eigen::VectorXd yh;
  double rho0 = 0;
  bool regularized = rows < d;
  if (!regularized) {
    qr_of(bp, yp, r, yh, rho0);
    double big = r.diagonal().cwiseAbs().maxCoeff();
    for (int k = 0; k < d; ++k)
      if (std::abs(r(k, k)) <= opt.rank_tolerance * std::max(big, 1.0)) regularized = true;
  }
  const double delta = opt.regularization;
  const double center = (M - 1) / 2.0;
  double slack = 0.0;
  if (regularized) {
    // minimize ||y' - B'u||² + δ||u - c||²; the penalty is at most δ d c², so
    // pruning against best + δ d c² never discards the true minimizer
    Eigen::MatrixXd a(rows + d, d);
    a.topRows(rows) = bp;
    a.bottomRows(d) = std::sqrt(delta) * Eigen::MatrixXd::Identity(d, d);
    Eigen::VectorXd b(rows + d);
    b.head(rows) = yp;
    b.tail(d).setConstant(std::sqrt(delta) * center);
    qr_of(a, b, r, yh, rho0);
    slack = delta * d * center * center;
  }

  std::vector<int> u(d, 0), best(d, 0), lo(d), hi(d);
  std::vector<double> cen(d), pd(d + 1, 0.0);
  double best_true = std::numeric_limits<double>::infinity();
  std::uint64_t nodes = 0;
  bool found = false;

  auto init_level = [&](int k) {
    double s = yh(k);
    for (int j = k + 1; j < d; ++j) s -= r(k, j) * u[j];
    const double c = s / r(k, k);
    cen[k] = c;
    int f = static_cast<int>(std::floor(c));
    if (f > M - 1) {
      lo[k] = M - 1;
      hi[k] = M;
    } else if (f < 0) {
      lo[k] = -1;
      hi[k] = 0;
    } else {
      lo[k] = f;
      hi[k] = f + 1;
    }
  };
  // next candidate at level k in order of distance to the center, or -1
  auto next_candidate = [&](int k) {
    const bool has_lo = lo[k] >= 0, has_hi = hi[k] <= M - 1;
    if (!has_lo && !has_hi) return -1;
    if (has_lo && (!has_hi || cen[k] - lo[k] <= hi[k] - cen[k])) return lo[k]--;
    return hi[k]++;
  };

  int k = d - 1;
  init_level(k);
  while (k < d) {
    const int x = next_candidate(k);
    const double bound = best_true + slack;
    double inc = 0;
    if (x >= 0) {
      const double e = r(k, k) * (cen[k] - x);
      inc = e * e;
    }
    if (x < 0 || rho0 + pd[k + 1] + inc > bound) {
      ++k;
      continue;
    }
    ++nodes;
    u[k] = x;
    pd[k] = pd[k + 1] + inc;
    if (k == 0) {
      double t = rho0 + pd[0];
      if (regularized) {
        double pen = 0;
        for (int j = 0; j < d; ++j) pen += (u[j] - center) * (u[j] - center);
        t -= delta * pen;
      }
      if (t < best_true) {
        best_true = t;
        best = u;
        found = true;
      }
      continue;
    }
    --k;
    init_level(k);
  }
  if (!found) throw std::logic_error("sphere_decode: search ended without a candidate");
  DecodeResult res;
  res.z = to_odd(best, M);
  res.metric = metric_of(m, res.z);
  res.regularized = regularized;
  res.nodes = nodes;
  return res;
}

DecodeResult sphere_decode(const Codebook& book, const Eigen::MatrixXcd& y, const Eigen::MatrixXcd& h, double theta,
                           const SphereOptions& opt) {
  return sphere_decode(real_model(book, h, y, theta), opt);
}

DecodeResult exhaustive_decode(const RealModel& m) {
  const int d = static_cast<int>(m.B.cols());
  const int M = m.M;
  if (std::pow(static_cast<double>(M), d) > kExhaustiveLimit)
    throw std::invalid_argument("exhaustive_decode: more than 10^6 candidates");
  std::vector<int> u(d, 0);
  // residual for u = 0, i.e. z = -(M-1)
  Eigen::VectorXd res = m.y + static_cast<double>(M - 1) * m.B.rowwise().sum();
  Eigen::MatrixXd step = 2.0 * m.B;
  double best = res.squaredNorm();
  std::vector<int> best_u = u;
  std::uint64_t count = 1;
  for (;;) {
    int t = 0;
    while (t < d && u[t] == M - 1) {
      res += static_cast<double>(M - 1) * step.col(t);
      u[t] = 0;
      ++t;
    }
    if (t == d) break;
    ++u[t];
    res -= step.col(t);
    ++count;
    const double v = res.squaredNorm();
    if (v < best) {
      best = v;
      best_u = u;
    }
  }
  DecodeResult r;
  r.z = to_odd(best_u, M);
  r.metric = metric_of(m, r.z);
  r.nodes = count;
  return r;
}

DecodeResult exhaustive_decode(const Codebook& book, const Eigen::MatrixXcd& y, const Eigen::MatrixXcd& h, double theta) {
  return exhaustive_decode(real_model(book, h, y, theta));
}

}  // namespace stbc
