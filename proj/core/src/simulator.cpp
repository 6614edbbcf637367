#include "stbc/simulator.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "stbc/parallel.hpp"

namespace stbc {

Eigen::MatrixXcd ChannelModel::draw_channel(Rng& rng) const {
  Eigen::MatrixXcd h(n_r, n_t);
  for (int c = 0; c < n_t; ++c)
    for (int r = 0; r < n_r; ++r) h(r, c) = rng.complex_normal();
  return h;
}

Eigen::MatrixXcd ChannelModel::draw_noise(Rng& rng) const {
  Eigen::MatrixXcd w(n_r, T);
  for (int c = 0; c < T; ++c)
    for (int r = 0; r < n_r; ++r) w(r, c) = rng.complex_normal();
  return w;
}

std::string to_string(Decoder d) { return d == Decoder::Sphere ? "sphere" : "exhaustive"; }

Decoder parse_decoder(const std::string& s) {
  if (s == "sphere") return Decoder::Sphere;
  if (s == "exhaustive") return Decoder::Exhaustive;
  throw std::invalid_argument("unknown decoder '" + s + "' (expected sphere or exhaustive)");
}

Interval wilson_interval(std::int64_t k, std::int64_t n, double z) {
  if (n <= 0) return {0.0, 1.0};
  const double p = static_cast<double>(k) / n;
  const double z2 = z * z;
  const double den = 1.0 + z2 / n;
  const double mid = (p + z2 / (2.0 * n)) / den;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / den;
  return {k == 0 ? 0.0 : std::max(0.0, mid - half), k == n ? 1.0 : std::min(1.0, mid + half)};
}

std::optional<double> SimPoint::wer() const {
  if (trials == 0) return std::nullopt;
  return static_cast<double>(errors) / trials;
}

std::optional<double> SimPoint::outage() const {
  if (outage_trials == 0) return std::nullopt;
  return static_cast<double>(outages) / outage_trials;
}

std::optional<double> OutagePoint::probability() const {
  if (trials == 0) return std::nullopt;
  return static_cast<double>(outages) / trials;
}

namespace {

std::string num(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string opt_num(const std::optional<double>& x) { return x ? num(*x) : "nan"; }

struct Tally {
  std::int64_t errors = 0, outages = 0, regularized = 0;
  std::uint64_t nodes = 0;
};

}  // namespace

std::string SimResult::to_csv() const {
  std::ostringstream os;
  os << "snr_db,wer,wer_lo,wer_hi,outage,trials\n";
  for (const auto& p : points) {
    const Interval iv = p.wer_interval();
    os << num(p.snr_db) << ',' << opt_num(p.wer()) << ',' << (p.trials ? num(iv.lo) : "nan") << ','
       << (p.trials ? num(iv.hi) : "nan") << ',' << opt_num(p.outage()) << ',' << p.trials << '\n';
  }
  return os.str();
}

double mutual_information(const Eigen::MatrixXcd& h, double snr) {
  const int n_r = static_cast<int>(h.rows());
  const double a = snr / static_cast<double>(h.cols());
  Eigen::MatrixXcd g = Eigen::MatrixXcd::Identity(n_r, n_r) + a * h * h.adjoint();
  Eigen::LLT<Eigen::MatrixXcd> llt(g);
  double s = 0.0;
  for (int i = 0; i < n_r; ++i) s += std::log2(std::real(llt.matrixL()(i, i)));
  return 2.0 * s;
}

SimResult simulate_wer(const Codebook& book, int n_r, const std::vector<double>& snr_db, std::int64_t trials,
                       std::uint64_t seed, const SimOptions& opt) {
  if (n_r < 1) throw std::invalid_argument("simulate_wer: n_r must be positive");
  if (trials < 0) throw std::invalid_argument("simulate_wer: negative trial count");
  if (opt.decoder == Decoder::Exhaustive && book.log2_size() > std::log2(kExhaustiveLimit))
    throw std::invalid_argument("simulate_wer: exhaustive decoding limited to 10^6 codewords");
  SimResult res;
  res.code = book.describe();
  res.decoder = opt.decoder;
  res.seed = seed;
  res.n_t = book.n_t;
  res.n_r = n_r;
  res.T = book.T;
  res.rate_bpcu = book.rate_bpcu();
  const Eigen::MatrixXcd lat = book.lattice_generator();
  const int d = static_cast<int>(lat.cols());
  const int M = book.constellation.M;
  for (std::size_t s = 0; s < snr_db.size(); ++s) {
    const double snr = db_to_linear(snr_db[s]);
    const double theta = book.theta(snr);
    const ChannelModel ch{book.n_t, n_r, book.T, snr};
    Tally tally = parallel_reduce<Tally>(
        trials, opt.workers, Tally{},
        [&](std::int64_t t, Tally& acc) {
          Rng rng(seed, s, static_cast<std::uint64_t>(t));
          const Eigen::MatrixXcd h = ch.draw_channel(rng);
          std::vector<std::int64_t> z(d);
          Eigen::VectorXcd x = Eigen::VectorXcd::Zero(lat.rows());
          for (int k = 0; k < d; ++k) {
            z[k] = 2 * rng.uniform_int(0, M - 1) - (M - 1);
            x += static_cast<double>(z[k]) * lat.col(k);
          }
          const Eigen::MatrixXcd w = ch.draw_noise(rng);
          Eigen::Map<const Eigen::MatrixXcd> xm(x.data(), book.n_t, book.T);
          const Eigen::MatrixXcd y = theta * (h * xm) + w;
          const RealModel rm = real_model(book, h, y, theta);
          const DecodeResult dec = opt.decoder == Decoder::Sphere ? sphere_decode(rm, opt.sphere) : exhaustive_decode(rm);
          if (dec.z != z) ++acc.errors;
          if (dec.regularized) ++acc.regularized;
          acc.nodes += dec.nodes;
          if (mutual_information(h, snr) < res.rate_bpcu) ++acc.outages;
        },
        [](Tally& a, const Tally& b) {
          a.errors += b.errors;
          a.outages += b.outages;
          a.regularized += b.regularized;
          a.nodes += b.nodes;
        },
        16);
    SimPoint p;
    p.snr_db = snr_db[s];
    p.trials = trials;
    p.errors = tally.errors;
    p.outages = tally.outages;
    p.outage_trials = trials;
    p.regularized = tally.regularized;
    p.nodes = tally.nodes;
    res.points.push_back(p);
  }
  return res;
}

std::vector<OutagePoint> simulate_outage(int n_t, int n_r, double rate_bpcu, const std::vector<double>& snr_db,
                                         std::int64_t trials, std::uint64_t seed, int workers) {
  if (n_t < 1 || n_r < 1) throw std::invalid_argument("simulate_outage: antenna counts must be positive");
  if (trials < 0) throw std::invalid_argument("simulate_outage: negative trial count");
  std::vector<OutagePoint> out;
  for (std::size_t s = 0; s < snr_db.size(); ++s) {
    const double snr = db_to_linear(snr_db[s]);
    const ChannelModel ch{n_t, n_r, 1, snr};
    const std::int64_t hits = parallel_reduce<std::int64_t>(
        trials, workers, 0,
        [&](std::int64_t t, std::int64_t& acc) {
          Rng rng(seed, s, static_cast<std::uint64_t>(t));
          if (mutual_information(ch.draw_channel(rng), snr) < rate_bpcu) ++acc;
        },
        [](std::int64_t& a, const std::int64_t& b) { a += b; }, 4096);
    out.push_back({snr_db[s], trials, hits});
  }
  return out;
}

std::string outage_csv(const std::vector<OutagePoint>& pts) {
  std::ostringstream os;
  os << "snr_db,outage,outage_lo,outage_hi,trials\n";
  for (const auto& p : pts) {
    const Interval iv = p.interval();
    os << num(p.snr_db) << ',' << opt_num(p.probability()) << ',' << (p.trials ? num(iv.lo) : "nan") << ','
       << (p.trials ? num(iv.hi) : "nan") << ',' << p.trials << '\n';
  }
  return os.str();
}

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("least_squares_slope: need two or more points");
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (sxx == 0) throw std::invalid_argument("least_squares_slope: degenerate abscissae");
  return sxy / sxx;
}

SlopeEstimate estimate_diversity_slope(const SimResult& r, int window, std::int64_t min_errors) {
  SlopeEstimate est;
  std::vector<int> ok;
  for (int i = 0; i < static_cast<int>(r.points.size()); ++i)
    if (r.points[i].trials > 0 && r.points[i].errors >= min_errors) ok.push_back(i);
  std::sort(ok.begin(), ok.end(), [&](int a, int b) { return r.points[a].snr_db > r.points[b].snr_db; });
  if (window < 2 || static_cast<int>(ok.size()) < window) return est;
  ok.resize(window);
  std::sort(ok.begin(), ok.end(), [&](int a, int b) { return r.points[a].snr_db < r.points[b].snr_db; });
  est.used = ok;
  std::vector<double> x, y, y_steep, y_flat;
  for (std::size_t j = 0; j < ok.size(); ++j) {
    const SimPoint& p = r.points[ok[j]];
    const Interval iv = p.wer_interval();
    const double w = ok.size() == 1 ? 0.0 : static_cast<double>(j) / (ok.size() - 1);
    x.push_back(p.snr_db / 10.0);
    y.push_back(-std::log10(*p.wer()));
    // steep: upper bound at the low end tilting to the lower bound at the high end
    y_steep.push_back(-std::log10((1 - w) * iv.hi + w * iv.lo));
    y_flat.push_back(-std::log10((1 - w) * iv.lo + w * iv.hi));
  }
  est.sufficient = true;
  est.slope = least_squares_slope(x, y);
  est.slope_lo = least_squares_slope(x, y_flat);
  est.slope_hi = least_squares_slope(x, y_steep);
  return est;
}

std::optional<double> crossing_db(const std::vector<double>& snr_db, const std::vector<double>& v, double level) {
  if (snr_db.size() != v.size()) throw std::invalid_argument("crossing_db: size mismatch");
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] > level) continue;
    if (i == 0) return snr_db[0];
    if (v[i] <= 0 || v[i - 1] <= 0) return snr_db[i];
    const double a = std::log10(v[i - 1]), b = std::log10(v[i]), l = std::log10(level);
    return snr_db[i - 1] + (snr_db[i] - snr_db[i - 1]) * (a - l) / (a - b);
  }
  return std::nullopt;
}

}  // namespace stbc
