#include "stbc/cyclotomic.hpp"

#include <bit>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace stbc {

namespace {

using Poly = std::vector<wide_int>;

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = checked_add(r[i + j], checked_mul(a[i], b[j]));
  return r;
}

// Exact division by a monic polynomial.
Poly poly_div_exact(Poly a, const Poly& b) {
  const std::size_t db = b.size() - 1;
  Poly q(a.size() - db, 0);
  for (std::size_t k = a.size(); k-- > db;) {
    wide_int c = a[k];
    q[k - db] = c;
    if (c == 0) continue;
    for (std::size_t i = 0; i <= db; ++i) a[k - db + i] = checked_sub(a[k - db + i], checked_mul(c, b[i]));
  }
  for (std::size_t i = 0; i < db; ++i)
    if (a[i] != 0) throw std::logic_error("cyclotomic polynomial division left a remainder");
  return q;
}

Poly x_pow_minus_one(int d) {
  Poly p(d + 1, 0);
  p[0] = -1;
  p[d] = 1;
  return p;
}

Poly cyclotomic_polynomial(int n) {
  Poly num{1}, den{1};
  for (int d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    int mu = moebius(n / d);
    if (mu == 1) num = poly_mul(num, x_pow_minus_one(d));
    if (mu == -1) den = poly_mul(den, x_pow_minus_one(d));
  }
  // den is ± monic; normalize sign
  if (den.back() == -1)
    for (auto& c : den) c = -c;
  if (num.back() == -1)
    for (auto& c : num) c = -c;
  return poly_div_exact(num, den);
}

std::unique_ptr<CyclotomicRing> make_ring(int n) {
  auto r = std::make_unique<CyclotomicRing>();
  r->conductor = n;
  r->phi = static_cast<int>(euler_phi(n));
  r->cyclotomic_poly = cyclotomic_polynomial(n);
  for (int i = 0; i < r->phi; ++i)
    if (r->cyclotomic_poly[i] != 0) r->phi_terms.emplace_back(i, r->cyclotomic_poly[i]);
  r->trace_of_power.resize(n);
  r->roots.resize(n);
  for (int j = 0; j < n; ++j) {
    std::int64_t d = std::gcd<std::int64_t>(n, j);
    std::int64_t nd = n / d;
    r->trace_of_power[j] = static_cast<wide_int>(moebius(nd)) * (r->phi / euler_phi(nd));
    double ang = 2.0 * std::numbers::pi * j / n;
    r->roots[j] = {std::cos(ang), std::sin(ang)};
  }
  return r;
}

int lcm_int(int a, int b) { return static_cast<int>(std::lcm<std::int64_t>(a, b)); }

}  // namespace

const CyclotomicRing& CyclotomicRing::get(int conductor) {
  if (conductor < 1) throw std::invalid_argument("conductor must be positive");
  thread_local const CyclotomicRing* last = nullptr;
  if (last && last->conductor == conductor) return *last;
  static std::mutex mu;
  static std::map<int, std::unique_ptr<CyclotomicRing>> rings;
  std::lock_guard lock(mu);
  auto& slot = rings[conductor];
  if (!slot) slot = make_ring(conductor);
  last = slot.get();
  return *last;
}

CyclotomicInt::CyclotomicInt(int conductor) : conductor_(conductor), coeffs_(conductor, 0) {
  if (conductor < 1) throw std::invalid_argument("conductor must be positive");
}

CyclotomicInt::CyclotomicInt(int conductor, std::vector<wide_int> coeffs) : conductor_(conductor), coeffs_(std::move(coeffs)) {
  if (conductor < 1) throw std::invalid_argument("conductor must be positive");
  if (static_cast<int>(coeffs_.size()) > conductor) {
    // fold higher powers using ω^N = 1
    for (std::size_t j = conductor; j < coeffs_.size(); ++j)
      coeffs_[j % conductor] = checked_add(coeffs_[j % conductor], coeffs_[j]);
  }
  coeffs_.resize(conductor, 0);
}

CyclotomicInt CyclotomicInt::integer(wide_int v, int conductor) {
  CyclotomicInt x(conductor);
  x.coeffs_[0] = v;
  return x;
}

CyclotomicInt CyclotomicInt::root_of_unity(int conductor, std::int64_t k) {
  CyclotomicInt x(conductor);
  x.coeffs_[mod_floor(k, conductor)] = 1;
  return x;
}

CyclotomicInt CyclotomicInt::from_gaussian(const GaussianInt& g, int conductor) {
  if (conductor % 4 != 0) throw std::invalid_argument("Z[i] needs a conductor divisible by 4");
  CyclotomicInt x(conductor);
  x.coeffs_[0] = g.re;
  x.coeffs_[conductor / 4] = g.im;
  return x;
}

CyclotomicInt CyclotomicInt::from_eisenstein(const EisensteinInt& e, int conductor) {
  if (conductor % 3 != 0) throw std::invalid_argument("Z[ω3] needs a conductor divisible by 3");
  CyclotomicInt x(conductor);
  x.coeffs_[0] = e.a;
  x.coeffs_[conductor / 3] = e.c;
  return x;
}

CyclotomicInt CyclotomicInt::lift(int m) const {
  if (m == conductor_) return *this;
  if (m % conductor_ != 0) throw std::invalid_argument("lift target must be a multiple of the conductor");
  CyclotomicInt r(m);
  const int s = m / conductor_;
  for (int j = 0; j < conductor_; ++j) r.coeffs_[j * s] = coeffs_[j];
  return r;
}

void CyclotomicInt::reduce_in_place() {
  const auto& ring = CyclotomicRing::get(conductor_);
  const int phi = ring.phi;
  for (int j = conductor_ - 1; j >= phi; --j) {
    wide_int c = coeffs_[j];
    if (c == 0) continue;
    const int base = j - phi;
    for (const auto& [i, t] : ring.phi_terms) coeffs_[base + i] = checked_sub(coeffs_[base + i], checked_mul(c, t));
    coeffs_[j] = 0;
  }
}

CyclotomicInt CyclotomicInt::reduced() const {
  CyclotomicInt r = *this;
  r.reduce_in_place();
  return r;
}

bool CyclotomicInt::is_zero() const {
  CyclotomicInt r = reduced();
  for (auto c : r.coeffs_)
    if (c != 0) return false;
  return true;
}

wide_int CyclotomicInt::trace() const {
  const auto& ring = CyclotomicRing::get(conductor_);
  wide_int t = 0;
  for (int j = 0; j < conductor_; ++j)
    if (coeffs_[j] != 0) t = checked_add(t, checked_mul(coeffs_[j], ring.trace_of_power[j]));
  return t;
}

std::complex<double> CyclotomicInt::embed() const {
  const auto& ring = CyclotomicRing::get(conductor_);
  std::complex<double> z = 0;
  for (int j = 0; j < conductor_; ++j)
    if (coeffs_[j] != 0) z += static_cast<double>(coeffs_[j]) * ring.roots[j];
  return z;
}

std::string CyclotomicInt::to_string() const {
  std::string s;
  for (int j = 0; j < conductor_; ++j) {
    wide_int c = coeffs_[j];
    if (c == 0) continue;
    if (!s.empty()) s += c < 0 ? " - " : " + ";
    else if (c < 0) s += "-";
    wide_int a = c < 0 ? -c : c;
    if (j == 0) {
      s += stbc::to_string(a);
      continue;
    }
    if (a != 1) s += stbc::to_string(a) + "*";
    s += "w" + std::to_string(conductor_) + "^" + std::to_string(j);
  }
  return s.empty() ? "0" : s;
}

CyclotomicInt& CyclotomicInt::operator+=(const CyclotomicInt& y) {
  if (y.conductor_ != conductor_) {
    int m = lcm_int(conductor_, y.conductor_);
    *this = lift(m);
    return *this += y.lift(m);
  }
  for (int j = 0; j < conductor_; ++j) coeffs_[j] = checked_add(coeffs_[j], y.coeffs_[j]);
  return *this;
}

CyclotomicInt& CyclotomicInt::operator-=(const CyclotomicInt& y) {
  if (y.conductor_ != conductor_) {
    int m = lcm_int(conductor_, y.conductor_);
    *this = lift(m);
    return *this -= y.lift(m);
  }
  for (int j = 0; j < conductor_; ++j) coeffs_[j] = checked_sub(coeffs_[j], y.coeffs_[j]);
  return *this;
}

void CyclotomicInt::add_scaled(const CyclotomicInt& y, wide_int a) {
  if (y.conductor_ != conductor_) throw std::invalid_argument("add_scaled: conductor mismatch");
  if (a == 0) return;
  for (int j = 0; j < conductor_; ++j)
    if (y.coeffs_[j] != 0) coeffs_[j] = checked_add(coeffs_[j], checked_mul(a, y.coeffs_[j]));
}

CyclotomicInt operator*(const CyclotomicInt& x, const CyclotomicInt& y) {
  if (x.conductor_ != y.conductor_) {
    int m = lcm_int(x.conductor_, y.conductor_);
    return x.lift(m) * y.lift(m);
  }
  const int n = x.conductor_;
  int lx = n, ly = n;
  while (lx > 0 && x.coeffs_[lx - 1] == 0) --lx;
  while (ly > 0 && y.coeffs_[ly - 1] == 0) --ly;
  CyclotomicInt r(n);
  for (int i = 0; i < lx; ++i) {
    const wide_int a = x.coeffs_[i];
    if (a == 0) continue;
    int k = i;
    for (int j = 0; j < ly; ++j, ++k) {
      if (k == n) k = 0;
      const wide_int b = y.coeffs_[j];
      if (b != 0) r.coeffs_[k] = checked_add(r.coeffs_[k], checked_mul(a, b));
    }
  }
  return r;
}

CyclotomicInt& CyclotomicInt::operator*=(const CyclotomicInt& y) { return *this = *this * y; }

CyclotomicInt CyclotomicInt::operator-() const {
  CyclotomicInt r = *this;
  for (auto& c : r.coeffs_) c = checked_sub(0, c);
  return r;
}

CyclotomicInt CyclotomicInt::scaled(wide_int s) const {
  CyclotomicInt r = *this;
  for (auto& c : r.coeffs_) c = checked_mul(c, s);
  return r;
}

bool operator==(const CyclotomicInt& x, const CyclotomicInt& y) { return (x - y).is_zero(); }

// ---- Galois action --------------------------------------------------------

GaloisAuto::GaloisAuto(int conductor_, std::int64_t exponent_) : conductor(conductor_), exponent(mod_floor(exponent_, conductor_)) {
  if (conductor_ < 1) throw std::invalid_argument("GaloisAuto: conductor must be positive");
  if (std::gcd<std::int64_t>(exponent, conductor) != 1 && conductor > 1)
    throw std::invalid_argument("GaloisAuto: exponent is not a unit modulo the conductor");
}

GaloisAuto GaloisAuto::compose(const GaloisAuto& other) const {
  if (conductor != other.conductor) throw std::invalid_argument("GaloisAuto::compose: conductor mismatch");
  return GaloisAuto(conductor, mul_mod(exponent, other.exponent, conductor));
}

GaloisAuto GaloisAuto::power(std::int64_t e) const {
  if (e < 0) throw std::invalid_argument("GaloisAuto::power: negative power");
  return GaloisAuto(conductor, pow_mod(exponent, e, conductor));
}

CyclotomicInt GaloisAuto::apply(const CyclotomicInt& x) const {
  const int n = x.conductor();
  if (conductor % n != 0) throw std::invalid_argument("GaloisAuto::apply: element conductor must divide the automorphism conductor");
  const std::int64_t k = exponent % n;
  if (k == 1 % n) return x;
  std::vector<wide_int> out(n, 0);
  const auto& c = x.coeffs();
  for (int j = 0; j < n; ++j)
    if (c[j] != 0) out[mul_mod(j, k, n)] = c[j];
  return CyclotomicInt(n, std::move(out));
}

CyclotomicInt apply_galois(const GaloisAuto& g, const CyclotomicInt& x) { return g.apply(x); }

// ---- Gauss periods --------------------------------------------------------

std::vector<std::int64_t> index_subgroup(std::int64_t m, std::int64_t n1) {
  const std::int64_t phi = euler_phi(m);
  if (n1 < 1 || phi % n1 != 0) throw std::invalid_argument("index_subgroup: n1 must divide phi(m)");
  const std::int64_t e = phi / n1;
  std::vector<std::int64_t> h;
  for (std::int64_t a = 1; a <= m; ++a) {
    if (std::gcd(a, m) != 1 && m > 1) continue;
    if (pow_mod(a, e, m) == 1 % m) h.push_back(a % m);
  }
  if (static_cast<std::int64_t>(h.size()) != e) throw std::invalid_argument("index_subgroup: unit group is not cyclic");
  return h;
}

CyclotomicInt gauss_period(std::int64_t p, int e, std::int64_t n1, std::int64_t coset_rep) {
  if (!is_prime(p) || e < 1) throw std::invalid_argument("gauss_period: p must be prime and e >= 1");
  const std::int64_t m = PrimePower{p, e}.value();
  if (euler_phi(m) % n1 != 0) throw std::invalid_argument("gauss_period: n1 does not divide phi(p^e)");
  std::vector<wide_int> c(m, 0);
  for (auto h : index_subgroup(m, n1)) c[mul_mod(mod_floor(coset_rep, m), h, m)] += 1;
  return CyclotomicInt(static_cast<int>(m), std::move(c));
}

std::complex<double> embed_complex(const CyclotomicInt& x) { return x.embed(); }

// ---- projection -----------------------------------------------------------

std::optional<wide_int> project_to_integer(const CyclotomicInt& x) {
  const auto& ring = CyclotomicRing::get(x.conductor());
  wide_int t = x.trace();
  if (t % ring.phi != 0) return std::nullopt;
  wide_int a = t / ring.phi;
  if (!(x - CyclotomicInt::integer(a, x.conductor())).is_zero()) return std::nullopt;
  return a;
}

std::optional<GaussianInt> project_to_gaussian(const CyclotomicInt& x0) {
  const int n = std::lcm(x0.conductor(), 4);
  const CyclotomicInt x = x0.lift(n);
  const wide_int phi = CyclotomicRing::get(n).phi;
  const wide_int ta = x.trace();
  const wide_int tb = (x * CyclotomicInt::root_of_unity(n, 3 * n / 4)).trace();  // Tr(-i x)
  if (ta % phi != 0 || tb % phi != 0) return std::nullopt;
  GaussianInt g{ta / phi, tb / phi};
  if (!(x - CyclotomicInt::from_gaussian(g, n)).is_zero()) return std::nullopt;
  return g;
}

std::optional<EisensteinInt> project_to_eisenstein(const CyclotomicInt& x0) {
  const int n = std::lcm(x0.conductor(), 3);
  const CyclotomicInt x = x0.lift(n);
  const wide_int half_phi = CyclotomicRing::get(n).phi / 2;
  const wide_int tu = x.trace();
  const wide_int tv = (x * CyclotomicInt::root_of_unity(n, 2 * n / 3)).trace();
  if (tu % half_phi != 0 || tv % half_phi != 0) return std::nullopt;
  const wide_int u = tu / half_phi, v = tv / half_phi;  // u = 2a - c, v = 2c - a
  if ((2 * u + v) % 3 != 0 || (u + 2 * v) % 3 != 0) return std::nullopt;
  EisensteinInt e{(2 * u + v) / 3, (u + 2 * v) / 3};
  if (!(x - CyclotomicInt::from_eisenstein(e, n)).is_zero()) return std::nullopt;
  return e;
}

std::optional<SubringElement> project_to_subring(const CyclotomicInt& x, Subring target) {
  switch (target) {
    case Subring::Integers:
      if (auto v = project_to_integer(x)) return SubringElement{*v};
      return std::nullopt;
    case Subring::Gaussian:
      if (auto v = project_to_gaussian(x)) return SubringElement{*v};
      return std::nullopt;
    case Subring::Eisenstein:
      if (auto v = project_to_eisenstein(x)) return SubringElement{*v};
      return std::nullopt;
  }
  return std::nullopt;
}

// ---- determinant ----------------------------------------------------------

int common_conductor(const CycMatrix& m) {
  int c = 1;
  for (const auto& row : m)
    for (const auto& x : row) c = lcm_int(c, x.conductor());
  return c;
}

CyclotomicInt exact_det(const CycMatrix& m) {
  const std::size_t n = m.size();
  for (const auto& row : m)
    if (row.size() != n) throw std::invalid_argument("exact_det: matrix is not square");
  if (n == 0) return CyclotomicInt::integer(1);
  if (n > 20) throw std::invalid_argument("exact_det: dimension too large");
  const int cond = common_conductor(m);
  CycMatrix a(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) a[r].push_back(m[r][c].lift(cond).reduced());

  // minors[S] = det of rows S, columns 0..|S|-1
  std::vector<CyclotomicInt> minors(std::size_t{1} << n, CyclotomicInt(cond));
  minors[0] = CyclotomicInt::integer(1, cond);
  for (std::size_t col = 0; col < n; ++col) {
    for (std::uint32_t s = 1; s < (1u << n); ++s) {
      if (static_cast<std::size_t>(std::popcount(s)) != col + 1) continue;
      CyclotomicInt acc(cond);
      int above = 0;  // members of s greater than r
      for (int r = static_cast<int>(n) - 1; r >= 0; --r) {
        if (!(s & (1u << r))) continue;
        const CyclotomicInt& entry = a[r][col];
        const CyclotomicInt& minor = minors[s & ~(1u << r)];
        CyclotomicInt term = entry * minor;
        if (above % 2 == 0) acc += term;
        else acc -= term;
        ++above;
      }
      acc.reduce_in_place();
      minors[s] = std::move(acc);
    }
  }
  return minors[(std::size_t{1} << n) - 1];
}

}  // namespace stbc
