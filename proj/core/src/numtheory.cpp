#include "stbc/numtheory.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <tuple>

namespace stbc {

std::int64_t PrimePower::value() const {
  std::int64_t v = 1;
  for (int i = 0; i < exponent; ++i) v *= prime;
  return v;
}

int Factorization::two_adic_valuation() const {
  if (!factors.empty() && factors.front().prime == 2) return factors.front().exponent;
  return 0;
}

std::int64_t Factorization::odd_part() const {
  std::int64_t v = value;
  while (v % 2 == 0) v /= 2;
  return v;
}

bool Congruence::holds(std::int64_t x) const { return mod_floor(x - residue, modulus) == 0; }

std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t m) {
  return static_cast<std::int64_t>(static_cast<wide_int>(a) * b % m);
}

std::int64_t pow_mod(std::int64_t a, std::int64_t e, std::int64_t m) {
  if (m == 1) return 0;
  if (e < 0) throw std::invalid_argument("pow_mod: negative exponent");
  std::int64_t r = 1;
  std::int64_t b = mod_floor(a, m);
  while (e > 0) {
    if (e & 1) r = mul_mod(r, b, m);
    b = mul_mod(b, b, m);
    e >>= 1;
  }
  return r;
}

std::int64_t inverse_mod(std::int64_t a, std::int64_t m) {
  std::int64_t g = m, x = 0, x1 = 1, r = mod_floor(a, m);
  while (r != 0) {
    std::int64_t q = g / r;
    std::tie(g, r) = std::make_pair(r, g - q * r);
    std::tie(x, x1) = std::make_pair(x1, x - q * x1);
  }
  if (g != 1) throw std::invalid_argument("inverse_mod: not a unit");
  return mod_floor(x, m);
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  static constexpr std::int64_t small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (auto p : small) {
    if (n % p == 0) return n == p;
  }
  std::int64_t d = n - 1;
  int s = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++s;
  }
  for (auto a : small) {
    std::int64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Factorization factor(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("factor: n must be >= 1");
  Factorization f;
  f.value = n;
  std::int64_t m = n;
  for (std::int64_t p = 2; p * p <= m; p += (p == 2 ? 1 : 2)) {
    if (m % p != 0) continue;
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    f.factors.push_back({p, e});
  }
  if (m > 1) f.factors.push_back({m, 1});
  return f;
}

std::int64_t euler_phi(std::int64_t n) {
  std::int64_t r = n;
  for (const auto& pp : factor(n).factors) r = r / pp.prime * (pp.prime - 1);
  return r;
}

int moebius(std::int64_t n) {
  auto f = factor(n);
  for (const auto& pp : f.factors)
    if (pp.exponent > 1) return 0;
  return f.factors.size() % 2 == 0 ? 1 : -1;
}

std::int64_t multiplicative_order(std::int64_t a, std::int64_t m) {
  if (m < 2) throw std::invalid_argument("multiplicative_order: modulus must be >= 2");
  if (std::gcd(mod_floor(a, m), m) != 1) throw std::invalid_argument("multiplicative_order: gcd(a, m) != 1");
  std::int64_t f = euler_phi(m);
  for (const auto& pp : factor(f).factors) {
    while (f % pp.prime == 0 && pow_mod(a, f / pp.prime, m) == 1) f /= pp.prime;
  }
  return f;
}

bool is_primitive_root(std::int64_t g, std::int64_t m) {
  if (m < 2 || std::gcd(mod_floor(g, m), m) != 1) return false;
  return multiplicative_order(g, m) == euler_phi(m);
}

std::int64_t max_unit_order(std::int64_t m) {
  if (m < 2) return 1;
  std::int64_t best = 1;
  for (std::int64_t a = 1; a < m; ++a) {
    if (std::gcd(a, m) == 1) best = std::max(best, multiplicative_order(a, m));
  }
  return best;
}

std::int64_t primitive_root_mod_prime_power(std::int64_t p, int e) {
  if (p % 2 == 0 || !is_prime(p)) throw std::invalid_argument("primitive_root_mod_prime_power: p must be an odd prime");
  if (e < 1) throw std::invalid_argument("primitive_root_mod_prime_power: e must be >= 1");
  std::int64_t m = PrimePower{p, e}.value();
  for (std::int64_t g = 2; g < m; ++g) {
    if (is_primitive_root(g, m)) return g;
  }
  return 1;  // only reached for m = 2, excluded above
}

namespace {

bool has_cyclic_unit_group(std::int64_t m) {
  if (m == 2 || m == 4) return true;
  if (m % 4 == 0) return false;
  if (m % 2 == 0) m /= 2;
  auto f = factor(m);
  return f.factors.size() == 1 && f.factors[0].prime != 2;
}

}  // namespace

std::vector<std::int64_t> primitive_roots(std::int64_t m) {
  std::vector<std::int64_t> out;
  if (m < 2 || !has_cyclic_unit_group(m)) return out;
  if (m == 2) return {1};
  std::int64_t phi = euler_phi(m);
  std::int64_t g = 2;
  while (!is_primitive_root(g, m)) ++g;
  std::int64_t x = 1;
  for (std::int64_t k = 1; k <= phi; ++k) {
    x = mul_mod(x, g, m);
    if (std::gcd(k, phi) == 1) out.push_back(x);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<PrimePower> smallest_inert_prime_power(std::int64_t n1, std::span<const std::int64_t> excluded_primes) {
  if (n1 < 1 || n1 % 2 == 0) throw std::invalid_argument("smallest_inert_prime_power: n1 must be odd and positive");
  if (n1 == 1) return std::nullopt;
  for (std::int64_t v = 3;; v += 2) {
    auto f = factor(v);
    if (f.factors.size() != 1) continue;
    const PrimePower pp = f.factors[0];
    if (std::find(excluded_primes.begin(), excluded_primes.end(), pp.prime) != excluded_primes.end()) continue;
    if (euler_phi(v) % n1 == 0) return pp;
  }
}

Congruence crt(std::span<const Congruence> parts) {
  Congruence acc{0, 1};
  for (const auto& c : parts) {
    if (c.modulus < 1) throw std::invalid_argument("crt: modulus must be positive");
    if (std::gcd(acc.modulus, c.modulus) != 1) throw std::invalid_argument("crt: moduli are not pairwise coprime");
    std::int64_t m = acc.modulus * c.modulus;
    // acc.residue + acc.modulus * t ≡ c.residue (mod c.modulus)
    std::int64_t t = 0;
    if (c.modulus > 1) {
      t = mul_mod(mod_floor(c.residue - acc.residue, c.modulus), inverse_mod(acc.modulus, c.modulus), c.modulus);
    }
    acc = {mod_floor(acc.residue + acc.modulus * t, m), m};
  }
  return acc;
}

std::int64_t prime_in_progression(std::span<const Congruence> parts, std::int64_t max_candidates) {
  for (const auto& c : parts) {
    if (c.modulus >= 1 && std::gcd(mod_floor(c.residue, c.modulus), c.modulus) != 1 && c.modulus != 1)
      throw std::invalid_argument("prime_in_progression: residue not coprime to its modulus");
  }
  Congruence cls = crt(parts);
  std::int64_t x = cls.residue;
  for (std::int64_t i = 0; i < max_candidates; ++i, x += cls.modulus) {
    if (is_prime(x)) return x;
  }
  throw std::runtime_error("prime_in_progression: candidate cap exhausted");
}

// ---- Gaussian integers ----------------------------------------------------

wide_int GaussianInt::norm() const { return checked_add(checked_mul(re, re), checked_mul(im, im)); }

GaussianInt operator+(const GaussianInt& x, const GaussianInt& y) {
  return {checked_add(x.re, y.re), checked_add(x.im, y.im)};
}

GaussianInt operator-(const GaussianInt& x, const GaussianInt& y) {
  return {checked_sub(x.re, y.re), checked_sub(x.im, y.im)};
}

GaussianInt operator*(const GaussianInt& x, const GaussianInt& y) {
  return {checked_sub(checked_mul(x.re, y.re), checked_mul(x.im, y.im)),
          checked_add(checked_mul(x.re, y.im), checked_mul(x.im, y.re))};
}

namespace {

std::vector<GaussianInt> gaussian_orbit(const GaussianInt& x) {
  std::vector<GaussianInt> out;
  for (GaussianInt y : {x, x.conj()}) {
    for (int k = 0; k < 4; ++k) {
      out.push_back(y);
      y = {-y.im, y.re};
    }
  }
  return out;
}

std::vector<EisensteinInt> eisenstein_orbit(const EisensteinInt& x) {
  std::vector<EisensteinInt> out;
  for (EisensteinInt y : {x, x.conj()}) {
    for (int k = 0; k < 6; ++k) {
      out.push_back(y);
      y = y * EisensteinInt{1, 1};  // 1 + ω3 = -ω3² is a primitive sixth root of unity
    }
  }
  return out;
}

}  // namespace

bool GaussianInt::associated_up_to_conjugation(const GaussianInt& x, const GaussianInt& y) {
  auto orb = gaussian_orbit(x);
  return std::find(orb.begin(), orb.end(), y) != orb.end();
}

std::string GaussianInt::to_string() const {
  if (im == 0) return stbc::to_string(re);
  std::string s = re == 0 ? "" : stbc::to_string(re);
  wide_int b = im;
  if (b < 0) {
    s += "-";
    b = -b;
  } else if (re != 0) {
    s += "+";
  }
  if (b != 1) s += stbc::to_string(b);
  return s + "i";
}

// ---- Eisenstein integers --------------------------------------------------

wide_int EisensteinInt::norm() const {
  return checked_add(checked_sub(checked_mul(a, a), checked_mul(a, c)), checked_mul(c, c));
}

EisensteinInt operator+(const EisensteinInt& x, const EisensteinInt& y) {
  return {checked_add(x.a, y.a), checked_add(x.c, y.c)};
}

EisensteinInt operator-(const EisensteinInt& x, const EisensteinInt& y) {
  return {checked_sub(x.a, y.a), checked_sub(x.c, y.c)};
}

EisensteinInt operator*(const EisensteinInt& x, const EisensteinInt& y) {
  wide_int cd = checked_mul(x.c, y.c);
  return {checked_sub(checked_mul(x.a, y.a), cd),
          checked_sub(checked_add(checked_mul(x.a, y.c), checked_mul(x.c, y.a)), cd)};
}

bool EisensteinInt::associated_up_to_conjugation(const EisensteinInt& x, const EisensteinInt& y) {
  auto orb = eisenstein_orbit(x);
  return std::find(orb.begin(), orb.end(), y) != orb.end();
}

std::string EisensteinInt::to_string() const {
  if (c == 0) return stbc::to_string(a);
  std::string s = a == 0 ? "" : stbc::to_string(a);
  wide_int b = c;
  if (b < 0) {
    s += "-";
    b = -b;
  } else if (a != 0) {
    s += "+";
  }
  if (b != 1) s += stbc::to_string(b);
  return s + "w";
}

// ---- splitting ------------------------------------------------------------

namespace {

std::int64_t isqrt(std::int64_t v) {
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(v)));
  while (r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

// Tonelli-Shanks square root of a modulo an odd prime p.
std::optional<std::int64_t> sqrt_mod_prime(std::int64_t a, std::int64_t p) {
  a = mod_floor(a, p);
  if (a == 0) return 0;
  if (pow_mod(a, (p - 1) / 2, p) != 1) return std::nullopt;
  std::int64_t q = p - 1;
  int s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  std::int64_t z = 2;
  while (pow_mod(z, (p - 1) / 2, p) != p - 1) ++z;
  std::int64_t c = pow_mod(z, q, p), r = pow_mod(a, (q + 1) / 2, p), t = pow_mod(a, q, p);
  int m = s;
  while (t != 1) {
    int i = 0;
    std::int64_t tt = t;
    while (tt != 1) {
      tt = mul_mod(tt, tt, p);
      ++i;
    }
    std::int64_t b = c;
    for (int j = 0; j < m - i - 1; ++j) b = mul_mod(b, b, p);
    r = mul_mod(r, b, p);
    c = mul_mod(b, b, p);
    t = mul_mod(t, c, p);
    m = i;
  }
  return r;
}

}  // namespace

std::optional<std::pair<std::int64_t, std::int64_t>> cornacchia(std::int64_t d, std::int64_t m) {
  if (d < 1 || m < 2 || !is_prime(m)) return std::nullopt;
  if (m == 2) {
    if (d == 1) return std::make_pair<std::int64_t, std::int64_t>(1, 1);
    return std::nullopt;
  }
  auto r0 = sqrt_mod_prime(-d, m);
  if (!r0) return std::nullopt;
  std::int64_t a = m, b = *r0;
  if (b <= m / 2) b = m - b;
  while (b * b > m) {
    std::int64_t r = a % b;
    a = b;
    b = r;
  }
  std::int64_t rest = m - b * b;
  if (rest % d != 0) return std::nullopt;
  std::int64_t y = isqrt(rest / d);
  if (y * y * d != rest) return std::nullopt;
  return std::make_pair(b, y);
}

GaussianInt split_in_gaussian_integers(std::int64_t q) {
  if (!is_prime(q) || q % 4 != 1) throw std::invalid_argument("split_in_gaussian_integers: q must be a prime ≡ 1 (mod 4)");
  auto xy = cornacchia(1, q);
  if (!xy) throw std::logic_error("split_in_gaussian_integers: Cornacchia failed");
  auto [x, y] = *xy;
  return {std::max(x, y), std::min(x, y)};
}

EisensteinInt split_in_eisenstein_integers(std::int64_t q) {
  if (!is_prime(q) || q % 3 != 1) throw std::invalid_argument("split_in_eisenstein_integers: q must be a prime ≡ 1 (mod 3)");
  auto xy = cornacchia(3, q);
  if (!xy) throw std::logic_error("split_in_eisenstein_integers: Cornacchia failed");
  auto [x, y] = *xy;
  // x² + 3y² = N(x + y + 2y ω3)
  EisensteinInt base{x + y, 2 * y};
  for (const auto& e : eisenstein_orbit(base)) {
    if (e.a > 2 * e.c && e.c > 0) return e;
  }
  throw std::logic_error("split_in_eisenstein_integers: no associate in the canonical sector");
}

}  // namespace stbc
