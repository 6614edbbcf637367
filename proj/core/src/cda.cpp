#include "stbc/cda.hpp"

#include <Eigen/Dense>
#include <numeric>
#include <stdexcept>

#include "stbc/rng.hpp"

namespace stbc {

std::string to_string(BaseField b) { return b == BaseField::QAM ? "QAM" : "HEX"; }

std::string to_string(Method m) {
  switch (m) {
    case Method::A: return "A";
    case Method::B: return "B";
    case Method::HEX: return "HEX";
    case Method::Perfect3x3: return "perfect3x3";
  }
  return "?";
}

BaseField parse_base_field(const std::string& s) {
  if (s == "QAM") return BaseField::QAM;
  if (s == "HEX") return BaseField::HEX;
  throw std::invalid_argument("unknown base field: " + s);
}

Method parse_method(const std::string& s) {
  if (s == "A") return Method::A;
  if (s == "B") return Method::B;
  if (s == "HEX") return Method::HEX;
  if (s == "perfect3x3") return Method::Perfect3x3;
  throw std::invalid_argument("unknown construction method: " + s);
}

namespace {

CyclotomicInt center_element(BaseField base, const std::array<wide_int, 2>& v) {
  if (base == BaseField::QAM) return CyclotomicInt::from_gaussian({v[0], v[1]}, 4);
  return CyclotomicInt::from_eisenstein({v[0], v[1]}, 3);
}

wide_int center_norm(BaseField base, const std::array<wide_int, 2>& v) {
  if (base == BaseField::QAM) return GaussianInt{v[0], v[1]}.norm();
  return EisensteinInt{v[0], v[1]}.norm();
}

}  // namespace

CyclotomicInt CodeSpec::gamma_numerator() const { return center_element(base, gamma); }
CyclotomicInt CodeSpec::gamma_denominator() const { return center_element(base, gamma_den); }

std::complex<double> CodeSpec::gamma_complex() const {
  return gamma_numerator().embed() / gamma_denominator().embed();
}

wide_int CodeSpec::gamma_norm() const { return center_norm(base, gamma); }

bool CodeSpec::fixes(std::int64_t k) const {
  for (const auto& c : fixing)
    if (pow_mod(k, c.power, c.modulus) != 1 % c.modulus) return false;
  return true;
}

std::int64_t CodeSpec::relative_order(std::int64_t k) const {
  k = mod_floor(k, conductor);
  if (std::gcd<std::int64_t>(k, conductor) != 1) throw std::invalid_argument("relative_order: not a unit modulo the conductor");
  std::int64_t x = k;
  const std::int64_t phi = euler_phi(conductor);
  for (std::int64_t t = 1; t <= phi; ++t) {
    if (fixes(x)) return t;
    x = mul_mod(x, k, conductor);
  }
  throw std::logic_error("relative_order: no power lands in the fixing subgroup");
}

std::string CodeSpec::gamma_string() const {
  auto one = [&](const std::array<wide_int, 2>& v) {
    return base == BaseField::QAM ? GaussianInt{v[0], v[1]}.to_string() : EisensteinInt{v[0], v[1]}.to_string();
  };
  if (gamma_is_integral()) return one(gamma);
  return "(" + one(gamma) + ")/(" + one(gamma_den) + ")";
}

namespace {

// Smallest singular value over the largest for [σ^{a+b}(x)], a, b < count.
double conjugate_conditioning(const CyclotomicInt& x, const GaloisAuto& sigma, int count) {
  std::vector<std::complex<double>> orbit(2 * count);
  CyclotomicInt y = x.lift(sigma.conductor);
  for (int j = 0; j < 2 * count; ++j) {
    orbit[j] = y.embed();
    y = sigma.apply(y);
  }
  Eigen::MatrixXcd m(count, count);
  for (int a = 0; a < count; ++a)
    for (int b = 0; b < count; ++b) m(a, b) = orbit[a + b];
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto& s = svd.singularValues();
  if (s(0) == 0.0) return 0.0;
  return s(count - 1) / s(0);
}

constexpr double kNormalTolerance = 1e-9;

// A normal element of the index-`index` subfield of Q(ω_{p^e}) under σ:
// η + c for small c when that works, otherwise a seeded integer
// combination of powers of η (η generates the subfield).
CyclotomicInt normal_period(std::int64_t p, int e, std::int64_t index, const GaloisAuto& sigma) {
  const CyclotomicInt eta = gauss_period(p, e, index);
  const int m = eta.conductor();
  for (int c = 0; c < 4; ++c) {
    CyclotomicInt x = eta + CyclotomicInt::integer(c, m);
    if (conjugate_conditioning(x, sigma, static_cast<int>(index)) > kNormalTolerance) return x;
  }
  std::vector<CyclotomicInt> powers{CyclotomicInt::integer(1, m)};
  for (std::int64_t j = 1; j < index; ++j) powers.push_back((powers.back() * eta).reduced());
  Rng rng(0x5eed, static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(index));
  for (int attempt = 0; attempt < 256; ++attempt) {
    CyclotomicInt x(m);
    for (const auto& pw : powers) x.add_scaled(pw, rng.uniform_int(-2, 2));
    if (conjugate_conditioning(x, sigma, static_cast<int>(index)) > kNormalTolerance) return x.reduced();
  }
  throw std::logic_error("normal_period: no normal element found");
}

std::int64_t find_sigma(const CodeSpec& s, std::int64_t center_mod) {
  if (s.n == 1) return 1;
  for (std::int64_t k = 2; k < s.conductor; ++k) {
    if (std::gcd<std::int64_t>(k, s.conductor) != 1 || k % center_mod != 1) continue;
    if (s.relative_order(k) == s.n) return k;
  }
  throw std::logic_error("find_sigma: no generator found");
}

template <class Pred>
std::int64_t smallest_prime_with(Pred pred) {
  for (std::int64_t q = 2; q < 100'000'000; ++q)
    if (is_prime(q) && pred(q)) return q;
  throw std::runtime_error("no prime satisfies the construction congruences below 1e8");
}

void fill_basis(CodeSpec& s, const CyclotomicInt& beta0) {
  const GaloisAuto sigma = s.sigma();
  s.basis.clear();
  CyclotomicInt b = beta0.lift(s.conductor);
  for (int j = 0; j < s.n; ++j) {
    s.basis.push_back(b.reduced());
    b = sigma.apply(b);
  }
  if (basis_conditioning(s) <= kNormalTolerance) throw std::logic_error("constructed basis is numerically singular");
}

CyclotomicInt two_part(int e0, int m2) {
  std::vector<wide_int> c(m2, 0);
  for (int j = 0; j < (1 << e0); ++j) c[j] = 1;
  return CyclotomicInt(m2, c);
}

CodeSpec trivial_spec(BaseField base, Method method) {
  CodeSpec s;
  s.n = 1;
  s.base = base;
  s.method = method;
  s.conductor = base == BaseField::QAM ? 4 : 3;
  s.fixing = {{s.conductor, 1}};
  s.sigma_exponent = 1;
  s.q = 1;
  s.basis = {CyclotomicInt::integer(1, s.conductor)};
  return s;
}

}  // namespace

double basis_conditioning(const CodeSpec& spec) {
  const GaloisAuto sigma = spec.sigma();
  const int n = spec.n;
  Eigen::MatrixXcd m(n, n);
  for (int i = 0; i < n; ++i) {
    CyclotomicInt b = spec.basis.at(i).lift(spec.conductor);
    for (int j = 0; j < n; ++j) {
      m(i, j) = b.embed();
      b = sigma.apply(b);
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto& sv = svd.singularValues();
  return sv(0) == 0.0 ? 0.0 : sv(n - 1) / sv(0);
}

CodeSpec construct_A(int n) {
  if (n < 1) throw std::invalid_argument("construct_A: n must be >= 1");
  if (n == 1) return trivial_spec(BaseField::QAM, Method::A);
  CodeSpec s;
  s.n = n;
  s.base = BaseField::QAM;
  s.method = Method::A;
  const Factorization f = factor(n);
  s.e0 = f.two_adic_valuation();
  s.n1 = f.odd_part();
  const int m2 = 1 << (s.e0 + 2);
  std::optional<PrimePower> pp;
  std::int64_t pe = 1;
  if (s.n1 > 1) {
    pp = smallest_inert_prime_power(s.n1);
    pe = pp->value();
    s.odd_prime_power = pe;
  }
  s.conductor = static_cast<int>(pe * m2);
  if (pe > 1) s.fixing.push_back({pe, euler_phi(pe) / s.n1});
  s.fixing.push_back({m2, 1});

  const Congruence two = s.e0 >= 1 ? Congruence{5, 8} : Congruence{1, 4};
  s.q = smallest_prime_with([&](std::int64_t q) { return two.holds(q) && (pe == 1 || is_primitive_root(q, pe)); });
  if (pe > 1) s.q_congruences.push_back({s.q % pe, pe});
  s.q_congruences.push_back(two);
  const GaussianInt g = split_in_gaussian_integers(s.q);
  s.gamma = {g.re, g.im};

  s.sigma_exponent = find_sigma(s, 4);
  CyclotomicInt beta0 = two_part(s.e0, m2);
  if (pp) beta0 = beta0 * normal_period(pp->prime, pp->exponent, s.n1, s.sigma());
  fill_basis(s, beta0);
  return s;
}

CodeSpec construct_B(int n) {
  if (n < 1) throw std::invalid_argument("construct_B: n must be >= 1");
  if (n == 1) return trivial_spec(BaseField::QAM, Method::B);
  CodeSpec s;
  s.n = n;
  s.base = BaseField::QAM;
  s.method = Method::B;
  const Factorization f = factor(n);
  s.e0 = f.two_adic_valuation();
  s.n1 = f.odd_part();
  const std::int64_t m2 = std::int64_t{1} << (s.e0 + 2);
  std::vector<PrimePower> odd;
  std::int64_t conductor = m2;
  for (const auto& pp : f.factors) {
    if (pp.prime == 2) continue;
    PrimePower up{pp.prime, pp.exponent + 1};
    odd.push_back(up);
    conductor *= up.value();
    s.fixing.push_back({up.value(), pp.prime - 1});
  }
  s.fixing.push_back({m2, 1});
  s.conductor = static_cast<int>(conductor);

  const Congruence two = s.e0 >= 1 ? Congruence{5, m2} : Congruence{1, 4};
  s.q = smallest_prime_with([&](std::int64_t q) {
    if (!two.holds(q)) return false;
    for (const auto& up : odd)
      if (!is_primitive_root(q, up.value())) return false;
    return true;
  });
  for (const auto& up : odd) s.q_congruences.push_back({s.q % up.value(), up.value()});
  s.q_congruences.push_back(two);
  const GaussianInt g = split_in_gaussian_integers(s.q);
  s.gamma = {g.re, g.im};

  s.sigma_exponent = find_sigma(s, 4);
  CyclotomicInt beta0 = two_part(s.e0, static_cast<int>(m2));
  for (const auto& up : odd) {
    const std::int64_t index = up.value() / up.prime;
    beta0 = beta0 * normal_period(up.prime, up.exponent, index, s.sigma());
  }
  fill_basis(s, beta0);
  return s;
}

CodeSpec construct_HEX(int n) {
  if (n < 1) throw std::invalid_argument("construct_HEX: n must be >= 1");
  if (n % 4 == 0) throw std::domain_error("construct_HEX: n ≡ 0 (mod 4) is not supported by the HEX construction");
  if (n == 1) return trivial_spec(BaseField::HEX, Method::HEX);
  CodeSpec s;
  s.n = n;
  s.base = BaseField::HEX;
  s.method = Method::HEX;
  const Factorization f = factor(n);
  s.e0 = f.two_adic_valuation();
  s.n1 = f.odd_part();
  const std::int64_t cm = s.e0 == 1 ? 12 : 3;
  std::optional<PrimePower> pp;
  std::int64_t pe = 1;
  if (s.n1 > 1) {
    const std::int64_t excluded[] = {3};
    pp = smallest_inert_prime_power(s.n1, excluded);
    pe = pp->value();
    s.odd_prime_power = pe;
  }
  s.conductor = static_cast<int>(pe * cm);
  if (pe > 1) s.fixing.push_back({pe, euler_phi(pe) / s.n1});
  s.fixing.push_back({cm, 1});

  s.q = smallest_prime_with(
      [&](std::int64_t q) { return q % 3 == 1 && q % 4 == 3 && (pe == 1 || is_primitive_root(q, pe)); });
  if (pe > 1) s.q_congruences.push_back({s.q % pe, pe});
  s.q_congruences.push_back({1, 3});
  s.q_congruences.push_back({3, 4});
  const EisensteinInt g = split_in_eisenstein_integers(s.q);
  s.gamma = {g.a, g.c};

  s.sigma_exponent = find_sigma(s, 3);
  CyclotomicInt beta0 = CyclotomicInt::integer(1, 3);
  if (s.e0 == 1) beta0 = CyclotomicInt::integer(1, 12) + CyclotomicInt::root_of_unity(12, 3);
  if (pp) beta0 = beta0 * normal_period(pp->prime, pp->exponent, s.n1, s.sigma());
  fill_basis(s, beta0);
  return s;
}

CodeSpec perfect_3x3_spec() {
  CodeSpec s;
  s.n = 3;
  s.base = BaseField::QAM;
  s.method = Method::Perfect3x3;
  s.conductor = 28;
  s.sigma_exponent = 17;  // ω7 -> ω7^3, i -> i
  s.fixing = {{7, 2}, {4, 1}};
  s.q = 5;
  s.gamma = {2, 1};
  s.gamma_den = {1, 2};
  s.e0 = 0;
  s.n1 = 3;
  s.odd_prime_power = 7;
  s.q_congruences = {{5, 7}, {1, 4}};

  const CyclotomicInt one = CyclotomicInt::integer(1, 7);
  const CyclotomicInt w7 = CyclotomicInt::root_of_unity(7, 1);
  CyclotomicInt y = CyclotomicInt::root_of_unity(7, 4) * (one - w7);
  for (int k = 0, e = 1; k <= 2; ++k, e *= 3) y = y * (one - CyclotomicInt::root_of_unity(7, e));
  const GaloisAuto tau3(7, 27);  // τ^3 with τ: ω7 -> ω7^3
  const CyclotomicInt x = y + tau3.apply(y);
  fill_basis(s, x);
  return s;
}

CodeSpec construct(Method m, int n) {
  switch (m) {
    case Method::A: return construct_A(n);
    case Method::B: return construct_B(n);
    case Method::HEX: return construct_HEX(n);
    case Method::Perfect3x3:
      if (n != 3) throw std::invalid_argument("perfect3x3 has n = 3");
      return perfect_3x3_spec();
  }
  throw std::invalid_argument("unknown method");
}

std::int64_t table_prime_power(const CodeSpec& spec) {
  if (spec.odd_prime_power > 0) return spec.odd_prime_power;
  return spec.e0 >= 1 ? 8 : 4;
}

CyclotomicInt relative_norm(const CodeSpec& spec, const CyclotomicInt& u) {
  const GaloisAuto sigma = spec.sigma();
  CyclotomicInt cur = u.lift(spec.conductor);
  CyclotomicInt acc = CyclotomicInt::integer(1, spec.conductor);
  for (int j = 0; j < spec.n; ++j) {
    acc = acc * cur;
    acc.reduce_in_place();
    cur = sigma.apply(cur);
  }
  return acc;
}

NonNormReport verify_non_norm(const CodeSpec& spec, int t, std::int64_t samples, std::uint64_t seed, int coeff_bound) {
  if (t < 1) throw std::invalid_argument("verify_non_norm: t must be >= 1");
  NonNormReport r;
  r.q = spec.q;
  r.t = t;
  if (spec.n == 1) {
    r.frobenius_order = 1;
  } else {
    r.frobenius_order = spec.relative_order(spec.q);
  }
  r.inert = r.frobenius_order == spec.n;

  bool ok = spec.n == 1 || is_prime(spec.q);
  for (const auto& c : spec.q_congruences) ok = ok && c.holds(spec.q);
  if (spec.n > 1) {
    ok = ok && spec.gamma_norm() == spec.q;
    if (!spec.gamma_is_integral()) ok = ok && center_norm(spec.base, spec.gamma_den) == spec.q;
  }
  r.congruences_hold = ok;

  // N(u) = γ^t  <=>  N(u) · den^t = num^t
  const int cond = spec.conductor;
  CyclotomicInt num_t = CyclotomicInt::integer(1, cond), den_t = CyclotomicInt::integer(1, cond);
  for (int i = 0; i < t; ++i) {
    num_t = num_t * spec.gamma_numerator().lift(cond);
    den_t = den_t * spec.gamma_denominator().lift(cond);
  }
  num_t.reduce_in_place();
  den_t.reduce_in_place();

  const int unit_index = spec.base == BaseField::QAM ? cond / 4 : cond / 3;
  Rng rng(seed, 0x6e6f6e6e6f726dULL);
  for (std::int64_t s = 0; s < samples; ++s) {
    CyclotomicInt u(cond);
    if (s == 0) {
      u = CyclotomicInt::integer(1, cond);
    } else {
      for (const auto& b : spec.basis) {
        std::vector<wide_int> c(cond, 0);
        c[0] = rng.uniform_int(-coeff_bound, coeff_bound);
        c[unit_index] = rng.uniform_int(-coeff_bound, coeff_bound);
        u += CyclotomicInt(cond, std::move(c)) * b.lift(cond);
      }
      if (u.is_zero()) continue;
    }
    ++r.samples;
    if (relative_norm(spec, u) * den_t == num_t) {
      if (r.counterexamples++ == 0) r.witness = u.reduced().to_string();
    }
  }
  return r;
}

}  // namespace stbc
