#include "symframes/cyclotomic.hpp"

#include <mpfr.h>

#include <cmath>
#include <cstdio>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>

#include "symframes/error.hpp"

namespace symframes {

namespace {

long mod(long a, long m) {
  long r = a % m;
  return r < 0 ? r + m : r;
}

long inverse_mod(long a, long m) {
  long g = m, x = 0, x1 = 1, a1 = mod(a, m);
  while (a1 != 0) {
    long q = g / a1;
    long t = g - q * a1;
    g = a1;
    a1 = t;
    t = x - q * x1;
    x = x1;
    x1 = t;
  }
  return mod(x, m);
}

struct Factor {
  long p, q, phi, stride, cofactor_inverse;
};

// Reduction data for Q(zeta_e) in the tensor basis.
struct Field {
  long e = 1;
  std::size_t dim = 1;
  std::vector<Factor> factors;
  std::vector<long> basis_exp;
  std::vector<std::uint32_t> offset;
  std::vector<std::uint32_t> term_index;
  std::vector<signed char> term_sign;

  std::size_t terms_begin(long k) const { return offset[k]; }
  std::size_t terms_end(long k) const { return offset[k + 1]; }
};

std::unique_ptr<Field> build_field(long e) {
  auto f = std::make_unique<Field>();
  f->e = e;
  long n = e, stride = 1;
  for (long p = 2; p * p <= n || n > 1; ++p) {
    if (p * p > n) p = n;
    if (n % p) continue;
    long q = 1;
    while (n % p == 0) {
      n /= p;
      q *= p;
    }
    long phi = q / p * (p - 1);
    f->factors.push_back({p, q, phi, stride, inverse_mod((e / q) % q, q)});
    stride *= phi;
  }
  f->dim = static_cast<std::size_t>(stride);
  f->basis_exp.resize(f->dim);
  for (std::size_t i = 0; i < f->dim; ++i) {
    long k = 0;
    for (const auto& fa : f->factors) k += ((static_cast<long>(i) / fa.stride) % fa.phi) * (e / fa.q);
    f->basis_exp[i] = mod(k, e);
  }
  f->offset.push_back(0);
  std::vector<std::pair<long, int>> acc, next;
  for (long k = 0; k < e; ++k) {
    acc.assign(1, {0, 1});
    for (const auto& fa : f->factors) {
      long kk = mod(mod(k, fa.q) * fa.cofactor_inverse, fa.q);
      next.clear();
      if (kk < fa.phi) {
        for (auto [idx, s] : acc) next.push_back({idx + kk * fa.stride, s});
      } else {
        long step = fa.q / fa.p;
        long r = kk - fa.phi;
        for (auto [idx, s] : acc)
          for (long t = 0; t + 1 < fa.p; ++t) next.push_back({idx + (r + t * step) * fa.stride, -s});
      }
      acc.swap(next);
    }
    for (auto [idx, s] : acc) {
      f->term_index.push_back(static_cast<std::uint32_t>(idx));
      f->term_sign.push_back(static_cast<signed char>(s));
    }
    f->offset.push_back(static_cast<std::uint32_t>(f->term_index.size()));
  }
  return f;
}

const Field& field(long e) {
  static std::mutex m;
  static std::map<long, std::unique_ptr<Field>> cache;
  std::lock_guard<std::mutex> lock(m);
  auto it = cache.find(e);
  if (it == cache.end()) it = cache.emplace(e, build_field(e)).first;
  return *it->second;
}

// Adds c * zeta_e^k into num.
void add_power(const Field& f, std::vector<mpz_class>& num, long k, const mpz_class& c) {
  k = mod(k, f.e);
  for (std::size_t t = f.terms_begin(k); t < f.terms_end(k); ++t) {
    if (f.term_sign[t] > 0)
      num[f.term_index[t]] += c;
    else
      num[f.term_index[t]] -= c;
  }
}

class Mpfr {
 public:
  explicit Mpfr(mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
  ~Mpfr() { mpfr_clear(v_); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
  mpfr_ptr get() { return v_; }

 private:
  mpfr_t v_;
};

constexpr long kMaxBits = 4096;

}  // namespace

Cyclotomic::Cyclotomic(const mpq_class& q) : e_(1), num_{q.get_num()}, den_(q.get_den()) {
  normalize();
}

Cyclotomic::Cyclotomic(long e, std::vector<mpz_class> num, mpz_class den)
    : e_(e), num_(std::move(num)), den_(std::move(den)) {
  normalize();
}

long Cyclotomic::basis_exponent(std::size_t i) const { return field(e_).basis_exp[i]; }

void Cyclotomic::normalize() {
  if (sgn(den_) < 0) {
    den_ = -den_;
    for (auto& c : num_) c = -c;
  }
  mpz_class g = den_;
  bool zero = true;
  for (const auto& c : num_) {
    if (sgn(c) == 0) continue;
    zero = false;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  }
  if (zero) {
    e_ = 1;
    num_.assign(1, 0);
    den_ = 1;
    return;
  }
  if (g != 1) {
    den_ /= g;
    for (auto& c : num_) c /= g;
  }
  // descend to the minimal conductor
  for (bool again = true; again && e_ > 1;) {
    again = false;
    const Field& f = field(e_);
    for (const auto& fa : f.factors) {
      bool fits = true;
      for (std::size_t i = 0; i < num_.size() && fits; ++i) {
        if (sgn(num_[i]) == 0) continue;
        long j = (static_cast<long>(i) / fa.stride) % fa.phi;
        fits = fa.q == fa.p ? j == 0 : j % fa.p == 0;
      }
      if (!fits) continue;
      long e2 = e_ / fa.p;
      const Field& f2 = field(e2);
      std::vector<mpz_class> out(f2.dim);
      for (std::size_t i = 0; i < num_.size(); ++i) {
        if (sgn(num_[i]) == 0) continue;
        long k = f.basis_exp[i] / fa.p;
        out[f2.term_index[f2.terms_begin(k)]] = num_[i];
      }
      e_ = e2;
      num_ = std::move(out);
      again = true;
      break;
    }
  }
}

Cyclotomic Cyclotomic::lifted(long e) const {
  if (e == e_) return *this;
  const Field& src = field(e_);
  const Field& dst = field(e);
  long scale = e / e_;
  Cyclotomic out;
  out.e_ = e;
  out.num_.assign(dst.dim, 0);
  out.den_ = den_;
  for (std::size_t i = 0; i < num_.size(); ++i)
    if (sgn(num_[i]) != 0) add_power(dst, out.num_, src.basis_exp[i] * scale, num_[i]);
  return out;
}

Cyclotomic Cyclotomic::root_of_unity(long e, long k) {
  if (e < 1) throw Error(ErrorCode::Internal, "root of unity needs e >= 1");
  const Field& f = field(e);
  std::vector<mpz_class> num(f.dim);
  add_power(f, num, k, 1);
  return Cyclotomic(e, std::move(num), 1);
}

Cyclotomic Cyclotomic::from_exponents(long e, std::span<const long long> counts, long long den) {
  const Field& f = field(e);
  std::vector<long long> acc(f.dim, 0);
  for (long k = 0; k < static_cast<long>(counts.size()); ++k) {
    long long c = counts[k];
    if (c == 0) continue;
    long kk = mod(k, e);
    for (std::size_t t = f.terms_begin(kk); t < f.terms_end(kk); ++t) acc[f.term_index[t]] += f.term_sign[t] * c;
  }
  std::vector<mpz_class> num(f.dim);
  for (std::size_t i = 0; i < f.dim; ++i) num[i] = static_cast<long>(acc[i]);
  return Cyclotomic(e, std::move(num), mpz_class(static_cast<long>(den)));
}

bool Cyclotomic::is_zero() const { return e_ == 1 && sgn(num_[0]) == 0; }
bool Cyclotomic::is_rational() const { return e_ == 1; }

mpq_class Cyclotomic::rational_value() const {
  if (e_ != 1) throw Error(ErrorCode::Internal, "value " + to_string() + " is not rational");
  mpq_class q(num_[0], den_);
  q.canonicalize();
  return q;
}

bool Cyclotomic::is_real() const { return *this == conj(); }

Cyclotomic Cyclotomic::galois(long k) const {
  if (e_ == 1) return *this;
  if (std::gcd(mod(k, e_), e_) != 1) throw Error(ErrorCode::Internal, "galois exponent not a unit");
  const Field& f = field(e_);
  std::vector<mpz_class> out(f.dim);
  for (std::size_t i = 0; i < num_.size(); ++i)
    if (sgn(num_[i]) != 0) add_power(f, out, f.basis_exp[i] * mod(k, e_), num_[i]);
  return Cyclotomic(e_, std::move(out), den_);
}

Cyclotomic Cyclotomic::real_part() const { return (*this + conj()) * Cyclotomic(mpq_class(1, 2)); }

Cyclotomic Cyclotomic::imag_part() const {
  return (*this - conj()) * root_of_unity(4, 3) * Cyclotomic(mpq_class(1, 2));
}

Cyclotomic Cyclotomic::inverse() const {
  if (is_zero()) throw Error(ErrorCode::Internal, "division by zero");
  if (e_ == 1) return Cyclotomic(mpq_class(den_, num_[0]));
  Cyclotomic prod(1);
  for (long u = 2; u < e_; ++u)
    if (std::gcd(u, e_) == 1) prod *= galois(u);
  Cyclotomic norm = *this * prod;
  return prod * Cyclotomic(1 / norm.rational_value());
}

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic out = *this;
  for (auto& c : out.num_) c = -c;
  return out;
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& rhs) {
  long e = std::lcm(e_, rhs.e_);
  Cyclotomic a = lifted(e);
  Cyclotomic b = rhs.lifted(e);
  mpz_class l;
  mpz_lcm(l.get_mpz_t(), a.den_.get_mpz_t(), b.den_.get_mpz_t());
  mpz_class sa = l / a.den_, sb = l / b.den_;
  for (std::size_t i = 0; i < a.num_.size(); ++i) a.num_[i] = a.num_[i] * sa + b.num_[i] * sb;
  a.den_ = l;
  a.normalize();
  return *this = std::move(a);
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& rhs) { return *this += -rhs; }

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& rhs) {
  if (rhs.e_ == 1 || e_ == 1) {
    const Cyclotomic& scalar = e_ == 1 ? *this : rhs;
    Cyclotomic out = e_ == 1 ? rhs : *this;
    for (auto& c : out.num_) c *= scalar.num_[0];
    out.den_ *= scalar.den_;
    out.normalize();
    return *this = std::move(out);
  }
  long e = std::lcm(e_, rhs.e_);
  Cyclotomic a = lifted(e);
  Cyclotomic b = rhs.lifted(e);
  const Field& f = field(e);
  std::vector<mpz_class> out(f.dim);
  mpz_class prod;
  for (std::size_t i = 0; i < a.num_.size(); ++i) {
    if (sgn(a.num_[i]) == 0) continue;
    for (std::size_t j = 0; j < b.num_.size(); ++j) {
      if (sgn(b.num_[j]) == 0) continue;
      prod = a.num_[i] * b.num_[j];
      add_power(f, out, f.basis_exp[i] + f.basis_exp[j], prod);
    }
  }
  return *this = Cyclotomic(e, std::move(out), a.den_ * b.den_);
}

bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
  return a.e_ == b.e_ && a.den_ == b.den_ && a.num_ == b.num_;
}

std::size_t Cyclotomic::hash() const {
  std::size_t h = static_cast<std::size_t>(e_) * 0x9e3779b97f4a7c15ull;
  auto mix = [&h](const mpz_class& z) {
    std::size_t v = mpz_size(z.get_mpz_t()) ? mpz_getlimbn(z.get_mpz_t(), 0) : 0;
    if (sgn(z) < 0) v = ~v;
    h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  };
  for (const auto& c : num_) mix(c);
  mix(den_);
  return h;
}

std::complex<double> Cyclotomic::to_complex() const {
  const Field& f = field(e_);
  std::complex<double> acc = 0;
  double d = den_.get_d();
  for (std::size_t i = 0; i < num_.size(); ++i) {
    if (sgn(num_[i]) == 0) continue;
    double angle = 2.0 * M_PI * static_cast<double>(f.basis_exp[i]) / static_cast<double>(e_);
    acc += (num_[i].get_d() / d) * std::complex<double>(std::cos(angle), std::sin(angle));
  }
  return acc;
}

namespace {

struct Evaluation {
  std::complex<double> midpoint;
  double radius;
};

// Evaluates at `bits` of working precision; the error bound covers conversion of each
// coefficient, evaluation of each root of unity and the summation.
Evaluation evaluate(const Cyclotomic& z, long bits, bool* real_sign_known, int* real_sign) {
  const auto& num = z.numerators();
  std::size_t nnz = 0;
  for (const auto& c : num) nnz += sgn(c) != 0;
  Mpfr re(bits), im(bits), pi(bits), angle(bits), s(bits), c(bits), coef(bits), tmp(bits),
      mass(bits);
  mpfr_const_pi(pi.get(), MPFR_RNDN);
  mpq_class q;
  for (std::size_t i = 0; i < num.size(); ++i) {
    if (sgn(num[i]) == 0) continue;
    q = mpq_class(num[i], z.denominator());
    q.canonicalize();
    mpfr_set_q(coef.get(), q.get_mpq_t(), MPFR_RNDN);
    mpfr_mul_si(angle.get(), pi.get(), 2 * z.basis_exponent(i), MPFR_RNDN);
    mpfr_div_si(angle.get(), angle.get(), z.conductor(), MPFR_RNDN);
    mpfr_sin_cos(s.get(), c.get(), angle.get(), MPFR_RNDN);
    mpfr_mul(tmp.get(), coef.get(), c.get(), MPFR_RNDN);
    mpfr_add(re.get(), re.get(), tmp.get(), MPFR_RNDN);
    mpfr_mul(tmp.get(), coef.get(), s.get(), MPFR_RNDN);
    mpfr_add(im.get(), im.get(), tmp.get(), MPFR_RNDN);
    mpfr_abs(tmp.get(), coef.get(), MPFR_RNDU);
    mpfr_add(mass.get(), mass.get(), tmp.get(), MPFR_RNDU);
  }
  // err = mass * (nnz + 40) * 2^-bits
  Mpfr err(64);
  mpfr_mul_ui(err.get(), mass.get(), nnz + 40, MPFR_RNDU);
  mpfr_mul_2si(err.get(), err.get(), -bits, MPFR_RNDU);
  if (real_sign_known) {
    mpfr_abs(tmp.get(), re.get(), MPFR_RNDD);
    *real_sign_known = mpfr_cmp(tmp.get(), err.get()) > 0;
    *real_sign = mpfr_sgn(re.get());
  }
  Evaluation out;
  out.midpoint = {mpfr_get_d(re.get(), MPFR_RNDN), mpfr_get_d(im.get(), MPFR_RNDN)};
  // add the rounding of the midpoint to double
  Mpfr dr(bits);
  mpfr_set_d(dr.get(), out.midpoint.real(), MPFR_RNDN);
  mpfr_sub(dr.get(), dr.get(), re.get(), MPFR_RNDN);
  double rounding = std::abs(mpfr_get_d(dr.get(), MPFR_RNDU));
  mpfr_set_d(dr.get(), out.midpoint.imag(), MPFR_RNDN);
  mpfr_sub(dr.get(), dr.get(), im.get(), MPFR_RNDN);
  rounding += std::abs(mpfr_get_d(dr.get(), MPFR_RNDU));
  out.radius = mpfr_get_d(err.get(), MPFR_RNDU) + rounding * (1 + 1e-15);
  return out;
}

}  // namespace

CertifiedComplex Cyclotomic::approx(double target) const {
  if (!(target > 0)) throw Error(ErrorCode::PrecisionUnreachable, "target precision must be positive");
  for (long bits = 64; bits <= kMaxBits; bits *= 2) {
    Evaluation ev = evaluate(*this, bits, nullptr, nullptr);
    if (ev.radius <= target) return {ev.midpoint, ev.radius};
  }
  throw Error(ErrorCode::PrecisionUnreachable,
              "cannot reach " + std::to_string(target) + " with a double midpoint for " + to_string());
}

std::string Cyclotomic::to_string() const {
  const Field& f = field(e_);
  std::vector<std::pair<long, std::size_t>> order;
  for (std::size_t i = 0; i < num_.size(); ++i)
    if (sgn(num_[i]) != 0) order.push_back({f.basis_exp[i], i});
  if (order.empty()) return "0";
  std::sort(order.begin(), order.end());
  std::string out;
  for (auto [k, i] : order) {
    mpq_class q(num_[i], den_);
    q.canonicalize();
    bool negative = sgn(q) < 0;
    mpq_class a = abs(q);
    std::string term;
    if (k == 0) {
      term = a.get_str();
    } else {
      std::string root = "E(" + std::to_string(e_) + ")" + (k == 1 ? "" : "^" + std::to_string(k));
      term = a == 1 ? root : a.get_str() + "*" + root;
    }
    if (out.empty())
      out = negative ? "-" + term : term;
    else
      out += (negative ? " - " : " + ") + term;
  }
  return out;
}

std::string Cyclotomic::decimal(int digits) const {
  auto z = to_complex();
  char buf[96];
  double re = std::abs(z.real()) < 1e-300 ? 0.0 : z.real();
  if (is_real()) {
    std::snprintf(buf, sizeof buf, "%.*g", digits, re);
  } else {
    std::snprintf(buf, sizeof buf, "%.*g%+.*gi", digits, re, digits, z.imag());
  }
  return buf;
}

nlohmann::json Cyclotomic::to_json() const {
  nlohmann::json coeffs = nlohmann::json::array();
  for (std::size_t i = 0; i < num_.size(); ++i) {
    if (sgn(num_[i]) == 0) continue;
    mpq_class q(num_[i], den_);
    q.canonicalize();
    coeffs.push_back({i, q.get_num().get_str(), q.get_den().get_str()});
  }
  return {{"conductor", e_}, {"coefficients", coeffs}, {"decimal", decimal(15)}};
}

Cyclotomic Cyclotomic::from_json(const nlohmann::json& j) {
  long e = j.at("conductor").get<long>();
  const Field& f = field(e);
  Cyclotomic out;
  for (const auto& c : j.at("coefficients")) {
    auto i = c.at(0).get<std::size_t>();
    if (i >= f.dim) throw Error(ErrorCode::ParseError, "basis index out of range");
    std::vector<mpz_class> num(f.dim);
    num[i] = mpz_class(c.at(1).get<std::string>());
    out += Cyclotomic(e, std::move(num), mpz_class(c.at(2).get<std::string>()));
  }
  return out;
}

Cyclotomic Cyclotomic::sqrt_rational(const mpq_class& q) {
  if (sgn(q) < 0) throw Error(ErrorCode::NotReal, "square root of a negative rational");
  if (sgn(q) == 0) return Cyclotomic();
  mpz_class n = q.get_num() * q.get_den();
  mpz_class square = 1;
  std::vector<long> primes;
  for (long p = 2; mpz_class(p) * p <= n; ++p) {
    if (p > 10000000) throw Error(ErrorCode::NormalizationNotExact, "cannot factor " + n.get_str());
    int count = 0;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      n /= p;
      ++count;
    }
    for (int t = 0; t < count / 2; ++t) square *= p;
    if (count % 2) primes.push_back(p);
  }
  if (n > 1) primes.push_back(n.get_si());

  Cyclotomic root = Cyclotomic(mpq_class(square, q.get_den()));
  for (long p : primes) {
    if (p == 2) {
      root *= root_of_unity(8, 1) + root_of_unity(8, 7);
      continue;
    }
    std::vector<long long> counts(p, 0);
    for (long k = 1; k < p; ++k) {
      mpz_class r;
      mpz_class base(k);
      mpz_powm_ui(r.get_mpz_t(), base.get_mpz_t(), (p - 1) / 2, mpz_class(p).get_mpz_t());
      counts[k] = r == 1 ? 1 : -1;
    }
    Cyclotomic g = from_exponents(p, counts);
    root *= p % 4 == 1 ? g : g * root_of_unity(4, 3);
  }
  if (root.to_complex().real() < 0) root = -root;
  if (root * root != Cyclotomic(q)) throw Error(ErrorCode::Internal, "square root check failed");
  return root;
}

Cyclotomic abs_squared(const Cyclotomic& z) { return z * z.conj(); }

CertifiedComplex approx(const Cyclotomic& z, double target_precision) {
  return z.approx(target_precision);
}

Ordering compare_real(const Cyclotomic& a, const Cyclotomic& b) {
  if (!a.is_real() || !b.is_real())
    throw Error(ErrorCode::NotReal, "comparison of a non-real value");
  Cyclotomic d = a - b;
  if (d.is_zero()) return Ordering::Equal;
  if (d.is_rational()) return sgn(d.rational_value()) < 0 ? Ordering::Less : Ordering::Greater;
  for (long bits = 64; bits <= kMaxBits; bits *= 2) {
    bool known = false;
    int sign = 0;
    evaluate(d, bits, &known, &sign);
    if (known) return sign < 0 ? Ordering::Less : Ordering::Greater;
  }
  throw Error(ErrorCode::Internal, "sign of " + d.to_string() + " undecided at 4096 bits");
}

Ordering compare_real(const Cyclotomic& z, const mpq_class& q) { return compare_real(z, Cyclotomic(q)); }

}  // namespace symframes
