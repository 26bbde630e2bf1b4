#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace symframes {

struct CertifiedComplex {
  std::complex<double> midpoint;
  double radius = 0.0;
};

enum class Ordering { Less, Equal, Greater };

// Exact element of Q(zeta_e).
//
// Basis: for e = q_1 ... q_r with q_i = p_i^a_i, the tensor product of the power bases
// {zeta_{q_i}^j : 0 <= j < phi(q_i)}. Basis element (j_1..j_r) is zeta_e^(sum_i j_i e/q_i).
// Values are always stored at their minimal conductor, so equal numbers have identical
// representations. Coefficients share one positive denominator.
class Cyclotomic {
 public:
  Cyclotomic() : e_(1), num_(1), den_(1) {}
  Cyclotomic(long n) : e_(1), num_{mpz_class(n)}, den_(1) {}  // NOLINT(implicit)
  Cyclotomic(const mpq_class& q);                              // NOLINT(implicit)

  static Cyclotomic root_of_unity(long e, long k);
  // sum_k counts[k] * zeta_e^k / den
  static Cyclotomic from_exponents(long e, std::span<const long long> counts, long long den = 1);
  // Exact square root of a nonnegative rational, built from Gauss sums.
  static Cyclotomic sqrt_rational(const mpq_class& q);

  long conductor() const { return e_; }
  std::size_t dimension() const { return num_.size(); }
  const std::vector<mpz_class>& numerators() const { return num_; }
  const mpz_class& denominator() const { return den_; }
  // Exponent k with basis element i equal to zeta_e^k.
  long basis_exponent(std::size_t i) const;

  bool is_zero() const;
  bool is_rational() const;
  mpq_class rational_value() const;
  bool is_real() const;

  Cyclotomic conj() const { return galois(-1); }
  Cyclotomic galois(long k) const;
  Cyclotomic real_part() const;
  Cyclotomic imag_part() const;
  Cyclotomic inverse() const;

  Cyclotomic operator-() const;
  Cyclotomic& operator+=(const Cyclotomic& rhs);
  Cyclotomic& operator-=(const Cyclotomic& rhs);
  Cyclotomic& operator*=(const Cyclotomic& rhs);
  Cyclotomic& operator/=(const Cyclotomic& rhs) { return *this *= rhs.inverse(); }
  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
  friend Cyclotomic operator/(Cyclotomic a, const Cyclotomic& b) { return a /= b; }
  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);

  std::complex<double> to_complex() const;
  CertifiedComplex approx(double target_precision = 1e-12) const;
  std::size_t hash() const;

  // GAP-style text, e.g. "1/2*E(5)^2 - 3".
  std::string to_string() const;
  // Short decimal, e.g. "0.723607" or "0.5-0.866025i".
  std::string decimal(int digits = 12) const;

  nlohmann::json to_json() const;
  static Cyclotomic from_json(const nlohmann::json& j);

 private:
  Cyclotomic(long e, std::vector<mpz_class> num, mpz_class den);
  void normalize();
  Cyclotomic lifted(long e) const;

  long e_;
  std::vector<mpz_class> num_;
  mpz_class den_;
};

Cyclotomic abs_squared(const Cyclotomic& z);
CertifiedComplex approx(const Cyclotomic& z, double target_precision);
// Exact trichotomy of a real cyclotomic against a rational. Throws NotReal.
Ordering compare_real(const Cyclotomic& z, const mpq_class& q);
// Exact trichotomy of two real cyclotomics.
Ordering compare_real(const Cyclotomic& a, const Cyclotomic& b);

struct CyclotomicHash {
  std::size_t operator()(const Cyclotomic& z) const { return z.hash(); }
};

}  // namespace symframes
