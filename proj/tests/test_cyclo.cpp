#include <doctest.h>

#include <cmath>
#include <random>

#include "symframes/cyclotomic.hpp"
#include "symframes/error.hpp"

using namespace symframes;
using Z = Cyclotomic;

static Z E(long e, long k = 1) { return Z::root_of_unity(e, k); }
static Z Q(long a, long b = 1) { return Z(mpq_class(a, b)); }

// Random element of Q(zeta_e) for e drawn from a small list, via a naive exponent sum.
static Z random_element(std::mt19937& rng) {
  static const long conductors[] = {1, 3, 4, 5, 8, 12, 15, 20, 24};
  long e = conductors[rng() % 9];
  std::uniform_int_distribution<int> coef(-4, 4);
  Z z;
  for (long k = 0; k < e; ++k)
    if (rng() % 3 == 0) z += Q(coef(rng), 1 + static_cast<long>(rng() % 3)) * E(e, k);
  return z;
}

TEST_CASE("roots of unity") {
  CHECK(E(1, 0) == Q(1));
  CHECK(E(7, 0) == Q(1));
  CHECK(E(4) * E(4) == Q(-1));
  CHECK(E(4, 5) == E(4));
  CHECK(E(4, -1) == E(4, 3));
  // minimal conductor: zeta_6 lives in Q(zeta_3)
  CHECK(E(6).conductor() == 3);
  CHECK(E(10, 2).conductor() == 5);
  CHECK(E(2) == Q(-1));
  for (long e : {5, 7, 8, 9, 12, 16, 27}) {
    Z s;
    for (long k = 0; k < e; ++k) s += E(e, k);
    CHECK(s.is_zero());
  }
}

TEST_CASE("golden ratio identity") {
  Z z = E(5, 1) + E(5, 4);
  CHECK(z.is_real());
  auto a = z.approx(1e-12);
  CHECK(a.radius <= 1e-12);
  CHECK(std::abs(a.midpoint.real() - (std::sqrt(5.0) - 1) / 2) < 1e-12);
  CHECK(std::abs(a.midpoint.imag()) <= 1e-12);
  CHECK(z * z + z == Q(1));
}

TEST_CASE("abs_squared") {
  CHECK(abs_squared(E(4)) == Q(1));
  CHECK(abs_squared(E(3) - E(3, 2)) == Q(3));
  CHECK(abs_squared(Z()) == Q(0));
  std::mt19937 rng(3);
  for (int t = 0; t < 200; ++t) {
    Z z = random_element(rng);
    CHECK(abs_squared(z).is_real());
  }
}

TEST_CASE("approx") {
  auto one = Q(1).approx(1e-15);
  CHECK(one.midpoint == std::complex<double>(1.0, 0.0));
  CHECK(one.radius <= 1e-15);
  auto z8 = E(8).approx(1e-12);
  CHECK(std::abs(z8.midpoint.real() - std::sqrt(0.5)) <= 1e-12);
  CHECK(std::abs(z8.midpoint.imag() - std::sqrt(0.5)) <= 1e-12);
  Z s5 = Z::sqrt_rational(5);
  auto v = ((Q(5) + s5) * Q(1, 10)).approx(1e-12);
  CHECK(std::abs(v.midpoint.real() - 0.7236067977499790) <= 1e-12);
  CHECK_THROWS_AS(E(8).approx(1e-40), Error);
  CHECK_THROWS_AS(E(8).approx(0), Error);
}

TEST_CASE("compare_real") {
  CHECK(compare_real(Q(1, 2), mpq_class(1, 2)) == Ordering::Equal);
  CHECK(compare_real(E(5) + E(5, 4), mpq_class(1, 2)) == Ordering::Greater);
  CHECK(compare_real(Q(1, 3), mpq_class(1, 2)) == Ordering::Less);
  CHECK_THROWS_AS(compare_real(E(4), mpq_class(0)), Error);
  // nearly equal values still separate
  Z s2 = Z::sqrt_rational(2);
  CHECK(compare_real(s2, mpq_class(665857, 470832)) == Ordering::Less);
  CHECK(compare_real(s2, mpq_class(1393, 985)) == Ordering::Greater);
  CHECK(compare_real(s2, mpq_class(3363, 2378)) == Ordering::Less);
}

TEST_CASE("square roots of rationals") {
  for (long n : {2, 3, 5, 6, 7, 11, 12, 20, 67, 99}) {
    Z r = Z::sqrt_rational(n);
    CHECK(r * r == Q(n));
    CHECK(std::abs(r.to_complex().real() - std::sqrt(static_cast<double>(n))) < 1e-12);
  }
  Z r = Z::sqrt_rational(mpq_class(7, 67));
  CHECK(std::abs(r.to_complex().real() - 0.32325) < 1e-4);
  CHECK(Z::sqrt_rational(mpq_class(9, 4)) == Q(3, 2));
}

TEST_CASE("inverse and division") {
  std::mt19937 rng(11);
  for (int t = 0; t < 50; ++t) {
    Z z = random_element(rng);
    if (z.is_zero()) continue;
    CHECK(z * z.inverse() == Q(1));
  }
  CHECK_THROWS(Z().inverse());
}

TEST_CASE("ring axioms on random triples") {
  std::mt19937 rng(20240611);
  for (int t = 0; t < 10000; ++t) {
    Z a = random_element(rng), b = random_element(rng), c = random_element(rng);
    REQUIRE((a + b) + c == a + (b + c));
    REQUIRE(a * (b + c) == a * b + a * c);
    REQUIRE((a - a).is_zero());
    REQUIRE((a * b).conj() == a.conj() * b.conj());
    REQUIRE(a.conj().conj() == a);
  }
}

TEST_CASE("approx consistency under products") {
  std::mt19937 rng(5);
  for (int t = 0; t < 500; ++t) {
    Z a = random_element(rng), b = random_element(rng);
    auto pa = a.approx(1e-12), pb = b.approx(1e-12), pab = (a * b).approx(1e-12);
    // the double product of the midpoints adds its own rounding
    double rounding = 4 * 2.3e-16 * std::abs(pa.midpoint) * std::abs(pb.midpoint);
    double bound = rounding + pab.radius + std::abs(pa.midpoint) * pb.radius +
                   std::abs(pb.midpoint) * pa.radius + pa.radius * pb.radius;
    CHECK(std::abs(pab.midpoint - pa.midpoint * pb.midpoint) <= bound + 1e-15);
  }
}

TEST_CASE("canonical form matches a naive numeric sum") {
  std::mt19937 rng(9);
  for (int t = 0; t < 300; ++t) {
    long e = 1 + static_cast<long>(rng() % 60);
    std::vector<long long> counts(e);
    std::complex<double> naive = 0;
    for (long k = 0; k < e; ++k) {
      counts[k] = static_cast<long long>(rng() % 7) - 3;
      naive += static_cast<double>(counts[k]) * std::polar(1.0, 2 * M_PI * k / e);
    }
    Z z = Z::from_exponents(e, counts);
    CHECK(std::abs(z.to_complex() - naive) < 1e-9);
  }
}

TEST_CASE("serialization") {
  Z z = Q(3, 7) * E(5, 2) - Q(1, 2) * E(3);
  Z back = Z::from_json(z.to_json());
  CHECK(back == z);
  CHECK(Q(-3, 2).to_string() == "-3/2");
  CHECK(E(4).to_string() == "E(4)");
  CHECK(Z().to_string() == "0");
  CHECK(Q(1, 2).decimal() == "0.5");
}
