#include <doctest.h>

#include <Eigen/Dense>
#include <complex>
#include <random>

#include "fixtures.hpp"
#include "symframes/error.hpp"
#include "symframes/frames.hpp"

using namespace symframes;
using fixtures::cyc;
using Z = Cyclotomic;
using cd = std::complex<double>;

namespace {

GroupPtr c5_in_a5(const PermutationGroup&) {
  return group_from_generators(5, {cyc(5, {{1, 2, 3, 4, 5}})});
}

const ClassFunction& degree_row(const CharacterTable& t, long d, std::size_t index = 0) {
  return identify_character(t, d, index);
}

struct Case {
  GroupPtr G;
  GroupPtr H;
};

std::vector<Case> small_cases() {
  std::vector<Case> out;
  out.push_back({fixtures::c2(), group_from_generators(2, {})});
  out.push_back({fixtures::s3(), group_from_generators(3, {cyc(3, {{1, 2}})})});
  out.push_back({fixtures::s3(), group_from_generators(3, {cyc(3, {{1, 2, 3}})})});
  out.push_back({fixtures::c5(), group_from_generators(5, {})});
  auto a5 = fixtures::a5();
  out.push_back({a5, c5_in_a5(*a5)});
  out.push_back({a5, group_from_generators(5, {cyc(5, {{1, 2, 3}}), cyc(5, {{1, 2}, {4, 5}})})});
  auto s5 = fixtures::s5();
  out.push_back({s5, group_from_generators(5, {cyc(5, {{1, 2, 3, 4}}), cyc(5, {{1, 2}})})});
  out.push_back({s5, group_from_generators(5, {cyc(5, {{1, 2, 3, 4, 5}}), cyc(5, {{2, 5}, {3, 4}})})});
  return out;
}

template <class F>
void for_each_row(F&& f) {
  for (const auto& c : small_cases()) {
    auto table = character_table(c.G);
    auto nus = linear_characters(c.H);
    for (const auto& chi : table.rows)
      for (const auto& nu : nus) {
        if (multiplicity(chi, nu.character) == 0) continue;
        f(c, twisted_spherical(c.G, chi, c.H, nu));
      }
  }
}

// Icosahedral rotation group as explicit 3x3 matrices, closed numerically.
std::vector<Eigen::Matrix3d> icosahedral_rotations() {
  const double phi = (1 + std::sqrt(5.0)) / 2;
  Eigen::Vector3d axis(0, 1, phi);
  axis.normalize();
  Eigen::Matrix3d r5 = Eigen::AngleAxisd(2 * M_PI / 5, axis).toRotationMatrix();
  Eigen::Matrix3d r3;
  r3 << 0, 0, 1, 1, 0, 0, 0, 1, 0;
  std::vector<Eigen::Matrix3d> out{Eigen::Matrix3d::Identity()};
  for (std::size_t i = 0; i < out.size(); ++i)
    for (const auto& g : {r5, r3}) {
      Eigen::Matrix3d y = g * out[i];
      bool seen = false;
      for (const auto& x : out) seen = seen || (x - y).norm() < 1e-9;
      if (!seen) out.push_back(y);
    }
  return out;
}

// Orbit of a complex line under a matrix group; returns distinct unit representatives.
std::vector<Eigen::Vector3cd> line_orbit(const std::vector<Eigen::Matrix3d>& grp, const Eigen::Vector3cd& v) {
  std::vector<Eigen::Vector3cd> out;
  for (const auto& g : grp) {
    Eigen::Vector3cd w = g.cast<cd>() * v;
    w.normalize();
    bool seen = false;
    for (const auto& x : out) seen = seen || std::abs(std::abs(x.dot(w)) - 1) < 1e-9;
    if (!seen) out.push_back(w);
  }
  return out;
}

std::vector<double> distinct_sorted(std::vector<double> v) {
  std::sort(v.begin(), v.end(), std::greater<>());
  std::vector<double> out;
  for (double x : v)
    if (out.empty() || std::abs(out.back() - x) > 1e-9) out.push_back(x);
  return out;
}

}  // namespace

TEST_CASE("A5 row with trivial nu on C5 is the six-line icosahedral system") {
  auto G = fixtures::a5();
  auto H = c5_in_a5(*G);
  auto table = character_table(G);
  auto nus = linear_characters(H);
  const auto& chi = degree_row(table, 3);
  auto row = twisted_spherical(G, chi, H, select_linear_character(nus, 1, 0));
  CHECK(row->multiplicity == 1);
  CHECK_FALSE(row->reducible);
  REQUIRE(row->cells.size() == 4);
  std::map<std::size_t, std::vector<Z>> by_size;
  for (const auto& c : row->cells) by_size[c.size].push_back(c.value);
  REQUIRE(by_size[5].size() == 2);
  REQUIRE(by_size[25].size() == 2);
  CHECK(std::count(by_size[5].begin(), by_size[5].end(), Z(1)) == 1);
  CHECK(std::count(by_size[5].begin(), by_size[5].end(), Z(-1)) == 1);
  for (const auto& v : by_size[25]) CHECK(v * v == Z(mpq_class(1, 5)));
  CHECK(by_size[25][0] == -by_size[25][1]);

  auto frame = homogenize(row);
  CHECK(frame.summary.line_count == 6);
  CHECK(frame.summary.vector_count == 12);
  CHECK(frame.summary.line_stabilizer_order == 10);
  CHECK(frame.summary.gon_order == 2);
  REQUIRE(frame.summary.angles.size() == 1);
  CHECK(frame.summary.angles[0].abs_squared == Z(mpq_class(1, 5)));
  CHECK(frame.summary.angles[0].count == 30);
  REQUIRE(frame.summary.angles[0].modulus);
  auto m = *frame.summary.angles[0].modulus;
  CHECK(m * m == Z(mpq_class(1, 5)));
}

TEST_CASE("A5 complex eigenlines of a 5-fold rotation match a numeric oracle") {
  auto rot = icosahedral_rotations();
  REQUIRE(rot.size() == 60);
  const double phi = (1 + std::sqrt(5.0)) / 2;
  Eigen::Vector3d axis(0, 1, phi);
  Eigen::Matrix3d r5 = Eigen::AngleAxisd(2 * M_PI / 5, axis.normalized()).toRotationMatrix();
  Eigen::ComplexEigenSolver<Eigen::Matrix3cd> es(r5.cast<cd>());
  std::vector<std::vector<double>> oracle_angles;
  std::vector<std::size_t> oracle_counts;
  for (int k = 0; k < 3; ++k) {
    auto lines = line_orbit(rot, es.eigenvectors().col(k));
    std::vector<double> a;
    for (std::size_t i = 0; i < lines.size(); ++i)
      for (std::size_t j = 0; j < lines.size(); ++j)
        if (i != j) a.push_back(std::norm(lines[i].dot(lines[j])));
    oracle_counts.push_back(lines.size());
    oracle_angles.push_back(distinct_sorted(a));
  }

  auto G = fixtures::a5();
  auto H = c5_in_a5(*G);
  auto table = character_table(G);
  std::vector<std::size_t> counts;
  std::vector<std::vector<double>> angles;
  for (std::size_t idx = 0; idx < 2; ++idx) {
    const auto& chi = degree_row(table, 3, idx);
    for (const auto& nu : linear_characters(H)) {
      if (multiplicity(chi, nu.character) != 1) continue;
      auto s = homogenize(twisted_spherical(G, chi, H, nu)).summary;
      counts.push_back(s.line_count);
      std::vector<double> a;
      for (const auto& x : s.angles) a.push_back(x.abs_squared.to_complex().real());
      angles.push_back(a);
    }
  }
  REQUIRE(counts.size() == 6);
  for (std::size_t i = 0; i < counts.size(); ++i) {
    bool matched = false;
    for (std::size_t k = 0; k < 3; ++k) {
      if (oracle_counts[k] != counts[i] || oracle_angles[k].size() != angles[i].size()) continue;
      bool same = true;
      for (std::size_t t = 0; t < angles[i].size(); ++t)
        same = same && std::abs(oracle_angles[k][t] - angles[i][t]) < 1e-9;
      matched = matched || same;
    }
    CHECK(matched);
  }
  // the complex eigenlines number 12 each, the real axis gives 6
  std::sort(oracle_counts.begin(), oracle_counts.end());
  CHECK(oracle_counts == std::vector<std::size_t>{6, 12, 12});
}

TEST_CASE("rows agree with the direct spherical sum everywhere") {
  for_each_row([](const Case& c, const RowPtr& row) {
    for (std::uint32_t g = 0; g < c.G->size(); ++g) REQUIRE(row->evaluate(g) == spherical_sum(*row, g));
  });
}

TEST_CASE("transformation law under both subgroup actions") {
  std::mt19937_64 rng(7);
  for_each_row([&](const Case& c, const RowPtr& row) {
    const auto& G = *c.G;
    auto hidx = embed_subgroup(G, *c.H);
    const auto& nu = row->nu;
    std::uniform_int_distribution<std::size_t> pick_g(0, G.size() - 1), pick_h(0, hidx.size() - 1);
    for (int t = 0; t < 1000; ++t) {
      auto g = static_cast<std::uint32_t>(pick_g(rng));
      std::size_t a = pick_h(rng), b = pick_h(rng);
      std::uint32_t x = G.multiply(G.multiply(hidx[a], g), hidx[b]);
      Z phase = Z::root_of_unity(nu.order, nu.order - (nu.exponent[a] + nu.exponent[b]) % nu.order);
      REQUIRE(row->evaluate(x) == phase * row->evaluate(g));
    }
  });
}

TEST_CASE("convolution square is |G|/d times the row") {
  for_each_row([](const Case& c, const RowPtr& row) {
    auto f = row_values(*row);
    auto ff = convolve(*c.G, f, f);
    Z scale(mpq_class(static_cast<long>(c.G->order()), row->dimension));
    for (std::size_t g = 0; g < f.size(); ++g) REQUIRE(ff[g] == scale * f[g]);
    CHECK(f[0] == Z(row->multiplicity));
  });
}

TEST_CASE("class functions commute with rows under convolution") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> coef(-5, 5);
  for (const auto& c : small_cases()) {
    if (c.G->order() > 60) continue;
    auto table = character_table(c.G);
    auto nus = linear_characters(c.H);
    const auto& chi = table.rows.back();
    const LinearCharacter* nu = nullptr;
    for (const auto& n : nus)
      if (!nu && multiplicity(chi, n.character) > 0) nu = &n;
    if (!nu) continue;
    auto f = row_values(*twisted_spherical(c.G, chi, c.H, *nu));
    int trials = c.G->order() >= 60 ? 10 : 100;
    for (int t = 0; t < trials; ++t) {
      std::vector<Z> cls_values;
      for (std::size_t k = 0; k < table.classes->count(); ++k) cls_values.push_back(Z(coef(rng)));
      std::vector<Z> central(c.G->size());
      for (std::uint32_t g = 0; g < central.size(); ++g) central[g] = cls_values[table.classes->class_of(g)];
      REQUIRE(convolve(*c.G, central, f) == convolve(*c.G, f, central));
    }
  }
}

TEST_CASE("isotypic projection is idempotent and fixes the row") {
  for_each_row([](const Case& c, const RowPtr& row) {
    auto p = isotypic_projection_row(row->chi);
    std::vector<Z> pf(c.G->size());
    for (std::uint32_t g = 0; g < pf.size(); ++g) pf[g] = p.at_element(g);
    CHECK(convolve(*c.G, pf, pf) == pf);
    auto f = row_values(*row);
    CHECK(convolve(*c.G, f, pf) == f);
  });
}

TEST_CASE("Gram matrices are Hermitian with unit diagonal and rank d") {
  for_each_row([](const Case& c, const RowPtr& row) {
    if (row->multiplicity != 1) return;
    auto gm = gram(*row);
    CHECK(gm.entries.is_hermitian());
    const std::size_t n = gm.entries.rows();
    Eigen::MatrixXcd m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(gm.entries(i, i) == Z(1));
      for (std::size_t j = 0; j < n; ++j) m(i, j) = gm.entries(i, j).to_complex();
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
    const auto& ev = es.eigenvalues();
    double tol = 1e-9 * static_cast<double>(n);
    CHECK(ev.minCoeff() > -tol);
    long rank = 0;
    for (Eigen::Index k = 0; k < ev.size(); ++k) rank += ev[k] > tol;
    CHECK(rank == row->dimension);
  });
}

TEST_CASE("homogenization is consistent with the row") {
  for_each_row([](const Case& c, const RowPtr& row) {
    if (row->multiplicity != 1) return;
    auto frame = homogenize(row);
    const auto& s = frame.summary;
    CHECK(s.line_count * s.line_stabilizer_order == c.G->order());
    CHECK(s.vector_count * s.vector_stabilizer_order == c.G->order());
    CHECK(s.vector_count == s.line_count * s.gon_order);
    std::size_t pairs = 0;
    for (const auto& a : s.angles) pairs += a.count;
    CHECK(pairs == s.line_count * (s.line_count - 1));
    // a tight frame of n lines in dimension d: sum over pairs of |<u,v>|^2 = n^2/d - n
    Z total;
    for (const auto& a : s.angles) total += a.abs_squared * Z(static_cast<long>(a.count));
    long n = static_cast<long>(s.line_count);
    CHECK(total == Z(mpq_class(n * n, row->dimension)) - Z(n));
  });
}

TEST_CASE("zero multiplicity and non-linear characters are rejected") {
  auto G = fixtures::s3();
  auto H = group_from_generators(3, {cyc(3, {{1, 2}})});
  auto table = character_table(G);
  auto nus = linear_characters(H);
  // the sign character of S3 restricted to <(12)> is the sign of C2
  const auto& sign = table.rows[1];
  REQUIRE(sign.degree() == 1);
  bool threw = false;
  for (const auto& nu : nus)
    if (multiplicity(sign, nu.character) == 0) {
      try {
        twisted_spherical(G, sign, H, nu);
      } catch (const Error& e) {
        threw = e.code() == ErrorCode::ZeroMultiplicity;
      }
    }
  CHECK(threw);
  try {
    as_linear_character(table.rows[2]);
    FAIL("expected NotLinearCharacter");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotLinearCharacter);
  }
  auto lin = as_linear_character(nus[1].character);
  CHECK(lin.order == 2);
  CHECK(lin.exponent == nus[1].exponent);
}

TEST_CASE("A5 cross row between axis lines and complex eigenlines") {
  auto G = fixtures::a5();
  auto H = c5_in_a5(*G);
  auto table = character_table(G);
  auto nus = linear_characters(H);
  const auto& chi = degree_row(table, 3);
  const LinearCharacter* twisted = nullptr;
  for (const auto& nu : nus)
    if (nu.order == 5 && !twisted && multiplicity(chi, nu.character) == 1) twisted = &nu;
  REQUIRE(twisted);
  auto cross = cross_row(G, chi, H, nus[0], H, *twisted);
  Z total;
  for (std::size_t c = 0; c < cross->cells.size(); ++c)
    total += cross->abs_squared[c] * Z(static_cast<long>(cross->cells[c].size));
  CHECK(total == Z(20));

  // numeric oracle: |<axis, eigenvector>|^2 over the orbit
  auto rot = icosahedral_rotations();
  const double phi = (1 + std::sqrt(5.0)) / 2;
  Eigen::Vector3d axis = Eigen::Vector3d(0, 1, phi).normalized();
  Eigen::Matrix3d r5 = Eigen::AngleAxisd(2 * M_PI / 5, axis).toRotationMatrix();
  Eigen::ComplexEigenSolver<Eigen::Matrix3cd> es(r5.cast<cd>());
  std::vector<double> expected;
  for (int k = 0; k < 3; ++k) {
    if (std::abs(es.eigenvalues()[k] - 1.0) < 1e-9) continue;
    for (const auto& g : rot)
      expected.push_back(std::norm(axis.cast<cd>().dot(g.cast<cd>() * es.eigenvectors().col(k).normalized())));
    break;
  }
  std::vector<double> got;
  for (const auto& a : cross->abs_squared) got.push_back(a.to_complex().real());
  CHECK(distinct_sorted(got).size() == distinct_sorted(expected).size());
  auto e = distinct_sorted(expected), gv = distinct_sorted(got);
  for (std::size_t i = 0; i < std::min(e.size(), gv.size()); ++i) CHECK(e[i] == doctest::Approx(gv[i]).epsilon(1e-9));

  if (cross->exact_values) {
    for (std::uint32_t g = 0; g < G->size(); ++g)
      CHECK(abs_squared(cross->evaluate(g)) == cross->abs_squared[cross->labels.cell_of[g]]);
  }
}

TEST_CASE("exact moduli") {
  CHECK(exact_modulus(Z::root_of_unity(7, 3) * Z(mpq_class(2, 3))) == Z(mpq_class(2, 3)));
  auto m = exact_modulus(Z::sqrt_rational(mpq_class(1, 5)) * Z::root_of_unity(3, 1));
  REQUIRE(m);
  CHECK(*m * *m == Z(mpq_class(1, 5)));
  CHECK(exact_modulus(Z()) == Z());
}
