#include <doctest.h>

#include <map>

#include "fixtures.hpp"
#include "symframes/codes.hpp"
#include "symframes/error.hpp"

using namespace symframes;
using fixtures::cyc;
using Z = Cyclotomic;

namespace {

std::multiset<std::string> entry_multiset(const ExactMatrix& g) {
  std::multiset<std::string> out;
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j)
      if (i != j) out.insert(g(i, j).to_string());
  return out;
}

std::set<std::string> entry_set(const ExactMatrix& g) {
  auto m = entry_multiset(g);
  return {m.begin(), m.end()};
}

ExplicitCode orthonormal(long d) {
  ExplicitCode c{d, {}};
  for (long k = 0; k < d; ++k) {
    std::vector<Z> v(d);
    v[k] = Z(1);
    c.vectors.push_back(v);
  }
  return c;
}

struct A5Setup {
  GroupPtr G = fixtures::a5();
  GroupPtr H = group_from_generators(5, {cyc(5, {{1, 2, 3, 4, 5}})});
  CharacterTable table = character_table(G);
  std::vector<LinearCharacter> nus = linear_characters(H);
  const ClassFunction& chi = identify_character(table, 3, 0);
};

}  // namespace

TEST_CASE("realification of entries") {
  const Z i = Z::root_of_unity(4, 1);
  ExactMatrix m(2, 2);
  m.set(0, 0, Z(1));
  m.set(1, 1, Z(1));
  m.set(0, 1, i * Z::sqrt_rational(mpq_class(1, 3)));
  m.set(1, 0, (Z(1) + i) * Z(mpq_class(1, 2)));
  auto r = realify(m);
  CHECK(r(0, 1) == Z());
  CHECK(r(1, 0) == Z(mpq_class(1, 2)));
  CHECK(r.is_symmetric() == false);

  auto code = realify(ExplicitCode{2, {{(Z(1) + i) * Z(mpq_class(1, 2)), Z(mpq_class(1, 2)) * (Z(1) - i)}}});
  REQUIRE(code.dimension == 4);
  CHECK(code.vectors[0] == std::vector<Z>{Z(mpq_class(1, 2)), Z(mpq_class(1, 2)), Z(mpq_class(1, 2)),
                                          Z(mpq_class(-1, 2))});
}

TEST_CASE("orthonormal basis is a valid kissing configuration") {
  for (long d : {1, 3, 7}) {
    auto g = gram(orthonormal(d));
    auto r = verify_kissing(g, d);
    CHECK(r.valid);
    CHECK(r.max_real_part == Z());
    CHECK(coherence(g).abs_squared == Z());
  }
  auto r = verify_kissing(gram(orthonormal(4)), 3);
  CHECK_FALSE(r.valid);
  CHECK(r.numerical_rank == 4);
  try {
    require_valid(r);
    FAIL("expected RankExceedsDimension");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::RankExceedsDimension);
  }
}

TEST_CASE("verify_kissing flags duplicates, large entries and indefinite matrices") {
  ExplicitCode dup{2, {{Z(1), Z(0)}, {Z(1), Z(0)}}};
  auto r = verify_kissing(gram(dup), 2);
  CHECK_FALSE(r.distinct);
  CHECK(r.duplicate_pair == std::pair<std::size_t, std::size_t>{0, 1});
  CHECK_THROWS_AS(check_explicit(dup), Error);

  const Z s = Z::sqrt_rational(mpq_class(1, 2));
  ExplicitCode close{2, {{Z(1), Z(0)}, {s, s}}};
  r = verify_kissing(gram(close), 2);
  CHECK_FALSE(r.within_bound);
  try {
    require_valid(r);
    FAIL("expected CoherenceExceeded");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CoherenceExceeded);
  }

  ExactMatrix bad(3, 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) bad.set(i, j, Z(i == j ? 1 : -1));
  r = verify_kissing(bad, 3);
  CHECK_FALSE(r.psd);
}

TEST_CASE("verdict is invariant under permutations of the index set") {
  auto code = construct_D7_scaled();
  auto r1 = verify_kissing(gram(code), 7);
  std::reverse(code.vectors.begin(), code.vectors.end());
  std::rotate(code.vectors.begin(), code.vectors.begin() + 17, code.vectors.end());
  auto r2 = verify_kissing(gram(code), 7);
  CHECK(r1.valid == r2.valid);
  CHECK(r1.max_real_part == r2.max_real_part);
  CHECK(r1.entry_values == r2.entry_values);
}

TEST_CASE("E7 shell, D7 and Phi3 coordinates") {
  auto e7 = construct_E7_shell();
  check_explicit(e7);
  CHECK(e7.vectors.size() == 126);
  auto g = gram(e7);
  std::set<std::string> allowed{"0", "1/2", "-1/2", "-1"};
  CHECK(entry_set(g) == allowed);
  // B0 alone is a cross polytope
  ExplicitCode b0{7, {e7.vectors.begin(), e7.vectors.begin() + 14}};
  CHECK(entry_set(gram(b0)) == std::set<std::string>{"0", "-1"});

  auto d7 = construct_D7_scaled();
  check_explicit(d7);
  CHECK(d7.vectors.size() == 84);
  CHECK(entry_set(gram(d7)) == allowed);

  auto p3 = construct_phi3();
  check_explicit(p3);
  CHECK(p3.vectors.size() == 1512);
  auto r = verify_kissing(realify(gram(p3)), 14);
  CHECK(r.valid);
  std::set<std::string> real_values;
  for (const auto& v : r.entry_values) real_values.insert(v.to_string());
  CHECK(real_values == std::set<std::string>{"0", "1/4", "-1/4", "1/2", "-1/2", "-1"});
}

TEST_CASE("embedding coordinates from exact Grams") {
  auto id = gram(orthonormal(4));
  auto v = embed_vectors_from_gram(id, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      std::complex<double> s = 0;
      for (std::size_t k = 0; k < 4; ++k) s += std::conj(v[i][k]) * v[j][k];
      CHECK(std::abs(s - (i == j ? 1.0 : 0.0)) < 1e-9);
    }

  // regular simplex on 12 points
  ExactMatrix simplex(12, 12);
  for (std::size_t i = 0; i < 12; ++i)
    for (std::size_t j = 0; j < 12; ++j) simplex.set(i, j, i == j ? Z(1) : Z(mpq_class(-1, 11)));
  auto s = embed_vectors_from_gram(simplex, 11);
  REQUIRE(s.size() == 12);
  for (std::size_t i = 0; i < 12; ++i)
    for (std::size_t j = 0; j < 12; ++j) {
      std::complex<double> t = 0;
      for (std::size_t k = 0; k < 11; ++k) t += std::conj(s[i][k]) * s[j][k];
      CHECK(std::abs(t - (i == j ? 1.0 : -1.0 / 11)) < 1e-9);
    }
  CHECK_THROWS_AS(embed_vectors_from_gram(simplex, 10), Error);

  A5Setup a;
  auto frame = homogenize(twisted_spherical(a.G, a.chi, a.H, a.nus[0]));
  auto lines = gram(*frame.row, frame.line_representatives);
  auto u = embed_vectors_from_gram(lines.entries, 3);
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < u.size(); ++j) {
      std::complex<double> t = 0;
      for (std::size_t k = 0; k < 3; ++k) t += std::conj(u[i][k]) * u[j][k];
      CHECK(std::abs(std::abs(t) - (i == j ? 1.0 : 1 / std::sqrt(5.0))) < 1e-9);
    }
}

TEST_CASE("single-block assemblies reproduce the frame Gram") {
  A5Setup a;
  auto frame = homogenize(twisted_spherical(a.G, a.chi, a.H, a.nus[0]));
  std::vector<FrameSource> src{{"icosahedron", frame}};
  auto asmb = assemble_union(src, {{"ico", 0, Z(1)}}, {});
  auto direct = gram(*frame.row, frame.vector_representatives);
  REQUIRE(asmb.gram.rows() == 12);
  for (std::size_t i = 0; i < 12; ++i)
    for (std::size_t j = 0; j < 12; ++j) CHECK(asmb.gram(i, j) == direct.entries(i, j));
  CHECK(asmb.gram.is_hermitian());
  CHECK(asmb.duplicates.empty());

  // a repeated block is all duplicates and needs no cross data
  auto twice = assemble_union(src, {{"a", 0, Z(1)}, {"b", 0, Z(1)}}, {});
  CHECK(twice.duplicates.size() == 12);
}

TEST_CASE("A5 unions: conjugate twisted frames define the same lines") {
  A5Setup a;
  std::vector<const LinearCharacter*> twisted;
  for (const auto& nu : a.nus)
    if (nu.order == 5 && multiplicity(a.chi, nu.character) == 1) twisted.push_back(&nu);
  REQUIRE(twisted.size() == 2);
  REQUIRE(twisted[0]->character == ClassFunction(a.H, twisted[1]->character.classes(),
                                                 [&] {
                                                   std::vector<Z> v;
                                                   for (const auto& x : twisted[1]->character.values())
                                                     v.push_back(x.conj());
                                                   return v;
                                                 }()));
  auto f1 = homogenize(twisted_spherical(a.G, a.chi, a.H, *twisted[0]));
  auto f2 = homogenize(twisted_spherical(a.G, a.chi, a.H, *twisted[1]));
  auto cross = cross_row(a.G, a.chi, a.H, *twisted[0], a.H, *twisted[1]);
  std::vector<FrameSource> src{{"Phi1", f1}, {"Phi2", f2}};
  auto u = line_union(src, {{0, 1, cross}});
  CHECK(u.line_count == 12);

  // missing cross data is an error
  CHECK_THROWS_AS(line_union(src, {}), Error);
  try {
    assemble_union(src, {{"a", 0, Z(1)}, {"b", 1, Z(1)}}, {});
    FAIL("expected MissingCrossBlock");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MissingCrossBlock);
  }

  // the union Gram of both frames is Hermitian, PSD of rank 3 for every cross phase
  for (long k = 0; k < 5; ++k) {
    CrossSource cs{0, 1, cross, Z::root_of_unity(5, k)};
    auto asmb = assemble_union(src, {{"a", 0, Z(1)}, {"b", 1, Z(1)}}, {cs});
    CHECK(asmb.gram.is_hermitian());
    std::vector<std::vector<std::complex<double>>> v;
    CHECK_NOTHROW(v = embed_vectors_from_gram(asmb.gram, 3));
  }
}

TEST_CASE("phase resolution picks the first best candidate") {
  A5Setup a;
  auto f = homogenize(twisted_spherical(a.G, a.chi, a.H, a.nus[0]));
  std::vector<FrameSource> src{{"ico", f}};
  std::vector<BlockSpec> one{{"ico", 0, Z(1)}};
  // no cross pair touches a single block: no-op
  const LinearCharacter* twisted = nullptr;
  for (const auto& nu : a.nus)
    if (!twisted && nu.order == 5 && multiplicity(a.chi, nu.character) == 1) twisted = &nu;
  auto g = homogenize(twisted_spherical(a.G, a.chi, a.H, *twisted));
  src.push_back({"twisted", g});
  auto cross = cross_row(a.G, a.chi, a.H, a.nus[0], a.H, *twisted);
  CrossSource cs{0, 1, cross};
  auto noop = resolve_cross_phase(src, one, cs, {Z(1), Z(-1)});
  CHECK(noop.phase == Z(1));

  std::vector<BlockSpec> both{{"ico", 0, Z(1)}, {"twisted", 1, Z(1)}};
  auto cands = default_phase_candidates(src, both, cs);
  CHECK(cands.size() <= 120);
  auto choice = resolve_cross_phase(src, both, cs, cands);
  // brute force over the same candidates
  std::optional<Z> best;
  for (const auto& c : cands) {
    cs.phase = c;
    auto asmb = assemble_union(src, both, {cs});
    std::optional<Z> mx;
    for (std::size_t i = 0; i < 12; ++i)
      for (std::size_t j = 12; j < asmb.gram.rows(); ++j) {
        Z r = asmb.gram(i, j).real_part();
        if (!mx || compare_real(r, *mx) == Ordering::Greater) mx = r;
      }
    if (!best || compare_real(*mx, *best) == Ordering::Less) best = mx;
  }
  CHECK(choice.max_real_part == *best);
  CHECK_THROWS_AS(resolve_cross_phase(src, both, CrossSource{0, 1, cross}, cands, mpq_class(-1)), Error);
}

TEST_CASE("coherence of a union is at least that of its parts") {
  A5Setup a;
  auto f = homogenize(twisted_spherical(a.G, a.chi, a.H, a.nus[0]));
  const LinearCharacter* twisted = nullptr;
  for (const auto& nu : a.nus)
    if (!twisted && nu.order == 5 && multiplicity(a.chi, nu.character) == 1) twisted = &nu;
  auto g = homogenize(twisted_spherical(a.G, a.chi, a.H, *twisted));
  auto cross = cross_row(a.G, a.chi, a.H, a.nus[0], a.H, *twisted);
  auto u = line_union({{"ico", f}, {"twisted", g}}, {{0, 1, cross}});
  auto cu = coherence(u.angles), c1 = coherence(f.summary.angles), c2 = coherence(g.summary.angles);
  CHECK(compare_real(cu.abs_squared, c1.abs_squared) != Ordering::Less);
  CHECK(compare_real(cu.abs_squared, c2.abs_squared) != Ordering::Less);
  CHECK(u.line_count == 18);
}
