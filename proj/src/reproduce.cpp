#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>
#include <sstream>

#include "symframes/error.hpp"
#include "symframes/pipeline.hpp"

namespace symframes {

using nlohmann::json;

namespace {

using Z = Cyclotomic;

Z q(long a, long b = 1) { return Z(mpq_class(a, b)); }
Z sqrtq(long a, long b = 1) { return Z::sqrt_rational(mpq_class(a, b)); }
const Z kSqrt5 = sqrtq(5);

struct SizedValue {
  Z value;  // abs squared, or the exact value when comparing signed rows
  std::size_t size;
};

std::string approx(double x) {
  std::ostringstream out;
  out.precision(6);
  out << x;
  return out.str();
}

std::string show_value(const Z& z) {
  if (z.is_rational()) return z.to_string();
  auto c = z.to_complex();
  std::string d = std::abs(c.imag()) < 1e-12 ? approx(c.real()) : approx(c.real()) + (c.imag() < 0 ? "" : "+") + approx(c.imag()) + "i";
  return z.to_string() + " ~ " + d;
}

std::string show_modulus(const Z& abs2) {
  if (abs2.is_rational()) return Z::sqrt_rational(abs2.rational_value()).to_string();
  return "sqrt(" + abs2.to_string() + ") ~ " + approx(std::sqrt(abs2.to_complex().real()));
}

std::string show_cells(const std::vector<SizedValue>& cells, bool as_modulus) {
  std::ostringstream out;
  for (const auto& c : cells) out << '[' << (as_modulus ? show_modulus(c.value) : show_value(c.value)) << ',' << c.size << ']';
  return out.str();
}

std::string show_set(const std::vector<Z>& values) {
  std::ostringstream out;
  out << '{';
  for (std::size_t i = 0; i < values.size(); ++i) out << (i ? ", " : "") << show_value(values[i]);
  out << '}';
  return out.str();
}

// Matches printed (value, size) pairs against computed cells. A printed size may count
// elements of the double coset or right cosets of the second subgroup; both are tried.
ExpectationCheck check_cells(std::string label, std::string citation, const std::vector<SizedValue>& expected,
                             const std::vector<SizedValue>& computed, std::size_t coset_size, bool as_modulus) {
  ExpectationCheck c{std::move(label), show_cells(expected, as_modulus), show_cells(computed, as_modulus),
                     std::move(citation), "", false};
  std::vector<char> used(computed.size(), 0), matched(expected.size(), 0);
  bool coset_units = false;
  for (int pass = 0; pass < 2; ++pass)
    for (std::size_t e = 0; e < expected.size(); ++e) {
      if (matched[e]) continue;
      for (std::size_t k = 0; k < computed.size() && !matched[e]; ++k) {
        if (used[k] || computed[k].value != expected[e].value) continue;
        std::size_t size = pass == 0 ? computed[k].size : computed[k].size / coset_size;
        if (size == expected[e].size) {
          used[k] = matched[e] = 1;
          coset_units = coset_units || pass == 1;
        }
      }
    }
  c.match = expected.size() == computed.size() && std::all_of(matched.begin(), matched.end(), [](char m) { return m; });
  if (coset_units) c.note = "some printed sizes count cosets of the right subgroup (size " + std::to_string(coset_size) + ")";
  return c;
}

std::vector<SizedValue> abs2_cells(const std::vector<RowCell>& cells) {
  std::vector<SizedValue> out;
  for (const auto& c : cells) out.push_back({abs_squared(c.value), c.size});
  return out;
}

std::vector<SizedValue> abs2_cells(const CrossGramRow& row) {
  std::vector<SizedValue> out;
  for (std::size_t c = 0; c < row.cells.size(); ++c) out.push_back({row.abs_squared[c], row.cells[c].size});
  return out;
}

std::vector<Z> angle_abs2(const std::vector<Angle>& angles) {
  std::vector<Z> out;
  for (const auto& a : angles) out.push_back(a.abs_squared);
  return out;
}

bool same_set(std::vector<Z> a, std::vector<Z> b) {
  auto less = [](const Z& x, const Z& y) { return x.to_string() < y.to_string(); };
  std::sort(a.begin(), a.end(), less);
  std::sort(b.begin(), b.end(), less);
  a.erase(std::unique(a.begin(), a.end()), a.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  return a == b;
}

bool subset(const std::vector<Z>& a, const std::vector<Z>& b) {
  return std::all_of(a.begin(), a.end(), [&](const Z& x) { return std::find(b.begin(), b.end(), x) != b.end(); });
}

ExpectationCheck check_angles(std::string label, std::string citation, const std::vector<Z>& expected_abs2,
                              const std::vector<Angle>& angles) {
  auto got = angle_abs2(angles);
  return {std::move(label), "|<u,v>|^2 in " + show_set(expected_abs2), "|<u,v>|^2 in " + show_set(got),
          std::move(citation), "", same_set(expected_abs2, got)};
}

ExpectationCheck check_count(std::string label, std::string citation, std::size_t expected, std::size_t computed,
                             std::string note = "") {
  return {std::move(label), std::to_string(expected), std::to_string(computed), std::move(citation), std::move(note),
          expected == computed};
}

std::vector<Z> distinct_offdiagonal(const ExactMatrix& g) {
  std::vector<char> seen(g.pool().size(), 0);
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j)
      if (i != j) seen[g.id(i, j)] = 1;
  std::vector<Z> out;
  for (std::uint32_t id = 0; id < seen.size(); ++id)
    if (seen[id]) out.push_back(g.value(id));
  return out;
}

ExpectationCheck check_subset(std::string label, std::string citation, const std::vector<Z>& allowed,
                              const std::vector<Z>& values) {
  return {std::move(label), "subset of " + show_set(allowed), show_set(values), std::move(citation), "",
          subset(values, allowed)};
}

ExpectationCheck check_kissing(std::string label, std::string citation, const KissingReport& r, std::size_t count,
                               const std::vector<Z>& allowed) {
  std::ostringstream got;
  got << r.vector_count << " vectors, max real part " << r.max_real_part.to_string() << ", rank "
      << r.numerical_rank << ", min eigenvalue " << r.min_eigenvalue << ", values " << show_set(r.entry_values)
      << (r.valid ? ", valid" : ", INVALID");
  bool ok = r.valid && r.vector_count == count && r.max_real_part == q(1, 2) &&
            (allowed.empty() || subset(r.entry_values, allowed));
  std::string expected = std::to_string(count) + " vectors, valid in dimension " + std::to_string(r.dimension) +
                         ", max real part 1/2";
  if (!allowed.empty()) expected += ", values in " + show_set(allowed);
  return {std::move(label), expected, got.str(), std::move(citation), "", ok};
}

std::vector<Z> plus_minus(std::initializer_list<Z> xs) {
  std::vector<Z> out;
  for (const auto& x : xs) {
    out.push_back(x);
    if (!x.is_zero()) out.push_back(-x);
  }
  return out;
}

// ---- examples ----

void example_a5(Context& ctx, ReproductionReport& rep) {
  const std::string g = "A5", h = "C5";
  const CharacterSelector chi{3, 0};
  const std::string cite = "A5 example, bracket rows for (A5, degree-3 character, C5)";
  auto trivial = ctx.row(g, chi, h, {1, 0});
  std::vector<SizedValue> values;
  for (const auto& c : trivial->cells) values.push_back({c.value, c.size});
  rep.checks.push_back(check_cells("spherical function (trivial nu), exact values", cite,
                                   {{q(1), 5}, {sqrtq(1, 5), 25}, {-sqrtq(1, 5), 25}, {q(-1), 5}}, values, 5, false));

  // the two twisted rows: a conjugate pair of order-5 characters occurring in chi
  const auto& c = ctx.character(g, chi);
  std::vector<const LinearCharacter*> pair;
  for (const auto& nu : ctx.linear(g, h))
    if (nu.order == 5 && multiplicity(c, nu.character) == 1) pair.push_back(&nu);
  if (pair.size() != 2) throw Error(ErrorCode::Internal, "expected two twisted characters of order 5");
  const Z m1 = (q(5) + kSqrt5) * q(1, 10), m2 = (q(5) - kSqrt5) * q(1, 10);
  std::vector<SizedValue> twisted_expected{{q(1), 5}, {m1 * m1, 25}, {m2 * m2, 25}, {q(0), 5}};
  std::vector<RowPtr> rows;
  for (std::size_t k = 0; k < 2; ++k) {
    auto row = twisted_spherical(ctx.group(g), c, ctx.subgroup(g, h), *pair[k]);
    rows.push_back(row);
    rep.checks.push_back(check_cells("twisted row nu" + std::to_string(k + 1) + ", (modulus, size)", cite,
                                     twisted_expected, abs2_cells(row->cells), 5, true));
  }
  auto cross = cross_row(ctx.group(g), c, ctx.subgroup(g, h), *pair[0], ctx.subgroup(g, h), *pair[1]);
  auto cc = check_cells("cross row nu1/nu2, (modulus, size)", "A5 example, cross-Gram row display",
                        {{q(0), 1}, {m1 * m1, 5}, {m1 * m1, 5}, {q(1), 1}}, abs2_cells(*cross), 5, true);
  Z printed_norm = q(5) * (m1 * m1 + m1 * m1) * q(5) + q(5);
  cc.note = "printed moduli give sum size*|m|^2 = " + show_value(printed_norm) +
            " but a cross row of two unit frames in dimension 3 must give |G|/d = 20; the computed row does";
  rep.checks.push_back(cc);

  auto f0 = homogenize(trivial);
  rep.checks.push_back(check_count("trivial-nu line count", "A5 example, icosahedron line system", 6,
                                   f0.summary.line_count));
  rep.checks.push_back(check_count("trivial-nu gon order", "A5 example, line stabilizer of order 5+5", 2,
                                   f0.summary.gon_order));
  rep.checks.push_back(check_angles("trivial-nu angle set", "A5 example, {1/sqrt5}-angular", {q(1, 5)},
                                    f0.summary.angles));

  auto f1 = homogenize(rows[0]);
  // independent count: conjugates of C5 times the two eigenlines each one fixes through order-5 characters
  const auto& G = *ctx.group(g);
  auto hidx = embed_subgroup(G, *ctx.subgroup(g, h));
  std::size_t normalizer = 0;
  for (std::uint32_t x = 0; x < G.size(); ++x) {
    bool normal = true;
    for (auto s : hidx) {
      auto y = G.multiply(G.multiply(x, s), G.inverse(x));
      normal = normal && std::find(hidx.begin(), hidx.end(), y) != hidx.end();
    }
    normalizer += normal;
  }
  std::size_t conjugates = G.size() / normalizer;
  rep.checks.push_back(check_count(
      "twisted line count", "A5 example, line system of cardinality 10", 10, f1.summary.line_count,
      "independent count: " + std::to_string(conjugates) + " conjugates of C5, 2 eigenlines each = " +
          std::to_string(2 * conjugates) + "; the printed 10 assumes 5 conjugates"));
  rep.checks.push_back(check_angles("twisted angle set", "A5 example, {(5+sqrt5)/10,(5-sqrt5)/10,0}-angular",
                                    {m1 * m1, m2 * m2, q(0)}, f1.summary.angles));
}

void example_h4(Context& ctx, ReproductionReport& rep) {
  const std::string g = "W(H4)";
  const CharacterSelector chi{4, 0};
  const std::string cite = "W(H4) table, row ";
  auto f60 = homogenize(ctx.row(g, chi, "Stab(root line)", {2, std::nullopt}));
  rep.checks.push_back(check_count("row 1 line count", cite + "60", 60, f60.summary.line_count));
  rep.checks.push_back(check_count("row 1 character order k", cite + "60", 2, f60.row->nu.order));
  const Z a = (kSqrt5 + q(1)) * q(1, 4), b = (kSqrt5 - q(1)) * q(1, 4);
  rep.checks.push_back(check_angles("row 1 angle set", cite + "60: {(sqrt5+1)/4,(sqrt5-1)/4,1/2,0}",
                                    {a * a, b * b, q(1, 4), q(0)}, f60.summary.angles));

  auto f144 = homogenize(ctx.row(g, chi, "Stab(torus eigenline)", {10, std::nullopt}));
  rep.checks.push_back(check_count("row 2 line count", cite + "144", 144, f144.summary.line_count));
  rep.checks.push_back(check_count("row 2 character order k", cite + "144", 10, f144.row->nu.order));
  const Z p = (q(5) + kSqrt5) * q(1, 10), m = (q(5) - kSqrt5) * q(1, 10);
  rep.checks.push_back(check_angles(
      "row 2 angle set",
      cite + "144: {sqrt((5+sqrt5)/10),(5+sqrt5)/10,sqrt((5-sqrt5)/10),1/sqrt5,(5-sqrt5)/10,0}",
      {p, p * p, m, q(1, 5), m * m, q(0)}, f144.summary.angles));
}

struct PsuData {
  RecipeResult r10;
  HomogenizedFrame phi1, phi2;
  CrossPtr cross;
};

PsuData psu_common(Context& ctx, ReproductionReport& rep) {
  const std::string g = "PSU(4,2)";
  const CharacterSelector chi{5, 0};
  const std::string cite = "PSU(4,2) kissing example, ";
  auto r1 = ctx.row(g, chi, "3^3:S4", {2, 0});
  auto r2 = ctx.row(g, chi, "2.(A4xA4).2", {6, 0});
  auto cross = ctx.cross(g, chi, "3^3:S4", {2, 0}, "2.(A4xA4).2", {6, 0});
  rep.checks.push_back(check_cells("Phi1 row (modulus, size)", cite + "[1,648][1/3,17496][i/sqrt3,7776]",
                                   {{q(1), 648}, {q(1, 9), 17496}, {q(1, 3), 7776}}, abs2_cells(r1->cells), 648,
                                   true));
  rep.checks.push_back(check_cells("Phi2 row (modulus, size)", cite + "[1,576][1/2,18432][0,6912]",
                                   {{q(1), 576}, {q(1, 4), 18432}, {q(0), 6912}}, abs2_cells(r2->cells), 576, true));
  rep.checks.push_back(check_cells("cross row (modulus, size)", cite + "c[0,10368][1/sqrt3,15552]",
                                   {{q(0), 10368}, {q(1, 3), 15552}}, abs2_cells(*cross), 576, true));
  PsuData d{{}, homogenize(r1), homogenize(r2), cross};
  rep.checks.push_back(check_count("|Phi1|", cite + "frame of cardinality 80", 80, d.phi1.summary.vector_count));
  rep.checks.push_back(check_count("|Phi2|", cite + "frame of cardinality 270", 270, d.phi2.summary.vector_count));

  const Z i = Z::root_of_unity(4, 1), w = Z::root_of_unity(3, 1);
  auto g1 = gram(*d.phi1.row, d.phi1.vector_representatives);
  rep.checks.push_back(check_subset("Phi1 inner products", cite + "{+-1/3, +-i/sqrt3, -1}",
                                    plus_minus({q(1, 3), i * sqrtq(1, 3), q(1)}), distinct_offdiagonal(g1.entries)));
  auto g2 = gram(*d.phi2.row, d.phi2.vector_representatives);
  auto p2 = check_subset("Phi2 inner products", cite + "{+-1/2, +-w/2, +-w^2/2, +-w, +-w^2, -1}",
                         plus_minus({q(1, 2), w * q(1, 2), w * w * q(1, 2), w, w * w, q(1)}),
                         distinct_offdiagonal(g2.entries));
  p2.note = "the printed set omits 0, yet the printed Phi2 row itself has the cell [0,6912]";
  rep.checks.push_back(p2);

  std::vector<FrameSource> triple{{"Phi1", d.phi1}};
  auto t = assemble_union(triple, {{"Phi1", 0, q(1)}, {"w*Phi1", 0, w}, {"w^2*Phi1", 0, w * w}}, {});
  rep.checks.push_back(check_subset("real parts within Phi1 u wPhi1 u w^2Phi1", cite + "{0,+-1/6,+-1/3,+-1/2,-1}",
                                    plus_minus({q(0), q(1, 6), q(1, 3), q(1, 2), q(1)}),
                                    distinct_offdiagonal(realify(t.gram))));
  rep.checks.push_back(check_subset("real parts within Phi2", cite + "{0,+-1/4,+-1/2,-1}",
                                    plus_minus({q(0), q(1, 4), q(1, 2), q(1)}),
                                    distinct_offdiagonal(realify(g2.entries))));
  return d;
}

void example_psu_r10(Context& ctx, ReproductionReport& rep) {
  auto d = psu_common(ctx, rep);
  auto res = run_recipe(ctx, load_recipe(ctx.data_directory() / "recipes" / "psu42-r10.json"), true);
  rep.checks.push_back(check_kissing("R^10 kissing configuration", "PSU(4,2) kissing example, cardinality 510",
                                     *res.kissing, 510,
                                     plus_minus({q(0), q(1, 6), q(1, 4), q(1, 3), q(1, 2), q(1)})));
  auto lines = run_recipe(ctx, load_recipe(ctx.data_directory() / "recipes" / "psu42-85.json"), true);
  rep.checks.push_back(check_count("Phi1 u Phi2 line count", "PSU(4,2) kissing example, 85 lines", 85,
                                   lines.lines->line_count));
  auto ac = check_angles("Phi1 u Phi2 angle set", "PSU(4,2) kissing example, printed as {0,1/3,1/2,1\\sqrt{3}}",
                         {q(0), q(1, 9), q(1, 4), q(1, 3)}, lines.lines->angles);
  ac.note = "the printed fourth value '1\\sqrt{3}' is read as 1/sqrt3";
  rep.checks.push_back(ac);
}

void example_psu_r11(Context& ctx, ReproductionReport& rep) {
  auto res = run_recipe(ctx, load_recipe(ctx.data_directory() / "recipes" / "psu42-r11.json"), true);
  rep.checks.push_back(
      check_kissing("R^11 kissing configuration", "PSU(4,2) kissing example, 270+80+80+160+2=592", *res.kissing, 592, {}));
}

void example_u33(Context& ctx, ReproductionReport& rep) {
  const std::string g = "U(3,3)";
  const CharacterSelector chi{7, 2};
  const std::string cite = "U(3,3) kissing example, ";
  auto r1 = ctx.row(g, chi, "3^(1+2):8", {2, std::nullopt});
  auto r2 = ctx.row(g, chi, "4^2:S3", {2, std::nullopt});
  rep.checks.push_back(check_cells("Phi1 row (modulus, size)", cite + "[1,216][1/3,5832]", {{q(1), 216}, {q(1, 9), 5832}},
                                   abs2_cells(r1->cells), 216, true));
  rep.checks.push_back(check_cells("Phi2 row (modulus, size)", cite + "[1,96][1/2,16][1/2,16][0,24][0,6]",
                                   {{q(1), 96}, {q(1, 4), 16}, {q(1, 4), 16}, {q(0), 24}, {q(0), 6}},
                                   abs2_cells(r2->cells), 96, true));
  auto phi1 = homogenize(r1), phi2 = homogenize(r2);
  rep.checks.push_back(check_count("|Phi1|", cite + "56 vectors", 56, phi1.summary.vector_count));
  rep.checks.push_back(check_count("|Phi2|", cite + "126 vectors", 126, phi2.summary.vector_count));

  auto e7 = construct_E7_shell();
  auto phi3 = construct_phi3();
  auto d7 = construct_D7_scaled();
  rep.checks.push_back(check_count("E7 shell", cite + "9 cross polytopes B0..B8", 126, e7.vectors.size()));
  rep.checks.push_back(check_count("Phi3", cite + "1512 unit vectors", 1512, phi3.vectors.size()));
  rep.checks.push_back(check_count("scaled D7", cite + "scaled D7 root system", 84, d7.vectors.size()));
  rep.checks.push_back(check_subset("Phi3 real parts", cite + "{0,+-1/4,+-1/2,-1}",
                                    plus_minus({q(0), q(1, 4), q(1, 2), q(1)}),
                                    distinct_offdiagonal(realify(gram(phi3)))));

  // coordinate E7 shell against the group route for Phi2
  auto multiset = [](const ExactMatrix& m) {
    std::map<std::string, std::size_t> out;
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) ++out[m(i, j).to_string()];
    return out;
  };
  auto ge = multiset(gram(e7));
  auto gg = multiset(gram(*phi2.row, phi2.vector_representatives).entries);
  std::ostringstream es, gs;
  for (const auto& [k, v] : ge) es << k << " x" << v << "; ";
  for (const auto& [k, v] : gg) gs << k << " x" << v << "; ";
  rep.checks.push_back({"E7 shell Gram multiset equals the Phi2 Gram multiset", es.str(), gs.str(),
                        cite + "Phi2 forms the inner shell of E7", "", ge == gg});

  auto res = run_recipe(ctx, load_recipe(ctx.data_directory() / "recipes" / "u33-r14.json"), true);
  rep.checks.push_back(check_kissing("R^14 kissing configuration", cite + "1512+126+126+84+84=1932", *res.kissing,
                                     1932, plus_minus({q(0), q(1, 4), q(1, 2), q(1)})));
}

void example_m12(Context& ctx, ReproductionReport& rep) {
  const std::string g = "M12";
  const CharacterSelector chi{11, 0};
  const std::string cite = "M12 example, ";
  auto H1 = ctx.subgroup(g, "M10.2"), H2 = ctx.subgroup(g, "M11");
  auto dc = double_cosets(*ctx.group(g), H1, H2);
  rep.checks.push_back(check_count("(H1,H2)-double cosets", cite + "only one double coset", 1, dc.cells.size()));
  auto res = run_recipe(ctx, load_recipe(ctx.data_directory() / "recipes" / "m12-78.json"), true);
  auto l1 = homogenize(ctx.row(g, chi, "M10.2", {2, 0}));
  auto l2 = homogenize(ctx.row(g, chi, "M11", {1, 0}));
  rep.checks.push_back(check_count("L1 line count", cite + "66 lines", 66, l1.summary.line_count));
  rep.checks.push_back(check_angles("L1 angle set", cite + "{1/3,0}-angular", {q(1, 9), q(0)}, l1.summary.angles));
  rep.checks.push_back(check_count("L2 line count", cite + "regular 11-simplex", 12, l2.summary.line_count));
  rep.checks.push_back(check_angles("L2 angle set", cite + "simplex angle 1/11", {q(1, 121)}, l2.summary.angles));
  auto cross = ctx.cross(g, chi, "M10.2", {2, 0}, "M11", {1, 0});
  rep.checks.push_back(check_cells("cross modulus", cite + "single angle 1/sqrt11", {{q(1, 11), 95040}},
                                   abs2_cells(*cross), 7920, true));
  rep.checks.push_back(check_count("union line count", cite + "cardinality 78", 78, res.lines->line_count));
  rep.checks.push_back(check_angles("union angle set", cite + "{1/3,1/sqrt11,1/11,0}",
                                    {q(1, 9), q(1, 11), q(1, 121), q(0)}, res.lines->angles));
  const auto& coh = *res.coherence;
  std::ostringstream got;
  got << "coherence " << (coh.exact ? coh.exact->to_string() : show_modulus(coh.abs_squared)) << " = " << coh.value
      << ", reference " << *coh.reference;
  rep.checks.push_back({"coherence against the reference bound", "1/3, at least sqrt(7/67) ~ 0.323", got.str(),
                        cite + "Levenshtein bound quoted as a constant", "",
                        coh.abs_squared == q(1, 9) && coh.value >= *coh.reference});
}

}  // namespace

bool ReproductionReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const ExpectationCheck& c) { return c.match; });
}

json ReproductionReport::to_json() const {
  json items = json::array();
  for (const auto& c : checks)
    items.push_back({{"label", c.label},
                     {"expected", c.expected},
                     {"computed", c.computed},
                     {"citation", c.citation},
                     {"note", c.note},
                     {"match", c.match}});
  return {{"example", id}, {"checks", items}, {"verdict", ok() ? "match" : "mismatch"}, {"runtime_seconds", runtime_seconds}};
}

const std::vector<std::string>& reproducible_examples() {
  static const std::vector<std::string> ids{"a5", "h4-table1", "psu42-r10", "psu42-r11", "u33-r14", "m12-78"};
  return ids;
}

std::optional<std::string> unsupported_reason(const std::string& id) {
  if (id == "psp45")
    return "PSp(4,5) has order 4680000, above the enumeration cap of 200000 elements used for character tables";
  if (id == "w-e8") return "W(E8) has order 696729600, above the enumeration cap of 200000 elements";
  if (id == "st34") return "ST(34) has order 39191040, above the enumeration cap of 200000 elements";
  return std::nullopt;
}

ReproductionReport reproduce(Context& ctx, const std::string& id) {
  if (auto why = unsupported_reason(id)) throw Error(ErrorCode::Unsupported, id + ": " + *why);
  auto start = std::chrono::steady_clock::now();
  ReproductionReport rep;
  rep.id = id;
  if (id == "a5") example_a5(ctx, rep);
  else if (id == "h4-table1") example_h4(ctx, rep);
  else if (id == "psu42-r10") example_psu_r10(ctx, rep);
  else if (id == "psu42-r11") example_psu_r11(ctx, rep);
  else if (id == "u33-r14") example_u33(ctx, rep);
  else if (id == "m12-78") example_m12(ctx, rep);
  else throw Error(ErrorCode::UnknownExample, "unknown example '" + id + "'");
  rep.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace symframes
