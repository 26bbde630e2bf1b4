#include "symframes/codes.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

#include "symframes/error.hpp"

namespace symframes {

namespace {

std::uint64_t key_of(const PhasedCells& labels, std::uint32_t x) {
  return (static_cast<std::uint64_t>(labels.cell_of[x]) << 32) | labels.phase_of[x];
}

bool same_subgroup(const GroupPtr& a, const GroupPtr& b) {
  return a == b || (a->order() == b->order() && a->generators() == b->generators());
}

const PermutationGroup& group_of(const FrameSource& s) { return *s.frame.row->group; }

void check_compatible(const std::vector<FrameSource>& sources) {
  for (const auto& s : sources) {
    const auto& a = *sources.front().frame.row;
    const auto& b = *s.frame.row;
    if (!same_subgroup(a.group, b.group) || !(a.chi == b.chi))
      throw Error(ErrorCode::InconsistentDimensions, "source " + s.name + " uses a different group or character");
  }
}

// Orientation of a cross relative to (s, t): +1 when first == s, -1 when reversed, 0 when unrelated.
int orientation(const CrossSource& c, std::size_t s, std::size_t t) {
  if (c.first == s && c.second == t) return 1;
  if (c.first == t && c.second == s) return -1;
  return 0;
}

void check_cross(const std::vector<FrameSource>& sources, const CrossSource& c) {
  const auto& r1 = *sources.at(c.first).frame.row;
  const auto& r2 = *sources.at(c.second).frame.row;
  if (!same_subgroup(r1.subgroup, c.row->subgroup1) || r1.nu.exponent != c.row->nu1.exponent ||
      !same_subgroup(r2.subgroup, c.row->subgroup2) || r2.nu.exponent != c.row->nu2.exponent)
    throw Error(ErrorCode::InconsistentDimensions, "cross row does not match sources " + sources[c.first].name +
                                                       " and " + sources[c.second].name);
}

const CrossSource* find_cross(const std::vector<CrossSource>& crosses, std::size_t s, std::size_t t) {
  for (const auto& c : crosses)
    if (orientation(c, s, t) != 0) return &c;
  return nullptr;
}

// Distinct values of conj(Y(g1^-1 g2)) over vector representative pairs (first, second).
std::vector<Cyclotomic> cross_values(const std::vector<FrameSource>& sources, const CrossSource& c) {
  const auto& G = group_of(sources[c.first]);
  std::set<std::uint64_t> keys;
  std::vector<Cyclotomic> out;
  for (auto g1 : sources[c.first].frame.vector_representatives) {
    std::uint32_t inv = G.inverse(g1);
    for (auto g2 : sources[c.second].frame.vector_representatives) {
      std::uint32_t x = G.multiply(inv, g2);
      if (keys.insert(key_of(c.row->labels, x)).second) out.push_back(c.row->evaluate(x).conj());
    }
  }
  return out;
}

double max_abs_entry(const ExactMatrix& m, std::vector<double>& values) {
  values.resize(m.pool().size());
  double mx = 0;
  for (std::size_t k = 0; k < values.size(); ++k) {
    values[k] = m.pool()[k].to_complex().real();
    mx = std::max(mx, std::abs(values[k]));
  }
  return mx;
}

}  // namespace

GramAssembly assemble_union(const std::vector<FrameSource>& sources, const std::vector<BlockSpec>& blocks,
                            const std::vector<CrossSource>& crosses) {
  if (sources.empty() || blocks.empty()) throw Error(ErrorCode::InconsistentDimensions, "empty assembly");
  check_compatible(sources);
  for (const auto& c : crosses) check_cross(sources, c);
  const auto& G = group_of(sources.front());

  GramAssembly out;
  out.dimension = sources.front().frame.row->dimension;
  std::size_t n = 0;
  for (const auto& b : blocks) {
    std::size_t count = sources.at(b.source).frame.vector_representatives.size();
    out.blocks.push_back({b.name, b.source, b.phase, n, count});
    n += count;
  }
  out.gram = ExactMatrix(n, n);

  for (const auto& A : out.blocks)
    for (const auto& B : out.blocks) {
      const auto& ra = sources[A.source].frame.vector_representatives;
      const auto& rb = sources[B.source].frame.vector_representatives;
      Cyclotomic scale = A.phase.conj() * B.phase;
      std::unordered_map<std::uint64_t, std::uint32_t> cache;
      const CrossSource* cross = nullptr;
      int dir = 0;
      if (A.source != B.source) {
        cross = find_cross(crosses, A.source, B.source);
        if (!cross)
          throw Error(ErrorCode::MissingCrossBlock,
                      "no cross row between " + sources[A.source].name + " and " + sources[B.source].name);
        dir = orientation(*cross, A.source, B.source);
      }
      for (std::size_t i = 0; i < A.count; ++i)
        for (std::size_t j = 0; j < B.count; ++j) {
          std::uint32_t id;
          if (!cross) {
            const auto& row = *sources[A.source].frame.row;
            std::uint32_t x = G.multiply(G.inverse(rb[j]), ra[i]);
            auto key = key_of(row.labels, x);
            auto it = cache.find(key);
            if (it == cache.end()) it = cache.emplace(key, out.gram.intern(scale * row.evaluate(x))).first;
            id = it->second;
          } else {
            // first-oriented: c conj(Y(g_i^-1 g_j)); reversed: conj(c) Y(g_j^-1 g_i)
            std::uint32_t x = dir > 0 ? G.multiply(G.inverse(ra[i]), rb[j]) : G.multiply(G.inverse(rb[j]), ra[i]);
            auto key = key_of(cross->row->labels, x);
            auto it = cache.find(key);
            if (it == cache.end()) {
              Cyclotomic y = cross->row->evaluate(x);
              Cyclotomic v = dir > 0 ? cross->phase * y.conj() : cross->phase.conj() * y;
              it = cache.emplace(key, out.gram.intern(scale * v)).first;
            }
            id = it->second;
          }
          out.gram.set(A.offset + i, B.offset + j, id);
        }
    }
  std::uint32_t one = out.gram.intern(Cyclotomic(1));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (out.gram.id(i, j) == one) out.duplicates.emplace_back(i, j);
  return out;
}

ExactMatrix realify(const ExactMatrix& m) {
  ExactMatrix out(m.rows(), m.cols());
  std::vector<std::uint32_t> map(m.pool().size());
  for (std::size_t k = 0; k < map.size(); ++k) map[k] = out.intern(m.pool()[k].real_part());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out.set(i, j, map[m.id(i, j)]);
  return out;
}

GramAssembly realify(const GramAssembly& a) {
  GramAssembly out = a;
  out.gram = realify(a.gram);
  if (!a.real) out.dimension = 2 * a.dimension;
  out.real = true;
  out.duplicates.clear();
  std::uint32_t one = out.gram.intern(Cyclotomic(1));
  for (std::size_t i = 0; i < out.gram.rows(); ++i)
    for (std::size_t j = i + 1; j < out.gram.cols(); ++j)
      if (out.gram.id(i, j) == one) out.duplicates.emplace_back(i, j);
  return out;
}

std::vector<Cyclotomic> default_phase_candidates(const std::vector<FrameSource>& sources,
                                                 const std::vector<BlockSpec>& blocks, const CrossSource& cross) {
  long n = 1;
  for (const auto& b : blocks) n = std::lcm(n, b.phase.conductor());
  for (const auto& v : cross_values(sources, cross)) n = std::lcm(n, v.conductor());
  for (long src : {static_cast<long>(cross.first), static_cast<long>(cross.second)})
    for (const auto& c : sources[src].frame.row->cells) n = std::lcm(n, c.value.conductor());
  n = std::lcm(n, 2L);
  if (n > 120) {
    long best = 1;
    for (long k = 1; k <= 120; ++k)
      if (n % k == 0) best = k;
    n = best;
  }
  std::vector<Cyclotomic> out;
  for (long k = 0; k < n; ++k) out.push_back(Cyclotomic::root_of_unity(n, k));
  return out;
}

PhaseChoice resolve_cross_phase(const std::vector<FrameSource>& sources, const std::vector<BlockSpec>& blocks,
                                const CrossSource& cross, const std::vector<Cyclotomic>& candidates,
                                std::optional<mpq_class> bound) {
  check_cross(sources, cross);
  auto values = cross_values(sources, cross);
  // block phase factors conj(p) q for every block pair drawing on this cross
  std::vector<Cyclotomic> factors;
  for (const auto& a : blocks)
    for (const auto& b : blocks)
      if (a.source == cross.first && b.source == cross.second) {
        Cyclotomic f = a.phase.conj() * b.phase;
        if (std::find(factors.begin(), factors.end(), f) == factors.end()) factors.push_back(f);
      }
  if (factors.empty()) return {Cyclotomic(1), Cyclotomic(), 0};
  std::optional<PhaseChoice> best;
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    std::optional<Cyclotomic> mx;
    for (const auto& f : factors)
      for (const auto& v : values) {
        Cyclotomic r = (candidates[k] * f * v).real_part();
        if (!mx || compare_real(r, *mx) == Ordering::Greater) mx = r;
      }
    if (!best || compare_real(*mx, best->max_real_part) == Ordering::Less) best = PhaseChoice{candidates[k], *mx, k};
  }
  if (bound && compare_real(best->max_real_part, *bound) == Ordering::Greater)
    throw Error(ErrorCode::NoFeasiblePhase, "best candidate reaches " + best->max_real_part.decimal() +
                                                " above the bound " + bound->get_str());
  return *best;
}

// ---- explicit codes ----

namespace {

Cyclotomic half(long n) { return Cyclotomic(mpq_class(n, 2)); }

}  // namespace

ExplicitCode construct_E7_shell() {
  ExplicitCode code{7, {}};
  for (int k = 0; k < 7; ++k)
    for (int s : {1, -1}) {
      std::vector<Cyclotomic> v(7);
      v[k] = Cyclotomic(s);
      code.vectors.push_back(std::move(v));
    }
  // zero positions {0,1,3} and their cyclic shifts form the Fano plane
  for (int shift = 0; shift < 7; ++shift) {
    std::vector<int> support;
    for (int p = 0; p < 7; ++p) {
      int q = ((p - shift) % 7 + 7) % 7;
      if (q != 0 && q != 1 && q != 3) support.push_back(p);
    }
    for (int signs = 0; signs < 16; ++signs) {
      std::vector<Cyclotomic> v(7);
      for (int t = 0; t < 4; ++t) v[support[t]] = half(signs >> t & 1 ? -1 : 1);
      code.vectors.push_back(std::move(v));
    }
  }
  return code;
}

namespace {

// Splits the 112 half-vectors of the E7 shell into 8 cross polytopes (7 orthogonal lines each).
std::vector<std::vector<std::size_t>> e7_cross_polytopes(const ExplicitCode& e7) {
  // integer images scaled by 2
  std::vector<std::array<int, 7>> iv;
  for (const auto& v : e7.vectors) {
    std::array<int, 7> a{};
    for (int k = 0; k < 7; ++k) a[k] = static_cast<int>((v[k] * Cyclotomic(2)).rational_value().get_num().get_si());
    iv.push_back(a);
  }
  auto dot = [&](std::size_t a, std::size_t b) {
    int s = 0;
    for (int k = 0; k < 7; ++k) s += iv[a][k] * iv[b][k];
    return s;
  };
  std::vector<std::size_t> lines;  // one representative per line among the half-vectors
  for (std::size_t i = 14; i < iv.size(); ++i) {
    bool seen = false;
    for (auto l : lines) seen = seen || dot(i, l) == -4;
    if (!seen) lines.push_back(i);
  }
  std::vector<std::vector<std::size_t>> groups;
  std::function<bool(std::size_t)> place = [&](std::size_t li) -> bool {
    if (li == lines.size()) return true;
    for (std::size_t g = 0; g < groups.size(); ++g) {
      bool ok = groups[g].size() < 7;
      for (auto m : groups[g]) ok = ok && dot(lines[li], lines[m]) == 0;
      if (!ok) continue;
      groups[g].push_back(li);
      if (place(li + 1)) return true;
      groups[g].pop_back();
    }
    if (groups.size() < 8) {
      groups.push_back({li});
      if (place(li + 1)) return true;
      groups.pop_back();
    }
    return false;
  };
  if (!place(0)) throw Error(ErrorCode::Internal, "E7 shell does not split into cross polytopes");
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> b0;
  for (std::size_t i = 0; i < 14; ++i) b0.push_back(i);
  out.push_back(b0);
  for (const auto& grp : groups) {
    std::vector<std::size_t> poly;
    for (auto m : grp)
      for (std::size_t i = 14; i < iv.size(); ++i)
        if (std::abs(dot(i, lines[m])) == 4) poly.push_back(i);
    out.push_back(poly);
  }
  return out;
}

}  // namespace

ExplicitCode construct_phi3() {
  auto e7 = construct_E7_shell();
  auto polytopes = e7_cross_polytopes(e7);
  const Cyclotomic r = Cyclotomic::sqrt_rational(mpq_class(1, 2));
  const Cyclotomic i = Cyclotomic::root_of_unity(4, 1);
  ExplicitCode code{7, {}};
  for (const auto& poly : polytopes)
    for (auto a : poly)
      for (auto b : poly) {
        const auto& v = e7.vectors[a];
        const auto& w = e7.vectors[b];
        Cyclotomic dot;
        for (int k = 0; k < 7; ++k) dot += v[k] * w[k];
        if (!dot.is_zero()) continue;
        std::vector<Cyclotomic> x(7);
        for (int k = 0; k < 7; ++k) x[k] = r * (v[k] + i * w[k]);
        code.vectors.push_back(std::move(x));
      }
  return code;
}

ExplicitCode construct_D7_scaled() {
  const Cyclotomic r = Cyclotomic::sqrt_rational(mpq_class(1, 2));
  ExplicitCode code{7, {}};
  for (int a = 0; a < 7; ++a)
    for (int b = a + 1; b < 7; ++b)
      for (int sa : {1, -1})
        for (int sb : {1, -1}) {
          std::vector<Cyclotomic> v(7);
          v[a] = r * Cyclotomic(sa);
          v[b] = r * Cyclotomic(sb);
          code.vectors.push_back(std::move(v));
        }
  return code;
}

ExplicitCode scale(const ExplicitCode& code, const Cyclotomic& phase) {
  ExplicitCode out{code.dimension, code.vectors};
  for (auto& v : out.vectors)
    for (auto& x : v) x *= phase;
  return out;
}

ExplicitCode concat(const std::vector<ExplicitCode>& parts) {
  ExplicitCode out{parts.empty() ? 0 : parts.front().dimension, {}};
  for (const auto& p : parts) {
    if (p.dimension != out.dimension)
      throw Error(ErrorCode::InconsistentDimensions, "codes of dimensions " + std::to_string(p.dimension) +
                                                         " and " + std::to_string(out.dimension));
    out.vectors.insert(out.vectors.end(), p.vectors.begin(), p.vectors.end());
  }
  return out;
}

ExplicitCode realify(const ExplicitCode& code) {
  ExplicitCode out{2 * code.dimension, {}};
  for (const auto& v : code.vectors) {
    std::vector<Cyclotomic> w;
    for (const auto& x : v) w.push_back(x.real_part());
    for (const auto& x : v) w.push_back(x.imag_part());
    out.vectors.push_back(std::move(w));
  }
  return out;
}

void check_explicit(const ExplicitCode& code) {
  std::unordered_map<std::size_t, std::vector<std::size_t>> seen;
  for (std::size_t i = 0; i < code.vectors.size(); ++i) {
    const auto& v = code.vectors[i];
    if (static_cast<long>(v.size()) != code.dimension)
      throw Error(ErrorCode::InconsistentDimensions, "vector " + std::to_string(i) + " has the wrong length");
    Cyclotomic norm;
    std::size_t h = 0;
    for (const auto& x : v) {
      norm += abs_squared(x);
      h = h * 1000003u ^ x.hash();
    }
    if (norm != Cyclotomic(1))
      throw Error(ErrorCode::NormalizationNotExact, "vector " + std::to_string(i) + " has norm " + norm.to_string());
    for (auto j : seen[h])
      if (code.vectors[j] == v)
        throw Error(ErrorCode::DuplicateVectors, "vectors " + std::to_string(j) + " and " + std::to_string(i));
    seen[h].push_back(i);
  }
}

ExactMatrix gram(const ExplicitCode& code) {
  const std::size_t n = code.vectors.size();
  long N = 1;
  mpz_class D = 1;
  for (const auto& v : code.vectors)
    for (const auto& x : v) {
      N = std::lcm(N, x.conductor());
      mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), x.denominator().get_mpz_t());
    }
  if (!D.fits_slong_p() || D > 1000000) throw Error(ErrorCode::Unsupported, "coordinate denominators too large");
  const long long den = D.get_si();
  // sparse exponent form: coordinate k of vector i is sum coef * zeta_N^exp / den
  struct Term {
    int coord;
    long exp;
    long long coef;
  };
  std::vector<std::vector<Term>> terms(n);
  for (std::size_t i = 0; i < n; ++i)
    for (int k = 0; k < code.dimension; ++k) {
      const auto& x = code.vectors[i][k];
      mpz_class scale = D / x.denominator();
      for (std::size_t b = 0; b < x.dimension(); ++b) {
        if (x.numerators()[b] == 0) continue;
        mpz_class c = x.numerators()[b] * scale;
        terms[i].push_back({k, x.basis_exponent(b) * (N / x.conductor()), c.get_si()});
      }
    }
  ExactMatrix out(n, n);
  std::map<std::vector<long long>, std::uint32_t> ids;
  std::vector<long long> slots(N);
  std::vector<std::uint32_t> conj_of;
  auto conj_id = [&](std::uint32_t id) {
    while (conj_of.size() <= id) conj_of.push_back(0xffffffffu);
    if (conj_of[id] == 0xffffffffu) {
      conj_of[id] = out.intern(out.value(id).conj());
      while (conj_of.size() <= conj_of[id]) conj_of.push_back(0xffffffffu);
      conj_of[conj_of[id]] = id;
    }
    return conj_of[id];
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      std::fill(slots.begin(), slots.end(), 0);
      for (const auto& a : terms[i])
        for (const auto& b : terms[j])
          if (a.coord == b.coord) slots[((b.exp - a.exp) % N + N) % N] += a.coef * b.coef;
      auto it = ids.find(slots);
      if (it == ids.end())
        it = ids.emplace(slots, out.intern(Cyclotomic::from_exponents(N, slots, den * den))).first;
      out.set(i, j, it->second);
      if (j != i) out.set(j, i, conj_id(it->second));
    }
  return out;
}

GramAssembly build_code_R11(const GramAssembly& real10) {
  if (!real10.real || real10.blocks.size() != 4 || real10.dimension != 10)
    throw Error(ErrorCode::InconsistentDimensions, "the R11 lift expects the realified four-block R10 union");
  const auto& g = real10.gram;
  const auto& last = real10.blocks.back();
  const std::size_t keep = last.offset, m = last.count;
  const std::size_t n = keep + 2 * m + 2;
  GramAssembly out;
  out.dimension = 11;
  out.real = true;
  for (std::size_t b = 0; b + 1 < real10.blocks.size(); ++b) out.blocks.push_back(real10.blocks[b]);
  out.blocks.push_back({last.name + " lifted +", last.source, last.phase, keep, m});
  out.blocks.push_back({last.name + " lifted -", last.source, last.phase, keep + m, m});
  out.blocks.push_back({"+-e11", last.source, Cyclotomic(1), keep + 2 * m, 2});
  out.gram = ExactMatrix(n, n);
  auto& G = out.gram;
  const Cyclotomic s = Cyclotomic::sqrt_rational(mpq_class(3, 4));
  std::vector<std::uint32_t> same(g.pool().size()), scaled(g.pool().size()), plus(g.pool().size()),
      minus(g.pool().size());
  for (std::size_t k = 0; k < g.pool().size(); ++k) {
    const auto& v = g.pool()[k];
    same[k] = G.intern(v);
    scaled[k] = G.intern(s * v);
    plus[k] = G.intern(Cyclotomic(mpq_class(3, 4)) * v + Cyclotomic(mpq_class(1, 4)));
    minus[k] = G.intern(Cyclotomic(mpq_class(3, 4)) * v - Cyclotomic(mpq_class(1, 4)));
  }
  // lifted index -> (source index in real10, sign)
  auto src = [&](std::size_t i) -> std::pair<std::size_t, int> {
    if (i < keep) return {i, 0};
    if (i < keep + m) return {i, 1};
    return {i - m, -1};
  };
  const std::size_t e0 = keep + 2 * m;
  auto half_id = [&](int sgn) { return G.intern(Cyclotomic(mpq_class(sgn, 2))); };
  for (std::size_t i = 0; i < e0; ++i) {
    auto [a, sa] = src(i);
    for (std::size_t j = 0; j < e0; ++j) {
      auto [b, sb] = src(j);
      std::uint32_t id = g.id(a, b);
      if (sa == 0 && sb == 0) G.set(i, j, same[id]);
      else if (sa == 0 || sb == 0) G.set(i, j, scaled[id]);
      else G.set(i, j, sa == sb ? plus[id] : minus[id]);
    }
    for (int t = 0; t < 2; ++t) {
      int sign = t == 0 ? 1 : -1;
      std::uint32_t id = sa == 0 ? 0u : half_id(sa * sign);
      G.set(i, e0 + t, id);
      G.set(e0 + t, i, id);
    }
  }
  G.set(e0, e0, Cyclotomic(1));
  G.set(e0 + 1, e0 + 1, Cyclotomic(1));
  G.set(e0, e0 + 1, Cyclotomic(-1));
  G.set(e0 + 1, e0, Cyclotomic(-1));
  std::uint32_t one = G.intern(Cyclotomic(1));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (G.id(i, j) == one) out.duplicates.emplace_back(i, j);
  return out;
}

KissingReport verify_kissing(const ExactMatrix& g, long dimension) {
  KissingReport r;
  const std::size_t n = g.rows();
  r.vector_count = n;
  r.dimension = dimension;
  if (n == 0) {
    r.valid = true;
    return r;
  }
  const Cyclotomic one(1);
  for (std::size_t i = 0; i < n; ++i) r.unit_diagonal = r.unit_diagonal && g(i, i) == one;

  // first occurrence of every distinct off-diagonal id
  std::vector<std::pair<std::size_t, std::size_t>> where(g.pool().size(), {n, n});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      auto id = g.id(i, j);
      if (where[id].first == n) where[id] = {i, j};
    }
  std::vector<std::uint32_t> present;
  for (std::uint32_t id = 0; id < where.size(); ++id)
    if (where[id].first != n) present.push_back(id);
  for (auto id : present)
    if (!g.value(id).is_real()) throw Error(ErrorCode::NotReal, "Gram entry " + g.value(id).to_string());
  std::sort(present.begin(), present.end(), [&](std::uint32_t a, std::uint32_t b) {
    return compare_real(g.value(a), g.value(b)) == Ordering::Greater;
  });
  if (!present.empty()) {
    r.max_real_part = g.value(present.front());
    r.max_pair = where[present.front()];
  }
  for (auto id : present) {
    r.entry_values.push_back(g.value(id));
    if (g.value(id) == one && r.distinct) {
      r.distinct = false;
      r.duplicate_pair = where[id];
    }
  }
  r.within_bound = present.empty() || compare_real(r.max_real_part, mpq_class(1, 2)) != Ordering::Greater;

  std::vector<double> values;
  double mx = max_abs_entry(g, values);
  Eigen::MatrixXd m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = values[g.id(i, j)];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  r.tolerance = 1e-9 * static_cast<double>(n) * mx;
  r.min_eigenvalue = es.eigenvalues().minCoeff();
  r.psd = r.min_eigenvalue >= -r.tolerance;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) r.numerical_rank += es.eigenvalues()[k] > r.tolerance;
  r.valid = r.unit_diagonal && r.distinct && r.within_bound && r.psd && r.numerical_rank <= dimension;
  return r;
}

void require_valid(const KissingReport& r) {
  auto pair = [](std::pair<std::size_t, std::size_t> p) {
    return "(" + std::to_string(p.first) + ", " + std::to_string(p.second) + ")";
  };
  if (!r.unit_diagonal) throw Error(ErrorCode::NormalizationNotExact, "Gram diagonal is not all ones");
  if (!r.distinct) throw Error(ErrorCode::DuplicateVectors, "vectors " + pair(r.duplicate_pair) + " coincide");
  if (!r.within_bound)
    throw Error(ErrorCode::CoherenceExceeded,
                "entry " + pair(r.max_pair) + " has real part " + r.max_real_part.to_string() + " above 1/2");
  if (!r.psd) throw Error(ErrorCode::NotPSD, "smallest eigenvalue " + std::to_string(r.min_eigenvalue));
  if (r.numerical_rank > r.dimension)
    throw Error(ErrorCode::RankExceedsDimension, "numerical rank " + std::to_string(r.numerical_rank) +
                                                     " exceeds " + std::to_string(r.dimension));
}

Coherence coherence(const std::vector<Angle>& angles, std::optional<double> reference) {
  Coherence c{Cyclotomic(), Cyclotomic(), 0.0, reference};
  for (const auto& a : angles)
    if (compare_real(a.abs_squared, c.abs_squared) == Ordering::Greater) {
      c.abs_squared = a.abs_squared;
      c.exact = a.modulus;
    }
  c.value = std::sqrt(c.abs_squared.to_complex().real());
  return c;
}

Coherence coherence(const ExactMatrix& g, std::optional<double> reference) {
  std::vector<char> present(g.pool().size(), 0);
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j)
      if (i != j) present[g.id(i, j)] = 1;
  std::vector<std::pair<Cyclotomic, std::size_t>> values;
  for (std::uint32_t id = 0; id < present.size(); ++id)
    if (present[id]) values.push_back({abs_squared(g.value(id)), 1});
  auto angles = tally_angles(values);
  std::optional<Cyclotomic> exact;
  if (!angles.empty())
    for (std::uint32_t id = 0; id < present.size() && !exact; ++id)
      if (present[id] && abs_squared(g.value(id)) == angles.front().abs_squared) exact = exact_modulus(g.value(id));
  if (!angles.empty()) angles.front().modulus = exact;
  return coherence(angles, reference);
}

LineSystemSummary line_union(const std::vector<FrameSource>& sources, const std::vector<CrossSource>& crosses) {
  if (sources.empty()) return {};
  check_compatible(sources);
  for (const auto& c : crosses) check_cross(sources, c);
  const auto& G = group_of(sources.front());
  struct Line {
    std::size_t source;
    std::uint32_t rep;
  };
  std::vector<std::vector<Cyclotomic>> cell_abs2;
  for (const auto& s : sources) {
    std::vector<Cyclotomic> v;
    for (const auto& c : s.frame.row->cells) v.push_back(abs_squared(c.value));
    cell_abs2.push_back(std::move(v));
  }
  const Cyclotomic one(1);
  auto abs2 = [&](const Line& a, const Line& b) -> const Cyclotomic& {
    if (a.source == b.source)
      return cell_abs2[a.source][sources[a.source].frame.row->labels.cell_of[G.multiply(G.inverse(b.rep), a.rep)]];
    const CrossSource* c = find_cross(crosses, a.source, b.source);
    if (!c)
      throw Error(ErrorCode::MissingCrossBlock,
                  "no cross row between " + sources[a.source].name + " and " + sources[b.source].name);
    std::uint32_t x = orientation(*c, a.source, b.source) > 0 ? G.multiply(G.inverse(a.rep), b.rep)
                                                               : G.multiply(G.inverse(b.rep), a.rep);
    return c->row->abs_squared[c->row->labels.cell_of[x]];
  };
  std::vector<Line> lines;
  LineSystemSummary out{};
  for (std::size_t s = 0; s < sources.size(); ++s) {
    out.vector_count += sources[s].frame.summary.vector_count;
    for (auto rep : sources[s].frame.line_representatives) {
      Line l{s, rep};
      bool duplicate = false;
      for (const auto& m : lines)
        if (m.source != s && abs2(m, l) == one) duplicate = true;
      if (!duplicate) lines.push_back(l);
    }
  }
  out.line_count = lines.size();
  std::vector<std::pair<Cyclotomic, std::size_t>> values;
  std::unordered_map<Cyclotomic, std::size_t, CyclotomicHash> counts;
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (std::size_t j = i + 1; j < lines.size(); ++j) counts[abs2(lines[i], lines[j])] += 2;
  for (auto& [v, c] : counts) values.push_back({v, c});
  out.angles = tally_angles(values);
  return out;
}

std::vector<std::vector<std::complex<double>>> embed_vectors_from_gram(const ExactMatrix& g, long d,
                                                                      double tolerance) {
  const std::size_t n = g.rows();
  Eigen::MatrixXcd m(n, n);
  double mx = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      m(i, j) = g(i, j).to_complex();
      mx = std::max(mx, std::abs(m(i, j)));
    }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
  const double tol = tolerance * static_cast<double>(n) * std::max(mx, 1.0);
  const auto& ev = es.eigenvalues();
  if (n && ev.minCoeff() < -tol)
    throw Error(ErrorCode::NotPSD, "smallest eigenvalue " + std::to_string(ev.minCoeff()));
  long rank = 0;
  for (Eigen::Index k = 0; k < ev.size(); ++k) rank += ev[k] > tol;
  if (rank > d)
    throw Error(ErrorCode::RankExceedsDimension, "rank " + std::to_string(rank) + " exceeds " + std::to_string(d));
  std::vector<std::vector<std::complex<double>>> out(n, std::vector<std::complex<double>>(d));
  const auto& V = es.eigenvectors();
  for (long k = 0; k < d && k < static_cast<long>(n); ++k) {
    Eigen::Index col = static_cast<Eigen::Index>(n) - 1 - k;
    double s = std::sqrt(std::max(ev[col], 0.0));
    for (std::size_t i = 0; i < n; ++i) out[i][k] = s * std::conj(V(i, col));
  }
  return out;
}

}  // namespace symframes
