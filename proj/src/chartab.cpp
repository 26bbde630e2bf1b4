#include "symframes/chartab.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>

#include "symframes/error.hpp"

namespace symframes {

namespace {

using u64 = std::uint64_t;

struct Fp {
  u64 p;
  u64 add(u64 a, u64 b) const { return (a + b) % p; }
  u64 sub(u64 a, u64 b) const { return (a + p - b) % p; }
  u64 mul(u64 a, u64 b) const { return a * b % p; }
  u64 pow(u64 a, u64 e) const {
    u64 r = 1;
    a %= p;
    for (; e; e >>= 1, a = mul(a, a))
      if (e & 1) r = mul(r, a);
    return r;
  }
  u64 inv(u64 a) const { return pow(a, p - 2); }
};

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

u64 primitive_root(const Fp& f) {
  std::vector<u64> factors;
  u64 n = f.p - 1;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      factors.push_back(d);
      while (n % d == 0) n /= d;
    }
  if (n > 1) factors.push_back(n);
  for (u64 g = 2;; ++g) {
    bool ok = true;
    for (u64 q : factors) ok = ok && f.pow(g, (f.p - 1) / q) != 1;
    if (ok) return g;
  }
}

using Vec = std::vector<u64>;
using Mat = std::vector<Vec>;

// Row-reduces in place; returns pivot columns.
std::vector<std::size_t> rref(Mat& rows, const Fp& f) {
  std::vector<std::size_t> pivots;
  if (rows.empty()) return pivots;
  const std::size_t cols = rows[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[r], rows[piv]);
    u64 inv = f.inv(rows[r][c]);
    for (auto& x : rows[r]) x = f.mul(x, inv);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      u64 m = rows[i][c];
      for (std::size_t k = 0; k < cols; ++k) rows[i][k] = f.sub(rows[i][k], f.mul(m, rows[r][k]));
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

Mat nullspace(Mat a, const Fp& f) {
  const std::size_t n = a.empty() ? 0 : a[0].size();
  auto pivots = rref(a, f);
  std::vector<char> is_pivot(n, 0);
  for (auto c : pivots) is_pivot[c] = 1;
  Mat basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    Vec v(n, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = f.sub(0, a[r][free]);
    basis.push_back(std::move(v));
  }
  return basis;
}

// Characteristic polynomial (coefficients low to high) via Hessenberg reduction.
Vec charpoly(Mat h, const Fp& f) {
  const std::size_t n = h.size();
  for (std::size_t j = 0; j + 2 < n; ++j) {
    std::size_t piv = j + 1;
    while (piv < n && h[piv][j] == 0) ++piv;
    if (piv == n) continue;
    if (piv != j + 1) {
      std::swap(h[piv], h[j + 1]);
      for (auto& row : h) std::swap(row[piv], row[j + 1]);
    }
    u64 inv = f.inv(h[j + 1][j]);
    for (std::size_t i = j + 2; i < n; ++i) {
      if (h[i][j] == 0) continue;
      u64 u = f.mul(h[i][j], inv);
      for (std::size_t k = 0; k < n; ++k) h[i][k] = f.sub(h[i][k], f.mul(u, h[j + 1][k]));
      for (std::size_t k = 0; k < n; ++k) h[k][j + 1] = f.add(h[k][j + 1], f.mul(u, h[k][i]));
    }
  }
  std::vector<Vec> p(n + 1);
  p[0] = {1};
  for (std::size_t k = 0; k < n; ++k) {
    Vec next(k + 2, 0);
    for (std::size_t i = 0; i <= k; ++i) {
      next[i + 1] = f.add(next[i + 1], p[k][i]);
      next[i] = f.sub(next[i], f.mul(h[k][k], p[k][i]));
    }
    u64 prod = 1;
    for (std::size_t i = k; i-- > 0;) {
      prod = f.mul(prod, h[i + 1][i]);
      u64 coef = f.mul(h[i][k], prod);
      if (coef == 0) continue;
      for (std::size_t t = 0; t < p[i].size(); ++t) next[t] = f.sub(next[t], f.mul(coef, p[i][t]));
    }
    p[k + 1] = std::move(next);
  }
  return p[n];
}

std::vector<u64> roots(const Vec& poly, const Fp& f) {
  std::vector<u64> out;
  for (u64 x = 0; x < f.p; ++x) {
    u64 v = 0;
    for (std::size_t i = poly.size(); i-- > 0;) v = f.add(f.mul(v, x), poly[i]);
    if (v == 0) out.push_back(x);
  }
  return out;
}

bool rows_less(const ClassFunction& a, const ClassFunction& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (std::size_t c = 0; c < a.values().size(); ++c) {
    int cmp = compare_canonical(a[c], b[c]);
    if (cmp != 0) return cmp > 0;
  }
  return false;
}

}  // namespace

ClassFunction::ClassFunction(GroupPtr group, ClassesPtr classes, std::vector<Cyclotomic> values)
    : group_(std::move(group)), classes_(std::move(classes)), values_(std::move(values)) {
  if (values_.size() != classes_->count())
    throw Error(ErrorCode::Internal, "class function length differs from class count");
}

long ClassFunction::degree() const {
  const auto& v = values_[0];
  if (!v.is_rational()) return 0;
  auto q = v.rational_value();
  return q.get_den() == 1 ? q.get_num().get_si() : 0;
}

Cyclotomic inner_product(const ClassFunction& a, const ClassFunction& b) {
  Cyclotomic sum;
  const auto& cls = *a.classes();
  for (std::size_t c = 0; c < cls.count(); ++c)
    sum += Cyclotomic(static_cast<long>(cls[c].size())) * a[c] * b[c].conj();
  return sum * Cyclotomic(mpq_class(1, static_cast<long>(a.group()->order())));
}

int compare_canonical(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.conductor() != b.conductor()) return a.conductor() < b.conductor() ? -1 : 1;
  for (std::size_t i = 0; i < a.dimension(); ++i) {
    mpz_class l = a.numerators()[i] * b.denominator();
    mpz_class r = b.numerators()[i] * a.denominator();
    if (l != r) return l < r ? -1 : 1;
  }
  return 0;
}

CharacterTable character_table(GroupPtr G) {
  auto classes = conjugacy_classes(*G);
  return character_table(std::move(G), std::move(classes));
}

CharacterTable character_table(GroupPtr Gp, ClassesPtr clsp) {
  const PermutationGroup& G = *Gp;
  const ConjugacyClassSet& cls = *clsp;
  if (!G.enumerated()) throw Error(ErrorCode::OrderExceedsCap, "character table needs enumeration");
  const std::size_t r = cls.count();
  const u64 order = G.order();

  u64 exponent = 1;
  for (const auto& c : cls.classes()) exponent = std::lcm(exponent, static_cast<u64>(c.element_order));
  u64 p = exponent + 1;
  while (!(is_prime(p) && static_cast<double>(p) > 2 * std::sqrt(static_cast<double>(order))))
    p += exponent;
  const Fp f{p};

  // power maps: pow[k][j] = class of g_k^j
  std::vector<std::vector<std::uint32_t>> pow(r);
  for (std::size_t k = 0; k < r; ++k) {
    std::uint32_t g = cls[k].representative_index, x = 0;
    for (std::uint32_t j = 0; j < cls[k].element_order; ++j) {
      pow[k].push_back(cls.class_of(x));
      x = G.multiply(g, x);
    }
  }

  auto class_matrix = [&](std::size_t j) {
    Mat m(r, Vec(r, 0));
    for (std::size_t k = 0; k < r; ++k) {
      std::uint32_t z = cls[k].representative_index;
      for (std::uint32_t x : cls[j].members) ++m[cls.class_of(G.multiply(G.inverse(x), z))][k];
    }
    for (auto& row : m)
      for (auto& v : row) v %= p;
    return m;
  };

  Mat identity(r, Vec(r, 0));
  for (std::size_t i = 0; i < r; ++i) identity[i][i] = 1;
  std::vector<std::pair<Mat, std::vector<std::size_t>>> spaces;
  spaces.push_back({identity, {}});
  for (std::size_t i = 0; i < r; ++i) spaces[0].second.push_back(i);

  for (std::size_t j = 1; j < r; ++j) {
    bool done = std::all_of(spaces.begin(), spaces.end(), [](const auto& s) { return s.first.size() == 1; });
    if (done) break;
    Mat mj = class_matrix(j);
    std::vector<std::pair<Mat, std::vector<std::size_t>>> next;
    for (auto& [basis, pivots] : spaces) {
      const std::size_t m = basis.size();
      if (m == 1) {
        next.push_back({std::move(basis), std::move(pivots)});
        continue;
      }
      Mat a(m, Vec(m, 0));
      for (std::size_t t = 0; t < m; ++t) {
        Vec v(r, 0);
        for (std::size_t i = 0; i < r; ++i)
          for (std::size_t k = 0; k < r; ++k)
            if (mj[i][k] && basis[t][k]) v[i] = f.add(v[i], f.mul(mj[i][k], basis[t][k]));
        for (std::size_t s = 0; s < m; ++s) a[s][t] = v[pivots[s]];
      }
      auto eig = roots(charpoly(a, f), f);
      if (eig.size() <= 1) {
        next.push_back({std::move(basis), std::move(pivots)});
        continue;
      }
      std::size_t covered = 0;
      for (u64 lambda : eig) {
        Mat shifted = a;
        for (std::size_t s = 0; s < m; ++s) shifted[s][s] = f.sub(shifted[s][s], lambda);
        Mat coords = nullspace(shifted, f);
        Mat sub;
        for (const auto& c : coords) {
          Vec v(r, 0);
          for (std::size_t s = 0; s < m; ++s)
            for (std::size_t k = 0; k < r; ++k) v[k] = f.add(v[k], f.mul(c[s], basis[s][k]));
          sub.push_back(std::move(v));
        }
        covered += sub.size();
        auto piv = rref(sub, f);
        next.push_back({std::move(sub), std::move(piv)});
      }
      if (covered != m) throw Error(ErrorCode::Internal, "class matrix not diagonalizable mod p");
    }
    spaces = std::move(next);
  }
  if (spaces.size() != r) throw Error(ErrorCode::Internal, "eigenspaces did not split to dimension one");

  const u64 root = primitive_root(f);
  std::vector<ClassFunction> rows;
  for (auto& [basis, pivots] : spaces) {
    Vec w = basis[0];
    if (w[0] == 0) throw Error(ErrorCode::Internal, "central character vanishes at the identity");
    u64 s = f.inv(w[0]);
    for (auto& x : w) x = f.mul(x, s);
    u64 norm = 0;
    for (std::size_t k = 0; k < r; ++k)
      norm = f.add(norm, f.mul(f.mul(w[k], w[cls.inverse_class(k)]), f.inv(cls[k].size() % p)));
    u64 d2 = f.mul(order % p, f.inv(norm));
    u64 d = 0;
    for (u64 t = 1; t * t <= order; ++t)
      if (f.mul(t, t) == d2) d = t;
    if (d == 0) throw Error(ErrorCode::Internal, "no degree solves d^2 mod p");
    Vec chi(r);
    for (std::size_t k = 0; k < r; ++k) chi[k] = f.mul(f.mul(d, w[k]), f.inv(cls[k].size() % p));

    std::vector<Cyclotomic> values(r);
    for (std::size_t k = 0; k < r; ++k) {
      const u64 o = cls[k].element_order;
      const u64 z = f.pow(root, (p - 1) / o);
      std::vector<long long> mult(o, 0);
      const u64 oinv = f.inv(o % p);
      for (u64 l = 0; l < o; ++l) {
        u64 acc = 0;
        for (u64 j = 0; j < o; ++j) acc = f.add(acc, f.mul(chi[pow[k][j]], f.pow(z, (o - (l * j) % o) % o)));
        u64 ml = f.mul(acc, oinv);
        if (ml > d) throw Error(ErrorCode::Internal, "eigenvalue multiplicity out of range");
        mult[l] = static_cast<long long>(ml);
      }
      values[k] = Cyclotomic::from_exponents(static_cast<long>(o), mult);
    }
    rows.emplace_back(Gp, clsp, std::move(values));
  }
  std::sort(rows.begin(), rows.end(), rows_less);

  // exact verification
  Cyclotomic degree_sum;
  for (const auto& row : rows) degree_sum += row[0] * row[0];
  if (degree_sum != Cyclotomic(static_cast<long>(order)))
    throw Error(ErrorCode::Internal, "degree-square sum differs from |G|");
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = a; b < r; ++b)
      if (inner_product(rows[a], rows[b]) != Cyclotomic(a == b ? 1 : 0))
        throw Error(ErrorCode::Internal, "computed rows are not orthonormal");
  return {Gp, clsp, std::move(rows), static_cast<long>(p)};
}

std::vector<LinearCharacter> linear_characters(GroupPtr H) {
  auto classes = conjugacy_classes(*H);
  return linear_characters(std::move(H), std::move(classes));
}

std::vector<LinearCharacter> linear_characters(GroupPtr Hp, ClassesPtr clsp) {
  const PermutationGroup& H = *Hp;
  auto D = derived_subgroup(H);
  auto didx = embed_subgroup(H, *D);
  constexpr std::uint32_t none = 0xffffffffu;
  std::vector<std::uint32_t> label(H.size(), none);
  std::vector<std::uint32_t> reps;
  for (std::uint32_t h = 0; h < H.size(); ++h) {
    if (label[h] != none) continue;
    auto id = static_cast<std::uint32_t>(reps.size());
    reps.push_back(h);
    for (auto d : didx) label[H.multiply(h, d)] = id;
  }
  const std::size_t n = reps.size();
  auto mult = [&](std::uint32_t a, std::uint32_t b) { return label[H.multiply(reps[a], reps[b])]; };
  auto qorder = [&](std::uint32_t a) {
    long o = 1;
    for (std::uint32_t x = a; x != 0; x = mult(a, x)) ++o;
    return o;
  };
  long exponent = 1;
  for (std::uint32_t a = 0; a < n; ++a) exponent = std::lcm(exponent, qorder(a));

  // greedy generators, largest order first
  std::vector<std::uint32_t> gens;
  std::vector<char> in_span(n, 0);
  in_span[0] = 1;
  std::vector<std::uint32_t> span{0};
  while (span.size() < n) {
    std::uint32_t best = none;
    for (std::uint32_t a = 0; a < n; ++a)
      if (!in_span[a] && (best == none || qorder(a) > qorder(best))) best = a;
    gens.push_back(best);
    for (std::size_t k = 0; k < span.size(); ++k) {
      std::uint32_t y = mult(best, span[k]);
      if (!in_span[y]) {
        in_span[y] = 1;
        span.push_back(y);
      }
    }
  }

  // try every assignment of exponents to the generators, keep the consistent ones
  std::vector<std::vector<long>> found;
  std::vector<long> assign(gens.size(), 0);
  std::vector<long> step(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i) step[i] = exponent / qorder(gens[i]);
  std::function<void(std::size_t)> search = [&](std::size_t i) {
    if (i == gens.size()) {
      std::vector<long> val(n, -1);
      val[0] = 0;
      std::vector<std::uint32_t> queue{0};
      for (std::size_t k = 0; k < queue.size(); ++k)
        for (std::size_t g = 0; g < gens.size(); ++g) {
          std::uint32_t y = mult(gens[g], queue[k]);
          long v = (val[queue[k]] + assign[g]) % exponent;
          if (val[y] < 0) {
            val[y] = v;
            queue.push_back(y);
          } else if (val[y] != v) {
            return;
          }
        }
      found.push_back(std::move(val));
      return;
    }
    for (long a = 0; a < exponent; a += step[i]) {
      assign[i] = a;
      search(i + 1);
    }
  };
  search(0);
  if (found.size() != n)
    throw Error(ErrorCode::Internal, "found " + std::to_string(found.size()) +
                                         " linear characters for a quotient of order " + std::to_string(n));

  const auto& cls = *clsp;
  std::vector<LinearCharacter> out;
  for (const auto& val : found) {
    long g = exponent;
    for (long v : val) g = std::gcd(g, v);
    long order = exponent / g;
    std::vector<long> exps(H.size());
    for (std::uint32_t h = 0; h < H.size(); ++h) exps[h] = val[label[h]] / g;
    std::vector<Cyclotomic> values(cls.count());
    for (std::size_t c = 0; c < cls.count(); ++c)
      values[c] = Cyclotomic::root_of_unity(order, exps[cls[c].representative_index]);
    out.push_back({ClassFunction(Hp, clsp, std::move(values)), order, std::move(exps)});
  }
  auto key = [&](const LinearCharacter& x) {
    std::vector<long> k{x.order};
    for (std::size_t c = 0; c < cls.count(); ++c) k.push_back(x.exponent[cls[c].representative_index]);
    return k;
  };
  std::sort(out.begin(), out.end(),
            [&](const LinearCharacter& a, const LinearCharacter& b) { return key(a) < key(b); });
  return out;
}

const LinearCharacter& select_linear_character(const std::vector<LinearCharacter>& all, long order,
                                               std::size_t index) {
  std::size_t seen = 0;
  for (const auto& x : all)
    if (x.order == order && seen++ == index) return x;
  throw Error(ErrorCode::NoSuchCharacter, "no linear character of order " + std::to_string(order) +
                                              " with index " + std::to_string(index));
}

ClassFunction restrict(const ClassFunction& chi, GroupPtr H, ClassesPtr classes) {
  const auto& G = *chi.group();
  std::vector<Cyclotomic> values;
  for (const auto& c : classes->classes()) {
    auto g = G.find(c.representative);
    if (!g) throw Error(ErrorCode::NotASubgroup, c.representative.cycle_string() + " lies outside G");
    values.push_back(chi.at_element(*g));
  }
  return ClassFunction(std::move(H), std::move(classes), std::move(values));
}

long multiplicity(const ClassFunction& chi, const ClassFunction& nu) {
  Cyclotomic k = inner_product(restrict(chi, nu.group(), nu.classes()), nu);
  if (!k.is_rational() || k.rational_value().get_den() != 1 || sgn(k.rational_value()) < 0)
    throw Error(ErrorCode::NonIntegerMultiplicity, "multiplicity evaluates to " + k.to_string());
  return k.rational_value().get_num().get_si();
}

const ClassFunction& identify_character(const CharacterTable& table, long degree, std::size_t index) {
  std::size_t seen = 0;
  for (const auto& row : table.rows)
    if (row.degree() == degree && seen++ == index) return row;
  throw Error(ErrorCode::NoSuchCharacter, "no irreducible character of degree " + std::to_string(degree) +
                                              " with index " + std::to_string(index));
}

}  // namespace symframes
