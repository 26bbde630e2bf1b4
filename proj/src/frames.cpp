#include "symframes/frames.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_map>

#include "symframes/error.hpp"

namespace symframes {

namespace {

constexpr std::uint32_t kNone = 0xffffffffu;

long mod(long a, long m) {
  long r = a % m;
  return r < 0 ? r + m : r;
}

struct GeneratorPhase {
  std::uint32_t element;
  long shift;
};

std::vector<GeneratorPhase> generator_phases(const PermutationGroup& G, const PermutationGroup& H,
                                             const LinearCharacter& nu, long modulus) {
  std::vector<GeneratorPhase> out;
  for (const auto& h : H.generators()) {
    long e = nu.exponent[H.index_of(h)] * (modulus / nu.order);
    out.push_back({G.index_of(h), mod(-e, modulus)});
  }
  return out;
}

// sum_c chi_c * (sum_k counts[c][k] zeta_m^k) / denominator
Cyclotomic class_phase_sum(const ClassFunction& chi, const std::vector<long long>& counts, long m,
                           long long denominator) {
  Cyclotomic sum;
  const std::size_t nclasses = chi.values().size();
  for (std::size_t c = 0; c < nclasses; ++c) {
    auto first = counts.begin() + static_cast<long>(c * m);
    if (std::all_of(first, first + m, [](long long v) { return v == 0; })) continue;
    if (chi[c].is_zero()) continue;
    sum += chi[c] * Cyclotomic::from_exponents(m, std::span<const long long>(&*first, m));
  }
  return sum * Cyclotomic(mpq_class(1, static_cast<unsigned long>(denominator)));
}

Cyclotomic phased(const Cyclotomic& v, long modulus, std::uint32_t phase) {
  if (v.is_zero() || phase == 0) return v;
  return v * Cyclotomic::root_of_unity(modulus, phase);
}

}  // namespace

PhasedCells label_double_cosets(const PermutationGroup& G, const PermutationGroup& H1,
                                const LinearCharacter& nu1, const PermutationGroup& H2,
                                const LinearCharacter& nu2) {
  PhasedCells out;
  out.modulus = std::lcm(nu1.order, nu2.order);
  const long M = out.modulus;
  auto left = generator_phases(G, H1, nu1, M);
  auto right = generator_phases(G, H2, nu2, M);
  out.cell_of.assign(G.size(), kNone);
  out.phase_of.assign(G.size(), 0);
  std::vector<std::uint32_t> queue;
  for (std::uint32_t g = 0; g < G.size(); ++g) {
    if (out.cell_of[g] != kNone) continue;
    auto cell = static_cast<std::uint32_t>(out.cells.size());
    bool consistent = true;
    queue.assign(1, g);
    out.cell_of[g] = cell;
    auto visit = [&](std::uint32_t y, std::uint32_t phase) {
      if (out.cell_of[y] == kNone) {
        out.cell_of[y] = cell;
        out.phase_of[y] = phase;
        queue.push_back(y);
      } else if (out.phase_of[y] != phase) {
        consistent = false;
      }
    };
    for (std::size_t k = 0; k < queue.size(); ++k) {
      std::uint32_t x = queue[k];
      for (const auto& s : left)
        visit(G.multiply(s.element, x), static_cast<std::uint32_t>(mod(out.phase_of[x] + s.shift, M)));
      for (const auto& s : right)
        visit(G.multiply(x, s.element), static_cast<std::uint32_t>(mod(out.phase_of[x] + s.shift, M)));
    }
    out.cells.push_back({g, queue.size(), consistent});
  }
  return out;
}

LinearCharacter as_linear_character(const ClassFunction& nu) {
  if (nu.degree() != 1)
    throw Error(ErrorCode::NotLinearCharacter, "class function has value " + nu[0].to_string() +
                                                   " at the identity");
  const auto& H = *nu.group();
  long order = 1;
  for (const auto& v : nu.values()) {
    long o = 0;
    for (long m = 1; m <= 2 * static_cast<long>(H.order()) && o == 0; ++m) {
      Cyclotomic p(1);
      for (long t = 0; t < m; ++t) p *= v;
      if (p == Cyclotomic(1)) o = m;
    }
    if (o == 0) throw Error(ErrorCode::NotLinearCharacter, nu[0].to_string() + " is not a root of unity");
    order = std::lcm(order, o);
  }
  std::vector<long> exps(H.size());
  std::vector<long> class_exp(nu.values().size(), -1);
  for (std::size_t c = 0; c < class_exp.size(); ++c)
    for (long k = 0; k < order && class_exp[c] < 0; ++k)
      if (Cyclotomic::root_of_unity(order, k) == nu[c]) class_exp[c] = k;
  for (std::uint32_t h = 0; h < H.size(); ++h) exps[h] = class_exp[nu.classes()->class_of(h)];
  for (std::uint32_t a = 0; a < H.size() && a < 1000; ++a)
    for (std::uint32_t b = 0; b < H.size() && b < 1000; ++b)
      if ((exps[a] + exps[b]) % order != exps[H.multiply(a, b)])
        throw Error(ErrorCode::NotLinearCharacter, "class function is not multiplicative");
  return {nu, order, std::move(exps)};
}

Cyclotomic TwistedSphericalRow::evaluate(std::uint32_t g) const {
  return phased(cells[labels.cell_of[g]].value, labels.modulus, labels.phase_of[g]);
}

RowPtr twisted_spherical(GroupPtr Gp, const ClassFunction& chi, GroupPtr Hp, const LinearCharacter& nu) {
  const auto& G = *Gp;
  const auto& H = *Hp;
  long k = multiplicity(chi, nu.character);
  if (k == 0)
    throw Error(ErrorCode::ZeroMultiplicity, "nu does not occur in the restriction of chi");
  auto row = std::make_shared<TwistedSphericalRow>(TwistedSphericalRow{
      Gp, chi, Hp, nu, chi.degree(), k, k > 1, {}, label_double_cosets(G, H, nu, H, nu)});
  auto hidx = embed_subgroup(G, H);
  const long m = nu.order;
  const auto& cls = *chi.classes();
  std::vector<long long> counts(cls.count() * m);
  for (const auto& cell : row->labels.cells) {
    Cyclotomic value;
    if (cell.consistent) {
      std::fill(counts.begin(), counts.end(), 0);
      std::uint32_t ginv = G.inverse(cell.representative);
      for (std::size_t j = 0; j < hidx.size(); ++j) {
        std::uint32_t x = G.multiply(hidx[j], ginv);
        ++counts[cls.class_of(x) * m + mod(-nu.exponent[j], m)];
      }
      value = class_phase_sum(chi, counts, m, static_cast<long long>(H.order()));
    }
    row->cells.push_back({G.element(cell.representative), cell.representative, cell.size, std::move(value)});
  }
  if (row->evaluate(0) != Cyclotomic(k))
    throw Error(ErrorCode::Internal, "row at the identity differs from the multiplicity");
  return row;
}

Cyclotomic spherical_sum(const TwistedSphericalRow& row, std::uint32_t g) {
  const auto& G = *row.group;
  auto hidx = embed_subgroup(G, *row.subgroup);
  const long m = row.nu.order;
  std::vector<long long> counts(row.chi.values().size() * m, 0);
  std::uint32_t ginv = G.inverse(g);
  for (std::size_t j = 0; j < hidx.size(); ++j)
    ++counts[row.chi.classes()->class_of(G.multiply(hidx[j], ginv)) * m + mod(-row.nu.exponent[j], m)];
  return class_phase_sum(row.chi, counts, m, static_cast<long long>(row.subgroup->order()));
}

Cyclotomic evaluate_row(const TwistedSphericalRow& row, const Permutation& g) {
  return row.evaluate(row.group->index_of(g));
}

std::vector<Cyclotomic> row_values(const TwistedSphericalRow& row) {
  std::vector<Cyclotomic> out(row.group->size());
  for (std::uint32_t g = 0; g < out.size(); ++g) out[g] = row.evaluate(g);
  return out;
}

GroupGram gram(const TwistedSphericalRow& row) {
  std::vector<std::uint32_t> all(row.group->size());
  std::iota(all.begin(), all.end(), 0u);
  return gram(row, all);
}

GroupGram gram(const TwistedSphericalRow& row, const std::vector<std::uint32_t>& index) {
  const auto& G = *row.group;
  const std::size_t n = index.size();
  GroupGram out{index, ExactMatrix(n, n), row.dimension};
  std::unordered_map<std::uint64_t, std::uint32_t> ids;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::uint32_t x = G.multiply(G.inverse(index[j]), index[i]);
      std::uint64_t key = (static_cast<std::uint64_t>(row.labels.cell_of[x]) << 32) | row.labels.phase_of[x];
      auto it = ids.find(key);
      if (it == ids.end()) it = ids.emplace(key, out.entries.intern(row.evaluate(x))).first;
      out.entries.set(i, j, it->second);
    }
  return out;
}

std::optional<Cyclotomic> exact_modulus(const Cyclotomic& z) {
  if (z.is_zero()) return Cyclotomic();
  long e = z.conductor();
  long n = e % 2 ? 2 * e : e;
  for (long k = 0; k < n; ++k) {
    Cyclotomic w = z * Cyclotomic::root_of_unity(n, k);
    if (w.is_real() && compare_real(w, mpq_class(0)) == Ordering::Greater) return w;
  }
  Cyclotomic a2 = abs_squared(z);
  if (a2.is_rational()) return Cyclotomic::sqrt_rational(a2.rational_value());
  return std::nullopt;
}

std::vector<Angle> tally_angles(const std::vector<std::pair<Cyclotomic, std::size_t>>& values) {
  std::vector<Angle> out;
  for (const auto& [a2, count] : values) {
    auto it = std::find_if(out.begin(), out.end(), [&](const Angle& x) { return x.abs_squared == a2; });
    if (it != out.end()) {
      it->count += count;
      continue;
    }
    out.push_back({a2, std::nullopt, count});
  }
  for (auto& a : out) {
    if (a.abs_squared.is_rational()) {
      a.modulus = Cyclotomic::sqrt_rational(a.abs_squared.rational_value());
    } else {
      // try to find a cyclotomic square root among the roots of a2 scaled by units
      a.modulus = std::nullopt;
    }
  }
  std::sort(out.begin(), out.end(), [](const Angle& x, const Angle& y) {
    return compare_real(x.abs_squared, y.abs_squared) == Ordering::Greater;
  });
  return out;
}

HomogenizedFrame homogenize(RowPtr row) {
  if (row->multiplicity != 1)
    throw Error(ErrorCode::MultiplicityNotOne, "homogenization needs multiplicity one");
  const auto& G = *row->group;
  const std::size_t ncells = row->cells.size();
  std::vector<Cyclotomic> cell_abs2(ncells);
  std::vector<char> unit(ncells, 0);
  for (std::size_t c = 0; c < ncells; ++c) {
    cell_abs2[c] = abs_squared(row->cells[c].value);
    unit[c] = cell_abs2[c] == Cyclotomic(1);
  }
  std::vector<std::uint32_t> line_stab, vector_stab;
  std::vector<Cyclotomic> gon_values;
  for (std::uint32_t g = 0; g < G.size(); ++g) {
    if (!unit[row->labels.cell_of[g]]) continue;
    line_stab.push_back(g);
    Cyclotomic v = row->evaluate(g);
    if (v == Cyclotomic(1)) vector_stab.push_back(g);
    if (std::find(gon_values.begin(), gon_values.end(), v) == gon_values.end()) gon_values.push_back(v);
  }
  auto Hl = subgroup_from_elements(G, line_stab);
  auto Hv = subgroup_from_elements(G, vector_stab);
  if (Hl->order() != line_stab.size() || Hv->order() != vector_stab.size())
    throw Error(ErrorCode::StabilizerNotSubgroup, "unit-modulus set does not close under products");

  HomogenizedFrame out;
  out.row = row;
  out.line_representatives = coset_representative_indices(G, *Hl);
  out.vector_representatives = coset_representative_indices(G, *Hv);
  const auto& reps = out.line_representatives;
  std::vector<std::size_t> per_cell(ncells, 0);
  for (std::size_t i = 0; i < reps.size(); ++i)
    for (std::size_t j = 0; j < reps.size(); ++j)
      if (i != j) ++per_cell[row->labels.cell_of[G.multiply(G.inverse(reps[j]), reps[i])]];
  std::vector<std::pair<Cyclotomic, std::size_t>> values;
  for (std::size_t c = 0; c < ncells; ++c)
    if (per_cell[c]) values.push_back({cell_abs2[c], per_cell[c]});
  auto angles = tally_angles(values);
  for (auto& a : angles) {
    if (a.modulus) continue;
    for (std::size_t c = 0; c < ncells && !a.modulus; ++c)
      if (cell_abs2[c] == a.abs_squared) a.modulus = exact_modulus(row->cells[c].value);
  }
  out.summary = {reps.size(),       out.vector_representatives.size(), Hl->order(), Hv->order(),
                 gon_values.size(), std::move(angles)};
  return out;
}

const std::vector<Angle>& angle_set(const LineSystemSummary& summary) { return summary.angles; }

Cyclotomic CrossGramRow::evaluate(std::uint32_t g) const {
  if (!exact_values)
    throw Error(ErrorCode::NormalizationNotExact, "cross-row scale is not cyclotomic");
  return phased(cells[labels.cell_of[g]].value, labels.modulus, labels.phase_of[g]);
}

CrossPtr cross_row(GroupPtr Gp, const ClassFunction& chi, GroupPtr H1p, const LinearCharacter& nu1,
                   GroupPtr H2p, const LinearCharacter& nu2) {
  const auto& G = *Gp;
  if (multiplicity(chi, nu1.character) != 1 || multiplicity(chi, nu2.character) != 1)
    throw Error(ErrorCode::MultiplicityNotOne, "cross rows need both multiplicities equal to one");
  auto labels = label_double_cosets(G, *H1p, nu1, *H2p, nu2);
  const long M = labels.modulus;
  const long f1 = M / nu1.order, f2 = M / nu2.order;
  auto h1 = embed_subgroup(G, *H1p);
  auto h2 = embed_subgroup(G, *H2p);
  const auto& cls = *chi.classes();
  const auto denominator = static_cast<long long>(H1p->order() * H2p->order());
  const long d = chi.degree();

  std::vector<std::uint32_t> candidates{0};
  for (const auto& cell : labels.cells)
    if (cell.representative != 0) candidates.push_back(G.inverse(cell.representative));

  struct Attempt {
    std::uint32_t a;
    std::vector<Cyclotomic> raw;
    Cyclotomic s;
  };
  std::optional<Attempt> chosen;
  std::vector<long long> counts(cls.count() * M);
  for (std::uint32_t a : candidates) {
    std::uint32_t ainv = G.inverse(a);
    std::vector<Cyclotomic> raw;
    bool nonzero = false;
    for (const auto& cell : labels.cells) {
      Cyclotomic value;
      if (cell.consistent) {
        std::fill(counts.begin(), counts.end(), 0);
        std::uint32_t ginv = G.inverse(cell.representative);
        for (std::size_t j2 = 0; j2 < h2.size(); ++j2) {
          std::uint32_t y = G.multiply(G.multiply(ainv, h2[j2]), ginv);
          long base = -nu2.exponent[j2] * f2;
          for (std::size_t j1 = 0; j1 < h1.size(); ++j1) {
            std::uint32_t z = G.multiply(y, h1[j1]);
            ++counts[cls.class_of(z) * M + mod(base - nu1.exponent[j1] * f1, M)];
          }
        }
        value = class_phase_sum(chi, counts, M, denominator);
      }
      nonzero = nonzero || !value.is_zero();
      raw.push_back(std::move(value));
    }
    if (!nonzero) continue;
    // the raw sum equals Y(x) conj(Y(a^-1)); its value at a^-1 is |Y(a^-1)|^2
    Cyclotomic s = phased(raw[labels.cell_of[ainv]], M, labels.phase_of[ainv]);
    if (s.is_zero()) continue;
    if (!s.is_real() || compare_real(s, mpq_class(0)) != Ordering::Greater)
      throw Error(ErrorCode::Internal, "cross sum at a^-1 is not positive: " + s.to_string());
    Cyclotomic total;
    for (std::size_t c = 0; c < raw.size(); ++c)
      total += Cyclotomic(static_cast<long>(labels.cells[c].size)) * abs_squared(raw[c]);
    if (total != s * Cyclotomic(mpq_class(static_cast<long>(G.order()), d)))
      throw Error(ErrorCode::Internal, "cross-row norm identity failed");
    bool rational = s.is_rational();
    if (!chosen || rational) chosen = Attempt{a, std::move(raw), s};
    if (rational) break;
  }
  if (!chosen) throw Error(ErrorCode::AllChoicesZero, "cross sum vanishes for every candidate a");

  const bool exact = chosen->s.is_rational();
  auto out = std::make_shared<CrossGramRow>(CrossGramRow{
      Gp, chi, H1p, nu1, H2p, nu2, d, chosen->a, {}, {}, chosen->s.inverse(), std::nullopt, exact, true, {}});
  if (exact) out->scale = Cyclotomic::sqrt_rational(chosen->s.rational_value()).inverse();
  for (std::size_t c = 0; c < labels.cells.size(); ++c) {
    const auto& cell = labels.cells[c];
    Cyclotomic v = out->exact_values ? chosen->raw[c] * *out->scale : chosen->raw[c];
    out->abs_squared.push_back(abs_squared(chosen->raw[c]) * out->scale_squared);
    out->cells.push_back({G.element(cell.representative), cell.representative, cell.size, std::move(v)});
  }
  out->labels = std::move(labels);
  return out;
}

ClassFunction isotypic_projection_row(const ClassFunction& chi) {
  Cyclotomic scale(mpq_class(chi.degree(), static_cast<long>(chi.group()->order())));
  std::vector<Cyclotomic> values;
  for (const auto& v : chi.values()) values.push_back(scale * v.conj());
  return ClassFunction(chi.group(), chi.classes(), std::move(values));
}

std::vector<Cyclotomic> convolve(const PermutationGroup& G, const std::vector<Cyclotomic>& f1,
                                 const std::vector<Cyclotomic>& f2) {
  std::vector<Cyclotomic> out(G.size());
  for (std::uint32_t h = 0; h < G.size(); ++h) {
    if (f1[h].is_zero()) continue;
    std::uint32_t hinv = G.inverse(h);
    for (std::uint32_t g = 0; g < G.size(); ++g) {
      const auto& b = f2[G.multiply(hinv, g)];
      if (!b.is_zero()) out[g] += f1[h] * b;
    }
  }
  return out;
}

}  // namespace symframes
