#include "symframes/permutation.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <unordered_set>

#include "symframes/error.hpp"

namespace symframes {

namespace {

constexpr std::uint32_t kEmpty = 0xffffffffu;

void compose_into(std::span<const Point> p, std::span<const Point> q, Point* out) {
  for (std::size_t x = 0; x < q.size(); ++x) out[x] = p[q[x]];
}

}  // namespace

std::uint64_t hash_points(std::span<const Point> pts) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (Point x : pts) {
    h ^= x;
    h *= 0x100000001b3ull;
  }
  return h ^ (h >> 29);
}

std::size_t PermutationHash::operator()(const Permutation& p) const {
  return static_cast<std::size_t>(hash_points(p.images()));
}

Permutation Permutation::identity(std::size_t degree) {
  std::vector<Point> im(degree);
  std::iota(im.begin(), im.end(), Point{0});
  return Permutation(std::move(im));
}

Permutation Permutation::from_images(std::vector<Point> images) {
  std::vector<char> seen(images.size(), 0);
  for (std::size_t i = 0; i < images.size(); ++i) {
    Point x = images[i];
    if (x >= images.size() || seen[x])
      throw Error(ErrorCode::NonBijectiveImage,
                  "image of point " + std::to_string(i + 1) + " repeats or is out of range");
    seen[x] = 1;
  }
  return Permutation(std::move(images));
}

Permutation Permutation::from_one_based(const std::vector<int>& images) {
  if (images.size() > 0xffff) throw Error(ErrorCode::DegreeMismatch, "degree above 65535");
  std::vector<Point> im(images.size());
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (images[i] < 1 || static_cast<std::size_t>(images[i]) > images.size())
      throw Error(ErrorCode::NonBijectiveImage,
                  "image " + std::to_string(images[i]) + " out of range at position " +
                      std::to_string(i + 1));
    im[i] = static_cast<Point>(images[i] - 1);
  }
  return from_images(std::move(im));
}

Permutation Permutation::from_cycles(std::size_t degree,
                                     const std::vector<std::vector<int>>& cycles) {
  std::vector<int> im(degree);
  std::iota(im.begin(), im.end(), 1);
  for (const auto& cyc : cycles) {
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      int a = cyc[i], b = cyc[(i + 1) % cyc.size()];
      if (a < 1 || static_cast<std::size_t>(a) > degree)
        throw Error(ErrorCode::NonBijectiveImage, "cycle point out of range");
      im[a - 1] = b;
    }
  }
  return from_one_based(im);
}

std::vector<int> Permutation::one_based() const {
  std::vector<int> out(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) out[i] = images_[i] + 1;
  return out;
}

Permutation Permutation::operator*(const Permutation& rhs) const {
  if (degree() != rhs.degree()) throw Error(ErrorCode::DegreeMismatch, "composing unequal degrees");
  std::vector<Point> im(degree());
  compose_into(images_, rhs.images_, im.data());
  return Permutation(std::move(im));
}

Permutation Permutation::inverse() const {
  std::vector<Point> im(degree());
  for (std::size_t x = 0; x < degree(); ++x) im[images_[x]] = static_cast<Point>(x);
  return Permutation(std::move(im));
}

bool Permutation::is_identity() const {
  for (std::size_t x = 0; x < degree(); ++x)
    if (images_[x] != x) return false;
  return true;
}

std::uint64_t Permutation::order() const {
  std::vector<char> seen(degree(), 0);
  std::uint64_t ord = 1;
  for (std::size_t x = 0; x < degree(); ++x) {
    if (seen[x]) continue;
    std::uint64_t len = 0;
    for (std::size_t y = x; !seen[y]; y = images_[y]) {
      seen[y] = 1;
      ++len;
    }
    ord = std::lcm(ord, len);
  }
  return ord;
}

std::string Permutation::cycle_string() const {
  std::ostringstream out;
  std::vector<char> seen(degree(), 0);
  for (std::size_t x = 0; x < degree(); ++x) {
    if (seen[x] || images_[x] == x) continue;
    out << '(';
    for (std::size_t y = x; !seen[y]; y = images_[y]) {
      seen[y] = 1;
      if (y != x) out << ',';
      out << y + 1;
    }
    out << ')';
  }
  std::string s = out.str();
  return s.empty() ? "()" : s;
}

std::uint64_t schreier_sims_order(std::size_t degree, const std::vector<Permutation>& gens) {
  std::vector<Point> base;
  std::vector<Permutation> strong;
  auto ensure_moved = [&](const Permutation& p) {
    for (Point b : base)
      if (p(b) != b) return;
    for (std::size_t x = 0; x < degree; ++x)
      if (p(static_cast<Point>(x)) != x) {
        base.push_back(static_cast<Point>(x));
        return;
      }
  };
  for (const auto& g : gens) {
    if (g.degree() != degree) throw Error(ErrorCode::DegreeMismatch, "generator degree");
    if (!g.is_identity()) {
      strong.push_back(g);
      ensure_moved(g);
    }
  }

  struct Orbit {
    std::vector<int> slot;
    std::vector<Point> points;
    std::vector<Permutation> transversal;
    std::vector<Permutation> gens;
  };
  std::vector<std::optional<Orbit>> cache;

  auto orbit = [&](std::size_t i) -> const Orbit& {
    if (cache.size() < base.size()) cache.resize(base.size());
    if (cache[i]) return *cache[i];
    Orbit o;
    for (const auto& s : strong) {
      bool fixes = true;
      for (std::size_t l = 0; l < i && fixes; ++l) fixes = s(base[l]) == base[l];
      if (fixes) o.gens.push_back(s);
    }
    o.slot.assign(degree, -1);
    o.points.push_back(base[i]);
    o.transversal.push_back(Permutation::identity(degree));
    o.slot[base[i]] = 0;
    for (std::size_t k = 0; k < o.points.size(); ++k) {
      for (const auto& s : o.gens) {
        Point y = s(o.points[k]);
        if (o.slot[y] >= 0) continue;
        o.slot[y] = static_cast<int>(o.points.size());
        o.points.push_back(y);
        o.transversal.push_back(s * o.transversal[k]);
      }
    }
    cache[i] = std::move(o);
    return *cache[i];
  };

  auto sift = [&](Permutation h, std::size_t start) {
    for (std::size_t l = start; l < base.size(); ++l) {
      const Orbit& o = orbit(l);
      int k = o.slot[h(base[l])];
      if (k < 0) return h;
      h = o.transversal[k].inverse() * h;
    }
    return h;
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = base.size(); i-- > 0 && !changed;) {
      const Orbit o = orbit(i);
      for (std::size_t k = 0; k < o.points.size() && !changed; ++k) {
        for (const auto& s : o.gens) {
          Point y = s(o.points[k]);
          Permutation h = o.transversal[o.slot[y]].inverse() * s * o.transversal[k];
          Permutation r = sift(std::move(h), i + 1);
          if (!r.is_identity()) {
            strong.push_back(r);
            ensure_moved(r);
            cache.clear();
            changed = true;
            break;
          }
        }
      }
    }
  }
  std::uint64_t order = 1;
  for (std::size_t i = 0; i < base.size(); ++i) order *= orbit(i).points.size();
  return order;
}

PermutationGroup::PermutationGroup(std::size_t degree, std::vector<Permutation> generators,
                                   std::size_t cap)
    : degree_(degree), generators_(std::move(generators)) {
  if (degree_ == 0 || degree_ > 0xffff)
    throw Error(ErrorCode::DegreeMismatch, "degree must lie in 1..65535");
  for (const auto& g : generators_)
    if (g.degree() != degree_)
      throw Error(ErrorCode::DegreeMismatch, "generator of degree " + std::to_string(g.degree()) +
                                                 " in a group of degree " + std::to_string(degree_));
  order_ = schreier_sims_order(degree_, generators_);
  if (order_ > cap) return;

  std::size_t capacity = 16;
  while (capacity < 2 * order_) capacity <<= 1;
  slots_.assign(capacity, kEmpty);
  data_.reserve(order_ * degree_);
  insert(Permutation::identity(degree_).images());
  std::vector<Point> scratch(degree_);
  for (std::size_t k = 0; k < size(); ++k) {
    for (const auto& g : generators_) {
      compose_into(g.images(), images(k), scratch.data());
      if (!find(scratch)) insert(scratch);
    }
  }
  if (size() != order_)
    throw Error(ErrorCode::Internal, "enumeration found " + std::to_string(size()) +
                                         " elements, Schreier-Sims " + std::to_string(order_));
  enumerated_ = true;

  inverse_.resize(size());
  for (std::size_t k = 0; k < size(); ++k) {
    auto im = images(k);
    for (std::size_t x = 0; x < degree_; ++x) scratch[im[x]] = static_cast<Point>(x);
    inverse_[k] = *find(scratch);
  }
}

std::size_t PermutationGroup::size() const { return data_.size() / degree_; }

void PermutationGroup::require_enumerated() const {
  if (!enumerated_)
    throw Error(ErrorCode::OrderExceedsCap,
                "group of order " + std::to_string(order_) + " is not enumerated");
}

std::uint32_t PermutationGroup::insert(std::span<const Point> im) {
  auto idx = static_cast<std::uint32_t>(size());
  data_.insert(data_.end(), im.begin(), im.end());
  std::size_t mask = slots_.size() - 1;
  std::size_t s = hash_points(im) & mask;
  while (slots_[s] != kEmpty) s = (s + 1) & mask;
  slots_[s] = idx;
  return idx;
}

std::optional<std::uint32_t> PermutationGroup::find(std::span<const Point> im) const {
  if (slots_.empty()) require_enumerated();
  if (im.size() != degree_) return std::nullopt;
  std::size_t mask = slots_.size() - 1;
  std::size_t s = hash_points(im) & mask;
  while (slots_[s] != kEmpty) {
    auto cand = images(slots_[s]);
    if (std::equal(cand.begin(), cand.end(), im.begin())) return slots_[s];
    s = (s + 1) & mask;
  }
  return std::nullopt;
}

Permutation PermutationGroup::element(std::size_t i) const {
  require_enumerated();
  auto im = images(i);
  return Permutation::from_images(std::vector<Point>(im.begin(), im.end()));
}

std::uint32_t PermutationGroup::index_of(const Permutation& p) const {
  require_enumerated();
  auto k = find(p);
  if (!k) throw Error(ErrorCode::ElementNotInGroup, p.cycle_string() + " is not in the group");
  return *k;
}

std::uint32_t PermutationGroup::multiply(std::uint32_t a, std::uint32_t b) const {
  thread_local std::vector<Point> scratch;
  scratch.resize(degree_);
  compose_into(images(a), images(b), scratch.data());
  return *find(scratch);
}

std::uint32_t PermutationGroup::element_order(std::uint32_t a) const {
  std::uint32_t ord = 1;
  for (std::uint32_t x = a; x != 0; x = multiply(a, x)) ++ord;
  return ord;
}

GroupPtr group_from_generators(std::size_t degree, std::vector<Permutation> generators,
                               std::size_t cap) {
  return std::make_shared<const PermutationGroup>(degree, std::move(generators), cap);
}

std::vector<std::uint32_t> embed_subgroup(const PermutationGroup& G, const PermutationGroup& H) {
  if (G.degree() != H.degree()) throw Error(ErrorCode::NotASubgroup, "degrees differ");
  for (const auto& h : H.generators())
    if (!G.contains(h))
      throw Error(ErrorCode::NotASubgroup, "generator " + h.cycle_string() + " lies outside G");
  std::vector<std::uint32_t> out(H.size());
  for (std::size_t k = 0; k < H.size(); ++k) out[k] = *G.find(H.images(k));
  return out;
}

GroupPtr subgroup_from_elements(const PermutationGroup& G,
                                const std::vector<std::uint32_t>& elements) {
  std::vector<Permutation> gens;
  auto current = group_from_generators(G.degree(), gens);
  for (std::uint32_t e : elements) {
    if (current->find(G.images(e))) continue;
    gens.push_back(G.element(e));
    current = group_from_generators(G.degree(), gens);
  }
  return current;
}

ConjugacyClassSet::ConjugacyClassSet(std::vector<ConjugacyClass> classes,
                                     std::vector<std::uint32_t> class_of,
                                     std::vector<std::uint32_t> inverse_class)
    : classes_(std::move(classes)),
      class_of_(std::move(class_of)),
      inverse_class_(std::move(inverse_class)) {}

std::uint32_t ConjugacyClassSet::power_class(const PermutationGroup& G, std::uint32_t c,
                                             long k) const {
  const auto& cl = classes_[c];
  long o = cl.element_order;
  long e = ((k % o) + o) % o;
  std::uint32_t x = 0;
  std::uint32_t g = cl.representative_index;
  for (long i = 0; i < e; ++i) x = G.multiply(g, x);
  return class_of_[x];
}

ClassesPtr conjugacy_classes(const PermutationGroup& G) {
  if (!G.enumerated())
    throw Error(ErrorCode::OrderExceedsCap, "conjugacy classes need an enumerated group");
  const std::size_t n = G.size();
  std::vector<std::uint32_t> gen_idx, gen_inv;
  for (const auto& g : G.generators()) {
    gen_idx.push_back(G.index_of(g));
    gen_inv.push_back(G.inverse(gen_idx.back()));
  }
  std::vector<std::uint32_t> raw_of(n, kEmpty);
  std::vector<std::vector<std::uint32_t>> raw;
  for (std::uint32_t x = 0; x < n; ++x) {
    if (raw_of[x] != kEmpty) continue;
    auto id = static_cast<std::uint32_t>(raw.size());
    std::vector<std::uint32_t> members{x};
    raw_of[x] = id;
    for (std::size_t k = 0; k < members.size(); ++k) {
      for (std::size_t j = 0; j < gen_idx.size(); ++j) {
        std::uint32_t y = G.multiply(G.multiply(gen_idx[j], members[k]), gen_inv[j]);
        if (raw_of[y] == kEmpty) {
          raw_of[y] = id;
          members.push_back(y);
        }
      }
    }
    raw.push_back(std::move(members));
  }

  auto lex_less = [&](std::uint32_t a, std::uint32_t b) {
    auto ia = G.images(a), ib = G.images(b);
    return std::lexicographical_compare(ia.begin(), ia.end(), ib.begin(), ib.end());
  };
  std::vector<ConjugacyClass> classes;
  for (auto& members : raw) {
    std::sort(members.begin(), members.end());
    std::uint32_t rep = *std::min_element(members.begin(), members.end(), lex_less);
    classes.push_back({G.element(rep), rep, G.element_order(rep), std::move(members)});
  }
  std::sort(classes.begin(), classes.end(), [&](const ConjugacyClass& a, const ConjugacyClass& b) {
    if (a.element_order != b.element_order) return a.element_order < b.element_order;
    if (a.size() != b.size()) return a.size() < b.size();
    return lex_less(a.representative_index, b.representative_index);
  });
  std::vector<std::uint32_t> class_of(n);
  for (std::size_t c = 0; c < classes.size(); ++c)
    for (auto m : classes[c].members) class_of[m] = static_cast<std::uint32_t>(c);

  std::vector<std::uint32_t> inverse_class(classes.size());
  for (std::size_t c = 0; c < classes.size(); ++c)
    inverse_class[c] = class_of[G.inverse(classes[c].representative_index)];
  return std::make_shared<const ConjugacyClassSet>(std::move(classes), std::move(class_of),
                                                   std::move(inverse_class));
}

GroupPtr derived_subgroup(const PermutationGroup& H) {
  if (!H.enumerated()) throw Error(ErrorCode::OrderExceedsCap, "derived subgroup needs enumeration");
  std::vector<Permutation> gens;
  const auto& hg = H.generators();
  for (std::size_t i = 0; i < hg.size(); ++i)
    for (std::size_t j = i + 1; j < hg.size(); ++j) {
      Permutation c = hg[i].inverse() * hg[j].inverse() * hg[i] * hg[j];
      if (!c.is_identity()) gens.push_back(std::move(c));
    }
  auto D = group_from_generators(H.degree(), gens);
  // normal closure
  for (bool grew = true; grew;) {
    grew = false;
    for (std::size_t k = 0; k < D->generators().size() && !grew; ++k)
      for (const auto& h : hg) {
        Permutation c = h * D->generators()[k] * h.inverse();
        if (!D->contains(c)) {
          gens.push_back(std::move(c));
          D = group_from_generators(H.degree(), gens);
          grew = true;
          break;
        }
      }
  }
  return D;
}

std::vector<std::uint32_t> coset_representative_indices(const PermutationGroup& G,
                                                        const PermutationGroup& H) {
  auto hidx = embed_subgroup(G, H);
  std::vector<char> covered(G.size(), 0);
  std::vector<std::uint32_t> reps;
  for (std::uint32_t g = 0; g < G.size(); ++g) {
    if (covered[g]) continue;
    reps.push_back(g);
    for (auto h : hidx) covered[G.multiply(g, h)] = 1;
  }
  return reps;
}

std::vector<Permutation> coset_representatives(const PermutationGroup& G,
                                               const PermutationGroup& H) {
  std::vector<Permutation> out;
  for (auto k : coset_representative_indices(G, H)) out.push_back(G.element(k));
  return out;
}

DoubleCosetDecomposition double_cosets(const PermutationGroup& G, GroupPtr H1, GroupPtr H2) {
  if (!G.enumerated()) throw Error(ErrorCode::OrderExceedsCap, "double cosets need enumeration");
  embed_subgroup(G, *H1);
  embed_subgroup(G, *H2);
  std::vector<std::uint32_t> left, right;
  for (const auto& h : H1->generators()) left.push_back(G.index_of(h));
  for (const auto& h : H2->generators()) right.push_back(G.index_of(h));

  DoubleCosetDecomposition dc{std::move(H1), std::move(H2), {}, std::vector<std::uint32_t>(G.size(), kEmpty)};
  std::vector<std::uint32_t> queue;
  for (std::uint32_t g = 0; g < G.size(); ++g) {
    if (dc.cell_of[g] != kEmpty) continue;
    auto cell = static_cast<std::uint32_t>(dc.cells.size());
    queue.assign(1, g);
    dc.cell_of[g] = cell;
    for (std::size_t k = 0; k < queue.size(); ++k) {
      std::uint32_t x = queue[k];
      for (auto s : left) {
        std::uint32_t y = G.multiply(s, x);
        if (dc.cell_of[y] == kEmpty) {
          dc.cell_of[y] = cell;
          queue.push_back(y);
        }
      }
      for (auto s : right) {
        std::uint32_t y = G.multiply(x, s);
        if (dc.cell_of[y] == kEmpty) {
          dc.cell_of[y] = cell;
          queue.push_back(y);
        }
      }
    }
    dc.cells.push_back({G.element(g), g, queue.size()});
  }
  return dc;
}

SubgroupSearch find_subgroups(const PermutationGroup& G,
                              const std::function<bool(const PermutationGroup&)>& predicate,
                              std::size_t budget, std::uint64_t seed) {
  if (!G.enumerated()) throw Error(ErrorCode::OrderExceedsCap, "subgroup search needs enumeration");
  SubgroupSearch result;
  std::set<std::vector<std::uint32_t>> seen;
  std::size_t examined = 0;

  auto element_set = [&](const PermutationGroup& K) {
    std::vector<std::uint32_t> s(K.size());
    for (std::size_t k = 0; k < K.size(); ++k) s[k] = *G.find(K.images(k));
    std::sort(s.begin(), s.end());
    return s;
  };
  // Returns false once the budget is spent.
  auto consider = [&](const GroupPtr& K, std::vector<std::uint32_t> elems) {
    if (examined >= budget) {
      result.budget_exhausted = true;
      return false;
    }
    if (!seen.insert(std::move(elems)).second) return true;
    ++examined;
    if (predicate(*K)) result.subgroups.push_back(K);
    return true;
  };

  // cyclic subgroups
  std::vector<std::vector<std::uint32_t>> cyclic;
  std::vector<char> generator_seen(G.size(), 0);
  for (std::uint32_t g = 0; g < G.size(); ++g) {
    if (generator_seen[g]) continue;
    std::vector<std::uint32_t> powers{0};
    for (std::uint32_t x = g; x != 0; x = G.multiply(g, x)) powers.push_back(x);
    const std::size_t o = powers.size();
    for (std::size_t k = 1; k < o; ++k)
      if (std::gcd(k, o) == 1) generator_seen[powers[k]] = 1;
    generator_seen[0] = 1;
    auto K = group_from_generators(G.degree(), {G.element(g)});
    std::sort(powers.begin(), powers.end());
    cyclic.push_back(powers);
    if (!consider(K, std::move(powers))) return result;
  }
  // normalizers of the cyclic subgroups
  for (const auto& C : cyclic) {
    std::vector<std::uint32_t> normalizer;
    std::uint32_t gen = C.size() > 1 ? C[1] : 0;
    for (std::uint32_t x = 0; x < G.size(); ++x) {
      std::uint32_t conj = G.multiply(G.multiply(x, gen), G.inverse(x));
      if (std::binary_search(C.begin(), C.end(), conj)) normalizer.push_back(x);
    }
    auto N = subgroup_from_elements(G, normalizer);
    if (!consider(N, element_set(*N))) return result;
  }
  // random two-generator closures
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(G.size() - 1));
  for (std::size_t attempt = 0; attempt < 4 * budget && examined < budget; ++attempt) {
    std::uint32_t a = pick(rng), b = pick(rng);
    auto K = group_from_generators(G.degree(), {G.element(a), G.element(b)});
    if (!consider(K, element_set(*K))) return result;
  }
  if (examined >= budget) result.budget_exhausted = true;
  return result;
}

}  // namespace symframes
