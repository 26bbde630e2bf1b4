#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace symframes {

using Point = std::uint16_t;

inline constexpr std::size_t kDefaultEnumerationCap = 200000;

// A bijection of {0..degree-1}. Products compose right to left: (p*q)(x) = p(q(x)).
// Text and catalog forms are 1-based.
class Permutation {
 public:
  Permutation() = default;

  static Permutation identity(std::size_t degree);
  static Permutation from_images(std::vector<Point> images);
  static Permutation from_one_based(const std::vector<int>& images);
  static Permutation from_cycles(std::size_t degree, const std::vector<std::vector<int>>& cycles);

  std::size_t degree() const { return images_.size(); }
  Point operator()(Point x) const { return images_[x]; }
  const std::vector<Point>& images() const { return images_; }
  std::vector<int> one_based() const;

  Permutation operator*(const Permutation& rhs) const;
  Permutation inverse() const;
  bool is_identity() const;
  std::uint64_t order() const;
  std::string cycle_string() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  explicit Permutation(std::vector<Point> images) : images_(std::move(images)) {}
  std::vector<Point> images_;
};

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const;
};

std::uint64_t hash_points(std::span<const Point> pts);

// Order of <gens> by Schreier-Sims, without enumerating elements.
std::uint64_t schreier_sims_order(std::size_t degree, const std::vector<Permutation>& gens);

// A permutation group with its full element list (when the order is within the cap).
// Element 0 is always the identity; indices are stable for the life of the object.
class PermutationGroup {
 public:
  PermutationGroup(std::size_t degree, std::vector<Permutation> generators,
                   std::size_t cap = kDefaultEnumerationCap);

  std::size_t degree() const { return degree_; }
  std::uint64_t order() const { return order_; }
  const std::vector<Permutation>& generators() const { return generators_; }
  bool enumerated() const { return enumerated_; }

  std::size_t size() const;
  Permutation element(std::size_t i) const;
  std::span<const Point> images(std::size_t i) const {
    return {data_.data() + i * degree_, degree_};
  }

  std::optional<std::uint32_t> find(std::span<const Point> images) const;
  std::optional<std::uint32_t> find(const Permutation& p) const { return find(p.images()); }
  bool contains(const Permutation& p) const { return find(p).has_value(); }
  // Throws ElementNotInGroup.
  std::uint32_t index_of(const Permutation& p) const;

  std::uint32_t multiply(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t inverse(std::uint32_t a) const { return inverse_[a]; }
  std::uint32_t element_order(std::uint32_t a) const;

 private:
  void require_enumerated() const;
  std::uint32_t insert(std::span<const Point> images);

  std::size_t degree_;
  std::vector<Permutation> generators_;
  std::uint64_t order_ = 1;
  bool enumerated_ = false;
  std::vector<Point> data_;
  std::vector<std::uint32_t> slots_;
  std::vector<std::uint32_t> inverse_;
};

using GroupPtr = std::shared_ptr<const PermutationGroup>;

GroupPtr group_from_generators(std::size_t degree, std::vector<Permutation> generators,
                               std::size_t cap = kDefaultEnumerationCap);

// Index in G of every element of H, in H's element order. Throws NotASubgroup.
std::vector<std::uint32_t> embed_subgroup(const PermutationGroup& G, const PermutationGroup& H);

// Subgroup of G generated by the given element indices; picks a small generating set.
GroupPtr subgroup_from_elements(const PermutationGroup& G, const std::vector<std::uint32_t>& elements);

struct ConjugacyClass {
  Permutation representative;  // lexicographically minimal member
  std::uint32_t representative_index;
  std::uint32_t element_order;
  std::vector<std::uint32_t> members;
  std::size_t size() const { return members.size(); }
};

class ConjugacyClassSet {
 public:
  ConjugacyClassSet(std::vector<ConjugacyClass> classes, std::vector<std::uint32_t> class_of,
                    std::vector<std::uint32_t> inverse_class);

  std::size_t count() const { return classes_.size(); }
  const ConjugacyClass& operator[](std::size_t c) const { return classes_[c]; }
  const std::vector<ConjugacyClass>& classes() const { return classes_; }
  std::uint32_t class_of(std::uint32_t element) const { return class_of_[element]; }
  const std::vector<std::uint32_t>& class_map() const { return class_of_; }
  std::uint32_t inverse_class(std::uint32_t c) const { return inverse_class_[c]; }

  // Class of g^k for g in class c; needs the owning group.
  std::uint32_t power_class(const PermutationGroup& G, std::uint32_t c, long k) const;

 private:
  std::vector<ConjugacyClass> classes_;
  std::vector<std::uint32_t> class_of_;
  std::vector<std::uint32_t> inverse_class_;
};

using ClassesPtr = std::shared_ptr<const ConjugacyClassSet>;

ClassesPtr conjugacy_classes(const PermutationGroup& G);

GroupPtr derived_subgroup(const PermutationGroup& H);

// One representative per left coset gH; the first is the identity.
std::vector<Permutation> coset_representatives(const PermutationGroup& G, const PermutationGroup& H);
std::vector<std::uint32_t> coset_representative_indices(const PermutationGroup& G,
                                                        const PermutationGroup& H);

struct DoubleCosetCell {
  Permutation representative;
  std::uint32_t representative_index;
  std::size_t size;
};

struct DoubleCosetDecomposition {
  GroupPtr left;
  GroupPtr right;
  std::vector<DoubleCosetCell> cells;
  std::vector<std::uint32_t> cell_of;  // per element of G
};

DoubleCosetDecomposition double_cosets(const PermutationGroup& G, GroupPtr H1, GroupPtr H2);

struct SubgroupSearch {
  std::vector<GroupPtr> subgroups;
  bool budget_exhausted = false;
};

// Heuristic subgroup locator: cyclic subgroups, their normalizers, then seeded random
// two-generator closures. Budget counts candidate subgroups examined.
SubgroupSearch find_subgroups(const PermutationGroup& G,
                              const std::function<bool(const PermutationGroup&)>& predicate,
                              std::size_t budget, std::uint64_t seed = 1);

}  // namespace symframes
