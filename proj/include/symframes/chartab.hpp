#pragma once

#include <vector>

#include "symframes/cyclotomic.hpp"
#include "symframes/permutation.hpp"

namespace symframes {

// Values of a class function, one per conjugacy class in the frozen class order.
class ClassFunction {
 public:
  ClassFunction(GroupPtr group, ClassesPtr classes, std::vector<Cyclotomic> values);

  const GroupPtr& group() const { return group_; }
  const ClassesPtr& classes() const { return classes_; }
  const std::vector<Cyclotomic>& values() const { return values_; }
  const Cyclotomic& operator[](std::size_t c) const { return values_[c]; }
  const Cyclotomic& at_element(std::uint32_t g) const { return values_[classes_->class_of(g)]; }
  long degree() const;

  friend bool operator==(const ClassFunction& a, const ClassFunction& b) {
    return a.values_ == b.values_;
  }

 private:
  GroupPtr group_;
  ClassesPtr classes_;
  std::vector<Cyclotomic> values_;
};

// (1/|G|) sum_g a(g) conj(b(g))
Cyclotomic inner_product(const ClassFunction& a, const ClassFunction& b);

struct CharacterTable {
  GroupPtr group;
  ClassesPtr classes;
  // sorted by degree, then by value tuples in descending canonical order
  std::vector<ClassFunction> rows;
  long prime = 0;  // modulus used by the modular method
};

CharacterTable character_table(GroupPtr G, ClassesPtr classes);
CharacterTable character_table(GroupPtr G);

// A degree-one character; value at element h of H is zeta_order^exponent[h].
struct LinearCharacter {
  ClassFunction character;
  long order;
  std::vector<long> exponent;
};

// All |H/H'| linear characters, sorted by order and then by class exponents.
std::vector<LinearCharacter> linear_characters(GroupPtr H, ClassesPtr classes);
std::vector<LinearCharacter> linear_characters(GroupPtr H);

// Linear characters of a given order in their frozen order; index selects one.
const LinearCharacter& select_linear_character(const std::vector<LinearCharacter>& all, long order,
                                               std::size_t index);

ClassFunction restrict(const ClassFunction& chi, GroupPtr H, ClassesPtr classes);

// <chi restricted to H, nu>; throws NonIntegerMultiplicity when the result is not an integer.
long multiplicity(const ClassFunction& chi, const ClassFunction& nu);

const ClassFunction& identify_character(const CharacterTable& table, long degree, std::size_t index);

// Three-way comparison of canonical forms (conductor, then coefficients by basis index).
int compare_canonical(const Cyclotomic& a, const Cyclotomic& b);

}  // namespace symframes
