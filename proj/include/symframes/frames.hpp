#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "symframes/chartab.hpp"
#include "symframes/matrix.hpp"

namespace symframes {

// (H1,H2)-double cosets of G where each element carries a phase exponent mod `modulus`,
// so that f(x) = f(rep) * zeta_modulus^phase(x) for any f with the law
// f(t1 x t2) = conj(nu1(t1)) conj(nu2(t2)) f(x).
struct PhasedCells {
  struct Cell {
    std::uint32_t representative;
    std::size_t size;
    bool consistent;  // false forces every such f to vanish on the cell
  };
  long modulus = 1;
  std::vector<Cell> cells;
  std::vector<std::uint32_t> cell_of;
  std::vector<std::uint32_t> phase_of;
};

PhasedCells label_double_cosets(const PermutationGroup& G, const PermutationGroup& H1,
                                const LinearCharacter& nu1, const PermutationGroup& H2,
                                const LinearCharacter& nu2);

struct RowCell {
  Permutation representative;
  std::uint32_t representative_index;
  std::size_t size;
  Cyclotomic value;
};

// First row g -> (1/|H|) sum_{s in H} chi(s g^-1) conj(nu(s)) of a group-frame Gram matrix.
struct TwistedSphericalRow {
  GroupPtr group;
  ClassFunction chi;
  GroupPtr subgroup;
  LinearCharacter nu;
  long dimension;
  long multiplicity;
  bool reducible;  // multiplicity > 1: still a tight frame, not irreducible
  std::vector<RowCell> cells;
  PhasedCells labels;

  Cyclotomic evaluate(std::uint32_t g) const;
  std::size_t cell_of(std::uint32_t g) const { return labels.cell_of[g]; }
};

using RowPtr = std::shared_ptr<const TwistedSphericalRow>;

// Throws ZeroMultiplicity.
RowPtr twisted_spherical(GroupPtr G, const ClassFunction& chi, GroupPtr H, const LinearCharacter& nu);
// Checks that nu is a linear character (NotLinearCharacter otherwise).
LinearCharacter as_linear_character(const ClassFunction& nu);

// Evaluates the row at any element; throws ElementNotInGroup.
Cyclotomic evaluate_row(const TwistedSphericalRow& row, const Permutation& g);
// The defining sum at one element, without the cell table.
Cyclotomic spherical_sum(const TwistedSphericalRow& row, std::uint32_t g);

// Gram matrix over an index set of group elements: entry(i,j) = row(g_j^-1 g_i).
struct GroupGram {
  std::vector<std::uint32_t> index;
  ExactMatrix entries;
  long dimension;
};

GroupGram gram(const TwistedSphericalRow& row);
GroupGram gram(const TwistedSphericalRow& row, const std::vector<std::uint32_t>& index);

struct Angle {
  Cyclotomic abs_squared;
  std::optional<Cyclotomic> modulus;  // when |value| is itself cyclotomic
  std::size_t count;                  // ordered pairs of distinct lines
};

struct LineSystemSummary {
  std::size_t line_count;
  std::size_t vector_count;
  std::uint64_t line_stabilizer_order;
  std::uint64_t vector_stabilizer_order;
  std::size_t gon_order;
  std::vector<Angle> angles;  // decreasing modulus
};

// Row restricted to coset representatives of the line and vector stabilizers.
struct HomogenizedFrame {
  RowPtr row;
  std::vector<std::uint32_t> line_representatives;
  std::vector<std::uint32_t> vector_representatives;
  LineSystemSummary summary;
};

HomogenizedFrame homogenize(RowPtr row);
const std::vector<Angle>& angle_set(const LineSystemSummary& summary);

// Exact modulus of z when some root of unity rotates z onto the positive reals, or
// when |z|^2 is rational.
std::optional<Cyclotomic> exact_modulus(const Cyclotomic& z);

// Groups exact abs-squared values into an angle list sorted by decreasing modulus.
std::vector<Angle> tally_angles(const std::vector<std::pair<Cyclotomic, std::size_t>>& values);

// Cross-Gram function between two frames of the same character, known modulo a global
// phase. value(x) is the inner product conjugate <phi2, phi1 at x> scaled so that
// sum_g |value(g)|^2 = |G|/d.
struct CrossGramRow {
  GroupPtr group;
  ClassFunction chi;
  GroupPtr subgroup1;
  LinearCharacter nu1;
  GroupPtr subgroup2;
  LinearCharacter nu2;
  long dimension;
  std::uint32_t a;  // element used in the defining double sum
  std::vector<RowCell> cells;            // value = normalized function when exact, else raw sum
  std::vector<Cyclotomic> abs_squared;   // per cell, always exact
  Cyclotomic scale_squared;              // raw sums times this give |value|^2
  std::optional<Cyclotomic> scale;       // exact scale when it is cyclotomic
  bool exact_values;
  bool known_modulo_phase = true;
  PhasedCells labels;

  // Throws NormalizationNotExact when the scale is not cyclotomic.
  Cyclotomic evaluate(std::uint32_t g) const;
};

using CrossPtr = std::shared_ptr<const CrossGramRow>;

// Throws MultiplicityNotOne, AllChoicesZero.
CrossPtr cross_row(GroupPtr G, const ClassFunction& chi, GroupPtr H1, const LinearCharacter& nu1,
                   GroupPtr H2, const LinearCharacter& nu2);

// g -> (chi(1)/|G|) conj(chi(g)), as a class function.
ClassFunction isotypic_projection_row(const ClassFunction& chi);

// (f1 * f2)(g) = sum_h f1(h) f2(h^-1 g), over element-indexed functions.
std::vector<Cyclotomic> convolve(const PermutationGroup& G, const std::vector<Cyclotomic>& f1,
                                 const std::vector<Cyclotomic>& f2);

std::vector<Cyclotomic> row_values(const TwistedSphericalRow& row);

}  // namespace symframes
