#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "symframes/frames.hpp"

namespace symframes {

// A block of a union: vectors of one homogenized frame (or explicit code) times a phase.
struct AssemblyBlock {
  std::string name;
  std::size_t source;
  Cyclotomic phase;
  std::size_t offset;
  std::size_t count;
};

struct GramAssembly {
  std::vector<AssemblyBlock> blocks;
  ExactMatrix gram;
  long dimension = 0;
  bool real = false;
  std::vector<std::pair<std::size_t, std::size_t>> duplicates;  // off-diagonal entries equal to 1
};

// Frames feeding an assembly; all must share group and character.
struct FrameSource {
  std::string name;
  HomogenizedFrame frame;
};

// Cross data between two sources: <Phi_first(g1), Phi_second(g2)> = phase * conj(Y(g1^-1 g2)).
struct CrossSource {
  std::size_t first;
  std::size_t second;
  CrossPtr row;
  Cyclotomic phase{1};
};

struct BlockSpec {
  std::string name;
  std::size_t source;
  Cyclotomic phase{1};
};

// Errors: MissingCrossBlock, InconsistentDimensions.
GramAssembly assemble_union(const std::vector<FrameSource>& sources, const std::vector<BlockSpec>& blocks,
                            const std::vector<CrossSource>& crosses);

// Entry-wise real part; the result is marked real with doubled dimension when it was complex.
GramAssembly realify(const GramAssembly& assembly);
ExactMatrix realify(const ExactMatrix& m);

// Exhaustive scan over candidate phases for one cross pair: the phase c minimizing the maximal
// real part of c * conj(Y(g1^-1 g2)) * conj(p1) * p2 over all block pairs drawing on that
// cross. Ties keep the first candidate. Errors: NoFeasiblePhase when nothing reaches `bound`.
struct PhaseChoice {
  Cyclotomic phase;
  Cyclotomic max_real_part;
  std::size_t candidate_index;
};
PhaseChoice resolve_cross_phase(const std::vector<FrameSource>& sources, const std::vector<BlockSpec>& blocks,
                                const CrossSource& cross, const std::vector<Cyclotomic>& candidates,
                                std::optional<mpq_class> bound = std::nullopt);
// n-th roots of unity for n = lcm of the conductors involved, capped at 120.
std::vector<Cyclotomic> default_phase_candidates(const std::vector<FrameSource>& sources,
                                                 const std::vector<BlockSpec>& blocks, const CrossSource& cross);

struct ExplicitCode {
  long dimension = 0;
  std::vector<std::vector<Cyclotomic>> vectors;
};

ExplicitCode construct_E7_shell();
ExplicitCode construct_phi3();
ExplicitCode construct_D7_scaled();
ExplicitCode scale(const ExplicitCode& code, const Cyclotomic& phase);
ExplicitCode concat(const std::vector<ExplicitCode>& parts);
// C^d -> R^2d with coordinates (Re e1..Re ed, Im e1..Im ed).
ExplicitCode realify(const ExplicitCode& code);
// Throws NormalizationNotExact when some vector is not exactly unit, DuplicateVectors on repeats.
void check_explicit(const ExplicitCode& code);

// Exact Gram <v_i, v_j> (conjugate-linear in v_i) computed over a common cyclotomic field.
ExactMatrix gram(const ExplicitCode& code);

// The four-block R^10 union lifted to R^11 as described for the 592-vector code:
// blocks 0..2 embed unchanged, block 3 is split into (sqrt3/2) v +- e/2, then +-e appended.
GramAssembly build_code_R11(const GramAssembly& real10);

struct KissingReport {
  std::size_t vector_count = 0;
  long dimension = 0;
  Cyclotomic max_real_part;
  std::pair<std::size_t, std::size_t> max_pair{0, 0};
  bool unit_diagonal = true;
  bool distinct = true;
  std::pair<std::size_t, std::size_t> duplicate_pair{0, 0};
  bool within_bound = true;
  double min_eigenvalue = 0;
  double tolerance = 0;
  long numerical_rank = 0;
  bool psd = true;
  bool valid = false;
  std::vector<Cyclotomic> entry_values;  // distinct off-diagonal real parts, decreasing
};

// Real Gram (symmetric, exact) in, report out; never throws for a failed verdict.
KissingReport verify_kissing(const ExactMatrix& real_gram, long dimension);
// Throws the first failing condition as NotPSD, RankExceedsDimension, DuplicateVectors or
// CoherenceExceeded, naming the index pair where one exists.
void require_valid(const KissingReport& report);

struct Coherence {
  Cyclotomic abs_squared;
  std::optional<Cyclotomic> exact;
  double value;
  std::optional<double> reference;
};
Coherence coherence(const std::vector<Angle>& angles, std::optional<double> reference = std::nullopt);
Coherence coherence(const ExactMatrix& gram, std::optional<double> reference = std::nullopt);

// Angles of a union of line systems (frames of a common (G, chi)); crosses needed between
// every pair of distinct sources. Only abs-squared data is used, so phases never matter.
LineSystemSummary line_union(const std::vector<FrameSource>& sources, const std::vector<CrossSource>& crosses);

// Floating coordinates realizing a PSD Gram of rank <= d. Errors: NotPSD, RankExceedsDimension.
std::vector<std::vector<std::complex<double>>> embed_vectors_from_gram(const ExactMatrix& gram, long d,
                                                                      double tolerance = 1e-9);

}  // namespace symframes
