#pragma once

#include <map>
#include <string>
#include <vector>

#include "lforge/ideal_ops.hpp"
#include "lforge/link.hpp"
#include "lforge/linalg.hpp"
#include "lforge/veronese.hpp"

namespace lforge {

/**
 * Finite-length graded module over k[x_0..x_{n-1}], given by the dimension
 * of each graded piece and the multiplication matrices of the variables.
 * Grades are twists k in [k_min, k_max]; action[k - k_min][i] maps M_k to M_{k+1}.
 */
template <class F>
struct RaoModule {
  F field{};
  std::size_t nvars = 0;
  int k_min = 0, k_max = -1;
  /// True when grades above k_max were cut off rather than known to vanish.
  bool truncated = false;
  std::vector<long long> dims;
  std::vector<std::vector<Matrix<F>>> action;
  /// Rank of Sym^k(target) → S_{3k}(source) for modules built from a projection.
  std::vector<long long> image_ranks;
  std::vector<long long> sym_dims;
  std::vector<long long> source_dims;

  long long dim(int k) const { return k < k_min || k > k_max ? 0 : dims[k - k_min]; }
  /// x_i: M_k → M_{k+1}; a zero-sized matrix outside the range.
  Matrix<F> act(std::size_t i, int k) const;
  /// Degrees in which the module is nonzero.
  int bottom() const;
  int top() const;
};

/**
 * Cokernels of Sym^k of the forms (all of one degree d) into degree d·k forms
 * of their ring, for k in [0, k_max], with the induced action of the target
 * variables.
 */
template <class F>
RaoModule<F> rao_module_from_forms(const std::vector<MPoly<F>>& forms, int k_max);

/// The module of a projection; requires a certificate that the centre misses the secant variety.
template <class F>
RaoModule<F> rao_module(const ProjectionSpec<F>& spec, const SecantCertificate& cert, int k_max);

/// Module from explicit data; checks shapes and commutativity.
template <class F>
RaoModule<F> make_rao_module(const F& field, std::size_t nvars, int k_min, std::vector<long long> dims,
                             std::vector<std::vector<Matrix<F>>> action);

struct RaoHilbertReport {
  std::vector<long long> values;  // from twist 0
  std::vector<std::string> audit;  // "k=1: 10 - 6 = 4 (injective)" etc.
  bool finite_length = false;
};

template <class F>
RaoHilbertReport rao_hilbert(const RaoModule<F>& M);

/// Pairwise commutation of the variable actions on every grade; returns the number of failing (i, j, k).
template <class F>
std::size_t action_commutator_failures(const RaoModule<F>& M);

/// Element of a graded free module: one polynomial per generator.
template <class F>
using FreeElement = std::vector<MPoly<F>>;

struct BettiTable {
  std::map<std::pair<int, int>, long long> beta;  // (i, j) -> β_{i,j}
  int max_hom = -1;
  bool complete = false;
  std::string note;

  long long at(int i, int j) const {
    auto it = beta.find({i, j});
    return it == beta.end() ? 0 : it->second;
  }
  long long rank(int i) const;
  /// Σ_i (-1)^i rank F_i.
  long long alternating_rank_sum() const;
  /// Rows are internal degrees j (shifted by `degree_offset`), columns homological degrees.
  std::string to_text(int degree_offset = 0) const;
  /// "4R(1); 17R + 29R(-2); ..." with twists -j - degree_offset.
  std::string to_free_modules(int degree_offset = 0) const;
  /// Accepts the to_free_modules form, with "⊕" or "+" between summands and "−" or "-" signs.
  static BettiTable parse_free_modules(const std::string& text, int degree_offset = 0);
  /// Reads the to_text layout; '#' lines, the column header and the "total:" row are skipped.
  static BettiTable parse_text(const std::string& text, int degree_offset = 0);
  /// {"complete", "note", "entries": [[i, j, beta], ...]}, with j shifted by degree_offset.
  std::string to_json(int degree_offset = 0) const;
};

struct BettiComparison {
  struct Cell {
    int i, j;
    long long computed, expected;
  };
  std::vector<Cell> mismatches;
  std::size_t cells_compared = 0;
  bool matches() const { return mismatches.empty(); }
  std::string to_text(int degree_offset = 0) const;
};

BettiComparison compare_betti(const BettiTable& computed, const BettiTable& expected, int max_hom);

template <class F>
struct ResolutionStep {
  std::vector<int> gen_degrees;
  /// For i = 0: coordinates of each generator in M_{deg}; stored as a one-entry FreeElement of constants.
  std::vector<FreeElement<F>> images;
};

template <class F>
struct RaoPresentation {
  std::map<int, long long> generators;  // degree -> count
  std::map<int, long long> relations;   // degree -> count
  std::vector<std::vector<typename F::Elem>> generator_vectors;  // coordinates in M_deg
  std::vector<int> generator_degrees;
  std::vector<FreeElement<F>> relation_elements;
  std::vector<int> relation_degrees;
  int certified_to = 0;  // degree through which relations were computed
  std::vector<std::string> rank_certificates;
};

struct ResolutionOptions {
  int max_hom = 6;
  /// Degrees past top(M) + i that are also searched; the regularity bound makes 0 sufficient.
  int extra_degrees = 0;
  std::size_t max_columns = 200000;
  double max_seconds = 0;
  std::uint64_t seed = 0;  // 0: canonical basis choices; otherwise seeded random complements
};

/// Minimal generators and first relations.
template <class F>
RaoPresentation<F> rao_presentation(const RaoModule<F>& M, const ResolutionOptions& opt = {});

/// Minimal graded free resolution by degree-by-degree kernels.
template <class F>
BettiTable graded_betti(const RaoModule<F>& M, const ResolutionOptions& opt = {},
                        std::vector<ResolutionStep<F>>* steps = nullptr);

/// β_{i,j} = dim H_i(Koszul complex ⊗ M)_j, independent of the resolution.
template <class F>
BettiTable koszul_betti(const RaoModule<F>& M);

/// Σ_i (-1)^i Σ_j β_{i,j} dim R_{k-j}; equals dim M_k for a complete table.
long long betti_hilbert(const BettiTable& B, std::size_t nvars, int k);

template <class F>
struct LinkedHilbertReport {
  std::vector<long long> computed;   // H_{R/I_S}(t), t = 0..max
  std::vector<long long> predicted;  // from I_D, the two CIs and the shift
  bool matches = false;
  std::string note;
};

/**
 * S is obtained from D by two links through CIs V1 ⊂ I_D and V2 ⊂ I_S sharing
 * the residual F, and deg V2 = deg V1 + shift in the last generator. Since
 * I_D/I_V1 and I_S/I_V2 are both the canonical module of R/I_F up to twist,
 * dim(I_S)_t = dim(I_V2)_t + dim(I_D)_{t-shift} - dim(I_V1)_{t-shift}.
 */
template <class F>
LinkedHilbertReport<F> linked_hilbert_check(const Ideal<F>& S, const Ideal<F>& D, const Ideal<F>& V1,
                                            const Ideal<F>& V2, int max_degree);

template <class F>
LinkedHilbertReport<F> linked_hilbert_check(const BilinkReport<F>& chain, int max_degree);

}  // namespace lforge
