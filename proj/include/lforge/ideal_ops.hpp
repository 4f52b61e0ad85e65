#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lforge/ideal.hpp"
#include "lforge/linalg.hpp"
#include "lforge/unipoly.hpp"

namespace lforge {

template <class F>
using PolyGrid = std::vector<std::vector<MPoly<F>>>;

/// I ∩ k[x_k..x_{n-1}], returned in the subring of the remaining variables.
template <class F>
Ideal<F> eliminate(const Ideal<F>& I, std::size_t k);

/// Eliminate an arbitrary set of variables; result lives in the subring of the others.
template <class F>
Ideal<F> eliminate_vars(const Ideal<F>& I, const std::vector<std::size_t>& vars);

/// Re-express an ideal of a subring (variables named as in `big`) inside `big`.
template <class F>
Ideal<F> embed(const Ideal<F>& I, const RingPtr<F>& big);

template <class F>
Ideal<F> intersect(const Ideal<F>& I, const Ideal<F>& J);

/// I : (g), computed as (I ∩ (g)) / g.
template <class F>
Ideal<F> quotient_element(const Ideal<F>& I, const MPoly<F>& g);

template <class F>
Ideal<F> quotient(const Ideal<F>& I, const Ideal<F>& J);

/// I : J^∞ by iterated quotients.
template <class F>
Ideal<F> saturate(const Ideal<F>& I, const Ideal<F>& J);

/// I : x_last^∞ read off a grevlex basis.
template <class F>
Ideal<F> saturate_last_variable(const Ideal<F>& I);

/// I : ℓ^∞ for a linear form ℓ whose coefficient on some variable is nonzero.
template <class F>
Ideal<F> saturate_linear(const Ideal<F>& I, const MPoly<F>& ell);

struct SaturationInfo {
  std::string route;     // which linear form certified the result
  std::size_t attempts = 0;
  bool certified = false;
};

/**
 * Saturation by the irrelevant ideal. Tries I : ℓ^∞ for coordinate
 * variables, then seeded random linear forms; a candidate is accepted when
 * its Hilbert polynomial equals that of I. Falls back to saturate(I, m).
 */
template <class F>
Ideal<F> saturate_irrelevant(const Ideal<F>& I, std::uint64_t seed = 1, SaturationInfo* info = nullptr);

template <class F>
Ideal<F> irrelevant_ideal(const RingPtr<F>& ring);

/// All k×k minors of M.
template <class F>
std::vector<MPoly<F>> minors(const PolyGrid<F>& M, std::size_t k);
template <class F>
Ideal<F> minors_ideal(const RingPtr<F>& ring, const PolyGrid<F>& M, std::size_t k);

template <class F>
PolyGrid<F> jacobian(const std::vector<MPoly<F>>& polys);

/// Saturated ideal of I + (codim-minors of the Jacobian of I's generators).
template <class F>
Ideal<F> singular_locus(const Ideal<F>& I, std::size_t codim, std::uint64_t seed = 1);

struct ImageDegreeRow {
  int degree = 0;
  long long h0 = 0;       // dim of the kernel in this degree
  long long new_gens = 0; // minimal generators contributed
};

template <class F>
struct ImageResult {
  Ideal<F> ideal;
  std::vector<ImageDegreeRow> table;
  std::string method;
  bool stable = false;  // Hilbert polynomial agreement at the last two bounds
};

/// Kernel of the degree-e evaluation map as a matrix (rows = target monomials).
template <class F>
Matrix<F> evaluation_matrix(const std::vector<MPoly<F>>& forms, unsigned e);

template <class F>
ImageResult<F> image_ideal_graded(const std::vector<MPoly<F>>& forms, const RingPtr<F>& target, int bound);

template <class F>
ImageResult<F> image_ideal_elimination(const std::vector<MPoly<F>>& forms, const RingPtr<F>& target);

template <class F>
long long graded_piece_dim(const Ideal<F>& I, int e) {
  return I.graded_piece_dim(e);
}

struct ReducedCheck {
  enum class Status { reduced, not_reduced, inconclusive };
  Status status = Status::inconclusive;
  long long degree = 0;
  int slice_degree = 0;
  int attempts = 0;
  std::vector<int> generator_minpoly_degrees;  // per coordinate operator
  int random_minpoly_degree = 0;                // minimal polynomial of the random-form operator
  bool random_minpoly_squarefree = false;
  std::string detail;
  bool reduced() const { return status == Status::reduced; }
};

std::string to_string(ReducedCheck::Status s);

/**
 * Reducedness of a zero-dimensional projective scheme. The coordinate ring
 * is modelled by a stable graded slice; multiplication operators x_i/ℓ0 are
 * formed for a seeded nonzerodivisor ℓ0. The scheme is reduced exactly when
 * every such operator has a squarefree minimal polynomial.
 */
template <class F>
ReducedCheck zero_dim_reduced_check(const Ideal<F>& I, std::uint64_t seed = 1);

/// Restrict I to the linear subspace cut out by the given independent linear forms.
template <class F>
Ideal<F> linear_section_reduce(const Ideal<F>& I, const std::vector<MPoly<F>>& linear_forms);

/// Minimal polynomial of a square matrix (monic, variable "T").
template <class F>
UniPoly<F> minimal_polynomial(const Matrix<F>& T);

/// Random element of I_e with seeded coefficients; zero when I_e = 0.
template <class F>
MPoly<F> random_element(const Ideal<F>& I, int e, Rng& rng);

}  // namespace lforge
