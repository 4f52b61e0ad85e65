#pragma once

#include <string>
#include <vector>

#include "lforge/ideal_ops.hpp"
#include "lforge/linalg.hpp"
#include "lforge/snf.hpp"

namespace lforge {

/**
 * All degree-d monomials of the source ring, grouped by support size, then by
 * support (lexicographic in variable index), then by descending exponent of
 * the first support variable. For P^2 cubics this is
 * x^3, y^3, z^3, x^2y, xy^2, x^2z, xz^2, y^2z, yz^2, xyz.
 * `scaled` multiplies each monomial by its multinomial coefficient.
 */
template <class F>
std::vector<MPoly<F>> veronese_map(const RingPtr<F>& src, unsigned d, bool scaled);

enum class CatalecticantKind { p2cubics, p3quadrics };

/// Coordinate names of the ambient P^9: a0..a9, or a,b,c,x,y,z,t,u,v,w.
std::vector<std::string> catalecticant_names(CatalecticantKind kind);

/// Source ring P^2 (x,y,z) or P^3 (s0..s3) over K.
template <class F>
RingPtr<F> veronese_source(CatalecticantKind kind, const F& K);

/**
 * Parametrization in the catalecticant coordinates: the scaled cubics for
 * P^2, and the entries of s s^T (unscaled) for P^3 in the order a..w.
 */
template <class F>
std::vector<MPoly<F>> veronese_coordinates(CatalecticantKind kind, const RingPtr<F>& src);

template <class F>
PolyGrid<F> catalecticant(CatalecticantKind kind, const RingPtr<F>& ambient);

/// 3×3 minors of the catalecticant.
template <class F>
Ideal<F> secant_ideal(CatalecticantKind kind, const RingPtr<F>& ambient);

/// Projection from the centre {a : N^T a = 0}; N is 10 × (target dim + 1).
template <class F>
struct ProjectionSpec {
  CatalecticantKind kind = CatalecticantKind::p2cubics;
  Matrix<F> N;

  const F& field() const { return N.field(); }
  std::size_t target_size() const { return N.cols(); }
  RingPtr<F> source() const { return veronese_source(kind, N.field()); }
  RingPtr<F> target() const;
  RingPtr<F> ambient() const;
  /// f_k = sum_i N_ik v_i.
  std::vector<MPoly<F>> composed(const RingPtr<F>& src) const;
  std::vector<MPoly<F>> composed() const { return composed(source()); }
  /// The linear forms sum_i N_ik a_i cutting out the centre.
  std::vector<MPoly<F>> center_forms(const RingPtr<F>& ambient) const;
};

template <class F>
ProjectionSpec<F> make_projection(CatalecticantKind kind, Matrix<F> N);

/// Projection whose centre is given by linear equations in the ambient coordinates.
template <class F>
ProjectionSpec<F> projection_from_equations(CatalecticantKind kind, const std::vector<MPoly<F>>& eqs);

template <class F>
struct Projected {
  std::vector<MPoly<F>> forms;
  ImageResult<F> image;
};

template <class F>
Projected<F> project(const ProjectionSpec<F>& spec, int bound);

template <class F>
struct LNMatrix {
  Matrix<F> L;  // rows: degree-9 monomials on P^2, columns: cubic monomials on the target
  std::size_t rank = 0;
  std::size_t corank = 0;  // columns - rank = number of independent cubics
  std::vector<MPoly<F>> kernel_cubics;
};

template <class F>
LNMatrix<F> build_LN(const ProjectionSpec<F>& spec, const RingPtr<F>& target = nullptr);

/// L for N(λ) = A + λB, entries in K[λ].
template <class F>
PolyMatrix<F> build_LN_line(CatalecticantKind kind, const Matrix<F>& A, const Matrix<F>& B);

/// ∂L/∂N_ik.
template <class F>
Matrix<F> build_LN_derivative(const ProjectionSpec<F>& spec, std::size_t i, std::size_t k);

struct SecantCertificate {
  bool empty = false;
  int dim = -1;
  long long degree = 0;
  std::vector<long long> hilbert_values;  // of the restricted ideal, degrees 0.. until two zeros
  std::string restricted_ideal;
};

template <class F>
SecantCertificate secant_avoidance(const ProjectionSpec<F>& spec, const Ideal<F>& secant);

/// Adjugate; rank n-1 matrices use the kernel formula.
template <class F>
Matrix<F> adjugate(const Matrix<F>& M);

struct GammaTangent {
  std::size_t codimension = 0;
  std::size_t corank = 0;
  std::size_t minors = 0;
  std::size_t parameters = 0;
};

/**
 * Codimension in the space of N matrices of the joint kernel of the
 * gradients of all maximal minors of L_N, via d det(M) = tr(adj(M) dM).
 */
GammaTangent gamma_tangent_space(const ProjectionSpec<PrimeField>& spec);
/// Row c: gradient of the minor deleting column c, one column per N entry (row-major).
Matrix<PrimeField> gamma_gradients(const ProjectionSpec<PrimeField>& spec);

template <class F>
struct CubicReport {
  MPoly<F> cubic;
  int singular_dim = -1;
  long long singular_degree = 0;
  long long singular_linear_forms = 0;  // h^0(I(1)) of the singular locus
  Ideal<F> singular_locus;
};

template <class F>
CubicReport<F> unique_cubic_analysis(const ProjectionSpec<F>& spec, std::uint64_t seed = 1);

/// Integer grid, rows separated by newlines; '#' comments.
template <class F>
Matrix<F> parse_int_grid(const std::string& text, const F& K);

/// Grid of entries affine in one variable (e.g. "2l+1"); returns (A, B) with N = A + var·B.
template <class F>
std::pair<Matrix<F>, Matrix<F>> parse_affine_grid(const std::string& text, const F& K, const std::string& var = "l");

}  // namespace lforge
