#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lforge/ideal_ops.hpp"
#include "lforge/linalg.hpp"

namespace lforge {

/// Skew-symmetric matrix of forms; only the strict upper triangle is stored.
template <class F>
class SkewMatrix {
 public:
  SkewMatrix() = default;
  SkewMatrix(RingPtr<F> ring, std::size_t n);
  /// Rejects grids that are not skew-symmetric with zero diagonal.
  static SkewMatrix from_grid(const RingPtr<F>& ring, const PolyGrid<F>& g);

  const RingPtr<F>& ring() const { return ring_; }
  std::size_t size() const { return n_; }
  MPoly<F> operator()(std::size_t i, std::size_t j) const;
  /// Sets a_ij and a_ji = -a_ij; i != j.
  void set(std::size_t i, std::size_t j, const MPoly<F>& p);

  PolyGrid<F> grid() const;
  /// Degree of each entry, -1 for zero entries.
  std::vector<std::vector<int>> degree_pattern() const;
  SkewMatrix principal(const std::vector<std::size_t>& idx) const;
  /// Apply a ring map given by images of the variables.
  SkewMatrix substitute(const RingPtr<F>& target, const std::vector<MPoly<F>>& images) const;
  Matrix<F> eval(const std::vector<typename F::Elem>& point) const;

  /// "size n", the ring header, then the upper triangle row-major, one entry per line.
  std::string to_text(const std::string& name = "R") const;

 private:
  std::size_t index(std::size_t i, std::size_t j) const { return i * n_ - i * (i + 1) / 2 + (j - i - 1); }
  RingPtr<F> ring_;
  std::size_t n_ = 0;
  std::vector<MPoly<F>> upper_;
};

SkewMatrix<PrimeField> parse_skew_matrix(const std::string& text);

/// Pfaffians of principal submatrices, memoized by index subset.
template <class F>
class PfaffianTable {
 public:
  explicit PfaffianTable(const SkewMatrix<F>& A) : A_(A) {}
  /// Pfaffian of the principal submatrix on the indices set in `mask` (ascending order).
  const MPoly<F>& of(std::uint32_t mask);

 private:
  const SkewMatrix<F>& A_;
  std::map<std::uint32_t, MPoly<F>> memo_;
};

/// Pf(A) by expansion along the first row; throws for odd size.
template <class F>
MPoly<F> pfaffian(const SkewMatrix<F>& A);

/// All principal 2k×2k Pfaffians, subsets in lexicographic order.
template <class F>
std::vector<MPoly<F>> principal_pfaffians(const SkewMatrix<F>& A, std::size_t two_k);

template <class F>
Ideal<F> sub_pfaffians(const SkewMatrix<F>& A, std::size_t two_k);

/// Row v of forms; the constraint is v·A = 0.
template <class F>
using EulerRow = std::vector<MPoly<F>>;

template <class F>
EulerRow<F> coordinate_row(const RingPtr<F>& ring, std::size_t ncoords, std::size_t n);

/// v·A as a row of forms.
template <class F>
std::vector<MPoly<F>> row_times(const EulerRow<F>& v, const SkewMatrix<F>& A);

struct SampleInfo {
  std::size_t unknowns = 0;
  std::size_t solution_dim = 0;
  bool degenerate = false;  // only the zero matrix satisfies the pattern
};

/**
 * Seeded random skew matrix with entry (i,j) homogeneous of degree
 * pattern[i][j] (-1 forces zero) subject to v·A = 0 (v empty: no constraint).
 * The constraint is expanded into a linear system on the entry coefficients
 * and a random element of its solution space is returned.
 */
template <class F>
SkewMatrix<F> euler_constrained_sample(const RingPtr<F>& ring, std::size_t n, const EulerRow<F>& v,
                                       const std::vector<std::vector<int>>& pattern, std::uint64_t seed,
                                       SampleInfo* info = nullptr);

/// Pattern with every off-diagonal entry of degree d.
std::vector<std::vector<int>> uniform_pattern(std::size_t n, int d);

/**
 * φ with rank context 2r+1. Without an Euler row the matrix has size 2r+1;
 * with an Euler row v (coordinates padded with zeros) it has size 2r+2 and
 * presents the bundle as the kernel of v. s = c1 + r·t.
 */
template <class F>
struct SkewPresentation {
  SkewMatrix<F> phi;
  EulerRow<F> euler;
  int r = 0;
  int t = 1;
  int c1 = 0;
  int s() const { return c1 + r * t; }
  bool padded() const { return !euler.empty(); }
};

template <class F>
SkewPresentation<F> make_presentation(SkewMatrix<F> phi, int t, int c1, EulerRow<F> euler = {});

/// ψ_i = signed 2r×2r Pfaffian omitting index i (unpadded presentations).
template <class F>
std::vector<MPoly<F>> divided_power_section(const SkewPresentation<F>& P);

/// The bordered matrix [[φ, s], [-s^T, 0]].
template <class F>
SkewMatrix<F> border(const SkewMatrix<F>& A, const std::vector<std::vector<MPoly<F>>>& columns);

/**
 * The hypersurface s∧φ^(r): Pf of the bordered matrix, or for padded
 * presentations the bordered Pfaffian omitting the first coordinate index j,
 * divided by v_j.
 */
template <class F>
MPoly<F> section_to_hypersurface(const SkewPresentation<F>& P, const std::vector<MPoly<F>>& s);

/// Basis of the section vectors whose i-th entry has degree `degrees[i]` (and v·s = 0 when padded).
template <class F>
std::vector<std::vector<MPoly<F>>> section_space(const SkewPresentation<F>& P, const std::vector<int>& degrees);

/// Entry degrees of a section lifting a hypersurface of degree d.
template <class F>
std::vector<int> section_degrees(const SkewPresentation<F>& P, int d);

/// A section s with section_to_hypersurface(P, s) = h, or nullopt.
template <class F>
std::optional<std::vector<MPoly<F>>> hypersurface_to_section(const SkewPresentation<F>& P, const MPoly<F>& h);

/// Lemma-style extension by two sections and a corner form l.
template <class F>
SkewMatrix<F> extend_with_sections(const SkewPresentation<F>& P, const std::vector<MPoly<F>>& s1,
                                   const std::vector<MPoly<F>>& s2, const MPoly<F>& l);

struct ExtensionAudit {
  int locus_dim = -1;
  long long locus_degree = 0;
  bool locus_codim3 = false;
  int ci_dim = -1;
  long long ci_degree = 0;
  bool ci_codim2 = false;
  /// Degree of the extension locus predicted by a double link through the CI.
  long long bilinked_degree = 0;
  long long intermediate_degree = 0;
  bool bilink_matches = false;
  std::vector<std::string> log;
};

/**
 * Checks on an extended matrix: codimension of its Pfaffian locus, whether
 * the two hypersurfaces meet properly, and a double link of X through the
 * hypersurfaces compared with the new locus.
 */
template <class F>
ExtensionAudit audit_extension(const SkewPresentation<F>& P, const SkewMatrix<F>& ext, const MPoly<F>& h1,
                               const MPoly<F>& h2, std::uint64_t seed, bool run_bilink = true);

template <class F>
struct UnprojectionData {
  SkewMatrix<F> A;               // 10×10 over P^6
  SkewMatrix<F> phi6;            // φ extended to P^6
  MPoly<F> c1, c2;               // cubics over P^6 (no x6)
  RingPtr<F> ring6;
  bool euler_ok = false;
};

/// A = [[φ, s1, s2], [-s1^T, 0, x6], [-s2^T, -x6, 0]] over the ring with x6 appended.
template <class F>
UnprojectionData<F> unprojection_matrix(const SkewPresentation<F>& P, const std::vector<MPoly<F>>& s1,
                                        const std::vector<MPoly<F>>& s2, const std::string& new_var = "x6");

/// Constant skew B' with a = B'·x (x the first a.size() variables); throws when Σ x_i a_i ≠ 0.
template <class F>
Matrix<F> koszul_solve(const std::vector<MPoly<F>>& a);

/// Constant matrix M with a = M·x over the first `ncoords` variables; nullopt when a is not of that form.
template <class F>
std::optional<Matrix<F>> linear_coefficients(const std::vector<MPoly<F>>& a, std::size_t ncoords);

template <class F>
struct FamilyMember {
  typename F::Elem lambda{};
  std::vector<long long> hilbert;  // Hilbert function of the Pfaffian ideal's quotient, degrees 0..max
  int dim = -1;
  long long degree = 0;
  bool euler_ok = false;
};

template <class F>
struct FamilyReport {
  Matrix<F> Bp, Dp;
  bool symbolic_euler_ok = false;
  bool lambda0_reproduces = false;
  std::vector<FamilyMember<F>> members;
  bool hilbert_constant = false;
};

/**
 * A_λ: the 6×6 block B becomes B - λ·x6·B' and the 3×6 block D becomes
 * D + λ·x6·D', where the a-column is B'x and (a7,a8,a9) = D'x. The Euler row
 * [x0..x5, λx6, 0, 0, 0] annihilates A_λ for symbolic λ.
 */
template <class F>
SkewMatrix<F> family_member(const SkewMatrix<F>& A, const Matrix<F>& Bp, const Matrix<F>& Dp, const MPoly<F>& lam_x6);

template <class F>
FamilyReport<F> deform_family(const SkewMatrix<F>& A, const std::vector<typename F::Elem>& lambdas, int max_degree);

}  // namespace lforge
