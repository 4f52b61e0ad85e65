#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lforge/field.hpp"
#include "lforge/linalg.hpp"
#include "lforge/mpoly.hpp"
#include "lforge/unipoly.hpp"

namespace lforge {

template <class F>
class PolyMatrix {
 public:
  using Poly = UniPoly<F>;

  PolyMatrix() = default;
  PolyMatrix(F field, std::size_t rows, std::size_t cols, std::string var = "lambda")
      : field_(field), var_(var), rows_(rows), cols_(cols), a_(rows * cols, Poly(field, var)) {}

  static PolyMatrix identity(const F& field, std::size_t n, const std::string& var = "lambda") {
    PolyMatrix m(field, n, n, var);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Poly::constant(field, field.one(), var);
    return m;
  }

  const F& field() const { return field_; }
  const std::string& var() const { return var_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Poly& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Poly& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  PolyMatrix operator*(const PolyMatrix& o) const;
  bool operator==(const PolyMatrix& o) const;
  int max_degree() const;
  /// Entrywise evaluation at a field element.
  Matrix<F> eval(const typename F::Elem& x) const;

  std::string provenance;

 private:
  F field_{};
  std::string var_ = "lambda";
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Poly> a_;
};

template <class F>
struct SNFResult {
  PolyMatrix<F> D, S1, S2;
  std::vector<UniPoly<F>> diagonal;  // monic, zero entries kept as zero polys
  typename F::Elem det_S1{}, det_S2{};  // tracked through the elementary operations
  bool transform_verified = false;
  bool divisibility_verified = false;
  std::size_t rank = 0;
};

struct SNFOptions {
  double max_seconds = 0;  // 0 = no limit
  bool verify = true;
};

template <class F>
SNFResult<F> smith_normal_form(const PolyMatrix<F>& M, const SNFOptions& opt = {});

/// det of a square polynomial matrix by evaluation at every point of a prime field (consistency check only).
std::vector<std::int64_t> det_samples(const PolyMatrix<PrimeField>& M);

template <class F>
std::string format_poly_matrix(const PolyMatrix<F>& M);
template <class F>
PolyMatrix<F> parse_poly_matrix(const std::string& text, const F& field);

/// Monic irreducible factors with multiplicities (Cantor–Zassenhaus).
FactorList<PrimeField> unipoly_factor_ff(const UniPoly<PrimeField>& f, std::uint64_t seed = 1);
/// (product of irreducible factors of degree d, d) pairs.
std::vector<std::pair<UniPoly<PrimeField>, int>> distinct_degree_factor(const UniPoly<PrimeField>& f);
bool is_irreducible_ff(const UniPoly<PrimeField>& f);
std::vector<std::uint32_t> root_scan_ff(const UniPoly<PrimeField>& f);

struct ReducedPoly {
  UniPoly<PrimeField> poly;
  bool degree_preserved = true;
};
ReducedPoly mod_reduce(const UniPoly<RationalField>& f, const PrimeField& K);
PolyMatrix<PrimeField> mod_reduce(const PolyMatrix<RationalField>& M, const PrimeField& K);

}  // namespace lforge
