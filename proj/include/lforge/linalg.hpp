#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lforge/field.hpp"

namespace lforge {

/// Dense row-major matrix over a field.
template <class F>
class Matrix {
 public:
  using Elem = typename F::Elem;

  Matrix() = default;
  Matrix(F field, std::size_t rows, std::size_t cols)
      : field_(std::move(field)), rows_(rows), cols_(cols), a_(rows * cols, field_.zero()) {}

  static Matrix identity(const F& field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
    return m;
  }

  const F& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Elem& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Elem& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  Elem* row(std::size_t i) { return a_.data() + i * cols_; }
  const Elem* row(std::size_t i) const { return a_.data() + i * cols_; }

  Matrix transpose() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw ArithmeticError("matrix shape mismatch in product");
    Matrix r(field_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const Elem& a = (*this)(i, k);
        if (field_.is_zero(a)) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) = field_.mul_add(a, o(k, j), r(i, j));
      }
    return r;
  }

  std::vector<Elem> apply(const std::vector<Elem>& x) const {
    std::vector<Elem> y(rows_, field_.zero());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) y[i] = field_.mul_add((*this)(i, j), x[j], y[i]);
    return y;
  }

  bool is_zero() const {
    for (auto& v : a_)
      if (!field_.is_zero(v)) return false;
    return true;
  }

  bool operator==(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (std::size_t i = 0; i < a_.size(); ++i)
      if (!field_.equal(a_[i], o.a_[i])) return false;
    return true;
  }

  /// Rows [r0, r1) and all columns.
  Matrix row_block(std::size_t r0, std::size_t r1) const {
    Matrix m(field_, r1 - r0, cols_);
    for (std::size_t i = r0; i < r1; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(i - r0, j) = (*this)(i, j);
    return m;
  }
  Matrix col_select(const std::vector<std::size_t>& cols) const {
    Matrix m(field_, rows_, cols.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols.size(); ++j) m(i, j) = (*this)(i, cols[j]);
    return m;
  }
  Matrix row_select(const std::vector<std::size_t>& rows) const {
    Matrix m(field_, rows.size(), cols_);
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(rows[i], j);
    return m;
  }
  void append_row(const std::vector<Elem>& r) {
    if (r.size() != cols_) throw ArithmeticError("row length mismatch");
    a_.insert(a_.end(), r.begin(), r.end());
    ++rows_;
  }

 private:
  F field_{};
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Elem> a_;
};

/**
 * In-place reduced row echelon form; returns pivot columns. When `track`
 * is given it receives the same row operations (so track*M_original = rref).
 */
template <class F>
std::vector<std::size_t> rref(Matrix<F>& m, Matrix<F>* track = nullptr) {
  const F& K = m.field();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && K.is_zero(m(p, c))) ++p;
    if (p == m.rows()) continue;
    if (p != r) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
      if (track)
        for (std::size_t j = 0; j < track->cols(); ++j) std::swap((*track)(p, j), (*track)(r, j));
    }
    auto inv = K.inv(m(r, c));
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) = K.mul(m(r, j), inv);
    if (track)
      for (std::size_t j = 0; j < track->cols(); ++j) (*track)(r, j) = K.mul((*track)(r, j), inv);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || K.is_zero(m(i, c))) continue;
      auto f = K.neg(m(i, c));
      auto* ri = m.row(i);
      const auto* rr = m.row(r);
      for (std::size_t j = c; j < m.cols(); ++j)
        if (!K.is_zero(rr[j])) ri[j] = K.mul_add(f, rr[j], ri[j]);
      if (track) {
        auto* ti = track->row(i);
        const auto* tr = track->row(r);
        for (std::size_t j = 0; j < track->cols(); ++j)
          if (!K.is_zero(tr[j])) ti[j] = K.mul_add(f, tr[j], ti[j]);
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

/// Row echelon (not reduced) elimination; returns rank. Cheaper than rref for rank only.
template <class F>
std::size_t rank_inplace(Matrix<F>& m) {
  const F& K = m.field();
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && K.is_zero(m(p, c))) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = c; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    auto inv = K.inv(m(r, c));
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      if (K.is_zero(m(i, c))) continue;
      auto f = K.neg(K.mul(m(i, c), inv));
      auto* ri = m.row(i);
      const auto* rr = m.row(r);
      for (std::size_t j = c; j < m.cols(); ++j)
        if (!K.is_zero(rr[j])) ri[j] = K.mul_add(f, rr[j], ri[j]);
    }
    ++r;
  }
  return r;
}

template <class F>
std::size_t rank(Matrix<F> m) {
  if (m.rows() > m.cols()) m = m.transpose();
  return rank_inplace(m);
}

/// Basis of {x : M x = 0}, one vector per free column.
template <class F>
std::vector<std::vector<typename F::Elem>> nullspace(Matrix<F> m) {
  const F& K = m.field();
  auto piv = rref(m);
  std::vector<bool> is_piv(m.cols(), false);
  for (auto c : piv) is_piv[c] = true;
  std::vector<std::vector<typename F::Elem>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_piv[free]) continue;
    std::vector<typename F::Elem> v(m.cols(), K.zero());
    v[free] = K.one();
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = K.neg(m(r, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Basis of {y : y M = 0}.
template <class F>
std::vector<std::vector<typename F::Elem>> left_nullspace(const Matrix<F>& m) {
  return nullspace(m.transpose());
}

/// Some solution of M x = b, or nullopt.
template <class F>
std::optional<std::vector<typename F::Elem>> solve(const Matrix<F>& m, const std::vector<typename F::Elem>& b) {
  const F& K = m.field();
  Matrix<F> aug(K, m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  auto piv = rref(aug);
  if (!piv.empty() && piv.back() == m.cols()) return std::nullopt;
  std::vector<typename F::Elem> x(m.cols(), K.zero());
  for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug(r, m.cols());
  return x;
}

template <class F>
std::optional<Matrix<F>> inverse(const Matrix<F>& m) {
  if (m.rows() != m.cols()) throw ArithmeticError("inverse of a non-square matrix");
  Matrix<F> a = m;
  Matrix<F> t = Matrix<F>::identity(m.field(), m.rows());
  auto piv = rref(a, &t);
  if (piv.size() != m.rows()) return std::nullopt;
  return t;
}

template <class F>
typename F::Elem determinant(Matrix<F> m) {
  if (m.rows() != m.cols()) throw ArithmeticError("determinant of a non-square matrix");
  const F& K = m.field();
  auto det = K.one();
  std::size_t n = m.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && K.is_zero(m(p, c))) ++p;
    if (p == n) return K.zero();
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      det = K.neg(det);
    }
    det = K.mul(det, m(c, c));
    auto inv = K.inv(m(c, c));
    for (std::size_t i = c + 1; i < n; ++i) {
      if (K.is_zero(m(i, c))) continue;
      auto f = K.neg(K.mul(m(i, c), inv));
      for (std::size_t j = c; j < n; ++j) m(i, j) = K.mul_add(f, m(c, j), m(i, j));
    }
  }
  return det;
}


}  // namespace lforge
