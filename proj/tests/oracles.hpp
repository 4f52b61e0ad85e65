#pragma once

// Test-side reference computations. They use only elementary arithmetic mod p
// and never call the library algorithms they are compared against.

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "lforge/mpoly.hpp"
#include "lforge/unipoly.hpp"

namespace oracle {

using u64 = std::uint64_t;

inline u64 inv_mod(u64 a, u64 p) {
  u64 r = 1, e = p - 2;
  a %= p;
  while (e) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return r;
}

/// Rank of a dense matrix mod p.
inline std::size_t rank_mod(std::vector<std::vector<u64>> m, u64 p) {
  std::size_t r = 0;
  std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t piv = r;
    while (piv < m.size() && m[piv][c] % p == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[r]);
    u64 iv = inv_mod(m[r][c], p);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] % p == 0) continue;
      u64 f = m[i][c] * iv % p;
      for (std::size_t j = c; j < cols; ++j) m[i][j] = (m[i][j] + (p - f) * m[r][j]) % p;
    }
    ++r;
  }
  return r;
}

/// Determinant mod p by Gaussian elimination.
inline u64 det_mod(std::vector<std::vector<u64>> m, u64 p) {
  std::size_t n = m.size();
  u64 det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv][c] % p == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = (p - det) % p;
    }
    det = det * (m[c][c] % p) % p;
    u64 iv = inv_mod(m[c][c], p);
    for (std::size_t i = c + 1; i < n; ++i) {
      u64 f = m[i][c] % p * iv % p;
      for (std::size_t j = c; j < n; ++j) m[i][j] = (m[i][j] + (p - f) * m[c][j]) % p;
    }
  }
  return det;
}

/// Determinant of a polynomial matrix by Laplace expansion along rows, memoized on column subsets.
template <class F>
lforge::MPoly<F> det_poly(const std::vector<std::vector<lforge::MPoly<F>>>& a) {
  std::size_t n = a.size();
  std::map<std::uint32_t, lforge::MPoly<F>> memo;
  std::function<lforge::MPoly<F>(std::size_t, std::uint32_t)> rec = [&](std::size_t row, std::uint32_t used) {
    if (row == n) return lforge::MPoly<F>::from_int(a[0][0].ring(), 1);
    auto it = memo.find(used);
    if (it != memo.end()) return it->second;
    lforge::MPoly<F> acc(a[0][0].ring());
    int sign = 1;
    for (std::size_t c = 0; c < n; ++c) {
      if (used & (1u << c)) continue;
      if (!a[row][c].is_zero()) {
        auto t = a[row][c] * rec(row + 1, used | (1u << c));
        acc = sign > 0 ? acc + t : acc - t;
      }
      sign = -sign;
    }
    memo[used] = acc;
    return acc;
  };
  return rec(0, 0);
}

/// Coefficient vector of a homogeneous form over the listed monomials, mod p.
template <class F>
std::vector<u64> coeff_vector(const lforge::MPoly<F>& f, const std::vector<lforge::Monomial>& basis) {
  std::vector<u64> v(basis.size(), 0);
  for (auto& t : f.terms())
    for (std::size_t k = 0; k < basis.size(); ++k)
      if (basis[k] == t.m) v[k] = t.c;
  return v;
}

/// All monomials of degree d in n variables, generated by stars and bars.
inline std::vector<lforge::Monomial> monomials(std::size_t n, unsigned d) {
  std::vector<lforge::Monomial> out;
  std::vector<unsigned> e(n, 0);
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
    if (i + 1 == n) {
      e[i] = left;
      out.emplace_back(e);
      return;
    }
    for (unsigned k = 0; k <= left; ++k) {
      e[i] = k;
      rec(i + 1, left - k);
    }
  };
  if (n > 0) rec(0, d);
  return out;
}

/// f in the degree-d part of (gens), for homogeneous gens, by linear algebra.
template <class F>
bool in_ideal_degree(const lforge::MPoly<F>& f, const std::vector<lforge::MPoly<F>>& gens, unsigned d, u64 p) {
  auto ring = f.ring();
  std::size_t n = ring->nvars();
  auto basis = monomials(n, d);
  std::vector<std::vector<u64>> rows;
  for (auto& g : gens) {
    int dg = g.degree();
    if (dg > (int)d) continue;
    for (auto& m : monomials(n, d - dg)) rows.push_back(coeff_vector(g.mul_term(m, g.field().one()), basis));
  }
  std::size_t r0 = rows.empty() ? 0 : rank_mod(rows, p);
  rows.push_back(coeff_vector(f, basis));
  return rank_mod(rows, p) == r0;
}

/// x^(p^k) mod f for k = 1..deg/2 and gcd with f; irreducible iff every gcd is 1 (Rabin-style, squarefree f).
inline bool irreducible_mod(const lforge::UniPoly<lforge::PrimeField>& f) {
  using P = lforge::UniPoly<lforge::PrimeField>;
  const auto& K = f.field();
  int d = f.degree();
  if (d <= 0) return false;
  if (d == 1) return true;
  P x = P::monomial(K, K.one(), 1, f.var());
  P h = x % f;
  for (int k = 1; k <= d / 2; ++k) {
    P acc = P::constant(K, K.one(), f.var());
    P base = h;
    for (u64 e = K.characteristic(); e; e >>= 1) {
      if (e & 1) acc = (acc * base) % f;
      base = (base * base) % f;
    }
    h = acc;
    P g = f, r = h - x;
    while (!r.is_zero()) {
      P t = g % r;
      g = r;
      r = t;
    }
    if (g.degree() > 0) return false;
  }
  return true;
}

}  // namespace oracle
