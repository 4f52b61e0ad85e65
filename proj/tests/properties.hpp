#pragma once

// Randomized property suites shared by the unit tests and the acceptance binary.

#include <sstream>
#include <string>

#include "lforge/link.hpp"
#include "lforge/pfaffian.hpp"
#include "lforge/rao.hpp"
#include "lforge/snf.hpp"
#include "lforge/veronese.hpp"
#include "oracles.hpp"

namespace props {

using namespace lforge;
using K17 = PrimeField;
using P = MPoly<K17>;

struct Result {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first_failure;
  bool ok() const { return failures == 0 && cases > 0; }
  void fail(const std::string& what) {
    if (failures++ == 0) first_failure = what;
  }
};

inline std::vector<std::vector<oracle::u64>> to_rows(const Matrix<K17>& m) {
  std::vector<std::vector<oracle::u64>> r(m.rows(), std::vector<oracle::u64>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r[i][j] = m(i, j);
  return r;
}

/// Pf(A)^2 = det(A): constant matrices up to 10x10 against modular elimination,
/// linear-form matrices up to 6x6 against Laplace expansion.
inline Result pfaffian_squared_is_det(std::size_t cases, std::uint64_t seed) {
  Result res{"Pf^2 = det"};
  K17 K;
  auto R = make_ring(K, {"x", "y"});
  Rng rng(seed);
  for (std::size_t c = 0; c < cases; ++c) {
    bool symbolic = c % 4 == 0;
    std::size_t n = symbolic ? 2 * (1 + rng.below(3)) : 2 * (1 + rng.below(5));
    SkewMatrix<K17> A(R, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        A.set(i, j, symbolic ? random_form(R, 1, rng) : P::constant(R, rng.element(K)));
    P pf = pfaffian(A);
    ++res.cases;
    if (symbolic) {
      if (!(pf * pf == oracle::det_poly(A.grid())))
        res.fail("symbolic case " + std::to_string(c) + " size " + std::to_string(n));
    } else {
      auto v = pf.is_zero() ? 0u : pf.terms().front().c;
      auto M = A.eval({0, 0});
      if (K.mul(v, v) != oracle::det_mod(to_rows(M), 17))
        res.fail("constant case " + std::to_string(c) + " size " + std::to_string(n));
    }
  }
  return res;
}

/// Ideal membership from the Groebner basis against linear algebra in one degree.
inline Result gb_membership(std::size_t ideals, std::uint64_t seed) {
  Result res{"GB membership vs linear algebra"};
  K17 K;
  Rng rng(seed);
  for (std::size_t c = 0; c < ideals; ++c) {
    std::size_t n = 3 + rng.below(2);
    auto R = make_ring(K, indexed_names("x", n));
    std::size_t ngens = 2 + rng.below(2);
    std::vector<P> gens;
    for (std::size_t g = 0; g < ngens; ++g) {
      // Sparse generators keep the degree pieces far from full.
      unsigned d = 2 + (unsigned)rng.below(2);
      auto mons = oracle::monomials(n, d);
      std::vector<Term<K17>> t;
      for (int k = 0; k < 3; ++k) t.push_back({mons[rng.below(mons.size())], rng.nonzero_element(K)});
      P f(R, t);
      if (!f.is_zero()) gens.push_back(f);
    }
    Ideal<K17> I(R, gens);
    for (unsigned d = 2; d <= 5; ++d) {
      for (int trial = 0; trial < 3; ++trial) {
        P f(R);
        if (trial == 0) {
          f = random_form(R, d, rng);
        } else {
          for (auto& g : gens)
            if ((unsigned)g.degree() <= d) f += random_form(R, d - g.degree(), rng) * g;
          if (trial == 2) {
            auto mons = oracle::monomials(n, d);
            f += P::term(R, mons[rng.below(mons.size())], rng.nonzero_element(K));
          }
        }
        bool lib = I.contains(f);
        bool ref = oracle::in_ideal_degree(f, gens, d, 17);
        if (lib != ref) res.fail("ideal " + std::to_string(c) + " degree " + std::to_string(d) + ": " + f.to_string());
      }
    }
    ++res.cases;
  }
  return res;
}

/// deg X + deg X' = deg CI for random (2,2) links in P^3 and (2,3) links in P^4, and the double link returns X.
inline Result liaison_additivity(std::size_t each, std::uint64_t seed) {
  Result res{"liaison degree additivity"};
  K17 K;
  Rng rng(seed);
  auto combo = [&](const std::vector<P>& gens, unsigned d) {
    auto R = gens.front().ring();
    P f(R);
    for (auto& g : gens)
      if ((unsigned)g.degree() <= d) f += random_form(R, d - g.degree(), rng) * g;
    return f;
  };
  for (std::size_t c = 0; c < 3 * each; ++c) {
    int kind = c % 3;
    std::size_t n = kind == 2 ? 5 : 4;
    auto R = make_ring(K, indexed_names("x", n));
    std::vector<P> gx;
    std::vector<unsigned> ci_deg;
    long long expect_x = 0;
    if (kind == 0) {  // line in P^3, CI (2,2)
      gx = {random_form(R, 1, rng), random_form(R, 1, rng)};
      ci_deg = {2, 2};
      expect_x = 1;
    } else if (kind == 1) {  // twisted cubic in P^3, CI (2,2)
      auto x = [&](int i) { return P::variable(R, i); };
      gx = {x(0) * x(2) - x(1) * x(1), x(0) * x(3) - x(1) * x(2), x(1) * x(3) - x(2) * x(2)};
      ci_deg = {2, 2};
      expect_x = 3;
    } else {  // plane in P^4, CI (2,3)
      gx = {random_form(R, 1, rng), random_form(R, 1, rng)};
      ci_deg = {2, 3};
      expect_x = 1;
    }
    Ideal<K17> IX(R, gx);
    std::vector<P> ci;
    for (auto d : ci_deg) ci.push_back(combo(gx, d));
    ++res.cases;
    try {
      auto step = link(IX, Ideal<K17>(R, ci));
      long long prod = 1;
      for (auto d : ci_deg) prod *= d;
      auto [dx, gxdeg] = IX.dim_degree();
      auto [dy, gydeg] = step.residual.dim_degree();
      if (gxdeg != expect_x || gxdeg + gydeg != prod || dx != dy || !liaison_invariants(step).ok()) {
        res.fail("case " + std::to_string(c) + ": " + step.summary());
        continue;
      }
      auto back = link(step.residual, Ideal<K17>(R, ci));
      if (!back.residual.equals(IX)) res.fail("case " + std::to_string(c) + ": double link does not return X");
    } catch (const std::exception& e) {
      res.fail("case " + std::to_string(c) + ": " + e.what());
    }
  }
  return res;
}

using UP = UniPoly<K17>;

inline UP random_unipoly(const K17& K, int deg, Rng& rng) {
  std::vector<K17::Elem> c(deg + 1);
  for (auto& e : c) e = rng.element(K);
  return UP(K, c);
}

/// SNF of random polynomial matrices up to 6x6 over GF(17)[lambda].
inline Result snf_random(std::size_t cases, std::uint64_t seed) {
  Result res{"SNF divisibility and transforms"};
  K17 K;
  Rng rng(seed);
  for (std::size_t c = 0; c < cases; ++c) {
    std::size_t r = 1 + rng.below(6), s = 1 + rng.below(6);
    PolyMatrix<K17> M(K, r, s);
    if (c % 3 == 0) {
      // Low rank: product of r x k and k x s.
      std::size_t k = 1 + rng.below(std::min(r, s));
      PolyMatrix<K17> A(K, r, k), B(K, k, s);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < k; ++j) A(i, j) = random_unipoly(K, (int)rng.below(2), rng);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < s; ++j) B(i, j) = random_unipoly(K, (int)rng.below(2), rng);
      M = A * B;
    } else {
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < s; ++j) M(i, j) = random_unipoly(K, (int)rng.below(3), rng);
    }
    ++res.cases;
    auto out = smith_normal_form(M);
    std::string tag = "case " + std::to_string(c) + " (" + std::to_string(r) + "x" + std::to_string(s) + ")";
    if (!out.transform_verified || !out.divisibility_verified) {
      res.fail(tag + ": library self-check failed");
      continue;
    }
    // Independent recomputation of S1 M S2 entry by entry.
    bool prod_ok = true;
    for (std::size_t i = 0; i < r && prod_ok; ++i)
      for (std::size_t j = 0; j < s && prod_ok; ++j) {
        UP acc(K);
        for (std::size_t a = 0; a < r; ++a)
          for (std::size_t b = 0; b < s; ++b) acc += out.S1(i, a) * M(a, b) * out.S2(b, j);
        UP want = i == j && i < out.diagonal.size() ? out.diagonal[i] : UP(K);
        prod_ok = acc == want;
      }
    if (!prod_ok) {
      res.fail(tag + ": S1 M S2 != D");
      continue;
    }
    // Divisibility, monic diagonal, and rank equal to the generic rank.
    std::size_t nz = 0;
    bool div_ok = true;
    for (std::size_t i = 0; i < out.diagonal.size(); ++i) {
      if (out.diagonal[i].is_zero()) continue;
      ++nz;
      if (out.diagonal[i].leading() != 1) div_ok = false;
      if (i + 1 < out.diagonal.size() && !out.diagonal[i + 1].is_zero() &&
          !(out.diagonal[i + 1] % out.diagonal[i]).is_zero())
        div_ok = false;
    }
    std::size_t generic_rank = 0;
    for (K17::Elem x = 0; x < 17; ++x) {
      std::vector<std::vector<oracle::u64>> ev(r, std::vector<oracle::u64>(s));
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < s; ++j) ev[i][j] = M(i, j).eval(x);
      generic_rank = std::max(generic_rank, oracle::rank_mod(ev, 17));
    }
    if (!div_ok || nz != generic_rank) {
      res.fail(tag + ": diagonal is not a monic divisibility chain of the right length");
      continue;
    }
    // Unimodularity: det of each transform is the same nonzero constant at every point.
    auto det_const = [&](const PolyMatrix<K17>& S) {
      std::optional<oracle::u64> v;
      for (K17::Elem x = 0; x < 17; ++x) {
        std::vector<std::vector<oracle::u64>> ev(S.rows(), std::vector<oracle::u64>(S.cols()));
        for (std::size_t i = 0; i < S.rows(); ++i)
          for (std::size_t j = 0; j < S.cols(); ++j) ev[i][j] = S(i, j).eval(x);
        auto d = oracle::det_mod(ev, 17);
        if (d == 0 || (v && *v != d)) return false;
        v = d;
      }
      return true;
    };
    if (!det_const(out.S1) || !det_const(out.S2)) res.fail(tag + ": transform is not unimodular");
  }
  return res;
}

/// Cantor-Zassenhaus: factors multiply back, are monic, pairwise distinct and irreducible.
inline Result cz_roundtrip(std::size_t cases, std::uint64_t seed) {
  Result res{"Cantor-Zassenhaus roundtrip"};
  K17 K;
  Rng rng(seed);
  for (std::size_t c = 0; c < cases; ++c) {
    UP f(K);
    if (c % 2 == 0) {
      int deg = 1 + (int)rng.below(30);
      do f = random_unipoly(K, deg, rng);
      while (f.degree() < 1);
    } else {
      // Built from random pieces with repeats, degree at most 30.
      f = UP::constant(K, rng.nonzero_element(K));
      while (f.degree() < 20) {
        UP g = random_unipoly(K, 1 + (int)rng.below(6), rng);
        if (g.degree() < 1) continue;
        int m = 1 + (int)rng.below(3);
        if (f.degree() + m * g.degree() > 30) break;
        for (int k = 0; k < m; ++k) f *= g;
      }
      if (f.degree() < 1) f = UP(K, std::vector<K17::Elem>{1, 1});
    }
    ++res.cases;
    auto fac = unipoly_factor_ff(f, seed + c);
    UP prod = UP::constant(K, f.leading());
    bool ok = true;
    for (std::size_t i = 0; i < fac.size(); ++i) {
      auto& [g, m] = fac[i];
      if (g.leading() != 1 || m < 1 || !oracle::irreducible_mod(g)) ok = false;
      for (std::size_t j = 0; j < i; ++j)
        if (fac[j].first == g) ok = false;
      for (int k = 0; k < m; ++k) prod *= g;
    }
    if (!ok || !(prod == f)) res.fail("case " + std::to_string(c) + ": " + f.to_string());
  }
  return res;
}

/// Variable actions on cokernel modules of random projections commute; a non-commuting action is rejected.
inline Result rao_commutativity(std::size_t cases, std::uint64_t seed) {
  Result res{"Rao action commutativity"};
  K17 K;
  for (std::size_t c = 0; c < cases; ++c) {
    Rng rng(seed + c);
    Matrix<K17> N(K, 10, 6);
    for (std::size_t i = 0; i < 10; ++i)
      for (std::size_t j = 0; j < 6; ++j) N(i, j) = rng.element(K);
    if (rank(N) < 6) continue;
    auto spec = make_projection(CatalecticantKind::p2cubics, N);
    auto M = rao_module_from_forms(spec.composed(), 4);
    ++res.cases;
    bool ok = action_commutator_failures(M) == 0;
    for (int k = M.k_min; k + 2 <= M.k_max && ok; ++k)
      for (std::size_t i = 0; i < 6 && ok; ++i)
        for (std::size_t j = i + 1; j < 6 && ok; ++j) {
          auto a = M.act(j, k + 1) * M.act(i, k);
          auto b = M.act(i, k + 1) * M.act(j, k);
          ok = a == b;
        }
    if (!ok) res.fail("seed " + std::to_string(seed + c));
  }
  // Negative control: x1 x0 = x0 x1 needs f*a = e*b; (1,2 ; 1,2) commutes, (1,2 ; 1,3) does not.
  ++res.cases;
  auto scalar = [&](K17::Elem v) {
    Matrix<K17> m(K, 1, 1);
    m(0, 0) = v;
    return m;
  };
  bool accepted = false, rejected = false;
  try {
    make_rao_module(K, 2, 0, {1, 1, 1}, {{scalar(1), scalar(2)}, {scalar(1), scalar(2)}});
    accepted = true;
    make_rao_module(K, 2, 0, {1, 1, 1}, {{scalar(1), scalar(2)}, {scalar(1), scalar(3)}});
  } catch (const ConstructionError&) {
    rejected = true;
  }
  if (!accepted) res.fail("commuting action rejected");
  if (!rejected) res.fail("non-commuting action accepted");
  return res;
}

}  // namespace props
