#include "lforge/snf.hpp"

#include <chrono>
#include <sstream>
#include <type_traits>

#include "lforge/groebner.hpp"
#include "lforge/parse.hpp"

namespace lforge {

template <class F>
PolyMatrix<F> PolyMatrix<F>::operator*(const PolyMatrix& o) const {
  if (cols_ != o.rows_) throw ArithmeticError("polynomial matrix shape mismatch");
  PolyMatrix r(field_, rows_, o.cols_, var_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const auto& a = (*this)(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < o.cols_; ++j)
        if (!o(k, j).is_zero()) r(i, j) += a * o(k, j);
    }
  return r;
}

template <class F>
bool PolyMatrix<F>::operator==(const PolyMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) return false;
  for (std::size_t i = 0; i < a_.size(); ++i)
    if (!(a_[i] == o.a_[i])) return false;
  return true;
}

template <class F>
int PolyMatrix<F>::max_degree() const {
  int d = -1;
  for (auto& e : a_) d = std::max(d, e.degree());
  return d;
}

template <class F>
Matrix<F> PolyMatrix<F>::eval(const typename F::Elem& x) const {
  Matrix<F> m(field_, rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j).eval(x);
  return m;
}

namespace {

template <class F>
std::size_t height(const F& K, const UniPoly<F>& p) {
  if constexpr (std::is_same_v<F, RationalField>) {
    std::size_t h = 0;
    for (auto& c : p.coeffs())
      h = std::max({h, mpz_sizeinbase(c.get_num_mpz_t(), 2), mpz_sizeinbase(c.get_den_mpz_t(), 2)});
    return h;
  } else {
    (void)K;
    (void)p;
    return 0;
  }
}

template <class F>
struct SmithState {
  using Poly = UniPoly<F>;
  PolyMatrix<F> A, S1, S2;
  typename F::Elem det1, det2;
  const F& K;

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < A.cols(); ++j) std::swap(A(a, j), A(b, j));
    for (std::size_t j = 0; j < S1.cols(); ++j) std::swap(S1(a, j), S1(b, j));
    det1 = K.neg(det1);
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < A.rows(); ++i) std::swap(A(i, a), A(i, b));
    for (std::size_t i = 0; i < S2.rows(); ++i) std::swap(S2(i, a), S2(i, b));
    det2 = K.neg(det2);
  }
  // row_i -= q * row_t
  void row_sub(std::size_t i, std::size_t t, const Poly& q, std::size_t from) {
    for (std::size_t j = from; j < A.cols(); ++j)
      if (!A(t, j).is_zero()) A(i, j) -= q * A(t, j);
    for (std::size_t j = 0; j < S1.cols(); ++j)
      if (!S1(t, j).is_zero()) S1(i, j) -= q * S1(t, j);
  }
  // col_j -= q * col_t
  void col_sub(std::size_t j, std::size_t t, const Poly& q, std::size_t from) {
    for (std::size_t i = from; i < A.rows(); ++i)
      if (!A(i, t).is_zero()) A(i, j) -= q * A(i, t);
    for (std::size_t i = 0; i < S2.rows(); ++i)
      if (!S2(i, t).is_zero()) S2(i, j) -= q * S2(i, t);
  }
  void scale_row(std::size_t t, const typename F::Elem& s) {
    for (std::size_t j = 0; j < A.cols(); ++j) A(t, j) = A(t, j).scaled(s);
    for (std::size_t j = 0; j < S1.cols(); ++j) S1(t, j) = S1(t, j).scaled(s);
    det1 = K.mul(det1, s);
  }
};

using Clock = std::chrono::steady_clock;

struct Budget {
  double max_seconds;
  Clock::time_point start = Clock::now();
  void check(std::size_t t, std::size_t total) const {
    if (max_seconds <= 0) return;
    double el = std::chrono::duration<double>(Clock::now() - start).count();
    if (el > max_seconds)
      throw BudgetExceeded("smith_normal_form time budget",
                           "pivot " + std::to_string(t) + " of " + std::to_string(total) + ", " + std::to_string(el) + "s");
  }
};

// Euclidean SNF on the whole of st.A; returns the rank.
template <class F>
std::size_t euclid_snf(SmithState<F>& st, const Budget& budget) {
  using Poly = UniPoly<F>;
  const F& K = st.K;
  auto& A = st.A;
  const std::size_t m = A.rows(), n = A.cols();
  std::size_t t = 0;
  for (; t < std::min(m, n); ++t) {
    bool empty = false;
    for (;;) {
      budget.check(t, std::min(m, n));
      // minimal degree pivot, ties by column then row (then height over QQ)
      std::size_t pi = m, pj = n;
      int best = -1;
      std::size_t best_h = 0;
      for (std::size_t j = t; j < n; ++j)
        for (std::size_t i = t; i < m; ++i) {
          const Poly& e = A(i, j);
          if (e.is_zero()) continue;
          int d = e.degree();
          std::size_t h = height(K, e);
          if (best < 0 || d < best || (d == best && h < best_h)) {
            best = d;
            best_h = h;
            pi = i;
            pj = j;
          }
        }
      if (best < 0) {
        empty = true;
        break;
      }
      st.swap_rows(t, pi);
      st.swap_cols(t, pj);
      const Poly piv = A(t, t);
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (A(i, t).is_zero()) continue;
        auto [q, r] = A(i, t).divmod(piv);
        st.row_sub(i, t, q, t);
        if (!r.is_zero()) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (A(t, j).is_zero()) continue;
        auto [q, r] = A(t, j).divmod(piv);
        st.col_sub(j, t, q, t);
        if (!r.is_zero()) clean = false;
      }
      if (!clean) continue;
      if (piv.degree() > 0) {
        std::size_t bad = m;
        for (std::size_t i = t + 1; i < m && bad == m; ++i)
          for (std::size_t j = t + 1; j < n; ++j)
            if (!A(i, j).is_zero() && !piv.divides(A(i, j))) {
              bad = i;
              break;
            }
        if (bad != m) {
          // row_t += row_bad; the next pass reduces the new remainders
          st.row_sub(t, bad, Poly::constant(K, K.neg(K.one()), A.var()), t);
          continue;
        }
      }
      break;
    }
    if (empty) break;
    st.scale_row(t, K.inv(A(t, t).leading()));
  }
  return t;
}

template <class F>
int permutation_sign(const std::vector<std::size_t>& perm) {
  std::vector<bool> seen(perm.size(), false);
  int sign = 1;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = perm[j]) {
      seen[j] = true;
      ++len;
    }
    if (len % 2 == 0) sign = -sign;
  }
  return sign;
}

}  // namespace

/*
 * Constant pivots are eliminated first by row operations alone (Gauss-Jordan),
 * which keeps the transforms at the degree of the matrix inverse; only the
 * block left without constant entries goes through Euclidean steps.
 */
template <class F>
SNFResult<F> smith_normal_form(const PolyMatrix<F>& M, const SNFOptions& opt) {
  using Poly = UniPoly<F>;
  const F& K = M.field();
  const std::size_t m = M.rows(), n = M.cols();
  const std::string& var = M.var();
  Budget budget{opt.max_seconds};
  SmithState<F> st{M, PolyMatrix<F>::identity(K, m, var), PolyMatrix<F>::identity(K, n, var), K.one(), K.one(), K};
  auto& A = st.A;

  std::vector<bool> row_used(m, false), col_used(n, false);
  std::vector<std::pair<std::size_t, std::size_t>> pivots;
  for (;;) {
    budget.check(pivots.size(), std::min(m, n));
    std::size_t pr = m, pc = n;
    for (std::size_t j = 0; j < n && pc == n; ++j) {
      if (col_used[j]) continue;
      for (std::size_t i = 0; i < m; ++i)
        if (!row_used[i] && A(i, j).degree() == 0) {
          pr = i;
          pc = j;
          break;
        }
    }
    if (pc == n) break;
    st.scale_row(pr, K.inv(A(pr, pc).leading()));
    for (std::size_t i = 0; i < m; ++i)
      if (i != pr && !A(i, pc).is_zero()) {
        Poly q = A(i, pc);
        st.row_sub(i, pr, q, 0);
      }
    row_used[pr] = true;
    col_used[pc] = true;
    pivots.push_back({pr, pc});
  }

  // residual block through the Euclidean algorithm
  std::vector<std::size_t> rrest, crest;
  for (std::size_t i = 0; i < m; ++i)
    if (!row_used[i]) rrest.push_back(i);
  for (std::size_t j = 0; j < n; ++j)
    if (!col_used[j]) crest.push_back(j);
  std::size_t block_rank = 0;
  if (!rrest.empty() && !crest.empty()) {
    PolyMatrix<F> B(K, rrest.size(), crest.size(), var);
    for (std::size_t a = 0; a < rrest.size(); ++a)
      for (std::size_t b = 0; b < crest.size(); ++b) B(a, b) = A(rrest[a], crest[b]);
    SmithState<F> sub{B, PolyMatrix<F>::identity(K, rrest.size(), var), PolyMatrix<F>::identity(K, crest.size(), var),
                      K.one(), K.one(), K};
    block_rank = euclid_snf(sub, budget);
    // rows rrest <- S1b * rows rrest (A and S1); pivot columns are zero there
    auto apply_rows = [&](PolyMatrix<F>& X) {
      PolyMatrix<F> old(K, rrest.size(), X.cols(), var);
      for (std::size_t a = 0; a < rrest.size(); ++a)
        for (std::size_t j = 0; j < X.cols(); ++j) old(a, j) = X(rrest[a], j);
      auto nw = sub.S1 * old;
      for (std::size_t a = 0; a < rrest.size(); ++a)
        for (std::size_t j = 0; j < X.cols(); ++j) X(rrest[a], j) = nw(a, j);
    };
    auto apply_cols = [&](PolyMatrix<F>& X) {
      PolyMatrix<F> old(K, X.rows(), crest.size(), var);
      for (std::size_t i = 0; i < X.rows(); ++i)
        for (std::size_t b = 0; b < crest.size(); ++b) old(i, b) = X(i, crest[b]);
      auto nw = old * sub.S2;
      for (std::size_t i = 0; i < X.rows(); ++i)
        for (std::size_t b = 0; b < crest.size(); ++b) X(i, crest[b]) = nw(i, b);
    };
    apply_rows(A);
    apply_rows(st.S1);
    apply_cols(A);
    apply_cols(st.S2);
    st.det1 = K.mul(st.det1, sub.det1);
    st.det2 = K.mul(st.det2, sub.det2);
  }

  // clear the pivot rows outside the pivot columns
  for (auto [r, c] : pivots)
    for (std::size_t j = 0; j < n; ++j)
      if (j != c && !A(r, j).is_zero()) {
        Poly q = A(r, j);
        A(r, j) = Poly(K, var);
        for (std::size_t i = 0; i < n; ++i)
          if (!st.S2(i, c).is_zero()) st.S2(i, j) -= q * st.S2(i, c);
      }

  // order: constant pivots first, then the residual block
  std::vector<std::size_t> rorder, corder;
  for (auto [r, c] : pivots) {
    rorder.push_back(r);
    corder.push_back(c);
  }
  rorder.insert(rorder.end(), rrest.begin(), rrest.end());
  corder.insert(corder.end(), crest.begin(), crest.end());

  SNFResult<F> res;
  res.rank = pivots.size() + block_rank;
  res.S1 = PolyMatrix<F>(K, m, m, var);
  res.S2 = PolyMatrix<F>(K, n, n, var);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t j = 0; j < m; ++j) res.S1(a, j) = st.S1(rorder[a], j);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t b = 0; b < n; ++b) res.S2(i, b) = st.S2(i, corder[b]);
  res.det_S1 = permutation_sign<F>(rorder) < 0 ? K.neg(st.det1) : st.det1;
  res.det_S2 = permutation_sign<F>(corder) < 0 ? K.neg(st.det2) : st.det2;
  res.D = PolyMatrix<F>(K, m, n, var);
  for (std::size_t k = 0; k < std::min(m, n); ++k) {
    res.D(k, k) = A(rorder[k], corder[k]);
    res.diagonal.push_back(res.D(k, k));
  }
  if (!M.provenance.empty()) res.D.provenance = "SNF of " + M.provenance;
  if (opt.verify) {
    res.transform_verified = (res.S1 * M) * res.S2 == res.D;
    bool chain = true;
    for (std::size_t i = 0; i + 1 < res.diagonal.size(); ++i) {
      const auto& a = res.diagonal[i];
      const auto& b = res.diagonal[i + 1];
      if (a.is_zero()) {
        if (!b.is_zero()) chain = false;
      } else if (!b.is_zero() && !a.divides(b)) {
        chain = false;
      }
    }
    res.divisibility_verified = chain;
  }
  return res;
}

std::vector<std::int64_t> det_samples(const PolyMatrix<PrimeField>& M) {
  const auto& K = M.field();
  std::vector<std::int64_t> out;
  for (std::uint32_t a = 0; a < K.characteristic(); ++a) out.push_back(K.to_signed(determinant(M.eval(a))));
  return out;
}

template <class F>
std::string format_poly_matrix(const PolyMatrix<F>& M) {
  std::ostringstream os;
  os << M.rows() << " " << M.cols() << " " << M.var() << "\n";
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j) os << M(i, j).to_string() << "\n";
  return os.str();
}

template <class F>
PolyMatrix<F> parse_poly_matrix(const std::string& text, const F& field) {
  std::istringstream is(text);
  std::size_t r = 0, c = 0;
  std::string var;
  if (!(is >> r >> c >> var)) throw ParseError("polynomial matrix header must be: rows cols variable", 0);
  auto ring = make_ring(field, std::vector<std::string>{var});
  PolyMatrix<F> M(field, r, c, var);
  std::string line;
  std::getline(is, line);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) {
      do {
        if (!std::getline(is, line)) throw ParseError("polynomial matrix: missing entries", 0);
      } while (line.find_first_not_of(" \t\r") == std::string::npos);
      auto p = parse_poly(line, ring);
      std::vector<typename F::Elem> cf;
      for (auto& tm : p.terms()) {
        std::size_t d = tm.m[0];
        if (cf.size() <= d) cf.resize(d + 1, field.zero());
        cf[d] = tm.c;
      }
      M(i, j) = UniPoly<F>(field, std::move(cf), var);
    }
  return M;
}

// ---- factorization over F_p ----

namespace {

using UP = UniPoly<PrimeField>;

UP x_poly(const PrimeField& K, const std::string& var) { return UP::monomial(K, K.one(), 1, var); }

}  // namespace

std::vector<std::pair<UP, int>> distinct_degree_factor(const UP& f) {
  const auto& K = f.field();
  std::vector<std::pair<UP, int>> out;
  UP g = f.monic();
  UP x = x_poly(K, f.var());
  UP h = x;
  mpz_class p = K.characteristic();
  for (int d = 1; 2 * d <= g.degree(); ++d) {
    h = powmod(h, p, g);
    auto fac = gcd(h - x, g);
    if (fac.degree() > 0) {
      out.push_back({fac, d});
      g = g.exact_div(fac);
      h = h % g;
    }
  }
  if (g.degree() > 0) out.push_back({g, g.degree()});
  return out;
}

bool is_irreducible_ff(const UP& f) {
  if (f.degree() <= 0) return false;
  if (gcd(f, f.derivative()).degree() > 0) return false;
  auto dd = distinct_degree_factor(f);
  return dd.size() == 1 && dd[0].second == f.degree();
}

namespace {

void equal_degree_split(const UP& f, int d, Rng& rng, std::vector<UP>& out) {
  if (f.degree() == d) {
    out.push_back(f.monic());
    return;
  }
  const auto& K = f.field();
  mpz_class q;
  mpz_ui_pow_ui(q.get_mpz_t(), K.characteristic(), d);
  for (;;) {
    std::vector<PrimeField::Elem> c(f.degree());
    for (auto& e : c) e = rng.element(K);
    UP a(K, c, f.var());
    if (a.degree() <= 0) continue;
    UP b;
    if (K.characteristic() == 2) {
      // trace map a + a^2 + ... + a^(2^(d-1))
      UP acc = a, cur = a;
      for (int i = 1; i < d; ++i) {
        cur = (cur * cur) % f;
        acc += cur;
      }
      b = acc;
    } else {
      b = powmod(a, (q - 1) / 2, f) - UP::constant(K, K.one(), f.var());
    }
    auto g = gcd(b, f);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      equal_degree_split(g, d, rng, out);
      equal_degree_split(f.exact_div(g), d, rng, out);
      return;
    }
  }
}

}  // namespace

FactorList<PrimeField> unipoly_factor_ff(const UP& f, std::uint64_t seed) {
  if (f.is_zero()) throw ArithmeticError("factorization of the zero polynomial");
  Rng rng(seed);
  FactorList<PrimeField> out;
  for (auto& [sq, mult] : squarefree(f)) {
    for (auto& [part, d] : distinct_degree_factor(sq)) {
      std::vector<UP> pieces;
      equal_degree_split(part, d, rng, pieces);
      for (auto& p : pieces) out.push_back({p, mult});
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
    if (a.second != b.second) return a.second < b.second;
    return a.first.coeffs() < b.first.coeffs();
  });
  return out;
}

std::vector<std::uint32_t> root_scan_ff(const UP& f) {
  const auto& K = f.field();
  if (K.characteristic() >= (1u << 20)) throw ConstructionError("root scan needs p < 2^20");
  std::vector<std::uint32_t> roots;
  if (f.is_zero()) return roots;
  for (std::uint32_t a = 0; a < K.characteristic(); ++a)
    if (K.is_zero(f.eval(a))) roots.push_back(a);
  return roots;
}

ReducedPoly mod_reduce(const UniPoly<RationalField>& f, const PrimeField& K) {
  std::vector<PrimeField::Elem> c;
  for (std::size_t k = 0; k < f.coeffs().size(); ++k) {
    const mpq_class& q = f.coeffs()[k];
    if (mpz_divisible_ui_p(q.get_den_mpz_t(), K.characteristic()))
      throw ArithmeticError("denominator divisible by " + std::to_string(K.characteristic()) + " in coefficient of " +
                            f.var() + "^" + std::to_string(k));
    c.push_back(K.from_fraction(q.get_num(), q.get_den()));
  }
  ReducedPoly r{UP(K, std::move(c), f.var()), true};
  r.degree_preserved = r.poly.degree() == f.degree();
  return r;
}

PolyMatrix<PrimeField> mod_reduce(const PolyMatrix<RationalField>& M, const PrimeField& K) {
  PolyMatrix<PrimeField> out(K, M.rows(), M.cols(), M.var());
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j) {
      try {
        out(i, j) = mod_reduce(M(i, j), K).poly;
      } catch (const ArithmeticError& e) {
        throw ArithmeticError("entry (" + std::to_string(i) + "," + std::to_string(j) + "): " + e.what());
      }
    }
  out.provenance = M.provenance;
  return out;
}

#define LFORGE_SNF(F)                                                               \
  template class PolyMatrix<F>;                                                     \
  template SNFResult<F> smith_normal_form(const PolyMatrix<F>&, const SNFOptions&); \
  template std::string format_poly_matrix(const PolyMatrix<F>&);                    \
  template PolyMatrix<F> parse_poly_matrix(const std::string&, const F&);
LFORGE_SNF(PrimeField)
LFORGE_SNF(RationalField)

}  // namespace lforge
