#include "lforge/pfaffian.hpp"

#include <bit>
#include <sstream>

#include "lforge/link.hpp"
#include "lforge/parse.hpp"

namespace lforge {

// ---------------------------------------------------------------------------
// SkewMatrix

template <class F>
SkewMatrix<F>::SkewMatrix(RingPtr<F> ring, std::size_t n)
    : ring_(std::move(ring)), n_(n), upper_(n * (n ? n - 1 : 0) / 2, MPoly<F>(ring_)) {
  if (n > 32) throw ConstructionError("skew matrices are limited to size 32");
}

template <class F>
SkewMatrix<F> SkewMatrix<F>::from_grid(const RingPtr<F>& ring, const PolyGrid<F>& g) {
  SkewMatrix A(ring, g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g[i].size() != g.size()) throw ConstructionError("skew matrix must be square");
    if (!g[i][i].is_zero()) throw ConstructionError("skew matrix has a nonzero diagonal entry");
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      if (!(g[i][j] + g[j][i]).is_zero()) throw ConstructionError("matrix is not skew-symmetric");
      A.set(i, j, g[i][j]);
    }
  }
  return A;
}

template <class F>
MPoly<F> SkewMatrix<F>::operator()(std::size_t i, std::size_t j) const {
  if (i == j) return MPoly<F>(ring_);
  if (i < j) return upper_[index(i, j)];
  return -upper_[index(j, i)];
}

template <class F>
void SkewMatrix<F>::set(std::size_t i, std::size_t j, const MPoly<F>& p) {
  if (i == j) throw ConstructionError("diagonal of a skew matrix is zero");
  if (i < j) upper_[index(i, j)] = p;
  else upper_[index(j, i)] = -p;
}

template <class F>
PolyGrid<F> SkewMatrix<F>::grid() const {
  PolyGrid<F> g(n_, std::vector<MPoly<F>>(n_, MPoly<F>(ring_)));
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) g[i][j] = (*this)(i, j);
  return g;
}

template <class F>
std::vector<std::vector<int>> SkewMatrix<F>::degree_pattern() const {
  std::vector<std::vector<int>> d(n_, std::vector<int>(n_, -1));
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j) {
      const auto& p = upper_[index(i, j)];
      if (p.is_zero()) continue;
      auto h = p.homogeneous_degree();
      d[i][j] = d[j][i] = h ? *h : -2;
    }
  return d;
}

template <class F>
SkewMatrix<F> SkewMatrix<F>::principal(const std::vector<std::size_t>& idx) const {
  SkewMatrix B(ring_, idx.size());
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = a + 1; b < idx.size(); ++b) B.set(a, b, (*this)(idx[a], idx[b]));
  return B;
}

template <class F>
SkewMatrix<F> SkewMatrix<F>::substitute(const RingPtr<F>& target, const std::vector<MPoly<F>>& images) const {
  SkewMatrix B(target, n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j) {
      const auto& p = upper_[index(i, j)];
      B.set(i, j, p.is_zero() ? MPoly<F>(target) : p.substitute(images));
    }
  return B;
}

template <class F>
Matrix<F> SkewMatrix<F>::eval(const std::vector<typename F::Elem>& point) const {
  const F& K = ring_->field();
  Matrix<F> M(K, n_, n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j) {
      auto v = upper_[index(i, j)].eval(point);
      M(i, j) = v;
      M(j, i) = K.neg(v);
    }
  return M;
}

template <class F>
std::string SkewMatrix<F>::to_text(const std::string& name) const {
  std::ostringstream os;
  os << "size " << n_ << "\n" << ring_->header(name) << "\n";
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j) os << upper_[index(i, j)].to_string() << "\n";
  return os.str();
}

SkewMatrix<PrimeField> parse_skew_matrix(const std::string& text) {
  std::istringstream is(text);
  std::string line, rest;
  std::size_t n = 0;
  bool have_size = false;
  while (std::getline(is, line)) {
    auto hash = line.find('#');
    std::string content = hash == std::string::npos ? line : line.substr(0, hash);
    if (!have_size) {
      std::istringstream ls(content);
      std::string kw;
      if (!(ls >> kw)) continue;
      if (kw != "size" || !(ls >> n)) throw ParseError("expected 'size <n>'", 0);
      have_size = true;
      continue;
    }
    rest += line + "\n";
  }
  if (!have_size) throw ParseError("missing size line", 0);
  auto file = parse_poly_file(rest);
  auto ring = ring_from_header(file.header, prime_field_of(file.header.field));
  auto entries = parse_polys(file, ring);
  if (entries.size() != n * (n - 1) / 2)
    throw ParseError("expected " + std::to_string(n * (n - 1) / 2) + " upper-triangle entries, got " +
                         std::to_string(entries.size()),
                     0);
  SkewMatrix<PrimeField> A(ring, n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) A.set(i, j, entries[k++]);
  return A;
}

// ---------------------------------------------------------------------------
// Pfaffians

template <class F>
const MPoly<F>& PfaffianTable<F>::of(std::uint32_t mask) {
  auto it = memo_.find(mask);
  if (it != memo_.end()) return it->second;
  MPoly<F> r(A_.ring());
  const int cnt = std::popcount(mask);
  if (cnt == 0) {
    r = MPoly<F>::constant(A_.ring(), A_.ring()->field().one());
  } else if (cnt % 2 == 0) {
    const std::size_t i0 = std::countr_zero(mask);
    std::uint32_t rest = mask & ~(1u << i0);
    int pos = 0;
    for (std::uint32_t m = rest; m; m &= m - 1, ++pos) {
      const std::size_t j = std::countr_zero(m);
      auto a = A_(i0, j);
      if (a.is_zero()) continue;
      const auto& sub = of(rest & ~(1u << j));
      if (sub.is_zero()) continue;
      auto term = a * sub;
      if (pos % 2) r -= term;
      else r += term;
    }
  }
  return memo_.emplace(mask, std::move(r)).first->second;
}

template <class F>
MPoly<F> pfaffian(const SkewMatrix<F>& A) {
  if (A.size() % 2) throw ConstructionError("Pfaffian of an odd-sized matrix");
  PfaffianTable<F> T(A);
  return T.of(A.size() == 32 ? 0xffffffffu : ((1u << A.size()) - 1));
}

namespace {

void subsets_of_size(std::size_t n, std::size_t k, std::vector<std::uint32_t>& out) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  if (k > n) return;
  for (;;) {
    std::uint32_t m = 0;
    for (auto i : idx) m |= 1u << i;
    out.push_back(m);
    std::size_t p = k;
    while (p > 0 && idx[p - 1] == n - k + p - 1) --p;
    if (p == 0) break;
    ++idx[p - 1];
    for (std::size_t q = p; q < k; ++q) idx[q] = idx[q - 1] + 1;
  }
}

struct ExpKeyLess {
  bool operator()(const std::vector<unsigned>& a, const std::vector<unsigned>& b) const { return a < b; }
};

/// Coefficients c with h = Σ c_k p_k, by linear algebra on monomial coefficients.
template <class F>
std::optional<std::vector<typename F::Elem>> solve_combination(const std::vector<MPoly<F>>& polys,
                                                               const MPoly<F>& h) {
  const auto& ring = h.ring();
  const F& K = ring->field();
  const std::size_t n = ring->nvars();
  std::map<std::vector<unsigned>, std::size_t, ExpKeyLess> rows;
  auto row_of = [&](const Monomial& m) {
    auto e = m.exponents(n);
    auto it = rows.find(e);
    if (it != rows.end()) return it->second;
    std::size_t r = rows.size();
    rows.emplace(std::move(e), r);
    return r;
  };
  for (auto& p : polys)
    for (auto& t : p.terms()) row_of(t.m);
  for (auto& t : h.terms()) row_of(t.m);
  Matrix<F> M(K, rows.size(), polys.size());
  std::vector<typename F::Elem> b(rows.size(), K.zero());
  for (std::size_t k = 0; k < polys.size(); ++k)
    for (auto& t : polys[k].terms()) M(row_of(t.m), k) = t.c;
  for (auto& t : h.terms()) b[row_of(t.m)] = t.c;
  return solve(M, b);
}

}  // namespace

template <class F>
std::vector<MPoly<F>> principal_pfaffians(const SkewMatrix<F>& A, std::size_t two_k) {
  if (two_k % 2 || two_k > A.size()) throw ConstructionError("Pfaffian size must be even and at most the matrix size");
  std::vector<std::uint32_t> masks;
  subsets_of_size(A.size(), two_k, masks);
  PfaffianTable<F> T(A);
  std::vector<MPoly<F>> out;
  out.reserve(masks.size());
  for (auto m : masks) out.push_back(T.of(m));
  return out;
}

template <class F>
Ideal<F> sub_pfaffians(const SkewMatrix<F>& A, std::size_t two_k) {
  std::vector<MPoly<F>> gens;
  for (auto& p : principal_pfaffians(A, two_k))
    if (!p.is_zero()) gens.push_back(p);
  return Ideal<F>(A.ring(), std::move(gens));
}

// ---------------------------------------------------------------------------
// Euler-constrained sampling

template <class F>
EulerRow<F> coordinate_row(const RingPtr<F>& ring, std::size_t ncoords, std::size_t n) {
  EulerRow<F> v;
  for (std::size_t i = 0; i < n; ++i)
    v.push_back(i < ncoords ? MPoly<F>::variable(ring, i) : MPoly<F>(ring));
  return v;
}

template <class F>
std::vector<MPoly<F>> row_times(const EulerRow<F>& v, const SkewMatrix<F>& A) {
  if (v.size() != A.size()) throw ConstructionError("row length does not match the matrix");
  std::vector<MPoly<F>> out;
  for (std::size_t j = 0; j < A.size(); ++j) {
    MPoly<F> acc(A.ring());
    for (std::size_t i = 0; i < A.size(); ++i)
      if (!v[i].is_zero() && i != j) acc += v[i] * A(i, j);
    out.push_back(acc);
  }
  return out;
}

std::vector<std::vector<int>> uniform_pattern(std::size_t n, int d) {
  std::vector<std::vector<int>> p(n, std::vector<int>(n, d));
  for (std::size_t i = 0; i < n; ++i) p[i][i] = -1;
  return p;
}

template <class F>
SkewMatrix<F> euler_constrained_sample(const RingPtr<F>& ring, std::size_t n, const EulerRow<F>& v,
                                       const std::vector<std::vector<int>>& pattern, std::uint64_t seed,
                                       SampleInfo* info) {
  if (pattern.size() != n) throw ConstructionError("degree pattern has the wrong size");
  if (!v.empty() && v.size() != n) throw ConstructionError("Euler row has the wrong length");
  const F& K = ring->field();
  const std::size_t nv = ring->nvars();
  struct Unknown {
    std::size_t i, j;
    Monomial m;
  };
  std::vector<Unknown> unk;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (pattern[i][j] != pattern[j][i]) throw ConstructionError("degree pattern is not symmetric");
      if (pattern[i][j] < 0) continue;
      for (auto& m : monomials_of_degree(nv, pattern[i][j])) unk.push_back({i, j, m});
    }
  // Equations: coefficient of each monomial in column j of v·A.
  std::map<std::pair<std::size_t, std::vector<unsigned>>, std::size_t> eq;
  std::vector<std::vector<std::pair<std::size_t, typename F::Elem>>> rows;
  auto add = [&](std::size_t col, const Monomial& m, std::size_t u, const typename F::Elem& c) {
    auto key = std::make_pair(col, m.exponents(nv));
    auto it = eq.find(key);
    std::size_t r;
    if (it == eq.end()) {
      r = rows.size();
      eq.emplace(std::move(key), r);
      rows.emplace_back();
    } else {
      r = it->second;
    }
    rows[r].push_back({u, c});
  };
  if (!v.empty())
    for (std::size_t u = 0; u < unk.size(); ++u) {
      const auto& [i, j, m] = unk[u];
      // a_ij contributes v_i·a_ij to column j and v_j·(-a_ij) to column i.
      for (auto& t : v[i].terms()) add(j, t.m * m, u, t.c);
      for (auto& t : v[j].terms()) add(i, t.m * m, u, K.neg(t.c));
    }
  Matrix<F> M(K, rows.size(), unk.size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (auto& [u, c] : rows[r]) M(r, u) = K.add(M(r, u), c);
  auto basis = nullspace(M);
  if (info) {
    info->unknowns = unk.size();
    info->solution_dim = basis.size();
    info->degenerate = basis.empty();
  }
  Rng rng(seed);
  std::vector<typename F::Elem> x(unk.size(), K.zero());
  for (auto& b : basis) {
    auto c = rng.element(K);
    for (std::size_t u = 0; u < unk.size(); ++u) x[u] = K.mul_add(c, b[u], x[u]);
  }
  SkewMatrix<F> A(ring, n);
  std::vector<std::vector<Term<F>>> entries(n * n);
  for (std::size_t u = 0; u < unk.size(); ++u)
    if (!K.is_zero(x[u])) entries[unk[u].i * n + unk[u].j].push_back({unk[u].m, x[u]});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!entries[i * n + j].empty()) A.set(i, j, MPoly<F>(ring, entries[i * n + j]));
  return A;
}

// ---------------------------------------------------------------------------
// Sections

template <class F>
SkewPresentation<F> make_presentation(SkewMatrix<F> phi, int t, int c1, EulerRow<F> euler) {
  SkewPresentation<F> P;
  const std::size_t n = phi.size();
  if (euler.empty()) {
    if (n % 2 == 0) throw ConstructionError("an unpadded presentation needs odd size 2r+1");
    P.r = static_cast<int>((n - 1) / 2);
  } else {
    if (n % 2 == 1) throw ConstructionError("a padded presentation needs even size 2r+2");
    if (euler.size() != n) throw ConstructionError("Euler row has the wrong length");
    for (auto& p : row_times(euler, phi))
      if (!p.is_zero()) throw ConstructionError("the Euler row does not annihilate the matrix");
    P.r = static_cast<int>((n - 2) / 2);
  }
  P.phi = std::move(phi);
  P.euler = std::move(euler);
  P.t = t;
  P.c1 = c1;
  return P;
}

template <class F>
SkewMatrix<F> border(const SkewMatrix<F>& A, const std::vector<std::vector<MPoly<F>>>& columns) {
  const std::size_t n = A.size();
  SkewMatrix<F> B(A.ring(), n + columns.size());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) B.set(i, j, A(i, j));
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != n) throw ConstructionError("section length does not match the matrix");
    for (std::size_t i = 0; i < n; ++i) B.set(i, n + c, columns[c][i]);
  }
  return B;
}

template <class F>
std::vector<MPoly<F>> divided_power_section(const SkewPresentation<F>& P) {
  if (P.padded()) throw ConstructionError("divided_power_section needs an unpadded presentation");
  const auto& ring = P.phi.ring();
  std::vector<MPoly<F>> psi;
  for (std::size_t i = 0; i < P.phi.size(); ++i) {
    std::vector<MPoly<F>> e(P.phi.size(), MPoly<F>(ring));
    e[i] = MPoly<F>::constant(ring, ring->field().one());
    psi.push_back(section_to_hypersurface(P, e));
  }
  return psi;
}

namespace {

template <class F>
std::size_t first_coordinate(const EulerRow<F>& v) {
  for (std::size_t j = 0; j < v.size(); ++j)
    if (!v[j].is_zero()) return j;
  throw ConstructionError("Euler row is zero");
}

}  // namespace

template <class F>
MPoly<F> section_to_hypersurface(const SkewPresentation<F>& P, const std::vector<MPoly<F>>& s) {
  auto B = border(P.phi, {s});
  if (!P.padded()) return pfaffian(B);
  const std::size_t j0 = first_coordinate(P.euler);
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < B.size(); ++i)
    if (i != j0) idx.push_back(i);
  auto p = pfaffian(B.principal(idx));
  return divide_exact(p, P.euler[j0]);
}

template <class F>
std::vector<int> section_degrees(const SkewPresentation<F>& P, int d) {
  int e = -1;
  for (auto& row : P.phi.degree_pattern())
    for (int x : row) {
      if (x == -1) continue;
      if (x < 0 || (e >= 0 && x != e)) throw ConstructionError("section degrees need uniformly graded entries");
      e = x;
    }
  if (e < 0) e = 0;
  // Unpadded: h = Σ s_i ψ_i with deg ψ = r·e. Padded: one division by a linear coordinate.
  int deg = P.padded() ? d - P.r * e + 1 : d - P.r * e;
  return std::vector<int>(P.phi.size(), deg);
}

template <class F>
std::vector<std::vector<MPoly<F>>> section_space(const SkewPresentation<F>& P, const std::vector<int>& degrees) {
  const auto& ring = P.phi.ring();
  const F& K = ring->field();
  const std::size_t n = P.phi.size(), nv = ring->nvars();
  struct Unknown {
    std::size_t i;
    Monomial m;
  };
  std::vector<Unknown> unk;
  for (std::size_t i = 0; i < n; ++i)
    if (degrees[i] >= 0)
      for (auto& m : monomials_of_degree(nv, degrees[i])) unk.push_back({i, m});
  std::vector<std::vector<typename F::Elem>> basis;
  if (!P.padded()) {
    for (std::size_t u = 0; u < unk.size(); ++u) {
      std::vector<typename F::Elem> b(unk.size(), K.zero());
      b[u] = K.one();
      basis.push_back(std::move(b));
    }
  } else {
    std::map<std::vector<unsigned>, std::size_t> eq;
    std::vector<std::vector<std::pair<std::size_t, typename F::Elem>>> rows;
    for (std::size_t u = 0; u < unk.size(); ++u)
      for (auto& t : P.euler[unk[u].i].terms()) {
        auto key = (t.m * unk[u].m).exponents(nv);
        auto it = eq.find(key);
        std::size_t r = it == eq.end() ? rows.size() : it->second;
        if (it == eq.end()) {
          eq.emplace(std::move(key), r);
          rows.emplace_back();
        }
        rows[r].push_back({u, t.c});
      }
    Matrix<F> M(K, rows.size(), unk.size());
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (auto& [u, c] : rows[r]) M(r, u) = K.add(M(r, u), c);
    basis = nullspace(M);
  }
  std::vector<std::vector<MPoly<F>>> out;
  for (auto& b : basis) {
    std::vector<std::vector<Term<F>>> terms(n);
    for (std::size_t u = 0; u < unk.size(); ++u)
      if (!K.is_zero(b[u])) terms[unk[u].i].push_back({unk[u].m, b[u]});
    std::vector<MPoly<F>> s;
    for (std::size_t i = 0; i < n; ++i) s.push_back(MPoly<F>(ring, terms[i]));
    out.push_back(std::move(s));
  }
  return out;
}

template <class F>
std::optional<std::vector<MPoly<F>>> hypersurface_to_section(const SkewPresentation<F>& P, const MPoly<F>& h) {
  auto hd = h.homogeneous_degree();
  if (!hd || h.is_zero()) throw ConstructionError("hypersurface must be a nonzero form");
  auto degs = section_degrees(P, *hd);
  if (degs.front() < 0) return std::nullopt;
  auto basis = section_space(P, degs);
  std::vector<MPoly<F>> images;
  for (auto& s : basis) images.push_back(section_to_hypersurface(P, s));
  auto c = solve_combination(images, h);
  if (!c) return std::nullopt;
  const auto& ring = P.phi.ring();
  std::vector<MPoly<F>> s(P.phi.size(), MPoly<F>(ring));
  for (std::size_t k = 0; k < basis.size(); ++k)
    if (!ring->field().is_zero((*c)[k]))
      for (std::size_t i = 0; i < s.size(); ++i) s[i] += basis[k][i].scaled((*c)[k]);
  return s;
}

template <class F>
SkewMatrix<F> extend_with_sections(const SkewPresentation<F>& P, const std::vector<MPoly<F>>& s1,
                                   const std::vector<MPoly<F>>& s2, const MPoly<F>& l) {
  auto B = border(P.phi, {s1, s2});
  if (!l.is_zero()) {
    auto ld = l.homogeneous_degree();
    auto d1 = section_to_hypersurface(P, s1).homogeneous_degree();
    auto d2 = section_to_hypersurface(P, s2).homogeneous_degree();
    int e = 0;
    for (auto& row : P.phi.degree_pattern())
      for (int x : row)
        if (x >= 0) e = x;
    // d1 + d2 - 2s - t in the grading where φ has degree t = e.
    int expected = *d1 + *d2 - 2 * (P.padded() ? P.r * e - 1 : P.r * e) - e;
    if (!ld || *ld != expected)
      throw ConstructionError("corner form has degree " + std::to_string(ld ? *ld : -1) + ", expected " +
                              std::to_string(expected));
  }
  B.set(B.size() - 2, B.size() - 1, l);
  return B;
}

template <class F>
ExtensionAudit audit_extension(const SkewPresentation<F>& P, const SkewMatrix<F>& ext, const MPoly<F>& h1,
                               const MPoly<F>& h2, std::uint64_t seed, bool run_bilink) {
  ExtensionAudit a;
  const auto& ring = P.phi.ring();
  const int n = static_cast<int>(ring->nvars());
  auto Y = sub_pfaffians(ext, 2 * P.r + 2);
  std::tie(a.locus_dim, a.locus_degree) = Y.dim_degree();
  a.locus_codim3 = n - 1 - a.locus_dim == 3;
  a.log.push_back("extension locus dim " + std::to_string(a.locus_dim) + " deg " + std::to_string(a.locus_degree));
  Ideal<F> ci(ring, {h1, h2});
  std::tie(a.ci_dim, a.ci_degree) = ci.dim_degree();
  a.ci_codim2 = n - 1 - a.ci_dim == 2;
  a.log.push_back("hypersurfaces meet in dim " + std::to_string(a.ci_dim) + " deg " + std::to_string(a.ci_degree));
  if (!run_bilink || !a.ci_codim2 || !a.locus_codim3) return a;
  auto X = sub_pfaffians(P.phi, 2 * P.r);
  const int l_deg = ext(ext.size() - 2, ext.size() - 1).degree();
  const int d = std::max(h1.degree(), h2.degree());
  Rng rng(seed);
  for (int tries = 0; tries < 5; ++tries) {
    try {
      auto g = random_element(X, d, rng);
      auto step1 = link(X, Ideal<F>(ring, {h1, h2, g}));
      auto g2 = random_element(step1.residual, d + l_deg, rng);
      auto step2 = link(step1.residual, Ideal<F>(ring, {h1, h2, g2}));
      a.intermediate_degree = step1.deg_out;
      a.bilinked_degree = step2.deg_out;
      a.bilink_matches = step2.dim_out == a.locus_dim && step2.deg_out == a.locus_degree &&
                         step2.residual.hilbert().same_polynomial(Y.hilbert());
      a.log.push_back("double link: " + step1.summary() + "; " + step2.summary());
      return a;
    } catch (const LinkError& e) {
      a.log.push_back(std::string("double link draw failed: ") + e.what());
    }
  }
  return a;
}

// ---------------------------------------------------------------------------
// Unprojection

template <class F>
UnprojectionData<F> unprojection_matrix(const SkewPresentation<F>& P, const std::vector<MPoly<F>>& s1,
                                        const std::vector<MPoly<F>>& s2, const std::string& new_var) {
  if (!P.padded()) throw ConstructionError("unprojection needs an Euler-padded presentation");
  UnprojectionData<F> U;
  const auto& ring = P.phi.ring();
  for (auto* s : {&s1, &s2}) {
    MPoly<F> acc(ring);
    for (std::size_t i = 0; i < s->size(); ++i) acc += P.euler[i] * (*s)[i];
    if (!acc.is_zero()) throw ConstructionError("section violates the Euler condition");
  }
  auto names = ring->names();
  names.push_back(new_var);
  U.ring6 = make_ring(ring->field(), names, ring->order());
  std::vector<MPoly<F>> img;
  for (std::size_t i = 0; i < ring->nvars(); ++i) img.push_back(MPoly<F>::variable(U.ring6, i));
  U.phi6 = P.phi.substitute(U.ring6, img);
  auto lift = [&](const std::vector<MPoly<F>>& s) {
    std::vector<MPoly<F>> out;
    for (auto& p : s) out.push_back(p.is_zero() ? MPoly<F>(U.ring6) : p.substitute(img));
    return out;
  };
  U.A = border(U.phi6, {lift(s1), lift(s2)});
  const std::size_t n = U.A.size();
  U.A.set(n - 2, n - 1, MPoly<F>::variable(U.ring6, ring->nvars()));
  U.c1 = section_to_hypersurface(P, s1).substitute(img);
  U.c2 = section_to_hypersurface(P, s2).substitute(img);
  EulerRow<F> v = lift(P.euler);
  v.push_back(MPoly<F>(U.ring6));
  v.push_back(MPoly<F>(U.ring6));
  U.euler_ok = true;
  for (auto& p : row_times(v, U.A))
    if (!p.is_zero()) U.euler_ok = false;
  return U;
}

template <class F>
std::optional<Matrix<F>> linear_coefficients(const std::vector<MPoly<F>>& a, std::size_t ncoords) {
  if (a.empty()) return Matrix<F>();
  const F& K = a.front().field();
  Matrix<F> M(K, a.size(), ncoords);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (auto& t : a[i].terms()) {
      if (t.m.degree() != 1) return std::nullopt;
      std::size_t v = 0;
      while (t.m[v] == 0) ++v;
      if (v >= ncoords) return std::nullopt;
      M(i, v) = t.c;
    }
  return M;
}

template <class F>
Matrix<F> koszul_solve(const std::vector<MPoly<F>>& a) {
  if (a.empty()) throw ConstructionError("empty Koszul column");
  const auto& ring = a.front().ring();
  const F& K = ring->field();
  MPoly<F> acc(ring);
  for (std::size_t i = 0; i < a.size(); ++i) acc += MPoly<F>::variable(ring, i) * a[i];
  if (!acc.is_zero()) throw ArithmeticError("the column does not satisfy the Koszul relation");
  auto M = linear_coefficients(a, a.size());
  if (!M) throw ArithmeticError("the column is not linear in the first " + std::to_string(a.size()) + " variables");
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if (!K.equal((*M)(i, j), K.neg((*M)(j, i)))) throw ArithmeticError("Koszul solution is not skew");
  return *M;
}

template <class F>
SkewMatrix<F> family_member(const SkewMatrix<F>& A, const Matrix<F>& Bp, const Matrix<F>& Dp, const MPoly<F>& lam_x6) {
  SkewMatrix<F> R = A;
  const std::size_t m = Bp.rows();  // 6
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      if (!Bp.field().is_zero(Bp(i, j))) R.set(i, j, A(i, j) - lam_x6.scaled(Bp(i, j)));
  // Rows m+1.. hold D; entry (k, i) = D_{k-m-1, i}.
  for (std::size_t k = 0; k < Dp.rows(); ++k)
    for (std::size_t i = 0; i < m; ++i)
      if (!Dp.field().is_zero(Dp(k, i))) R.set(m + 1 + k, i, A(m + 1 + k, i) + lam_x6.scaled(Dp(k, i)));
  return R;
}

template <class F>
FamilyReport<F> deform_family(const SkewMatrix<F>& A, const std::vector<typename F::Elem>& lambdas, int max_degree) {
  if (A.size() != 10) throw ConstructionError("deform_family expects the 10×10 unprojection matrix");
  const auto& ring = A.ring();
  const F& K = ring->field();
  const std::size_t m = 6, x6 = 6;
  FamilyReport<F> R;
  std::vector<MPoly<F>> acol, a789;
  for (std::size_t i = 0; i < m; ++i) acol.push_back(A(i, m));
  for (std::size_t k = m + 1; k < 10; ++k) a789.push_back(A(m, k));
  R.Bp = koszul_solve(acol);
  auto Dp = linear_coefficients(a789, m);
  if (!Dp) throw ArithmeticError("(a7, a8, a9) are not linear in x0..x5");
  R.Dp = *Dp;

  // Symbolic λ: append a parameter variable.
  auto names = ring->names();
  names.push_back("lam");
  auto ringL = make_ring(K, names, ring->order());
  std::vector<MPoly<F>> img;
  for (std::size_t i = 0; i < ring->nvars(); ++i) img.push_back(MPoly<F>::variable(ringL, i));
  auto AL = A.substitute(ringL, img);
  auto lamx6 = MPoly<F>::variable(ringL, ring->nvars()) * MPoly<F>::variable(ringL, x6);
  auto member = family_member(AL, R.Bp, R.Dp, lamx6);
  EulerRow<F> v;
  for (std::size_t i = 0; i < 10; ++i)
    v.push_back(i < m ? MPoly<F>::variable(ringL, i) : (i == m ? lamx6 : MPoly<F>(ringL)));
  R.symbolic_euler_ok = true;
  for (auto& p : row_times(v, member))
    if (!p.is_zero()) R.symbolic_euler_ok = false;

  auto same = [&](const SkewMatrix<F>& X, const SkewMatrix<F>& Y) {
    for (std::size_t i = 0; i < 10; ++i)
      for (std::size_t j = i + 1; j < 10; ++j)
        if (!(X(i, j) - Y(i, j)).is_zero()) return false;
    return true;
  };
  R.lambda0_reproduces = same(family_member(A, R.Bp, R.Dp, MPoly<F>(ring)), A);

  for (auto& lam : lambdas) {
    FamilyMember<F> fm;
    fm.lambda = lam;
    auto lx = MPoly<F>::variable(ring, x6).scaled(lam);
    auto Al = family_member(A, R.Bp, R.Dp, lx);
    EulerRow<F> w;
    for (std::size_t i = 0; i < 10; ++i)
      w.push_back(i < m ? MPoly<F>::variable(ring, i) : (i == m ? lx : MPoly<F>(ring)));
    fm.euler_ok = true;
    for (auto& p : row_times(w, Al))
      if (!p.is_zero()) fm.euler_ok = false;
    auto I = sub_pfaffians(Al, 8);
    for (int d = 0; d <= max_degree; ++d) fm.hilbert.push_back(I.hilbert().hilbert_function(d));
    std::tie(fm.dim, fm.degree) = I.dim_degree();
    R.members.push_back(std::move(fm));
  }
  R.hilbert_constant = true;
  for (auto& fm : R.members)
    if (fm.hilbert != R.members.front().hilbert || fm.dim != R.members.front().dim ||
        fm.degree != R.members.front().degree)
      R.hilbert_constant = false;
  return R;
}

#define LFORGE_PFAFFIAN(F)                                                                                      \
  template class SkewMatrix<F>;                                                                                 \
  template class PfaffianTable<F>;                                                                              \
  template MPoly<F> pfaffian(const SkewMatrix<F>&);                                                             \
  template std::vector<MPoly<F>> principal_pfaffians(const SkewMatrix<F>&, std::size_t);                        \
  template Ideal<F> sub_pfaffians(const SkewMatrix<F>&, std::size_t);                                           \
  template EulerRow<F> coordinate_row(const RingPtr<F>&, std::size_t, std::size_t);                             \
  template std::vector<MPoly<F>> row_times(const EulerRow<F>&, const SkewMatrix<F>&);                           \
  template SkewMatrix<F> euler_constrained_sample(const RingPtr<F>&, std::size_t, const EulerRow<F>&,           \
                                                  const std::vector<std::vector<int>>&, std::uint64_t,          \
                                                  SampleInfo*);                                                 \
  template SkewPresentation<F> make_presentation(SkewMatrix<F>, int, int, EulerRow<F>);                         \
  template std::vector<MPoly<F>> divided_power_section(const SkewPresentation<F>&);                             \
  template SkewMatrix<F> border(const SkewMatrix<F>&, const std::vector<std::vector<MPoly<F>>>&);               \
  template MPoly<F> section_to_hypersurface(const SkewPresentation<F>&, const std::vector<MPoly<F>>&);           \
  template std::vector<std::vector<MPoly<F>>> section_space(const SkewPresentation<F>&, const std::vector<int>&); \
  template std::vector<int> section_degrees(const SkewPresentation<F>&, int);                                   \
  template std::optional<std::vector<MPoly<F>>> hypersurface_to_section(const SkewPresentation<F>&,             \
                                                                        const MPoly<F>&);                       \
  template SkewMatrix<F> extend_with_sections(const SkewPresentation<F>&, const std::vector<MPoly<F>>&,         \
                                              const std::vector<MPoly<F>>&, const MPoly<F>&);                   \
  template ExtensionAudit audit_extension(const SkewPresentation<F>&, const SkewMatrix<F>&, const MPoly<F>&,    \
                                          const MPoly<F>&, std::uint64_t, bool);                                \
  template UnprojectionData<F> unprojection_matrix(const SkewPresentation<F>&, const std::vector<MPoly<F>>&,    \
                                                   const std::vector<MPoly<F>>&, const std::string&);           \
  template std::optional<Matrix<F>> linear_coefficients(const std::vector<MPoly<F>>&, std::size_t);             \
  template Matrix<F> koszul_solve(const std::vector<MPoly<F>>&);                                                \
  template SkewMatrix<F> family_member(const SkewMatrix<F>&, const Matrix<F>&, const Matrix<F>&,                \
                                       const MPoly<F>&);                                                        \
  template FamilyReport<F> deform_family(const SkewMatrix<F>&, const std::vector<typename F::Elem>&, int);

LFORGE_PFAFFIAN(PrimeField)
LFORGE_PFAFFIAN(RationalField)

}  // namespace lforge
