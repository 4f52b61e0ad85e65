#include "lforge/veronese.hpp"

#include <algorithm>
#include <map>
#include <regex>
#include <sstream>

#include "lforge/parse.hpp"

namespace lforge {

namespace {

// support-size, support, descending first exponent
std::vector<Monomial> veronese_monomials(std::size_t n, unsigned d) {
  auto mons = monomials_of_degree(n, d);
  auto key = [n](const Monomial& m) {
    std::vector<int> k;
    std::vector<int> supp;
    for (std::size_t i = 0; i < n; ++i)
      if (m[i]) supp.push_back(static_cast<int>(i));
    k.push_back(static_cast<int>(supp.size()));
    k.insert(k.end(), supp.begin(), supp.end());
    for (int v : supp) k.push_back(-static_cast<int>(m[v]));
    return k;
  };
  std::stable_sort(mons.begin(), mons.end(), [&](const Monomial& a, const Monomial& b) { return key(a) < key(b); });
  return mons;
}

mpz_class multinomial(const Monomial& m, std::size_t n, unsigned d) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), d);
  for (std::size_t i = 0; i < n; ++i) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), m[i]);
    r /= f;
  }
  return r;
}

template <class F>
const MPoly<F>& product_of(const std::vector<MPoly<F>>& forms, const Monomial& m,
                           std::map<std::vector<unsigned>, MPoly<F>>& memo) {
  auto key = m.exponents(forms.size());
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  std::size_t i = 0;
  while (i < forms.size() && !m[i]) ++i;
  if (i == forms.size()) return memo.emplace(key, MPoly<F>::constant(forms[0].ring(), forms[0].field().one())).first->second;
  Monomial r = m;
  r.set(i, m[i] - 1);
  MPoly<F> p = product_of(forms, r, memo) * forms[i];
  return memo.emplace(key, std::move(p)).first->second;
}

}  // namespace

template <class F>
std::vector<MPoly<F>> veronese_map(const RingPtr<F>& src, unsigned d, bool scaled) {
  if (src->nvars() < 2 || d < 1) throw ConstructionError("veronese_map needs m >= 1 and d >= 1");
  const F& K = src->field();
  std::vector<MPoly<F>> out;
  for (auto& m : veronese_monomials(src->nvars(), d)) {
    auto c = scaled ? K.from_mpz(multinomial(m, src->nvars(), d)) : K.one();
    out.push_back(MPoly<F>::term(src, m, c));
  }
  return out;
}

std::vector<std::string> catalecticant_names(CatalecticantKind kind) {
  if (kind == CatalecticantKind::p2cubics) return indexed_names("a", 10);
  return {"a", "b", "c", "x", "y", "z", "t", "u", "v", "w"};
}

template <class F>
RingPtr<F> veronese_source(CatalecticantKind kind, const F& K) {
  if (kind == CatalecticantKind::p2cubics) return make_ring(K, std::vector<std::string>{"x", "y", "z"});
  return make_ring(K, indexed_names("s", 4));
}

template <class F>
std::vector<MPoly<F>> veronese_coordinates(CatalecticantKind kind, const RingPtr<F>& src) {
  if (kind == CatalecticantKind::p2cubics) return veronese_map(src, 3, true);
  auto v = veronese_map(src, 2, false);
  // s0^2 s1^2 s2^2 s3^2 s0s1 s0s2 s0s3 s1s2 s1s3 s2s3 -> a b c x y z t u v w
  return {v[0], v[1], v[2], v[4], v[5], v[6], v[7], v[8], v[9], v[3]};
}

template <class F>
PolyGrid<F> catalecticant(CatalecticantKind kind, const RingPtr<F>& R) {
  const F& K = R->field();
  auto a = [&](std::size_t i, long long c = 1) { return MPoly<F>::variable(R, i).scaled(K.from_int(c)); };
  if (kind == CatalecticantKind::p2cubics) {
    return {{a(0, 3), a(4), a(6), a(3, 2), a(5, 2), a(9)},
            {a(3), a(1, 3), a(8), a(4, 2), a(9), a(7, 2)},
            {a(5), a(7), a(2, 3), a(9), a(6, 2), a(8, 2)}};
  }
  // a b c x y z t u v w = 0..9
  return {{a(0), a(3), a(4), a(5)}, {a(3), a(1), a(6), a(7)}, {a(4), a(6), a(2), a(8)}, {a(5), a(7), a(8), a(9)}};
}

template <class F>
Ideal<F> secant_ideal(CatalecticantKind kind, const RingPtr<F>& R) {
  return minors_ideal(R, catalecticant(kind, R), 3);
}

template <class F>
RingPtr<F> ProjectionSpec<F>::target() const {
  return make_ring(N.field(), indexed_names("x", N.cols()));
}

template <class F>
RingPtr<F> ProjectionSpec<F>::ambient() const {
  return make_ring(N.field(), catalecticant_names(kind));
}

template <class F>
std::vector<MPoly<F>> ProjectionSpec<F>::composed(const RingPtr<F>& src) const {
  auto v = veronese_coordinates(kind, src);
  std::vector<MPoly<F>> out;
  for (std::size_t k = 0; k < N.cols(); ++k) {
    MPoly<F> f(src);
    for (std::size_t i = 0; i < N.rows(); ++i)
      if (!N.field().is_zero(N(i, k))) f += v[i].scaled(N(i, k));
    out.push_back(std::move(f));
  }
  return out;
}

template <class F>
std::vector<MPoly<F>> ProjectionSpec<F>::center_forms(const RingPtr<F>& amb) const {
  std::vector<MPoly<F>> out;
  for (std::size_t k = 0; k < N.cols(); ++k) {
    MPoly<F> f(amb);
    for (std::size_t i = 0; i < N.rows(); ++i)
      if (!N.field().is_zero(N(i, k))) f += MPoly<F>::variable(amb, i).scaled(N(i, k));
    out.push_back(std::move(f));
  }
  return out;
}

template <class F>
ProjectionSpec<F> make_projection(CatalecticantKind kind, Matrix<F> N) {
  if (N.rows() != 10) throw ConstructionError("projection matrix needs 10 rows");
  if (rank(N) != N.cols()) throw ConstructionError("projection matrix is rank deficient");
  return ProjectionSpec<F>{kind, std::move(N)};
}

template <class F>
ProjectionSpec<F> projection_from_equations(CatalecticantKind kind, const std::vector<MPoly<F>>& eqs) {
  if (eqs.empty()) throw ConstructionError("no centre equations");
  const F& K = eqs[0].field();
  Matrix<F> N(K, 10, eqs.size());
  for (std::size_t k = 0; k < eqs.size(); ++k) {
    if (!eqs[k].is_homogeneous() || eqs[k].degree() != 1) throw ConstructionError("centre equations must be linear");
    for (auto& t : eqs[k].terms())
      for (std::size_t i = 0; i < 10; ++i)
        if (t.m[i]) N(i, k) = t.c;
  }
  return make_projection(kind, std::move(N));
}

template <class F>
Projected<F> project(const ProjectionSpec<F>& spec, int bound) {
  if (rank(spec.N) != spec.N.cols()) throw ConstructionError("projection matrix is rank deficient");
  auto forms = spec.composed();
  auto img = image_ideal_graded(forms, spec.target(), bound);
  return {forms, std::move(img)};
}

template <class F>
LNMatrix<F> build_LN(const ProjectionSpec<F>& spec, const RingPtr<F>& target_in) {
  const F& K = spec.field();
  auto src = spec.source();
  auto forms = spec.composed(src);
  unsigned d = spec.kind == CatalecticantKind::p2cubics ? 3 : 2;
  auto rows = monomials_of_degree(src->nvars(), 3 * d);
  auto cols = monomials_of_degree(spec.target_size(), 3);
  std::map<std::vector<unsigned>, std::size_t> ridx;
  for (std::size_t i = 0; i < rows.size(); ++i) ridx[rows[i].exponents(src->nvars())] = i;
  LNMatrix<F> out;
  out.L = Matrix<F>(K, rows.size(), cols.size());
  std::map<std::vector<unsigned>, MPoly<F>> memo;
  for (std::size_t c = 0; c < cols.size(); ++c) {
    const auto& p = product_of(forms, cols[c], memo);
    for (auto& t : p.terms()) out.L(ridx.at(t.m.exponents(src->nvars())), c) = t.c;
  }
  out.rank = rank(out.L);
  out.corank = cols.size() - out.rank;
  auto target = target_in ? target_in : spec.target();
  for (auto& v : nullspace(out.L)) {
    std::vector<Term<F>> terms;
    for (std::size_t c = 0; c < cols.size(); ++c)
      if (!K.is_zero(v[c])) terms.push_back({cols[c], v[c]});
    out.kernel_cubics.push_back(MPoly<F>(target, std::move(terms)));
  }
  return out;
}

template <class F>
PolyMatrix<F> build_LN_line(CatalecticantKind kind, const Matrix<F>& A, const Matrix<F>& B) {
  const F& K = A.field();
  std::vector<std::string> names = kind == CatalecticantKind::p2cubics ? std::vector<std::string>{"x", "y", "z"}
                                                                        : indexed_names("s", 4);
  std::size_t ns = names.size();
  names.push_back("lambda");
  auto R = make_ring(K, names);
  auto src = veronese_source(kind, K);
  auto v0 = veronese_coordinates(kind, src);
  std::vector<MPoly<F>> v;
  std::vector<std::size_t> embed_map(ns);
  for (std::size_t i = 0; i < ns; ++i) embed_map[i] = i;
  for (auto& f : v0) v.push_back(f.map_to(R, embed_map));
  auto lam = MPoly<F>::variable(R, ns);
  std::vector<MPoly<F>> forms;
  for (std::size_t k = 0; k < A.cols(); ++k) {
    MPoly<F> f(R);
    for (std::size_t i = 0; i < A.rows(); ++i) {
      auto coef = MPoly<F>::constant(R, A(i, k)) + lam.scaled(B(i, k));
      if (!coef.is_zero()) f += coef * v[i];
    }
    forms.push_back(std::move(f));
  }
  unsigned d = kind == CatalecticantKind::p2cubics ? 3 : 2;
  auto rows = monomials_of_degree(ns, 3 * d);
  auto cols = monomials_of_degree(A.cols(), 3);
  std::map<std::vector<unsigned>, std::size_t> ridx;
  for (std::size_t i = 0; i < rows.size(); ++i) ridx[rows[i].exponents(ns)] = i;
  PolyMatrix<F> L(K, rows.size(), cols.size(), "lambda");
  std::map<std::vector<unsigned>, MPoly<F>> memo;
  for (std::size_t c = 0; c < cols.size(); ++c) {
    const auto& p = product_of(forms, cols[c], memo);
    std::map<std::size_t, std::vector<typename F::Elem>> acc;
    for (auto& t : p.terms()) {
      auto e = t.m.exponents(ns + 1);
      std::size_t ld = e.back();
      e.pop_back();
      auto& cf = acc[ridx.at(e)];
      if (cf.size() <= ld) cf.resize(ld + 1, K.zero());
      cf[ld] = t.c;
    }
    for (auto& [r, cf] : acc) L(r, c) = UniPoly<F>(K, cf, "lambda");
  }
  L.provenance = "L restricted to a line N(lambda) = A + lambda*B";
  return L;
}

template <class F>
Matrix<F> build_LN_derivative(const ProjectionSpec<F>& spec, std::size_t i, std::size_t k) {
  const F& K = spec.field();
  auto src = spec.source();
  auto forms = spec.composed(src);
  auto v = veronese_coordinates(spec.kind, src);
  unsigned d = spec.kind == CatalecticantKind::p2cubics ? 3 : 2;
  auto rows = monomials_of_degree(src->nvars(), 3 * d);
  auto cols = monomials_of_degree(spec.target_size(), 3);
  std::map<std::vector<unsigned>, std::size_t> ridx;
  for (std::size_t r = 0; r < rows.size(); ++r) ridx[rows[r].exponents(src->nvars())] = r;
  Matrix<F> D(K, rows.size(), cols.size());
  std::map<std::vector<unsigned>, MPoly<F>> memo;
  for (std::size_t c = 0; c < cols.size(); ++c) {
    unsigned a = cols[c][k];
    if (!a) continue;
    Monomial rest = cols[c];
    rest.set(k, a - 1);
    auto p = product_of(forms, rest, memo) * v[i];
    p = p.scaled(K.from_int(a));
    for (auto& t : p.terms()) D(ridx.at(t.m.exponents(src->nvars())), c) = t.c;
  }
  return D;
}

template <class F>
SecantCertificate secant_avoidance(const ProjectionSpec<F>& spec, const Ideal<F>& secant) {
  auto forms = spec.center_forms(secant.ring());
  auto restricted = linear_section_reduce(secant, forms);
  SecantCertificate cert;
  auto [dim, deg] = restricted.dim_degree();
  cert.dim = dim;
  cert.degree = deg;
  cert.empty = dim < 0;
  const auto& h = restricted.hilbert();
  int zeros = 0;
  for (int e = 0; e < 64 && zeros < 2; ++e) {
    auto v = h.hilbert_function(e);
    cert.hilbert_values.push_back(v);
    zeros = v == 0 ? zeros + 1 : 0;
  }
  cert.restricted_ideal = restricted.to_text("Lambda");
  return cert;
}

template <class F>
Matrix<F> adjugate(const Matrix<F>& M) {
  const F& K = M.field();
  std::size_t n = M.rows();
  if (n != M.cols()) throw ArithmeticError("adjugate of a non-square matrix");
  Matrix<F> adj(K, n, n);
  if (n == 1) {
    adj(0, 0) = K.one();
    return adj;
  }
  std::size_t r = rank(M);
  if (r == n) {
    auto inv = *inverse(M);
    auto det = determinant(M);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) adj(i, j) = K.mul(det, inv(i, j));
    return adj;
  }
  if (r + 1 < n) return adj;
  auto rv = nullspace(M).at(0);
  auto lv = left_nullspace(M).at(0);
  std::size_t i = 0, j = 0;
  while (K.is_zero(rv[i])) ++i;
  while (K.is_zero(lv[j])) ++j;
  // adj(i, j) = (-1)^(i+j) det(M without row j and column i)
  Matrix<F> sub(K, n - 1, n - 1);
  for (std::size_t a = 0, sa = 0; a < n; ++a) {
    if (a == j) continue;
    for (std::size_t b = 0, sb = 0; b < n; ++b) {
      if (b == i) continue;
      sub(sa, sb++) = M(a, b);
    }
    ++sa;
  }
  auto cof = determinant(sub);
  if ((i + j) % 2) cof = K.neg(cof);
  auto gamma = K.div(cof, K.mul(rv[i], lv[j]));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) adj(a, b) = K.mul(gamma, K.mul(rv[a], lv[b]));
  return adj;
}

Matrix<PrimeField> gamma_gradients(const ProjectionSpec<PrimeField>& spec) {
  const auto& K = spec.field();
  auto LN = build_LN(spec);
  if (LN.corank < 2) throw ConstructionError("N is not on the degeneracy locus (corank " + std::to_string(LN.corank) + ")");
  const auto& L = LN.L;
  std::size_t rows = L.rows(), cols = L.cols();
  if (cols != rows + 1) throw ConstructionError("L must have one more column than rows");
  std::vector<Matrix<PrimeField>> dL;
  for (std::size_t i = 0; i < spec.N.rows(); ++i)
    for (std::size_t k = 0; k < spec.N.cols(); ++k) dL.push_back(build_LN_derivative(spec, i, k));
  Matrix<PrimeField> G(K, cols, dL.size());
  for (std::size_t c = 0; c < cols; ++c) {
    std::vector<std::size_t> keep;
    for (std::size_t j = 0; j < cols; ++j)
      if (j != c) keep.push_back(j);
    auto adj = adjugate(L.col_select(keep));
    for (std::size_t p = 0; p < dL.size(); ++p) {
      // tr(adj · dM) = sum_ab adj(a,b) dM(b,a)
      std::uint64_t acc = 0;
      for (std::size_t a = 0; a < rows; ++a)
        for (std::size_t b = 0; b < rows; ++b) {
          auto x = adj(a, b);
          if (!x) continue;
          acc += std::uint64_t(x) * dL[p](b, keep[a]);
          if (acc >> 62) acc = K.reduce(acc);
        }
      G(c, p) = K.reduce(acc);
    }
  }
  return G;
}

GammaTangent gamma_tangent_space(const ProjectionSpec<PrimeField>& spec) {
  auto G = gamma_gradients(spec);
  GammaTangent out;
  out.codimension = rank(G);
  out.minors = G.rows();
  out.parameters = G.cols();
  out.corank = build_LN(spec).corank;
  return out;
}

template <class F>
CubicReport<F> unique_cubic_analysis(const ProjectionSpec<F>& spec, std::uint64_t seed) {
  auto target = spec.target();
  auto LN = build_LN(spec, target);
  if (LN.corank != 1) throw ConstructionError("expected a unique cubic, found " + std::to_string(LN.corank));
  CubicReport<F> rep;
  rep.cubic = LN.kernel_cubics[0];
  Ideal<F> hyp(target, {rep.cubic});
  rep.singular_locus = singular_locus(hyp, 1, seed);
  auto [d, deg] = rep.singular_locus.dim_degree();
  rep.singular_dim = d;
  rep.singular_degree = deg;
  rep.singular_linear_forms = rep.singular_locus.graded_piece_dim(1);
  return rep;
}

namespace {
std::vector<std::vector<std::string>> grid_tokens(const std::string& text, const std::string& seps) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    for (auto& ch : line)
      if (seps.find(ch) != std::string::npos) ch = ' ';
    std::istringstream ls(line);
    std::vector<std::string> row;
    std::string tok;
    while (ls >> tok) row.push_back(tok);
    if (!row.empty()) rows.push_back(std::move(row));
  }
  for (auto& r : rows)
    if (r.size() != rows[0].size()) throw ParseError("ragged matrix grid", 0);
  if (rows.empty()) throw ParseError("empty matrix grid", 0);
  return rows;
}
}  // namespace

template <class F>
Matrix<F> parse_int_grid(const std::string& text, const F& K) {
  auto rows = grid_tokens(text, ",;[]()");
  Matrix<F> M(K, rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      try {
        M(i, j) = K.from_mpz(mpz_class(rows[i][j]));
      } catch (const std::invalid_argument&) {
        throw ParseError("not an integer: " + rows[i][j], 0);
      }
    }
  return M;
}

template <class F>
std::pair<Matrix<F>, Matrix<F>> parse_affine_grid(const std::string& text, const F& K, const std::string& var) {
  auto rows = grid_tokens(text, ",;[]");
  auto R = make_ring(K, std::vector<std::string>{var});
  Matrix<F> A(K, rows.size(), rows[0].size()), B(K, rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      // implicit products such as 2l
      auto src = std::regex_replace(rows[i][j], std::regex("([0-9])([A-Za-z])"), "$1*$2");
      auto p = parse_poly(src, R);
      if (p.degree() > 1) throw ParseError("entry not affine in " + var + ": " + rows[i][j], 0);
      for (auto& t : p.terms()) (t.m[0] ? B : A)(i, j) = t.c;
    }
  return {A, B};
}

#define LFORGE_VERONESE(F)                                                                                    \
  template std::vector<MPoly<F>> veronese_map(const RingPtr<F>&, unsigned, bool);                            \
  template RingPtr<F> veronese_source(CatalecticantKind, const F&);                                          \
  template std::vector<MPoly<F>> veronese_coordinates(CatalecticantKind, const RingPtr<F>&);                 \
  template PolyGrid<F> catalecticant(CatalecticantKind, const RingPtr<F>&);                                  \
  template Ideal<F> secant_ideal(CatalecticantKind, const RingPtr<F>&);                                      \
  template struct ProjectionSpec<F>;                                                                         \
  template ProjectionSpec<F> make_projection(CatalecticantKind, Matrix<F>);                                  \
  template ProjectionSpec<F> projection_from_equations(CatalecticantKind, const std::vector<MPoly<F>>&);     \
  template Projected<F> project(const ProjectionSpec<F>&, int);                                              \
  template LNMatrix<F> build_LN(const ProjectionSpec<F>&, const RingPtr<F>&);                                \
  template PolyMatrix<F> build_LN_line(CatalecticantKind, const Matrix<F>&, const Matrix<F>&);               \
  template Matrix<F> build_LN_derivative(const ProjectionSpec<F>&, std::size_t, std::size_t);                \
  template SecantCertificate secant_avoidance(const ProjectionSpec<F>&, const Ideal<F>&);                    \
  template Matrix<F> adjugate(const Matrix<F>&);                                                             \
  template CubicReport<F> unique_cubic_analysis(const ProjectionSpec<F>&, std::uint64_t);                    \
  template Matrix<F> parse_int_grid(const std::string&, const F&);                                           \
  template std::pair<Matrix<F>, Matrix<F>> parse_affine_grid(const std::string&, const F&, const std::string&);
LFORGE_VERONESE(PrimeField)
LFORGE_VERONESE(RationalField)

}  // namespace lforge
