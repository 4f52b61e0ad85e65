#include "lforge/ideal_ops.hpp"

#include <functional>
#include <map>

namespace lforge {

namespace {

template <class F>
std::string fresh_name(const Ring<F>& R, const std::string& base) {
  std::string n = base;
  for (int k = 0; R.index_of(n); ++k) n = base + std::to_string(k);
  return n;
}

template <class F>
std::vector<MPoly<F>> variables(const RingPtr<F>& R) {
  std::vector<MPoly<F>> v;
  for (std::size_t i = 0; i < R->nvars(); ++i) v.push_back(MPoly<F>::variable(R, i));
  return v;
}

/// Coordinates in which a linear form becomes the last variable.
template <class F>
struct LinearChange {
  RingPtr<F> ring;                // new ring; last variable represents ℓ
  std::vector<MPoly<F>> forward;  // images of old variables in the new ring
  std::vector<MPoly<F>> backward; // images of new variables in the old ring
};

template <class F>
LinearChange<F> make_last(const RingPtr<F>& R, const MPoly<F>& ell) {
  const F& K = R->field();
  std::size_t n = R->nvars();
  if (!ell.is_homogeneous() || ell.degree() != 1) throw ConstructionError("expected a nonzero linear form");
  std::vector<typename F::Elem> a(n, K.zero());
  for (auto& t : ell.terms())
    for (std::size_t i = 0; i < n; ++i)
      if (t.m[i]) a[i] = t.c;
  std::size_t p = n;
  for (std::size_t i = n; i-- > 0;)
    if (!K.is_zero(a[i])) {
      p = i;
      break;
    }
  LinearChange<F> ch;
  std::vector<std::string> names;
  std::vector<std::size_t> pos(n);
  for (std::size_t i = 0; i < n; ++i)
    if (i != p) {
      pos[i] = names.size();
      names.push_back(R->names()[i]);
    }
  pos[p] = n - 1;
  names.push_back(R->names()[p]);
  ch.ring = make_ring(K, names, TermOrder::grevlex());
  auto y = variables(ch.ring);
  auto x = variables(R);
  ch.forward.resize(n, MPoly<F>(ch.ring));
  auto ainv = K.inv(a[p]);
  MPoly<F> xp = y[n - 1];
  for (std::size_t i = 0; i < n; ++i)
    if (i != p) {
      ch.forward[i] = y[pos[i]];
      xp -= y[pos[i]].scaled(a[i]);
    }
  ch.forward[p] = xp.scaled(ainv);
  ch.backward.resize(n, MPoly<F>(R));
  for (std::size_t i = 0; i < n; ++i)
    if (i != p) ch.backward[pos[i]] = x[i];
  ch.backward[n - 1] = ell;
  return ch;
}

template <class F>
std::vector<MPoly<F>> subst_all(const std::vector<MPoly<F>>& polys, const std::vector<MPoly<F>>& images) {
  std::vector<MPoly<F>> out;
  out.reserve(polys.size());
  for (auto& p : polys) out.push_back(p.substitute(images));
  return out;
}

/// Divide each basis element by the largest power (or at most `cap`) of the last variable.
template <class F>
std::vector<MPoly<F>> strip_last(const std::vector<MPoly<F>>& basis, std::size_t n, unsigned cap) {
  std::vector<MPoly<F>> out;
  for (auto& g : basis) {
    unsigned v = cap;
    for (auto& t : g.terms()) v = std::min<unsigned>(v, t.m[n - 1]);
    if (v == 0) {
      out.push_back(g);
      continue;
    }
    std::vector<Term<F>> terms;
    for (auto& t : g.terms()) {
      Monomial m = t.m;
      m.set(n - 1, t.m[n - 1] - v);
      terms.push_back({m, t.c});
    }
    out.push_back(MPoly<F>::from_sorted(g.ring(), std::move(terms)));
  }
  return out;
}

template <class F>
Ideal<F> colon_linear(const Ideal<F>& I, const MPoly<F>& ell, unsigned cap) {
  const auto& R = I.ring();
  if (I.is_zero()) return I;
  auto ch = make_last(R, ell);
  Ideal<F> J(ch.ring, subst_all(I.gens(), ch.forward), I.options());
  auto stripped = strip_last(J.gb().basis, R->nvars(), cap);
  return Ideal<F>(R, subst_all(stripped, ch.backward), I.options());
}

}  // namespace

template <class F>
Ideal<F> eliminate_vars(const Ideal<F>& I, const std::vector<std::size_t>& vars) {
  const auto& R = I.ring();
  std::size_t n = R->nvars();
  std::vector<bool> elim(n, false);
  for (auto v : vars) {
    if (v >= n) throw ConstructionError("elimination variable out of range");
    elim[v] = true;
  }
  std::size_t k = std::count(elim.begin(), elim.end(), true);
  if (k >= n) throw ConstructionError("cannot eliminate every variable");
  if (k == 0) return I;
  std::vector<std::string> names, rest;
  std::vector<std::size_t> to_big(n), to_small(n);
  for (std::size_t i = 0; i < n; ++i)
    if (elim[i]) {
      to_big[i] = names.size();
      names.push_back(R->names()[i]);
    }
  for (std::size_t i = 0; i < n; ++i)
    if (!elim[i]) {
      to_big[i] = names.size();
      to_small[i] = rest.size();
      names.push_back(R->names()[i]);
      rest.push_back(R->names()[i]);
    }
  auto big = make_ring(R->field(), names, TermOrder::block(k));
  auto small = make_ring(R->field(), rest, TermOrder::grevlex());
  std::vector<MPoly<F>> gens;
  for (auto& g : I.gens()) gens.push_back(g.map_to(big, to_big));
  GBOptions opt = I.options();
  if (!opt.weights.empty()) {
    std::vector<unsigned> w(n, 1);
    for (std::size_t i = 0; i < n; ++i) w[to_big[i]] = i < opt.weights.size() ? opt.weights[i] : 1;
    opt.weights = w;
  }
  Ideal<F> J(big, gens, opt);
  std::vector<std::size_t> back(n);
  for (std::size_t i = 0; i < n; ++i)
    if (!elim[i]) back[to_big[i]] = to_small[i];
  std::vector<MPoly<F>> out;
  for (auto& g : J.gb().basis) {
    bool uses = false;
    for (auto& t : g.terms())
      for (std::size_t j = 0; j < k; ++j)
        if (t.m[j]) uses = true;
    if (!uses) out.push_back(g.map_to(small, back));
  }
  GBOptions o2 = I.options();
  o2.weights.clear();
  return Ideal<F>(small, out, o2);
}

template <class F>
Ideal<F> eliminate(const Ideal<F>& I, std::size_t k) {
  if (k >= I.ring()->nvars()) throw ConstructionError("cannot eliminate every variable");
  std::vector<std::size_t> v(k);
  for (std::size_t i = 0; i < k; ++i) v[i] = i;
  return eliminate_vars(I, v);
}

template <class F>
Ideal<F> embed(const Ideal<F>& I, const RingPtr<F>& big) {
  std::vector<std::size_t> m;
  for (auto& name : I.ring()->names()) {
    auto idx = big->index_of(name);
    if (!idx) throw RingMismatch("variable " + name + " missing from the target ring");
    m.push_back(*idx);
  }
  std::vector<MPoly<F>> gens;
  for (auto& g : I.gens()) gens.push_back(g.map_to(big, m));
  return Ideal<F>(big, gens, I.options());
}

template <class F>
Ideal<F> intersect(const Ideal<F>& I, const Ideal<F>& J) {
  const auto& R = I.ring();
  if (!R->same_as(*J.ring())) throw RingMismatch("intersect of ideals in different rings");
  if (I.is_zero() || J.is_zero()) return Ideal<F>(R, {}, I.options());
  std::size_t n = R->nvars();
  std::vector<std::string> names{fresh_name(*R, "t")};
  for (auto& s : R->names()) names.push_back(s);
  auto S = make_ring(R->field(), names, TermOrder::block(1));
  std::vector<std::size_t> up(n);
  for (std::size_t i = 0; i < n; ++i) up[i] = i + 1;
  auto t = MPoly<F>::variable(S, 0);
  auto one_minus_t = MPoly<F>::constant(S, R->field().one()) - t;
  std::vector<MPoly<F>> gens;
  for (auto& f : I.gens()) gens.push_back(t * f.map_to(S, up));
  for (auto& g : J.gens()) gens.push_back(one_minus_t * g.map_to(S, up));
  GBOptions opt = I.options();
  opt.weights.assign(n + 1, 1);
  opt.weights[0] = 0;
  auto G = cached_groebner(gens, opt);
  std::vector<std::size_t> down(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) down[i + 1] = i;
  std::vector<MPoly<F>> out;
  for (auto& g : G.basis) {
    bool uses_t = false;
    for (auto& tm : g.terms())
      if (tm.m[0]) uses_t = true;
    if (!uses_t) out.push_back(g.map_to(R, down));
  }
  return Ideal<F>(R, out, I.options());
}

template <class F>
Ideal<F> quotient_element(const Ideal<F>& I, const MPoly<F>& g) {
  if (g.is_zero()) throw ArithmeticError("quotient by the zero polynomial");
  if (g.is_constant()) return I;
  if (I.is_homogeneous() && g.degree() == 1 && g.is_homogeneous()) return colon_linear(I, g, 1);
  Ideal<F> G(I.ring(), {g}, I.options());
  auto K = intersect(I, G);
  std::vector<MPoly<F>> out;
  for (auto& h : K.gens()) out.push_back(divide_exact(h, g));
  return Ideal<F>(I.ring(), out, I.options());
}

template <class F>
Ideal<F> quotient(const Ideal<F>& I, const Ideal<F>& J) {
  if (J.is_zero()) throw ArithmeticError("quotient by the zero ideal");
  std::optional<Ideal<F>> acc;
  for (auto& g : J.gens()) {
    auto Q = quotient_element(I, g);
    acc = acc ? intersect(*acc, Q) : Q;
  }
  return *acc;
}

template <class F>
Ideal<F> saturate(const Ideal<F>& I, const Ideal<F>& J) {
  if (J.is_zero()) throw ArithmeticError("saturation by the zero ideal");
  Ideal<F> cur = I;
  for (;;) {
    auto next = quotient(cur, J);
    if (cur.contains(next)) return cur;
    cur = next;
  }
}

template <class F>
Ideal<F> saturate_last_variable(const Ideal<F>& I) {
  const auto& R = I.ring();
  if (!I.is_homogeneous()) throw NotHomogeneous("saturation by a variable needs a homogeneous ideal");
  if (!(R->order() == TermOrder::grevlex())) throw ConstructionError("saturation by the last variable needs grevlex");
  return Ideal<F>(R, strip_last(I.gb().basis, R->nvars(), ~0u), I.options());
}

template <class F>
Ideal<F> saturate_linear(const Ideal<F>& I, const MPoly<F>& ell) {
  if (!I.is_homogeneous()) throw NotHomogeneous("saturation by a linear form needs a homogeneous ideal");
  return colon_linear(I, ell, ~0u);
}

template <class F>
Ideal<F> irrelevant_ideal(const RingPtr<F>& ring) {
  return Ideal<F>(ring, variables(ring));
}

template <class F>
Ideal<F> saturate_irrelevant(const Ideal<F>& I, std::uint64_t seed, SaturationInfo* info) {
  if (!I.is_homogeneous()) throw NotHomogeneous("saturation by the irrelevant ideal needs a homogeneous ideal");
  const auto& R = I.ring();
  if (I.is_zero()) return I;
  const auto& h = I.hilbert();
  if (h.is_unit() || h.krull_dim == 0) {
    if (info) *info = {"empty scheme", 0, true};
    return Ideal<F>(R, {MPoly<F>::constant(R, R->field().one())}, I.options());
  }
  std::vector<std::pair<std::string, MPoly<F>>> candidates;
  for (std::size_t i = R->nvars(); i-- > 0;) candidates.push_back({R->names()[i], MPoly<F>::variable(R, i)});
  Rng rng(seed);
  for (int k = 0; k < 5; ++k) {
    MPoly<F> ell(R);
    for (std::size_t i = 0; i < R->nvars(); ++i) ell += MPoly<F>::variable(R, i).scaled(rng.element(R->field()));
    if (!ell.is_zero()) candidates.push_back({"random form (seed " + std::to_string(seed) + ", draw " + std::to_string(k) + ")", ell});
  }
  std::size_t attempts = 0;
  for (auto& [label, ell] : candidates) {
    ++attempts;
    auto K = saturate_linear(I, ell);
    if (K.hilbert().same_polynomial(h)) {
      if (info) *info = {label, attempts, true};
      return K;
    }
  }
  if (info) *info = {"iterated quotient by the irrelevant ideal", attempts, true};
  return saturate(I, irrelevant_ideal(R));
}

template <class F>
std::vector<MPoly<F>> minors(const PolyGrid<F>& M, std::size_t k) {
  std::size_t rows = M.size(), cols = rows ? M[0].size() : 0;
  if (k == 0 || k > std::min(rows, cols)) throw ConstructionError("minor size out of range");
  if (cols > 31) throw ConstructionError("too many columns for minor enumeration");
  std::vector<MPoly<F>> out;
  // row subsets in lexicographic order
  std::vector<std::size_t> rs(k);
  for (std::size_t i = 0; i < k; ++i) rs[i] = i;
  auto ring = M[0][0].ring();
  for (;;) {
    // level j: map column mask (|mask| = j) -> det of rows rs[0..j-1]
    std::map<std::uint32_t, MPoly<F>> level;
    level.emplace(0u, MPoly<F>::constant(ring, ring->field().one()));
    for (std::size_t j = 0; j < k; ++j) {
      std::map<std::uint32_t, MPoly<F>> next;
      for (auto& [mask, det] : level) {
        if (det.is_zero()) continue;
        for (std::size_t c = 0; c < cols; ++c) {
          if (mask & (1u << c)) continue;
          const auto& e = M[rs[j]][c];
          if (e.is_zero()) continue;
          // sign: position of c among columns of mask|c
          int above = __builtin_popcount(mask & ~((1u << c) - 1) & ~(1u << c));
          auto term = det * e;
          if (above & 1) term = -term;
          auto [it, fresh] = next.try_emplace(mask | (1u << c), term);
          if (!fresh) it->second += term;
        }
      }
      level = std::move(next);
    }
    // column subsets in lexicographic order
    std::vector<std::size_t> cs(k);
    for (std::size_t i = 0; i < k; ++i) cs[i] = i;
    for (;;) {
      std::uint32_t mask = 0;
      for (auto c : cs) mask |= 1u << c;
      auto it = level.find(mask);
      if (it != level.end() && !it->second.is_zero()) out.push_back(it->second);
      std::size_t i = k;
      while (i > 0 && cs[i - 1] == cols - k + i - 1) --i;
      if (i == 0) break;
      ++cs[i - 1];
      for (std::size_t j = i; j < k; ++j) cs[j] = cs[j - 1] + 1;
    }
    std::size_t i = k;
    while (i > 0 && rs[i - 1] == rows - k + i - 1) --i;
    if (i == 0) break;
    ++rs[i - 1];
    for (std::size_t j = i; j < k; ++j) rs[j] = rs[j - 1] + 1;
  }
  return out;
}

template <class F>
Ideal<F> minors_ideal(const RingPtr<F>& ring, const PolyGrid<F>& M, std::size_t k) {
  return Ideal<F>(ring, minors(M, k));
}

template <class F>
PolyGrid<F> jacobian(const std::vector<MPoly<F>>& polys) {
  PolyGrid<F> J;
  for (auto& p : polys) J.push_back(p.partials());
  return J;
}

template <class F>
Ideal<F> singular_locus(const Ideal<F>& I, std::size_t codim, std::uint64_t seed) {
  auto ms = minors(jacobian(I.gens()), codim);
  if (ms.empty()) throw ConstructionError("all Jacobian minors vanish: codimension mismatch");
  return saturate_irrelevant(I.plus(ms), seed);
}

template <class F>
Matrix<F> evaluation_matrix(const std::vector<MPoly<F>>& forms, unsigned e) {
  if (forms.empty()) throw ConstructionError("no forms");
  auto src = forms.front().ring();
  auto d = forms.front().homogeneous_degree();
  for (auto& f : forms)
    if (!f.is_homogeneous() || f.homogeneous_degree() != d) throw ConstructionError("forms must share one degree");
  auto tmons = monomials_of_degree(forms.size(), e);
  auto smons = monomials_of_degree(src->nvars(), *d * e);
  std::map<std::vector<unsigned>, std::size_t> sidx;
  for (std::size_t i = 0; i < smons.size(); ++i) sidx[smons[i].exponents(src->nvars())] = i;
  Matrix<F> M(src->field(), tmons.size(), smons.size());
  std::map<std::vector<unsigned>, MPoly<F>> memo;
  memo.emplace(std::vector<unsigned>(forms.size(), 0), MPoly<F>::constant(src, src->field().one()));
  std::function<const MPoly<F>&(const Monomial&)> prod = [&](const Monomial& m) -> const MPoly<F>& {
    auto key = m.exponents(forms.size());
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    std::size_t i = 0;
    while (!m[i]) ++i;
    Monomial r = m;
    r.set(i, m[i] - 1);
    MPoly<F> p = prod(r) * forms[i];
    return memo.emplace(key, std::move(p)).first->second;
  };
  for (std::size_t r = 0; r < tmons.size(); ++r)
    for (auto& t : prod(tmons[r]).terms()) M(r, sidx.at(t.m.exponents(src->nvars()))) = t.c;
  return M;
}

template <class F>
ImageResult<F> image_ideal_graded(const std::vector<MPoly<F>>& forms, const RingPtr<F>& target, int bound) {
  if (target->nvars() != forms.size()) throw ConstructionError("target ring needs one variable per form");
  ImageResult<F> res;
  res.method = "graded(" + std::to_string(bound) + ")";
  const F& K = target->field();
  std::vector<MPoly<F>> gens;
  std::vector<std::size_t> count_through;
  for (int e = 1; e <= bound; ++e) {
    auto M = evaluation_matrix(forms, e);
    auto ker = left_nullspace(M);
    auto tmons = monomials_of_degree(forms.size(), e);
    // span of R_1 * (lower generators) in degree e
    std::map<std::vector<unsigned>, std::size_t> idx;
    for (std::size_t i = 0; i < tmons.size(); ++i) idx[tmons[i].exponents(forms.size())] = i;
    Matrix<F> span(K, 0, tmons.size());
    Ideal<F> lower(target, gens);
    for (auto& b : lower.gens().empty() ? std::vector<MPoly<F>>{} : lower.basis_in_degree(e)) {
      std::vector<typename F::Elem> row(tmons.size(), K.zero());
      for (auto& t : b.terms()) row[idx.at(t.m.exponents(forms.size()))] = t.c;
      span.append_row(row);
    }
    std::size_t have = span.rows() ? rank(span) : 0;
    long long added = 0;
    for (auto& v : ker) {
      Matrix<F> trial = span;
      trial.append_row(v);
      std::size_t r = rank(trial);
      if (r > have) {
        span = std::move(trial);
        have = r;
        std::vector<Term<F>> terms;
        for (std::size_t i = 0; i < v.size(); ++i)
          if (!K.is_zero(v[i])) terms.push_back({tmons[i], v[i]});
        gens.push_back(MPoly<F>(target, std::move(terms)));
        ++added;
      }
    }
    res.table.push_back({e, static_cast<long long>(ker.size()), added});
    count_through.push_back(gens.size());
  }
  res.ideal = Ideal<F>(target, gens);
  if (bound >= 2 && !gens.empty()) {
    std::vector<MPoly<F>> prev(gens.begin(), gens.begin() + count_through[bound - 2]);
    if (!prev.empty()) res.stable = Ideal<F>(target, prev).hilbert().same_polynomial(res.ideal.hilbert());
  }
  return res;
}

template <class F>
ImageResult<F> image_ideal_elimination(const std::vector<MPoly<F>>& forms, const RingPtr<F>& target) {
  if (target->nvars() != forms.size()) throw ConstructionError("target ring needs one variable per form");
  auto src = forms.front().ring();
  std::size_t ns = src->nvars(), nt = target->nvars();
  auto d = forms.front().homogeneous_degree();
  if (!d) throw ConstructionError("forms must be homogeneous");
  std::vector<std::string> names = src->names();
  for (auto& t : target->names()) {
    if (src->index_of(t)) throw ConstructionError("source and target variable names overlap: " + t);
    names.push_back(t);
  }
  auto S = make_ring(src->field(), names, TermOrder::block(ns));
  std::vector<std::size_t> up(ns);
  for (std::size_t i = 0; i < ns; ++i) up[i] = i;
  std::vector<MPoly<F>> gens;
  for (std::size_t j = 0; j < nt; ++j) gens.push_back(MPoly<F>::variable(S, ns + j) - forms[j].map_to(S, up));
  GBOptions opt;
  opt.weights.assign(ns + nt, static_cast<unsigned>(*d));
  for (std::size_t i = 0; i < ns; ++i) opt.weights[i] = 1;
  auto G = cached_groebner(gens, opt);
  std::vector<std::size_t> down(ns + nt, 0);
  for (std::size_t j = 0; j < nt; ++j) down[ns + j] = j;
  std::vector<MPoly<F>> out;
  for (auto& g : G.basis) {
    bool uses = false;
    for (auto& t : g.terms())
      for (std::size_t i = 0; i < ns; ++i)
        if (t.m[i]) uses = true;
    if (!uses) out.push_back(g.map_to(target, down));
  }
  ImageResult<F> res;
  res.method = "elimination";
  res.ideal = Ideal<F>(target, out);
  res.stable = true;
  return res;
}

std::string to_string(ReducedCheck::Status s) {
  switch (s) {
    case ReducedCheck::Status::reduced:
      return "reduced";
    case ReducedCheck::Status::not_reduced:
      return "not reduced";
    case ReducedCheck::Status::inconclusive:
      return "inconclusive";
  }
  return "?";
}

template <class F>
UniPoly<F> minimal_polynomial(const Matrix<F>& T) {
  const F& K = T.field();
  std::size_t n = T.rows();
  UniPoly<F> acc = UniPoly<F>::constant(K, K.one(), "T");
  for (std::size_t j = 0; j < n; ++j) {
    // Krylov sequence of e_j
    std::vector<std::vector<typename F::Elem>> rows, combs;
    std::vector<std::size_t> piv;
    std::vector<typename F::Elem> w(n, K.zero());
    w[j] = K.one();
    for (std::size_t k = 0; k <= n; ++k) {
      std::vector<typename F::Elem> v = w, c(k + 1, K.zero());
      c[k] = K.one();
      for (std::size_t b = 0; b < rows.size(); ++b) {
        auto f = v[piv[b]];
        if (K.is_zero(f)) continue;
        auto nf = K.neg(f);
        for (std::size_t i = 0; i < n; ++i) v[i] = K.mul_add(nf, rows[b][i], v[i]);
        for (std::size_t i = 0; i < combs[b].size(); ++i) c[i] = K.mul_add(nf, combs[b][i], c[i]);
      }
      std::size_t p = 0;
      while (p < n && K.is_zero(v[p])) ++p;
      if (p == n) {
        UniPoly<F> mp(K, c, "T");
        acc = (acc * mp).exact_div(gcd(acc, mp));
        acc = acc.monic();
        break;
      }
      auto inv = K.inv(v[p]);
      for (auto& x : v) x = K.mul(x, inv);
      for (auto& x : c) x = K.mul(x, inv);
      rows.push_back(v);
      combs.push_back(c);
      piv.push_back(p);
      w = T.apply(w);
    }
    if (acc.degree() == static_cast<int>(n)) break;
  }
  return acc;
}

template <class F>
ReducedCheck zero_dim_reduced_check(const Ideal<F>& I0, std::uint64_t seed) {
  ReducedCheck out;
  const auto& h0 = I0.hilbert();
  if (h0.dim() != 0) throw ConstructionError("reducedness check needs a zero-dimensional scheme (dim " + std::to_string(h0.dim()) + ")");
  auto I = saturate_irrelevant(I0, seed);
  const auto& h = I.hilbert();
  const auto& R = I.ring();
  const F& K = R->field();
  std::size_t n = R->nvars();
  long long delta = h.degree;
  out.degree = delta;
  int d = std::max<long long>(1, h.regularity_index());
  out.slice_degree = d;
  const auto& G = I.gb();
  auto lts = lt_ideal(G);
  auto standard = [&](unsigned deg) {
    std::vector<Monomial> s;
    for (auto& m : monomials_of_degree(n, deg)) {
      bool lead = false;
      for (auto& l : lts)
        if (l.divides(m)) {
          lead = true;
          break;
        }
      if (!lead) s.push_back(m);
    }
    return s;
  };
  auto Sd = standard(d), Sd1 = standard(d + 1);
  if ((long long)Sd.size() != delta || (long long)Sd1.size() != delta)
    throw ConstructionError("graded slice is not stable at the regularity estimate");
  std::map<std::vector<unsigned>, std::size_t> idx1;
  for (std::size_t i = 0; i < Sd1.size(); ++i) idx1[Sd1[i].exponents(n)] = i;
  std::vector<Matrix<F>> Mx;
  for (std::size_t v = 0; v < n; ++v) {
    Matrix<F> M(K, delta, delta);
    for (std::size_t c = 0; c < Sd.size(); ++c) {
      auto p = MPoly<F>::term(R, Sd[c] * Monomial::var(v), K.one());
      auto nf = normal_form(p, G.basis);
      for (auto& t : nf.terms()) M(idx1.at(t.m.exponents(n)), c) = t.c;
    }
    Mx.push_back(std::move(M));
  }
  auto combo = [&](const std::vector<typename F::Elem>& a) {
    Matrix<F> M(K, delta, delta);
    for (std::size_t v = 0; v < n; ++v)
      for (long long i = 0; i < delta; ++i)
        for (long long j = 0; j < delta; ++j) M(i, j) = K.mul_add(a[v], Mx[v](i, j), M(i, j));
    return M;
  };
  Rng rng(seed);
  for (int attempt = 1; attempt <= 5; ++attempt) {
    out.attempts = attempt;
    std::vector<typename F::Elem> a(n);
    for (auto& x : a) x = rng.element(K);
    auto inv = inverse(combo(a));
    if (!inv) continue;
    bool all_sf = true;
    out.generator_minpoly_degrees.clear();
    for (std::size_t v = 0; v < n; ++v) {
      auto mp = minimal_polynomial(*inv * Mx[v]);
      out.generator_minpoly_degrees.push_back(mp.degree());
      if (gcd(mp, mp.derivative()).degree() > 0) all_sf = false;
    }
    std::vector<typename F::Elem> b(n);
    for (auto& x : b) x = rng.element(K);
    auto mr = minimal_polynomial(*inv * combo(b));
    out.random_minpoly_degree = mr.degree();
    out.random_minpoly_squarefree = gcd(mr, mr.derivative()).degree() == 0;
    out.status = all_sf ? ReducedCheck::Status::reduced : ReducedCheck::Status::not_reduced;
    out.detail = "slice degree " + std::to_string(d) + ", nonzerodivisor found on attempt " + std::to_string(attempt);
    return out;
  }
  out.status = ReducedCheck::Status::inconclusive;
  out.detail = "no nonzerodivisor linear form in 5 draws";
  return out;
}

template <class F>
Ideal<F> linear_section_reduce(const Ideal<F>& I, const std::vector<MPoly<F>>& forms) {
  const auto& R = I.ring();
  const F& K = R->field();
  std::size_t n = R->nvars();
  Matrix<F> A(K, forms.size(), n);
  for (std::size_t r = 0; r < forms.size(); ++r) {
    if (!forms[r].is_homogeneous() || forms[r].degree() != 1) throw ConstructionError("section forms must be linear");
    for (auto& t : forms[r].terms())
      for (std::size_t i = 0; i < n; ++i)
        if (t.m[i]) A(r, i) = t.c;
  }
  auto piv = rref(A);
  if (piv.size() != forms.size()) throw ConstructionError("section forms are linearly dependent");
  std::vector<bool> is_piv(n, false);
  for (auto p : piv) is_piv[p] = true;
  std::vector<std::string> names;
  std::vector<std::size_t> pos(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    if (!is_piv[i]) {
      pos[i] = names.size();
      names.push_back(R->names()[i]);
    }
  if (names.empty()) throw ConstructionError("section forms cut out the empty set of coordinates");
  auto S = make_ring(K, names, TermOrder::grevlex());
  std::vector<MPoly<F>> images(n, MPoly<F>(S));
  for (std::size_t i = 0; i < n; ++i)
    if (!is_piv[i]) images[i] = MPoly<F>::variable(S, pos[i]);
  for (std::size_t r = 0; r < piv.size(); ++r) {
    MPoly<F> e(S);
    for (std::size_t j = 0; j < n; ++j)
      if (!is_piv[j] && !K.is_zero(A(r, j))) e -= MPoly<F>::variable(S, pos[j]).scaled(A(r, j));
    images[piv[r]] = e;
  }
  std::vector<MPoly<F>> gens;
  for (auto& g : I.gens()) gens.push_back(g.substitute(images));
  return Ideal<F>(S, gens, I.options());
}

template <class F>
MPoly<F> random_element(const Ideal<F>& I, int e, Rng& rng) {
  auto b = I.basis_in_degree(e);
  MPoly<F> acc(I.ring());
  for (auto& p : b) acc += p.scaled(rng.element(I.ring()->field()));
  return acc;
}

#define LFORGE_IDEAL_OPS(F)                                                                         \
  template Ideal<F> eliminate(const Ideal<F>&, std::size_t);                                       \
  template Ideal<F> eliminate_vars(const Ideal<F>&, const std::vector<std::size_t>&);              \
  template Ideal<F> embed(const Ideal<F>&, const RingPtr<F>&);                                     \
  template Ideal<F> intersect(const Ideal<F>&, const Ideal<F>&);                                   \
  template Ideal<F> quotient_element(const Ideal<F>&, const MPoly<F>&);                            \
  template Ideal<F> quotient(const Ideal<F>&, const Ideal<F>&);                                    \
  template Ideal<F> saturate(const Ideal<F>&, const Ideal<F>&);                                    \
  template Ideal<F> saturate_last_variable(const Ideal<F>&);                                       \
  template Ideal<F> saturate_linear(const Ideal<F>&, const MPoly<F>&);                             \
  template Ideal<F> saturate_irrelevant(const Ideal<F>&, std::uint64_t, SaturationInfo*);          \
  template Ideal<F> irrelevant_ideal(const RingPtr<F>&);                                           \
  template std::vector<MPoly<F>> minors(const PolyGrid<F>&, std::size_t);                          \
  template Ideal<F> minors_ideal(const RingPtr<F>&, const PolyGrid<F>&, std::size_t);              \
  template PolyGrid<F> jacobian(const std::vector<MPoly<F>>&);                                     \
  template Ideal<F> singular_locus(const Ideal<F>&, std::size_t, std::uint64_t);                   \
  template Matrix<F> evaluation_matrix(const std::vector<MPoly<F>>&, unsigned);                    \
  template ImageResult<F> image_ideal_graded(const std::vector<MPoly<F>>&, const RingPtr<F>&, int); \
  template ImageResult<F> image_ideal_elimination(const std::vector<MPoly<F>>&, const RingPtr<F>&); \
  template UniPoly<F> minimal_polynomial(const Matrix<F>&);                                        \
  template ReducedCheck zero_dim_reduced_check(const Ideal<F>&, std::uint64_t);                    \
  template Ideal<F> linear_section_reduce(const Ideal<F>&, const std::vector<MPoly<F>>&);          \
  template MPoly<F> random_element(const Ideal<F>&, int, Rng&);

LFORGE_IDEAL_OPS(PrimeField)
LFORGE_IDEAL_OPS(RationalField)

}  // namespace lforge
