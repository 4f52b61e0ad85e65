#include "lforge/link.hpp"

#include <sstream>

namespace lforge {

template <class F>
long long ci_degree_product(const Ideal<F>& ci) {
  long long p = 1;
  for (auto& g : ci.gens()) p *= g.degree();
  return p;
}

template <class F>
std::string LinkStep<F>::summary() const {
  std::ostringstream os;
  os << "CI(";
  for (std::size_t i = 0; i < ci_degrees.size(); ++i) os << (i ? "," : "") << ci_degrees[i];
  os << ") dim " << dim_ci << ": input dim " << dim_in << " deg " << deg_in << ", residual dim " << dim_out
     << " deg " << deg_out << ", " << deg_in << "+" << deg_out << (deg_in + deg_out == deg_ci ? "=" : "!=") << deg_ci;
  return os.str();
}

template <class F>
LinkStep<F> link(const Ideal<F>& I, const Ideal<F>& ci) {
  LinkStep<F> s;
  s.input = I;
  s.ci = ci;
  for (auto& g : ci.gens()) s.ci_degrees.push_back(g.degree());
  if (!I.contains(ci)) throw LinkError("the complete intersection is not contained in the input", "");
  std::tie(s.dim_ci, s.deg_ci) = ci.dim_degree();
  const int n = static_cast<int>(ci.ring()->nvars());
  const int codim = n - 1 - s.dim_ci;
  if (codim != static_cast<int>(ci.gens().size()) || s.deg_ci != ci_degree_product(ci))
    throw LinkError("not a complete intersection: " + std::to_string(ci.gens().size()) + " generators, codimension " +
                        std::to_string(codim),
                    "");
  std::tie(s.dim_in, s.deg_in) = I.dim_degree();
  if (s.dim_in != s.dim_ci) throw LinkError("input and complete intersection differ in dimension", "");
  s.residual = quotient(ci, I);
  if (s.residual.is_unit()) {
    s.dim_out = -1;
    s.deg_out = 0;
  } else {
    std::tie(s.dim_out, s.deg_out) = s.residual.dim_degree();
  }
  auto audit = liaison_invariants(s);
  if (!audit.ok()) throw LinkError("liaison bookkeeping failed: " + audit.failures.front(), s.summary());
  return s;
}

template <class F>
LiaisonAudit liaison_invariants(const LinkStep<F>& s) {
  LiaisonAudit a;
  a.containment = s.input.contains(s.ci) && s.residual.contains(s.ci);
  if (!a.containment) a.failures.push_back("containment");
  const int n = static_cast<int>(s.ci.ring()->nvars());
  a.complete_intersection = (n - 1 - s.dim_ci) == static_cast<int>(s.ci.gens().size()) &&
                            s.deg_ci == ci_degree_product(s.ci);
  if (!a.complete_intersection) a.failures.push_back("complete intersection");
  // The residual of the whole CI is empty; otherwise dimensions must agree.
  bool empty_residual = s.deg_in == s.deg_ci && s.dim_out == -1;
  a.dims_equal = s.dim_in == s.dim_ci && (empty_residual || s.dim_out == s.dim_ci);
  if (!a.dims_equal) a.failures.push_back("dimensions");
  a.degree_additive = s.deg_in + s.deg_out == s.deg_ci;
  if (!a.degree_additive) a.failures.push_back("degree additivity");
  return a;
}

namespace {

template <class F>
std::string trace_of(const BilinkReport<F>& r) {
  std::string t;
  for (auto& l : r.log) t += l + "\n";
  return t;
}

}  // namespace

template <class F>
BilinkReport<F> bilink_degree18(const Ideal<F>& I_D, const MPoly<F>& c1, const MPoly<F>& c2, int k,
                                std::uint64_t seed) {
  if (k < 4) throw ConstructionError("bilinkage needs k >= 4");
  BilinkReport<F> r;
  auto ring = I_D.ring();
  if (!I_D.contains(c1) || !I_D.contains(c2)) throw LinkError("the cubics do not lie in the input ideal", "");
  auto [dimD, degD] = I_D.dim_degree();
  r.log.push_back("input dim " + std::to_string(dimD) + " deg " + std::to_string(degD));
  if (I_D.graded_piece_dim(k) == 0)
    throw LinkError("no element of degree " + std::to_string(k) + " in the input ideal", trace_of(r));

  auto attempt = [&](const Ideal<F>& I, int e, long long expected_out, std::uint64_t s) -> std::optional<LinkStep<F>> {
    Rng rng(s);
    auto g = random_element(I, e, rng);
    if (g.is_zero()) return std::nullopt;
    Ideal<F> ci(ring, {c1, c2, g});
    try {
      auto st = link(I, ci);
      if (st.deg_out != expected_out || st.dim_out != dimD) {
        r.log.push_back("seed " + std::to_string(s) + ": residual dim " + std::to_string(st.dim_out) + " deg " +
                        std::to_string(st.deg_out) + ", re-drawing");
        return std::nullopt;
      }
      return st;
    } catch (const LinkError& e) {
      r.log.push_back("seed " + std::to_string(s) + ": " + e.what() + ", re-drawing");
      return std::nullopt;
    }
  };

  std::uint64_t s = seed;
  std::optional<LinkStep<F>> st1;
  for (int tries = 0; tries <= 5 && !st1; ++tries, ++s) {
    st1 = attempt(I_D, k, 9LL * k - degD, s);
    if (!st1) ++r.redraws;
    else r.seeds.push_back(s);
  }
  if (!st1) throw LinkError("step 1 failed after 5 re-draws", trace_of(r));
  r.log.push_back("step 1: " + st1->summary());
  r.steps.push_back(*st1);
  const auto& Fk = st1->residual;

  r.next_degree = k + 1;
  r.h0_intermediate_next = Fk.graded_piece_dim(k + 1);
  r.h0_union_next = st1->ci.graded_piece_dim(k + 1);
  r.log.push_back("h0(I_F(" + std::to_string(k + 1) + ")) = " + std::to_string(r.h0_intermediate_next) +
                  ", h0(I_CI(" + std::to_string(k + 1) + ")) = " + std::to_string(r.h0_union_next));

  std::optional<LinkStep<F>> st2;
  for (int tries = 0; tries <= 5 && !st2; ++tries, ++s) {
    st2 = attempt(Fk, k + 1, 9LL * (k + 1) - st1->deg_out, s);
    if (!st2) ++r.redraws;
    else r.seeds.push_back(s);
  }
  if (!st2) throw LinkError("step 2 failed after 5 re-draws", trace_of(r));
  r.log.push_back("step 2: " + st2->summary());
  r.steps.push_back(*st2);
  r.final = st2->residual;
  r.degree_checks = liaison_invariants(*st1).degree_additive && liaison_invariants(*st2).degree_additive;
  r.dim_checks = st1->dim_out == dimD && st2->dim_out == dimD;
  return r;
}

template <class F>
BilinkReport<F> bilink_t8(const Ideal<F>& I_T, const std::vector<MPoly<F>>& cubics, std::uint64_t seed) {
  if (cubics.size() != 3) throw ConstructionError("bilink_t8 needs three cubics");
  BilinkReport<F> r;
  auto ring = I_T.ring();
  auto [dimT, degT] = I_T.dim_degree();
  r.log.push_back("input dim " + std::to_string(dimT) + " deg " + std::to_string(degT));
  Ideal<F> ci1(ring, cubics);
  auto st1 = link(I_T, ci1);
  r.log.push_back("step 1: " + st1.summary());
  r.steps.push_back(st1);
  const auto& G = st1.residual;

  r.next_degree = 4;
  r.h0_intermediate_next = G.graded_piece_dim(4);
  r.h0_union_next = ci1.graded_piece_dim(4);
  r.log.push_back("h0(I_G(4)) = " + std::to_string(r.h0_intermediate_next) + ", h0(I_CI(4)) = " +
                  std::to_string(r.h0_union_next));
  if (r.h0_intermediate_next <= r.h0_union_next)
    throw LinkError("no quartic contains G without containing T", trace_of(r));

  std::uint64_t s = seed;
  std::optional<LinkStep<F>> st2;
  for (int tries = 0; tries <= 5 && !st2; ++tries, ++s) {
    Rng rng(s);
    auto q = random_element(G, 4, rng);
    if (q.is_zero() || I_T.contains(q)) {
      ++r.redraws;
      r.log.push_back("seed " + std::to_string(s) + ": quartic contains T, re-drawing");
      continue;
    }
    try {
      auto st = link(G, Ideal<F>(ring, {cubics[0], cubics[1], q}));
      if (st.dim_out != dimT) {
        ++r.redraws;
        continue;
      }
      st2 = st;
      r.seeds.push_back(s);
    } catch (const LinkError& e) {
      ++r.redraws;
      r.log.push_back("seed " + std::to_string(s) + ": " + e.what() + ", re-drawing");
    }
  }
  if (!st2) throw LinkError("step 2 failed after 5 re-draws", trace_of(r));
  r.log.push_back("step 2: " + st2->summary());
  r.steps.push_back(*st2);
  r.final = st2->residual;
  r.degree_checks = liaison_invariants(st1).degree_additive && liaison_invariants(*st2).degree_additive;
  r.dim_checks = st1.dim_out == dimT && st2->dim_out == dimT;
  return r;
}

#define LFORGE_LINK(F)                                                                                        \
  template struct LinkStep<F>;                                                                                \
  template long long ci_degree_product(const Ideal<F>&);                                                      \
  template LinkStep<F> link(const Ideal<F>&, const Ideal<F>&);                                                \
  template LiaisonAudit liaison_invariants(const LinkStep<F>&);                                               \
  template BilinkReport<F> bilink_degree18(const Ideal<F>&, const MPoly<F>&, const MPoly<F>&, int, std::uint64_t); \
  template BilinkReport<F> bilink_t8(const Ideal<F>&, const std::vector<MPoly<F>>&, std::uint64_t);

LFORGE_LINK(PrimeField)
LFORGE_LINK(RationalField)

}  // namespace lforge
