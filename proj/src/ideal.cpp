#include "lforge/ideal.hpp"

#include "lforge/parse.hpp"

namespace lforge {

template <class F>
Ideal<F>::Ideal(RingPtr<F> ring, std::vector<MPoly<F>> gens, GBOptions opt) : ring_(std::move(ring)), opt_(std::move(opt)) {
  for (auto& g : gens) {
    if (g.ring() != ring_ && !g.ring()->same_as(*ring_)) throw RingMismatch("generator from a different ring");
    if (g.is_zero()) continue;
    if (!g.is_homogeneous()) homogeneous_ = false;
    gens_.push_back(std::move(g));
  }
}

template <class F>
const GroebnerBasis<F>& Ideal<F>::gb() const {
  std::lock_guard<std::mutex> lock(cache_->mu);
  if (!cache_->gb) {
    if (gens_.empty()) {
      GroebnerBasis<F> G;
      G.ring = ring_;
      cache_->gb = std::move(G);
    } else {
      cache_->gb = cached_groebner(gens_, opt_);
    }
  }
  return *cache_->gb;
}

template <class F>
const HilbertData& Ideal<F>::hilbert() const {
  if (!homogeneous_) throw NotHomogeneous("Hilbert data needs a homogeneous ideal");
  const auto& G = gb();
  std::lock_guard<std::mutex> lock(cache_->mu);
  if (!cache_->hilbert) cache_->hilbert = hilbert_from_monomials(lt_ideal(G), ring_->nvars());
  return *cache_->hilbert;
}

template <class F>
bool Ideal<F>::is_unit() const {
  const auto& G = gb();
  return G.basis.size() == 1 && G.basis[0].is_constant();
}

template <class F>
bool Ideal<F>::contains(const MPoly<F>& f) const {
  if (f.is_zero()) return true;
  return normal_form(f, gb().basis).is_zero();
}

template <class F>
bool Ideal<F>::contains(const Ideal& J) const {
  for (auto& g : J.gens())
    if (!contains(g)) return false;
  return true;
}

template <class F>
bool Ideal<F>::equals(const Ideal& J) const {
  const auto& a = gb().basis;
  const auto& b = J.gb().basis;
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].to_string() != b[i].to_string()) return false;
  return true;
}

template <class F>
long long Ideal<F>::graded_piece_dim(int e) const {
  if (!homogeneous_) throw NotHomogeneous("graded pieces need a homogeneous ideal");
  if (e < 0) return 0;
  long long total = binomial_poly(e + ring_->nvars() - 1, ring_->nvars() - 1).get_si();
  return total - hilbert().hilbert_function(e);
}

template <class F>
std::vector<MPoly<F>> Ideal<F>::basis_in_degree(int e) const {
  if (!homogeneous_) throw NotHomogeneous("graded pieces need a homogeneous ideal");
  std::vector<MPoly<F>> out;
  if (e < 0) return out;
  const auto& G = gb();
  auto lts = lt_ideal(G);
  for (auto& m : monomials_of_degree(ring_->nvars(), e)) {
    bool lead = false;
    for (auto& l : lts)
      if (l.divides(m)) {
        lead = true;
        break;
      }
    if (!lead) continue;
    auto mono = MPoly<F>::term(ring_, m, ring_->field().one());
    out.push_back(mono - normal_form(mono, G.basis));
  }
  return out;
}

template <class F>
Ideal<F> Ideal<F>::operator+(const Ideal& J) const {
  auto g = gens_;
  g.insert(g.end(), J.gens_.begin(), J.gens_.end());
  return Ideal(ring_, std::move(g), opt_);
}

template <class F>
Ideal<F> Ideal<F>::plus(const std::vector<MPoly<F>>& more) const {
  auto g = gens_;
  g.insert(g.end(), more.begin(), more.end());
  return Ideal(ring_, std::move(g), opt_);
}

template <class F>
Ideal<F> Ideal<F>::operator*(const Ideal& J) const {
  std::vector<MPoly<F>> g;
  for (auto& a : gens_)
    for (auto& b : J.gens_) g.push_back(a * b);
  return Ideal(ring_, std::move(g), opt_);
}

template <class F>
std::string Ideal<F>::to_text(const std::string& name) const {
  return format_polys(gens_, ring_, name);
}

template <class F>
MPoly<F> divide_exact(const MPoly<F>& f, const MPoly<F>& g) {
  if (g.is_zero()) throw ArithmeticError("division by the zero polynomial");
  f.check_ring(g);
  const F& K = f.field();
  auto ginv = K.inv(g.lc());
  MPoly<F> rem = f;
  std::vector<Term<F>> q;
  while (!rem.is_zero()) {
    if (!g.lm().divides(rem.lm())) throw ArithmeticError("inexact multivariate division");
    Monomial m = rem.lm() / g.lm();
    auto c = K.mul(rem.lc(), ginv);
    q.push_back({m, c});
    rem -= g.mul_term(m, c);
  }
  return MPoly<F>::from_sorted(f.ring(), std::move(q));
}

template class Ideal<PrimeField>;
template class Ideal<RationalField>;
template MPoly<PrimeField> divide_exact(const MPoly<PrimeField>&, const MPoly<PrimeField>&);
template MPoly<RationalField> divide_exact(const MPoly<RationalField>&, const MPoly<RationalField>&);

}  // namespace lforge
