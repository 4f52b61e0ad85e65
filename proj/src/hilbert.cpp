#include "lforge/hilbert.hpp"

#include <algorithm>
#include <stdexcept>

namespace lforge {

std::vector<long long> poly_mul(const std::vector<long long>& a, const std::vector<long long>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<long long> r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i])
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  while (!r.empty() && r.back() == 0) r.pop_back();
  return r;
}

std::vector<long long> poly_add(const std::vector<long long>& a, const std::vector<long long>& b) {
  std::vector<long long> r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  while (!r.empty() && r.back() == 0) r.pop_back();
  return r;
}

mpz_class binomial_poly(long long a, long long r) {
  if (r < 0) return 0;
  mpz_class num = 1, den = 1;
  for (long long i = 0; i < r; ++i) {
    num *= static_cast<long>(a - i);
    den *= static_cast<long>(i + 1);
  }
  return num / den;
}

namespace {

std::vector<Monomial> minimal(std::vector<Monomial> g) {
  std::sort(g.begin(), g.end(), [](const Monomial& a, const Monomial& b) { return a.degree() < b.degree(); });
  std::vector<Monomial> out;
  for (auto& m : g) {
    bool red = false;
    for (auto& o : out)
      if (o.divides(m)) {
        red = true;
        break;
      }
    if (!red) out.push_back(m);
  }
  return out;
}

// numerator of the series of R/(gens) over (1-t)^n
std::vector<long long> numerator(std::vector<Monomial> gens, std::size_t nvars) {
  gens = minimal(std::move(gens));
  if (gens.empty()) return {1};
  if (gens.front().is_one()) return {};
  // pairwise coprime: product formula
  std::uint32_t seen = 0;
  bool coprime = true;
  for (auto& m : gens) {
    if (m.support() & seen) {
      coprime = false;
      break;
    }
    seen |= m.support();
  }
  if (coprime) {
    std::vector<long long> r{1};
    for (auto& m : gens) {
      std::vector<long long> f(m.degree() + 1, 0);
      f[0] = 1;
      f[m.degree()] = -1;
      r = poly_mul(r, f);
    }
    return r;
  }
  // pivot: variable occurring in most non-pure-power generators
  std::vector<int> count(nvars, 0);
  for (auto& m : gens)
    if (__builtin_popcount(m.support()) > 1)
      for (std::size_t i = 0; i < nvars; ++i)
        if (m[i]) ++count[i];
  std::size_t x = std::max_element(count.begin(), count.end()) - count.begin();
  std::vector<unsigned> exps;
  for (auto& m : gens)
    if (m[x] && __builtin_popcount(m.support()) > 1) exps.push_back(m[x]);
  std::sort(exps.begin(), exps.end());
  unsigned e = exps[exps.size() / 2];
  Monomial p = Monomial::var(x, e);
  // I + (p)
  std::vector<Monomial> plus = gens;
  plus.push_back(p);
  // I : p
  std::vector<Monomial> colon;
  for (auto& m : gens) {
    Monomial q = m;
    q.set(x, m[x] > e ? m[x] - e : 0);
    colon.push_back(q);
  }
  std::vector<long long> a = numerator(std::move(plus), nvars);
  std::vector<long long> b = numerator(std::move(colon), nvars);
  std::vector<long long> shift(e + 1, 0);
  shift[e] = 1;
  return poly_add(a, poly_mul(shift, b));
}

}  // namespace

HilbertData hilbert_from_monomials(const std::vector<Monomial>& gens, std::size_t nvars) {
  HilbertData h;
  h.nvars = nvars;
  h.numerator = numerator(gens, nvars);
  if (h.numerator.empty()) return h;
  std::vector<long long> q = h.numerator;
  int c = 0;
  for (;;) {
    long long at1 = 0;
    for (auto v : q) at1 += v;
    if (at1 != 0) break;
    // divide by (1 - t): q = (1-t) r  =>  r_k = sum_{i<=k} q_i
    std::vector<long long> r(q.size() - 1);
    long long acc = 0;
    for (std::size_t k = 0; k + 1 < q.size(); ++k) {
      acc += q[k];
      r[k] = acc;
    }
    q = std::move(r);
    ++c;
  }
  h.reduced = q;
  h.krull_dim = static_cast<int>(nvars) - c;
  long long d = 0;
  for (auto v : q) d += v;
  h.degree = d;
  return h;
}

long long HilbertData::hilbert_function(long long d) const {
  if (d < 0) return 0;
  mpz_class s = 0;
  for (std::size_t i = 0; i < numerator.size(); ++i)
    if (d >= static_cast<long long>(i)) s += static_cast<long>(numerator[i]) * binomial_poly(d - i + nvars - 1, nvars - 1);
  return s.get_si();
}

long long HilbertData::hilbert_polynomial(long long k) const {
  if (krull_dim <= 0) return 0;
  mpz_class s = 0;
  for (std::size_t i = 0; i < reduced.size(); ++i) s += static_cast<long>(reduced[i]) * binomial_poly(k - i + krull_dim - 1, krull_dim - 1);
  return s.get_si();
}

long long HilbertData::regularity_index() const {
  long long start = std::max<long long>(0, static_cast<long long>(numerator.size()) - static_cast<long long>(nvars) + 1);
  long long d = start;
  while (d > 0 && hilbert_function(d - 1) == hilbert_polynomial(d - 1)) --d;
  return d;
}

bool HilbertData::same_polynomial(const HilbertData& o) const {
  int da = krull_dim <= 0 ? 0 : krull_dim, db = o.krull_dim <= 0 ? 0 : o.krull_dim;
  if (is_unit()) da = 0;
  if (o.is_unit()) db = 0;
  if (da != db) return false;
  for (long long k = 0; k <= da; ++k)
    if (hilbert_polynomial(k) != o.hilbert_polynomial(k)) return false;
  return true;
}

}  // namespace lforge
