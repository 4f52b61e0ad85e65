#pragma once

#include <algorithm>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "lforge/field.hpp"

namespace lforge {

/**
 * Dense univariate polynomial over a field, lowest degree first.
 *
 * The coefficient vector never carries trailing zeros, so the zero polynomial
 * is the empty vector and `degree()` is -1 for it.
 */
template <class F>
class UniPoly {
 public:
  using Elem = typename F::Elem;

  UniPoly() = default;
  explicit UniPoly(F field, std::string var = "lambda") : field_(std::move(field)), var_(std::move(var)) {}
  UniPoly(F field, std::vector<Elem> coeffs, std::string var = "lambda")
      : field_(std::move(field)), var_(std::move(var)), c_(std::move(coeffs)) {
    trim();
  }

  static UniPoly constant(const F& field, Elem c, std::string var = "lambda") {
    return UniPoly(field, std::vector<Elem>{std::move(c)}, std::move(var));
  }
  /// c * var^k
  static UniPoly monomial(const F& field, Elem c, int k, std::string var = "lambda") {
    std::vector<Elem> v(k + 1, field.zero());
    v[k] = std::move(c);
    return UniPoly(field, std::move(v), std::move(var));
  }

  const F& field() const { return field_; }
  const std::string& var() const { return var_; }
  const std::vector<Elem>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  Elem coeff(int k) const { return k >= 0 && k < (int)c_.size() ? c_[k] : field_.zero(); }
  Elem leading() const { return c_.empty() ? field_.zero() : c_.back(); }

  Elem eval(const Elem& x) const {
    Elem acc = field_.zero();
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = field_.add(field_.mul(acc, x), *it);
    return acc;
  }

  UniPoly monic() const {
    if (is_zero()) return *this;
    Elem li = field_.inv(leading());
    UniPoly r = *this;
    for (auto& a : r.c_) a = field_.mul(a, li);
    return r;
  }

  UniPoly scaled(const Elem& s) const {
    UniPoly r = *this;
    for (auto& a : r.c_) a = field_.mul(a, s);
    r.trim();
    return r;
  }

  UniPoly derivative() const {
    std::vector<Elem> d;
    for (int k = 1; k < (int)c_.size(); ++k) d.push_back(field_.mul(field_.from_int(k), c_[k]));
    return UniPoly(field_, std::move(d), var_);
  }

  UniPoly operator+(const UniPoly& o) const {
    check_compatible(o);
    std::vector<Elem> r(std::max(c_.size(), o.c_.size()), field_.zero());
    for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r[i] = field_.add(r[i], o.c_[i]);
    return UniPoly(field_, std::move(r), var_);
  }
  UniPoly operator-() const {
    UniPoly r = *this;
    for (auto& a : r.c_) a = field_.neg(a);
    return r;
  }
  UniPoly operator-(const UniPoly& o) const { return *this + (-o); }
  UniPoly operator*(const UniPoly& o) const {
    check_compatible(o);
    if (is_zero() || o.is_zero()) return UniPoly(field_, var_);
    std::vector<Elem> r(c_.size() + o.c_.size() - 1, field_.zero());
    for (size_t i = 0; i < c_.size(); ++i) {
      if (field_.is_zero(c_[i])) continue;
      for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] = field_.mul_add(c_[i], o.c_[j], r[i + j]);
    }
    return UniPoly(field_, std::move(r), var_);
  }
  UniPoly& operator+=(const UniPoly& o) { return *this = *this + o; }
  UniPoly& operator-=(const UniPoly& o) { return *this = *this - o; }
  UniPoly& operator*=(const UniPoly& o) { return *this = *this * o; }

  bool operator==(const UniPoly& o) const {
    if (c_.size() != o.c_.size()) return false;
    for (size_t i = 0; i < c_.size(); ++i)
      if (!field_.equal(c_[i], o.c_[i])) return false;
    return true;
  }

  /// Quotient and remainder; throws ArithmeticError on division by zero.
  std::pair<UniPoly, UniPoly> divmod(const UniPoly& d) const {
    check_compatible(d);
    if (d.is_zero()) throw ArithmeticError("polynomial division by zero");
    if (degree() < d.degree()) return {UniPoly(field_, var_), *this};
    std::vector<Elem> rem = c_;
    std::vector<Elem> q(degree() - d.degree() + 1, field_.zero());
    Elem li = field_.inv(d.leading());
    for (int k = degree(); k >= d.degree(); --k) {
      if (field_.is_zero(rem[k])) continue;
      Elem f = field_.mul(rem[k], li);
      q[k - d.degree()] = f;
      for (int j = 0; j <= d.degree(); ++j)
        rem[k - d.degree() + j] = field_.sub(rem[k - d.degree() + j], field_.mul(f, d.c_[j]));
    }
    rem.resize(d.degree());
    return {UniPoly(field_, std::move(q), var_), UniPoly(field_, std::move(rem), var_)};
  }
  UniPoly operator/(const UniPoly& d) const { return divmod(d).first; }
  UniPoly operator%(const UniPoly& d) const { return divmod(d).second; }

  /// Exact division; throws ArithmeticError when d does not divide *this.
  UniPoly exact_div(const UniPoly& d) const {
    auto [q, r] = divmod(d);
    if (!r.is_zero()) throw ArithmeticError("inexact polynomial division");
    return q;
  }
  bool divides(const UniPoly& f) const { return f.divmod(*this).second.is_zero(); }

  std::string to_string() const;

  void check_compatible(const UniPoly& o) const {
    if (!(field_ == o.field_) || var_ != o.var_)
      throw ArithmeticError("univariate polynomials over different rings");
  }

 private:
  void trim() {
    while (!c_.empty() && field_.is_zero(c_.back())) c_.pop_back();
  }

  F field_{};
  std::string var_ = "lambda";
  std::vector<Elem> c_;
};

template <class F>
std::string UniPoly<F>::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    const Elem& a = c_[k];
    if (field_.is_zero(a)) continue;
    std::string s = field_.to_string(a);
    bool negative = !s.empty() && s[0] == '-';
    if (negative) s = s.substr(1);
    if (first)
      os << (negative ? "-" : "");
    else
      os << (negative ? " - " : " + ");
    first = false;
    bool unit = s == "1";
    if (k == 0)
      os << s;
    else {
      if (!unit) os << s << "*";
      os << var_;
      if (k > 1) os << "^" << k;
    }
  }
  return os.str();
}

/// Monic gcd; gcd(f, 0) = monic(f).
template <class F>
UniPoly<F> gcd(UniPoly<F> a, UniPoly<F> b) {
  a.check_compatible(b);
  while (!b.is_zero()) {
    auto r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// Extended gcd: returns (g, s, t) with s*a + t*b = g, g monic.
template <class F>
struct XGcd {
  UniPoly<F> g, s, t;
};

template <class F>
XGcd<F> xgcd(const UniPoly<F>& a, const UniPoly<F>& b) {
  const F& K = a.field();
  UniPoly<F> r0 = a, r1 = b;
  UniPoly<F> s0 = UniPoly<F>::constant(K, K.one(), a.var()), s1(K, a.var());
  UniPoly<F> t0(K, a.var()), t1 = UniPoly<F>::constant(K, K.one(), a.var());
  while (!r1.is_zero()) {
    auto [q, r] = r0.divmod(r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    auto s2 = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    auto t2 = t0 - q * t1;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  auto li = K.inv(r0.leading());
  return {r0.scaled(li), s0.scaled(li), t0.scaled(li)};
}

template <class F>
UniPoly<F> powmod(UniPoly<F> base, mpz_class e, const UniPoly<F>& mod) {
  UniPoly<F> result = UniPoly<F>::constant(base.field(), base.field().one(), base.var()) % mod;
  base = base % mod;
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) result = (result * base) % mod;
    base = (base * base) % mod;
    e >>= 1;
  }
  return result;
}

/// (factor, multiplicity) pairs; factors monic.
template <class F>
using FactorList = std::vector<std::pair<UniPoly<F>, int>>;

namespace detail {
/// f(x) = g(x^p) in characteristic p: recover g.
template <class F>
UniPoly<F> pth_root(const UniPoly<F>& f, std::uint32_t p) {
  std::vector<typename F::Elem> g;
  for (int k = 0; k <= f.degree(); k += p) g.push_back(f.coeff(k));  // a^p = a in F_p
  return UniPoly<F>(f.field(), std::move(g), f.var());
}
}  // namespace detail

/**
 * Squarefree decomposition (Yun's algorithm, with the p-th root step needed
 * in positive characteristic). Factors are monic, squarefree and pairwise
 * coprime; the product of factor^multiplicity equals monic(f).
 */
template <class F>
FactorList<F> squarefree(const UniPoly<F>& f) {
  if (f.is_zero()) throw ArithmeticError("squarefree decomposition of the zero polynomial");
  FactorList<F> out;
  const std::uint32_t p = f.field().characteristic();
  std::vector<std::pair<UniPoly<F>, int>> pending{{f.monic(), 1}};
  while (!pending.empty()) {
    auto [g, mult] = pending.back();
    pending.pop_back();
    if (g.degree() <= 0) continue;
    auto dg = g.derivative();
    if (dg.is_zero()) {
      pending.push_back({detail::pth_root(g, p), mult * static_cast<int>(p)});
      continue;
    }
    auto c = gcd(g, dg);
    auto w = g.exact_div(c);
    int i = 1;
    while (w.degree() > 0) {
      auto y = gcd(w, c);
      auto z = w.exact_div(y);
      if (z.degree() > 0) out.push_back({z.monic(), i * mult});
      ++i;
      w = y;
      c = c.exact_div(y);
    }
    if (c.degree() > 0) {
      // remaining part is a p-th power
      pending.push_back({detail::pth_root(c.monic(), p), mult * static_cast<int>(p)});
    }
  }
  // merge equal factors that can arise from separate branches, then sort for determinism
  FactorList<F> merged;
  for (auto& [fac, m] : out) {
    bool found = false;
    for (auto& [g2, m2] : merged)
      if (g2 == fac) {
        m2 += m;
        found = true;
      }
    if (!found) merged.push_back({fac, m});
  }
  std::sort(merged.begin(), merged.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second < b.second;
    return a.first.degree() < b.first.degree();
  });
  return merged;
}

}  // namespace lforge
