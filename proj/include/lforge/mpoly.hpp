#pragma once

#include <algorithm>
#include <limits>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "lforge/field.hpp"
#include "lforge/monomial.hpp"

namespace lforge {

/// Raised when polynomials from different rings are combined.
class RingMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Variables, term order and coefficient field shared by a family of polynomials.
template <class F>
class Ring {
 public:
  Ring(F field, std::vector<std::string> names, TermOrder order = TermOrder::grevlex())
      : field_(std::move(field)), names_(std::move(names)), order_(std::move(order)) {
    if (names_.empty() || names_.size() > kMaxVars)
      throw ConstructionError("a ring needs between 1 and " + std::to_string(kMaxVars) + " variables");
    for (std::size_t i = 0; i < names_.size(); ++i)
      for (std::size_t j = i + 1; j < names_.size(); ++j)
        if (names_[i] == names_[j]) throw ConstructionError("duplicate variable name " + names_[i]);
    if (order_.kind == TermOrder::Kind::block && order_.block_size > names_.size())
      throw ConstructionError("block size exceeds the number of variables");
  }

  const F& field() const { return field_; }
  const std::vector<std::string>& names() const { return names_; }
  const TermOrder& order() const { return order_; }
  std::size_t nvars() const { return names_.size(); }

  std::optional<std::size_t> index_of(const std::string& name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == name) return i;
    return std::nullopt;
  }

  int compare(const Monomial& a, const Monomial& b) const { return order_.compare(a, b, names_.size()); }

  bool same_as(const Ring& o) const {
    return this == &o || (field_ == o.field_ && names_ == o.names_ && order_ == o.order_);
  }

  /// "ring <name> vars a,b,c field GF(17) order grevlex"
  std::string header(const std::string& name = "R") const;

 private:
  F field_;
  std::vector<std::string> names_;
  TermOrder order_;
};

template <class F>
using RingPtr = std::shared_ptr<const Ring<F>>;

template <class F>
RingPtr<F> make_ring(F field, std::vector<std::string> names, TermOrder order = TermOrder::grevlex()) {
  return std::make_shared<const Ring<F>>(std::move(field), std::move(names), std::move(order));
}

/// Names prefix0 .. prefix{n-1}.
std::vector<std::string> indexed_names(const std::string& prefix, std::size_t n);

template <class F>
std::string Ring<F>::header(const std::string& name) const {
  std::string vars;
  for (std::size_t i = 0; i < names_.size(); ++i) vars += (i ? "," : "") + names_[i];
  return "ring " + name + " vars " + vars + " field " + field_.name() + " order " + order_.to_string();
}

template <class F>
struct Term {
  Monomial m;
  typename F::Elem c;
};

/**
 * Sparse multivariate polynomial.
 *
 * Terms are kept strictly descending in the ring's order with no zero
 * coefficients, so structural equality is polynomial equality.
 */
template <class F>
class MPoly {
 public:
  using Elem = typename F::Elem;
  using TermT = Term<F>;

  MPoly() = default;
  explicit MPoly(RingPtr<F> ring) : ring_(std::move(ring)) {}
  /// Terms in any order, possibly repeated or zero; canonicalized here.
  MPoly(RingPtr<F> ring, std::vector<TermT> terms) : ring_(std::move(ring)), t_(std::move(terms)) { canonicalize(); }

  static MPoly constant(RingPtr<F> ring, Elem c) {
    MPoly p(ring);
    if (!ring->field().is_zero(c)) p.t_.push_back({Monomial(), std::move(c)});
    return p;
  }
  static MPoly from_int(RingPtr<F> ring, long long v) { return constant(ring, ring->field().from_int(v)); }
  static MPoly variable(RingPtr<F> ring, std::size_t i) {
    if (i >= ring->nvars()) throw ConstructionError("variable index out of range");
    MPoly p(ring);
    p.t_.push_back({Monomial::var(i), ring->field().one()});
    return p;
  }
  static MPoly term(RingPtr<F> ring, Monomial m, Elem c) {
    MPoly p(ring);
    if (!ring->field().is_zero(c)) p.t_.push_back({m, std::move(c)});
    return p;
  }
  /// Build from terms already strictly descending with nonzero coefficients.
  static MPoly from_sorted(RingPtr<F> ring, std::vector<TermT> terms) {
    MPoly p(std::move(ring));
    p.t_ = std::move(terms);
    return p;
  }

  const RingPtr<F>& ring() const { return ring_; }
  const F& field() const { return ring_->field(); }
  const std::vector<TermT>& terms() const { return t_; }
  std::vector<TermT>& mutable_terms() { return t_; }
  std::size_t size() const { return t_.size(); }
  bool is_zero() const { return t_.empty(); }
  bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_[0].m.is_one()); }
  const Monomial& lm() const { return t_.front().m; }
  const Elem& lc() const { return t_.front().c; }

  /// Maximal total degree; -1 for zero.
  int degree() const {
    int d = -1;
    for (auto& t : t_) d = std::max<int>(d, t.m.degree());
    return d;
  }
  /// Degree if homogeneous (0 is homogeneous of every degree, reported as 0).
  std::optional<int> homogeneous_degree() const {
    if (t_.empty()) return 0;
    unsigned d = t_[0].m.degree();
    for (auto& t : t_)
      if (t.m.degree() != d) return std::nullopt;
    return static_cast<int>(d);
  }
  bool is_homogeneous() const { return homogeneous_degree().has_value(); }

  Elem coeff(const Monomial& m) const {
    for (auto& t : t_)
      if (t.m == m) return t.c;
    return field().zero();
  }

  MPoly monic() const {
    if (is_zero()) return *this;
    MPoly r = *this;
    Elem li = field().inv(lc());
    for (auto& t : r.t_) t.c = field().mul(t.c, li);
    return r;
  }

  MPoly scaled(const Elem& s) const {
    if (field().is_zero(s)) return MPoly(ring_);
    MPoly r = *this;
    for (auto& t : r.t_) t.c = field().mul(t.c, s);
    return r;
  }

  MPoly mul_term(const Monomial& m, const Elem& c) const {
    if (field().is_zero(c)) return MPoly(ring_);
    MPoly r(ring_);
    r.t_.reserve(t_.size());
    for (auto& t : t_) r.t_.push_back({t.m * m, field().mul(t.c, c)});
    return r;
  }

  MPoly operator-() const {
    MPoly r = *this;
    for (auto& t : r.t_) t.c = field().neg(t.c);
    return r;
  }
  MPoly operator+(const MPoly& o) const { return combine(o, false); }
  MPoly operator-(const MPoly& o) const { return combine(o, true); }
  MPoly operator*(const MPoly& o) const;
  MPoly& operator+=(const MPoly& o) { return *this = *this + o; }
  MPoly& operator-=(const MPoly& o) { return *this = *this - o; }
  MPoly& operator*=(const MPoly& o) { return *this = *this * o; }

  MPoly pow(unsigned e) const {
    MPoly r = constant(ring_, field().one());
    MPoly b = *this;
    while (e) {
      if (e & 1) r = r * b;
      e >>= 1;
      if (e) b = b * b;
    }
    return r;
  }

  bool operator==(const MPoly& o) const {
    check_ring(o);
    if (t_.size() != o.t_.size()) return false;
    for (std::size_t i = 0; i < t_.size(); ++i)
      if (t_[i].m != o.t_[i].m || !field().equal(t_[i].c, o.t_[i].c)) return false;
    return true;
  }
  bool operator!=(const MPoly& o) const { return !(*this == o); }

  /// Partial derivative with respect to variable i.
  MPoly partial(std::size_t i) const {
    std::vector<TermT> out;
    for (auto& t : t_) {
      unsigned e = t.m[i];
      if (!e) continue;
      Monomial m = t.m;
      m.set(i, e - 1);
      Elem c = field().mul(field().from_int(e), t.c);
      if (!field().is_zero(c)) out.push_back({m, c});
    }
    return MPoly(ring_, std::move(out));
  }
  std::vector<MPoly> partials() const {
    std::vector<MPoly> out;
    for (std::size_t i = 0; i < ring_->nvars(); ++i) out.push_back(partial(i));
    return out;
  }

  /**
   * Ring homomorphism sending variable i to images[i]; all images share
   * one target ring. Variables beyond images.size() are not allowed to occur.
   */
  MPoly substitute(const std::vector<MPoly>& images) const;

  /// Evaluate at a point of the coefficient field.
  Elem eval(const std::vector<Elem>& point) const {
    Elem acc = field().zero();
    for (auto& t : t_) {
      Elem v = t.c;
      for (std::size_t i = 0; i < ring_->nvars(); ++i)
        if (t.m[i]) v = field().mul(v, field().pow(point[i], t.m[i]));
      acc = field().add(acc, v);
    }
    return acc;
  }

  /**
   * Re-express in another ring: variable i of this ring becomes variable
   * var_map[i] of the target. Terms are re-sorted for the target order.
   */
  MPoly map_to(const RingPtr<F>& target, const std::vector<std::size_t>& var_map) const {
    std::vector<TermT> out;
    out.reserve(t_.size());
    for (auto& t : t_) {
      Monomial m;
      for (std::size_t i = 0; i < ring_->nvars(); ++i)
        if (t.m[i]) m.set(var_map.at(i), t.m[i]);
      out.push_back({m, t.c});
    }
    return MPoly(target, std::move(out));
  }

  /// Same variables, different order (or equal ring): re-sort only.
  MPoly with_ring(const RingPtr<F>& target) const {
    if (target->nvars() != ring_->nvars() || !(target->field() == field()))
      throw RingMismatch("with_ring needs the same variables and field");
    MPoly r(target, t_);
    return r;
  }

  std::string to_string() const;

  void check_ring(const MPoly& o) const {
    if (ring_ != o.ring_ && !ring_->same_as(*o.ring_)) throw RingMismatch("polynomials from different rings");
  }

 private:
  void canonicalize();
  MPoly combine(const MPoly& o, bool subtract) const;

  RingPtr<F> ring_;
  std::vector<TermT> t_;
};

template <class F>
void MPoly<F>::canonicalize() {
  const auto& R = *ring_;
  const F& K = R.field();
  std::sort(t_.begin(), t_.end(), [&](const TermT& a, const TermT& b) { return R.compare(a.m, b.m) > 0; });
  std::vector<TermT> out;
  out.reserve(t_.size());
  for (auto& t : t_) {
    if (!out.empty() && out.back().m == t.m)
      out.back().c = K.add(out.back().c, t.c);
    else
      out.push_back(std::move(t));
    if (K.is_zero(out.back().c)) out.pop_back();
  }
  t_ = std::move(out);
}

template <class F>
MPoly<F> MPoly<F>::combine(const MPoly& o, bool subtract) const {
  check_ring(o);
  const auto& R = *ring_;
  const F& K = R.field();
  std::vector<TermT> out;
  out.reserve(t_.size() + o.t_.size());
  std::size_t i = 0, j = 0;
  while (i < t_.size() || j < o.t_.size()) {
    int c = i == t_.size() ? -1 : j == o.t_.size() ? 1 : R.compare(t_[i].m, o.t_[j].m);
    if (c > 0)
      out.push_back(t_[i++]);
    else if (c < 0) {
      out.push_back({o.t_[j].m, subtract ? K.neg(o.t_[j].c) : o.t_[j].c});
      ++j;
    } else {
      Elem s = subtract ? K.sub(t_[i].c, o.t_[j].c) : K.add(t_[i].c, o.t_[j].c);
      if (!K.is_zero(s)) out.push_back({t_[i].m, std::move(s)});
      ++i;
      ++j;
    }
  }
  return from_sorted(ring_, std::move(out));
}

template <class F>
MPoly<F> MPoly<F>::operator*(const MPoly& o) const {
  check_ring(o);
  if (is_zero() || o.is_zero()) return MPoly(ring_);
  const F& K = field();
  if (t_.size() == 1) return o.mul_term(t_[0].m, t_[0].c);
  if (o.t_.size() == 1) return mul_term(o.t_[0].m, o.t_[0].c);
  std::vector<TermT> prod;
  prod.reserve(t_.size() * o.t_.size());
  for (auto& a : t_)
    for (auto& b : o.t_) prod.push_back({a.m * b.m, K.mul(a.c, b.c)});
  return MPoly(ring_, std::move(prod));
}

template <class F>
MPoly<F> MPoly<F>::substitute(const std::vector<MPoly>& images) const {
  if (images.empty()) throw RingMismatch("substitute needs at least one image");
  const auto& target = images.front().ring();
  for (auto& im : images) im.check_ring(images.front());
  // cache powers of each image
  std::vector<std::vector<MPoly>> powers(images.size());
  auto power = [&](std::size_t i, unsigned e) -> const MPoly& {
    auto& pw = powers[i];
    if (pw.empty()) pw.push_back(MPoly::constant(target, target->field().one()));
    while (pw.size() <= e) pw.push_back(pw.back() * images[i]);
    return pw[e];
  };
  std::vector<TermT> acc;
  for (auto& t : t_) {
    MPoly term = MPoly::constant(target, t.c);
    for (std::size_t i = 0; i < ring_->nvars(); ++i) {
      if (!t.m[i]) continue;
      if (i >= images.size()) throw RingMismatch("substitution map does not cover " + ring_->names()[i]);
      term = term * power(i, t.m[i]);
    }
    for (auto& tt : term.t_) acc.push_back(std::move(tt));
  }
  return MPoly(target, std::move(acc));
}

template <class F>
std::string MPoly<F>::to_string() const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  const auto& names = ring_->names();
  bool first = true;
  for (auto& t : t_) {
    std::string c = field().to_string(t.c);
    bool negative = !c.empty() && c[0] == '-';
    if (negative) c = c.substr(1);
    os << (first ? (negative ? "-" : "") : (negative ? " - " : " + "));
    first = false;
    bool unit = c == "1";
    if (t.m.is_one()) {
      os << c;
      continue;
    }
    bool need_star = false;
    if (!unit) {
      os << c;
      need_star = true;
    }
    for (std::size_t i = 0; i < names.size(); ++i) {
      unsigned e = t.m[i];
      if (!e) continue;
      if (need_star) os << "*";
      os << names[i];
      if (e > 1) os << "^" << e;
      need_star = true;
    }
  }
  return os.str();
}

/// All monomials of total degree d in n variables, in graded-lex descending order.
std::vector<Monomial> monomials_of_degree(std::size_t nvars, unsigned d);

/// Deterministic coefficient source; the engine is fully specified by the
/// standard, so sequences are identical on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  std::uint64_t next() { return eng_(); }
  /// Uniform in [0, n) by rejection, independent of library distributions.
  std::uint64_t below(std::uint64_t n) {
    std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t v;
    do v = eng_();
    while (v >= limit);
    return v % n;
  }
  template <class F>
  typename F::Elem element(const F& K) {
    if (K.characteristic() == 0) return K.from_int(static_cast<long long>(below(21)) - 10);
    return K.from_int(static_cast<long long>(below(K.characteristic())));
  }
  template <class F>
  typename F::Elem nonzero_element(const F& K) {
    for (;;) {
      auto e = element(K);
      if (!K.is_zero(e)) return e;
    }
  }

 private:
  std::mt19937_64 eng_;
};

/// Homogeneous form of degree d with independently drawn coefficients on every monomial.
template <class F>
MPoly<F> random_form(const RingPtr<F>& ring, unsigned d, Rng& rng) {
  std::vector<Term<F>> terms;
  for (auto& m : monomials_of_degree(ring->nvars(), d)) terms.push_back({m, rng.element(ring->field())});
  return MPoly<F>(ring, std::move(terms));
}

template <class F>
MPoly<F> random_form(const RingPtr<F>& ring, unsigned d, std::uint64_t seed) {
  Rng rng(seed);
  return random_form(ring, d, rng);
}

/// Random linear combination of the given polynomials.
template <class F>
MPoly<F> random_combination(const std::vector<MPoly<F>>& polys, Rng& rng) {
  if (polys.empty()) throw ConstructionError("random combination of an empty list");
  MPoly<F> acc(polys.front().ring());
  for (auto& p : polys) acc += p.scaled(rng.element(p.field()));
  return acc;
}

}  // namespace lforge
