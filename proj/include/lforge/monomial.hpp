#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace lforge {

inline constexpr std::size_t kMaxVars = 16;

/// Raised when a product would push an exponent past the 16-bit bound.
class ExponentOverflow : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/**
 * Exponent vector with cached total degree and a support bitmask.
 *
 * The mask has bit i set iff variable i occurs, which rejects most
 * non-divisible pairs before the exponent loop runs.
 */
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(const std::vector<unsigned>& exps);

  static Monomial var(std::size_t i, unsigned power = 1);

  unsigned operator[](std::size_t i) const { return e_[i]; }
  unsigned degree() const { return deg_; }
  std::uint32_t support() const { return mask_; }
  bool is_one() const { return deg_ == 0; }

  void set(std::size_t i, unsigned v);

  bool divides(const Monomial& o) const {
    if ((mask_ & ~o.mask_) != 0 || deg_ > o.deg_) return false;
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (e_[i] > o.e_[i]) return false;
    return true;
  }
  bool coprime(const Monomial& o) const { return (mask_ & o.mask_) == 0; }

  Monomial operator*(const Monomial& o) const;
  /// Requires o | *this.
  Monomial operator/(const Monomial& o) const;
  Monomial lcm(const Monomial& o) const;
  Monomial gcd(const Monomial& o) const;

  bool operator==(const Monomial& o) const { return deg_ == o.deg_ && e_ == o.e_; }
  bool operator!=(const Monomial& o) const { return !(*this == o); }

  std::vector<unsigned> exponents(std::size_t nvars) const;
  std::size_t hash() const;

 private:
  std::array<std::uint16_t, kMaxVars> e_{};
  std::uint32_t deg_ = 0;
  std::uint32_t mask_ = 0;
};

/**
 * Monomial order. All kinds refine a total order compatible with
 * multiplication:
 *  - grevlex: degree, then reverse lexicographic;
 *  - lex: lexicographic with variable 0 largest;
 *  - block: the first k variables are compared by grevlex on their own
 *    block first, then the rest by grevlex (eliminates the first k);
 *  - weighted: weighted degree, ties by grevlex.
 */
struct TermOrder {
  enum class Kind { grevlex, lex, block, weighted };
  Kind kind = Kind::grevlex;
  std::size_t block_size = 0;
  std::vector<unsigned> weights;

  static TermOrder grevlex() { return {}; }
  static TermOrder lex() { return {Kind::lex, 0, {}}; }
  static TermOrder block(std::size_t k) { return {Kind::block, k, {}}; }
  static TermOrder weighted(std::vector<unsigned> w) { return {Kind::weighted, 0, std::move(w)}; }

  /// Negative, zero or positive as a <, ==, > b.
  int compare(const Monomial& a, const Monomial& b, std::size_t nvars) const;

  std::string to_string() const;
  /// Accepts grevlex, lex, block(k), weighted(w0,w1,...).
  static TermOrder parse(const std::string& text);

  bool operator==(const TermOrder&) const = default;
};

inline int grevlex_compare(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi) {
  unsigned da = 0, db = 0;
  for (std::size_t i = lo; i < hi; ++i) {
    da += a[i];
    db += b[i];
  }
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t i = hi; i-- > lo;)
    if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
  return 0;
}

inline int TermOrder::compare(const Monomial& a, const Monomial& b, std::size_t nvars) const {
  switch (kind) {
    case Kind::grevlex: {
      if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
      for (std::size_t i = nvars; i-- > 0;)
        if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
      return 0;
    }
    case Kind::lex:
      for (std::size_t i = 0; i < nvars; ++i)
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
      return 0;
    case Kind::block: {
      int c = grevlex_compare(a, b, 0, block_size);
      if (c != 0) return c;
      return grevlex_compare(a, b, block_size, nvars);
    }
    case Kind::weighted: {
      unsigned long wa = 0, wb = 0;
      for (std::size_t i = 0; i < nvars; ++i) {
        unsigned w = i < weights.size() ? weights[i] : 1;
        wa += static_cast<unsigned long>(w) * a[i];
        wb += static_cast<unsigned long>(w) * b[i];
      }
      if (wa != wb) return wa < wb ? -1 : 1;
      return grevlex_compare(a, b, 0, nvars);
    }
  }
  return 0;
}

}  // namespace lforge
