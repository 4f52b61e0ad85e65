#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace lforge {

/// Raised for division by zero and for coefficients that do not exist in a field.
class ArithmeticError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a field, ring or object is constructed with invalid parameters.
class ConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

bool is_prime(std::uint64_t n);

/**
 * Prime field F_p with 2 <= p < 2^31.
 *
 * Elements are plain machine integers in [0, p). Products are reduced with a
 * precomputed Barrett constant so the hot path never issues a hardware divide.
 */
class PrimeField {
 public:
  using Elem = std::uint32_t;

  /// GF(17), the working characteristic of every default experiment.
  PrimeField() : PrimeField(17) {}
  explicit PrimeField(std::uint32_t p);

  std::uint32_t characteristic() const { return p_; }
  std::string name() const { return "GF(" + std::to_string(p_) + ")"; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  bool is_zero(Elem a) const { return a == 0; }
  bool is_one(Elem a) const { return a == 1; }
  bool equal(Elem a, Elem b) const { return a == b; }

  Elem add(Elem a, Elem b) const {
    Elem s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + p_ - b; }
  Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }
  Elem mul(Elem a, Elem b) const { return reduce(std::uint64_t(a) * b); }
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const;

  /// a*b + c, used by the dense elimination kernels.
  Elem mul_add(Elem a, Elem b, Elem c) const { return reduce(std::uint64_t(a) * b + c); }

  Elem from_int(long long v) const;
  Elem from_mpz(const mpz_class& v) const;
  /// num/den; throws ArithmeticError when p divides den.
  Elem from_fraction(const mpz_class& num, const mpz_class& den) const;

  /// Symmetric representative in (-p/2, p/2].
  long long to_signed(Elem a) const { return a > p_ / 2 ? (long long)a - p_ : (long long)a; }
  std::string to_string(Elem a) const { return std::to_string(to_signed(a)); }

  bool operator==(const PrimeField& o) const { return p_ == o.p_; }

  /// Reduce a 64-bit value below 2^62 modulo p.
  Elem reduce(std::uint64_t x) const {
    std::uint64_t q = static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * barrett_) >> 64);
    std::uint64_t r = x - q * p_;
    while (r >= p_) r -= p_;
    return static_cast<Elem>(r);
  }

 private:
  std::uint32_t p_;
  std::uint64_t barrett_;  // floor(2^64 / p)
};

/// The rationals, with GMP rationals kept in lowest terms after every operation.
class RationalField {
 public:
  using Elem = mpq_class;

  std::uint32_t characteristic() const { return 0; }
  std::string name() const { return "QQ"; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  bool is_zero(const Elem& a) const { return sgn(a) == 0; }
  bool is_one(const Elem& a) const { return a == 1; }
  bool equal(const Elem& a, const Elem& b) const { return a == b; }

  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem inv(const Elem& a) const;
  Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const;
  Elem mul_add(const Elem& a, const Elem& b, const Elem& c) const { return a * b + c; }

  Elem from_int(long long v) const { return Elem(mpz_class(std::to_string(v))); }
  Elem from_mpz(const mpz_class& v) const { return Elem(v); }
  Elem from_fraction(const mpz_class& num, const mpz_class& den) const;

  std::string to_string(const Elem& a) const { return a.get_str(); }

  bool operator==(const RationalField&) const { return true; }
};

/// Runtime description of a coefficient field, as read from ring headers and CLI flags.
struct FieldSpec {
  enum class Kind { prime, rationals };
  Kind kind = Kind::prime;
  std::uint32_t p = 17;

  static FieldSpec prime_field(std::uint32_t p);
  static FieldSpec rationals() { return {Kind::rationals, 0}; }
  /// Accepts "GF(17)", "gf17", "ZZ/17", "QQ", "qq".
  static FieldSpec parse(const std::string& text);
  std::string to_string() const;
  bool operator==(const FieldSpec&) const = default;
};

}  // namespace lforge
