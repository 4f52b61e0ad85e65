#include "lforge/field.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

namespace lforge {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (p >= (1u << 31) || !is_prime(p))
    throw ConstructionError("field modulus " + std::to_string(p) + " is not a prime below 2^31");
  barrett_ = std::numeric_limits<std::uint64_t>::max() / p;
}

PrimeField::Elem PrimeField::inv(Elem a) const {
  if (a == 0) throw ArithmeticError("inverse of zero in " + name());
  // extended Euclid on signed 64-bit values
  long long t = 0, new_t = 1, r = p_, new_r = a;
  while (new_r != 0) {
    long long q = r / new_r;
    t = t - q * new_t;
    std::swap(t, new_t);
    r = r - q * new_r;
    std::swap(r, new_r);
  }
  if (t < 0) t += p_;
  return static_cast<Elem>(t);
}

PrimeField::Elem PrimeField::pow(Elem a, std::uint64_t e) const {
  Elem result = 1;
  while (e) {
    if (e & 1) result = mul(result, a);
    a = mul(a, a);
    e >>= 1;
  }
  return result;
}

PrimeField::Elem PrimeField::from_int(long long v) const {
  long long r = v % static_cast<long long>(p_);
  if (r < 0) r += p_;
  return static_cast<Elem>(r);
}

PrimeField::Elem PrimeField::from_mpz(const mpz_class& v) const {
  mpz_class r = v % p_;
  if (r < 0) r += p_;
  return static_cast<Elem>(r.get_ui());
}

PrimeField::Elem PrimeField::from_fraction(const mpz_class& num, const mpz_class& den) const {
  Elem d = from_mpz(den);
  if (d == 0) throw ArithmeticError("denominator " + den.get_str() + " vanishes in " + name());
  return div(from_mpz(num), d);
}

RationalField::Elem RationalField::inv(const Elem& a) const {
  if (sgn(a) == 0) throw ArithmeticError("inverse of zero in QQ");
  return Elem(1) / a;
}

RationalField::Elem RationalField::pow(Elem a, std::uint64_t e) const {
  Elem result = 1;
  while (e) {
    if (e & 1) result *= a;
    a *= a;
    e >>= 1;
  }
  return result;
}

RationalField::Elem RationalField::from_fraction(const mpz_class& num, const mpz_class& den) const {
  if (den == 0) throw ArithmeticError("zero denominator");
  Elem q(num, den);
  q.canonicalize();
  return q;
}

FieldSpec FieldSpec::prime_field(std::uint32_t p) {
  PrimeField check(p);  // validates
  return {Kind::prime, p};
}

FieldSpec FieldSpec::parse(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(static_cast<char>(std::tolower(c)));
  if (s == "qq" || s == "q" || s == "rationals") return rationals();
  std::string digits;
  if (s.rfind("gf(", 0) == 0 && s.back() == ')')
    digits = s.substr(3, s.size() - 4);
  else if (s.rfind("gf", 0) == 0)
    digits = s.substr(2);
  else if (s.rfind("zz/", 0) == 0)
    digits = s.substr(3);
  else
    throw ConstructionError("unknown field '" + text + "'");
  if (digits.empty() || digits.size() > 10 || !std::all_of(digits.begin(), digits.end(), ::isdigit))
    throw ConstructionError("malformed field modulus in '" + text + "'");
  unsigned long long p = std::stoull(digits);
  if (p >= (1ull << 31)) throw ConstructionError("field modulus out of range in '" + text + "'");
  return prime_field(static_cast<std::uint32_t>(p));
}

std::string FieldSpec::to_string() const {
  return kind == Kind::rationals ? "QQ" : "GF(" + std::to_string(p) + ")";
}

}  // namespace lforge
