#include "lforge/monomial.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "lforge/field.hpp"

namespace lforge {

namespace {
constexpr unsigned kMaxExponent = 0xFFFF;
}

Monomial::Monomial(const std::vector<unsigned>& exps) {
  if (exps.size() > kMaxVars) throw ConstructionError("too many variables for a monomial");
  for (std::size_t i = 0; i < exps.size(); ++i) set(i, exps[i]);
}

Monomial Monomial::var(std::size_t i, unsigned power) {
  Monomial m;
  m.set(i, power);
  return m;
}

void Monomial::set(std::size_t i, unsigned v) {
  if (i >= kMaxVars) throw ConstructionError("variable index out of range");
  if (v > kMaxExponent) throw ExponentOverflow("exponent " + std::to_string(v) + " exceeds 2^16-1");
  deg_ = deg_ - e_[i] + v;
  e_[i] = static_cast<std::uint16_t>(v);
  if (v)
    mask_ |= (1u << i);
  else
    mask_ &= ~(1u << i);
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    unsigned s = unsigned(e_[i]) + o.e_[i];
    if (s > kMaxExponent) throw ExponentOverflow("monomial product overflows the exponent bound");
    r.e_[i] = static_cast<std::uint16_t>(s);
  }
  r.deg_ = deg_ + o.deg_;
  r.mask_ = mask_ | o.mask_;
  return r;
}

Monomial Monomial::operator/(const Monomial& o) const {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    r.e_[i] = static_cast<std::uint16_t>(e_[i] - o.e_[i]);
    if (r.e_[i]) r.mask_ |= (1u << i);
  }
  r.deg_ = deg_ - o.deg_;
  return r;
}

Monomial Monomial::lcm(const Monomial& o) const {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    r.e_[i] = std::max(e_[i], o.e_[i]);
    r.deg_ += r.e_[i];
  }
  r.mask_ = mask_ | o.mask_;
  return r;
}

Monomial Monomial::gcd(const Monomial& o) const {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    r.e_[i] = std::min(e_[i], o.e_[i]);
    r.deg_ += r.e_[i];
  }
  r.mask_ = mask_ & o.mask_;
  return r;
}

std::vector<unsigned> Monomial::exponents(std::size_t nvars) const {
  return std::vector<unsigned>(e_.begin(), e_.begin() + nvars);
}

std::size_t Monomial::hash() const {
  std::size_t h = 1469598103934665603ull;
  for (auto v : e_) h = (h ^ v) * 1099511628211ull;
  return h;
}

std::string TermOrder::to_string() const {
  switch (kind) {
    case Kind::grevlex:
      return "grevlex";
    case Kind::lex:
      return "lex";
    case Kind::block:
      return "block(" + std::to_string(block_size) + ")";
    case Kind::weighted: {
      std::string s = "weighted(";
      for (std::size_t i = 0; i < weights.size(); ++i) s += (i ? "," : "") + std::to_string(weights[i]);
      return s + ")";
    }
  }
  return "?";
}

TermOrder TermOrder::parse(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(static_cast<char>(std::tolower(c)));
  if (s == "grevlex") return grevlex();
  if (s == "lex") return lex();
  auto args = [&](const std::string& head) {
    if (s.rfind(head + "(", 0) != 0 || s.back() != ')') throw ConstructionError("malformed order '" + text + "'");
    std::vector<unsigned> out;
    std::stringstream ss(s.substr(head.size() + 1, s.size() - head.size() - 2));
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.empty() || !std::all_of(item.begin(), item.end(), ::isdigit))
        throw ConstructionError("malformed order '" + text + "'");
      out.push_back(static_cast<unsigned>(std::stoul(item)));
    }
    return out;
  };
  if (s.rfind("block", 0) == 0) {
    auto a = args("block");
    if (a.size() != 1) throw ConstructionError("block order takes one argument");
    return block(a[0]);
  }
  if (s.rfind("weighted", 0) == 0) return weighted(args("weighted"));
  throw ConstructionError("unknown term order '" + text + "'");
}

}  // namespace lforge
