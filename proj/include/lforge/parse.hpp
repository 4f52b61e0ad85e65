#pragma once

#include <cctype>
#include <string>
#include <vector>

#include "lforge/mpoly.hpp"

namespace lforge {

/// Syntax or semantic error in polynomial text, with the offending offset.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " at position " + std::to_string(pos)), position(pos) {}
  std::size_t position;
};

/// `ring <name> vars x0..x5 field GF(17) order grevlex`
struct RingHeader {
  std::string name = "R";
  std::vector<std::string> vars;
  FieldSpec field;
  TermOrder order;

  /// Variable lists accept commas and ranges such as x0..x5 or a,b,c.
  static RingHeader parse(const std::string& line);
  std::string to_string() const;
};

/// A ring header plus one statement per line; `#` starts a comment.
struct PolyFile {
  RingHeader header;
  std::vector<std::string> statements;
  std::vector<std::size_t> lines;  // 1-based source line of each statement
};

PolyFile parse_poly_file(const std::string& text);
PolyFile read_poly_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

PrimeField prime_field_of(const FieldSpec& spec);

template <class F>
RingPtr<F> ring_from_header(const RingHeader& h, F field) {
  return make_ring(std::move(field), h.vars, h.order);
}

namespace detail {

template <class F>
class PolyParser {
 public:
  PolyParser(const std::string& s, const RingPtr<F>& ring) : s_(s), ring_(ring) {}

  MPoly<F> run() {
    skip();
    if (pos_ == s_.size()) throw ParseError("empty polynomial", pos_);
    MPoly<F> r = expr();
    skip();
    if (pos_ != s_.size()) throw ParseError(std::string("unexpected '") + s_[pos_] + "'", pos_);
    return r;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  MPoly<F> expr() {
    MPoly<F> acc(ring_);
    bool neg = false;
    if (accept('-'))
      neg = true;
    else
      accept('+');
    MPoly<F> t = term();
    acc = neg ? -t : t;
    for (;;) {
      if (accept('+'))
        acc += term();
      else if (accept('-'))
        acc -= term();
      else
        return acc;
    }
  }

  MPoly<F> term() {
    MPoly<F> acc = power();
    while (accept('*')) acc *= power();
    return acc;
  }

  MPoly<F> power() {
    MPoly<F> base = primary();
    if (accept('^')) {
      skip();
      std::size_t start = pos_;
      if (pos_ == s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
        throw ParseError("malformed exponent", pos_);
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      std::string digits = s_.substr(start, pos_ - start);
      if (digits.size() > 5 || std::stoul(digits) > 0xFFFF) throw ParseError("exponent too large", start);
      return base.pow(static_cast<unsigned>(std::stoul(digits)));
    }
    return base;
  }

  MPoly<F> primary() {
    skip();
    if (pos_ == s_.size()) throw ParseError("unexpected end of input", pos_);
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      MPoly<F> e = expr();
      if (!accept(')')) throw ParseError("missing ')'", pos_);
      return e;
    }
    if (c == '-') {
      ++pos_;
      return -power();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      mpz_class num(integer());
      mpz_class den = 1;
      skip();
      if (pos_ < s_.size() && s_[pos_] == '/') {
        ++pos_;
        skip();
        if (pos_ == s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
          throw ParseError("malformed fraction", pos_);
        den = mpz_class(integer());
        if (den == 0) throw ParseError("zero denominator", start);
      }
      try {
        return MPoly<F>::constant(ring_, ring_->field().from_fraction(num, den));
      } catch (const ArithmeticError& e) {
        throw ParseError(std::string("coefficient not in field: ") + e.what(), start);
      }
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string name = s_.substr(start, pos_ - start);
      auto idx = ring_->index_of(name);
      if (!idx) throw ParseError("unknown variable '" + name + "'", start);
      return MPoly<F>::variable(ring_, *idx);
    }
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  std::string integer() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return s_.substr(start, pos_ - start);
  }

  const std::string& s_;
  RingPtr<F> ring_;
  std::size_t pos_ = 0;
};

}  // namespace detail

template <class F>
MPoly<F> parse_poly(const std::string& text, const RingPtr<F>& ring) {
  return detail::PolyParser<F>(text, ring).run();
}

template <class F>
std::string print_poly(const MPoly<F>& f) {
  return f.to_string();
}

template <class F>
std::vector<MPoly<F>> parse_polys(const PolyFile& file, const RingPtr<F>& ring) {
  std::vector<MPoly<F>> out;
  for (std::size_t i = 0; i < file.statements.size(); ++i) {
    try {
      out.push_back(parse_poly(file.statements[i], ring));
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(file.lines[i]) + ": " + e.what(), e.position);
    }
  }
  return out;
}

/// Ring header followed by one polynomial per line.
template <class F>
std::string format_polys(const std::vector<MPoly<F>>& polys, const RingPtr<F>& ring, const std::string& name = "R") {
  std::string out = ring->header(name) + "\n";
  for (auto& p : polys) out += p.to_string() + "\n";
  return out;
}

}  // namespace lforge
