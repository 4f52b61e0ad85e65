#include <doctest.h>

#include "lforge/linalg.hpp"
#include "lforge/parse.hpp"
#include "oracles.hpp"

using namespace lforge;
using K17 = PrimeField;
using P = MPoly<K17>;

TEST_CASE("prime field arithmetic matches integer arithmetic mod p") {
  for (std::uint32_t p : {2u, 17u, 101u, 32003u, 2147483647u}) {
    PrimeField K(p);
    Rng rng(p);
    for (int i = 0; i < 2000; ++i) {
      auto a = (std::uint32_t)rng.below(p), b = (std::uint32_t)rng.below(p), c = (std::uint32_t)rng.below(p);
      CHECK(K.mul(a, b) == (std::uint64_t)a * b % p);
      CHECK(K.add(a, b) == ((std::uint64_t)a + b) % p);
      CHECK(K.sub(a, b) == ((std::uint64_t)a + p - b) % p);
      CHECK(K.mul_add(a, b, c) == ((std::uint64_t)a * b + c) % p);
      if (a) CHECK(K.mul(a, K.inv(a)) == 1);
    }
  }
  PrimeField K;
  CHECK(K.characteristic() == 17);
  CHECK(K.from_int(-1) == 16);
  CHECK(K.to_signed(16) == -1);
  CHECK(K.from_fraction(1, 2) == 9);
  CHECK_THROWS_AS(K.inv(0), ArithmeticError);
  CHECK_THROWS(K.from_fraction(1, 17));
}

TEST_CASE("rational field") {
  RationalField Q;
  auto a = Q.from_fraction(3, 4), b = Q.from_int(-2);
  CHECK(Q.mul(a, b) == Q.from_fraction(-3, 2));
  CHECK(Q.div(a, a) == Q.one());
  CHECK_THROWS_AS(Q.inv(Q.zero()), ArithmeticError);
}

TEST_CASE("field specs parse") {
  CHECK(FieldSpec::parse("GF(17)") == FieldSpec::prime_field(17));
  CHECK(FieldSpec::parse("gf17") == FieldSpec::prime_field(17));
  CHECK(FieldSpec::parse("ZZ/101") == FieldSpec::prime_field(101));
  CHECK(FieldSpec::parse("QQ") == FieldSpec::rationals());
  CHECK_THROWS(FieldSpec::parse("GF(18)"));
}

TEST_CASE("monomials and term orders") {
  Monomial a({2, 0, 1}), b({1, 1, 0});
  CHECK((a * b).exponents(3) == std::vector<unsigned>{3, 1, 1});
  CHECK(a.lcm(b).exponents(3) == std::vector<unsigned>{2, 1, 1});
  CHECK(a.gcd(b).exponents(3) == std::vector<unsigned>{1, 0, 0});
  CHECK(Monomial({1, 0, 0}).divides(a));
  CHECK_FALSE(b.divides(a));
  CHECK(oracle::monomials(3, 3).size() == 10);
  CHECK(monomials_of_degree(3, 3).size() == 10);
  // grevlex: x1^2 > x0 x2; lex: x0 x2 > x1^2.
  Monomial m1({0, 2, 0}), m2({1, 0, 1});
  CHECK(TermOrder::grevlex().compare(m1, m2, 3) > 0);
  CHECK(TermOrder::lex().compare(m2, m1, 3) > 0);
  CHECK(TermOrder::parse(TermOrder::grevlex().to_string()) == TermOrder::grevlex());
}

TEST_CASE("polynomial ring axioms on random forms") {
  K17 K;
  auto R = make_ring(K, indexed_names("x", 4));
  Rng rng(5);
  for (int i = 0; i < 30; ++i) {
    auto f = random_form(R, 2, rng), g = random_form(R, 3, rng), h = random_form(R, 1, rng);
    CHECK(f * (g + h) == f * g + f * h);
    CHECK((f * g) * h == f * (g * h));
    CHECK(f * g == g * f);
    CHECK((f - f).is_zero());
    CHECK((f * g).homogeneous_degree() == 5);
    std::vector<K17::Elem> pt = {rng.element(K), rng.element(K), rng.element(K), rng.element(K)};
    CHECK((f * g).eval(pt) == K.mul(f.eval(pt), g.eval(pt)));
    std::vector<P> imgs;
    for (int k = 0; k < 4; ++k) imgs.push_back(P::constant(R, pt[k]));
    auto s = (f * g).substitute(imgs);
    CHECK(s.is_constant());
    CHECK((s.is_zero() ? 0u : s.lc()) == (f * g).eval(pt));
  }
}

TEST_CASE("partial derivatives and Euler's formula") {
  K17 K;
  auto R = make_ring(K, indexed_names("x", 3));
  Rng rng(3);
  auto f = random_form(R, 4, rng);
  P euler(R);
  for (std::size_t i = 0; i < 3; ++i) euler += P::variable(R, i) * f.partial(i);
  CHECK(euler == f.scaled(K.from_int(4)));
}

TEST_CASE("parse and print round trip") {
  K17 K;
  auto R = make_ring(K, {"x", "y", "z"});
  auto f = parse_poly("3*x^2*y - (y+z)^2 + 1/2*z^3", R);
  CHECK(parse_poly(f.to_string(), R) == f);
  CHECK(parse_poly("x*y", R) == parse_poly("y*x", R));
  CHECK_THROWS_AS(parse_poly("x + w", R), ParseError);
  CHECK_THROWS_AS(parse_poly("x + ", R), ParseError);
  CHECK_THROWS_AS(parse_poly("x/0", R), ParseError);
  try {
    parse_poly("x + w", R);
  } catch (const ParseError& e) {
    CHECK(e.position == 4);
  }
  auto file = parse_poly_file("ring S vars a,b,c field GF(17) order grevlex\n# comment\na*b - c^2\n\nb^3\n");
  CHECK(file.header.vars == std::vector<std::string>{"a", "b", "c"});
  CHECK(file.statements.size() == 2);
  CHECK(file.lines == std::vector<std::size_t>{3, 5});
  auto hdr = RingHeader::parse("ring R vars x0..x3 field QQ order grevlex");
  CHECK(hdr.vars.size() == 4);
  CHECK(hdr.field == FieldSpec::rationals());
}

TEST_CASE("rng is deterministic") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
  RationalField Q;
  Rng c(1);
  for (int i = 0; i < 200; ++i) {
    auto e = c.element(Q);
    CHECK(e >= -10);
    CHECK(e <= 10);
  }
}

TEST_CASE("linear algebra against the modular oracle") {
  K17 K;
  Rng rng(11);
  for (int t = 0; t < 50; ++t) {
    std::size_t r = 1 + rng.below(7), c = 1 + rng.below(7);
    Matrix<K17> M(K, r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) M(i, j) = rng.below(3) ? rng.element(K) : 0;
    std::vector<std::vector<oracle::u64>> rows(r, std::vector<oracle::u64>(c));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) rows[i][j] = M(i, j);
    auto rk = rank(M);
    CHECK(rk == oracle::rank_mod(rows, 17));
    auto ns = nullspace(M);
    CHECK(ns.size() == c - rk);
    for (auto& v : ns) {
      auto w = M.apply(v);
      for (auto e : w) CHECK(e == 0);
    }
    if (r == c) {
      CHECK(determinant(M) == oracle::det_mod(rows, 17));
      auto inv = inverse(M);
      CHECK(inv.has_value() == (rk == r));
      if (inv) CHECK(M * *inv == Matrix<K17>::identity(K, r));
    }
  }
}
