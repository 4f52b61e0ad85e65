#include <doctest.h>

#include "lforge/snf.hpp"
#include "properties.hpp"

using namespace lforge;
using K17 = PrimeField;
using UP = UniPoly<K17>;

namespace {

UP lam(const K17& K, int k = 1) { return UP::monomial(K, K.one(), k); }
UP one(const K17& K) { return UP::constant(K, K.one()); }

}  // namespace

TEST_CASE("small Smith forms") {
  K17 K;
  PolyMatrix<K17> M(K, 2, 2);
  M(0, 0) = lam(K);
  M(0, 1) = one(K);
  M(1, 1) = lam(K);
  auto r = smith_normal_form(M);
  REQUIRE(r.diagonal.size() == 2);
  CHECK(r.diagonal[0] == one(K));
  CHECK(r.diagonal[1] == lam(K, 2));
  CHECK(r.transform_verified);
  CHECK(r.divisibility_verified);
  CHECK(r.rank == 2);

  PolyMatrix<K17> D(K, 2, 3);
  D(0, 0) = lam(K, 2);
  D(1, 1) = lam(K);
  auto rd = smith_normal_form(D);
  CHECK(rd.diagonal[0] == lam(K));
  CHECK(rd.diagonal[1] == lam(K, 2));

  PolyMatrix<K17> Z(K, 2, 2);
  auto rz = smith_normal_form(Z);
  CHECK(rz.rank == 0);
}

TEST_CASE("random Smith forms") {
  auto r = props::snf_random(40, 5);
  CHECK_MESSAGE(r.ok(), r.first_failure);
}

TEST_CASE("matrix text round trip") {
  K17 K;
  Rng rng(3);
  PolyMatrix<K17> M(K, 2, 3);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 3; ++j) M(i, j) = props::random_unipoly(K, 3, rng);
  auto back = parse_poly_matrix(format_poly_matrix(M), K);
  CHECK(back == M);
  CHECK_THROWS(parse_poly_matrix("2 2 lambda\n1\n", K));
}

TEST_CASE("factorization helpers") {
  K17 K;
  // (l - 1)(l - 2)(l^2 + 3), with l^2 + 3 irreducible mod 17 since -3 is a non-residue.
  UP f = (lam(K) - one(K)) * (lam(K) - UP::constant(K, 2)) * (lam(K, 2) + UP::constant(K, 3));
  auto roots = root_scan_ff(f);
  CHECK(roots == std::vector<std::uint32_t>{1, 2});
  CHECK(is_irreducible_ff(lam(K, 2) + UP::constant(K, 3)));
  CHECK_FALSE(is_irreducible_ff(f));
  auto dd = distinct_degree_factor(f);
  REQUIRE(dd.size() == 2);
  CHECK(dd[0].second == 1);
  CHECK(dd[0].first.degree() == 2);
  CHECK(dd[1].second == 2);
  auto fac = unipoly_factor_ff(f * f);
  CHECK(fac.size() == 3);
  for (auto& [g, m] : fac) CHECK(m == 2);
}

TEST_CASE("Cantor-Zassenhaus round trip") {
  auto r = props::cz_roundtrip(300, 9);
  CHECK_MESSAGE(r.ok(), r.first_failure);
}

TEST_CASE("reduction of rational polynomials mod p") {
  RationalField Q;
  K17 K;
  UniPoly<RationalField> f(Q, {Q.from_fraction(1, 2), Q.zero(), Q.from_int(17)});
  auto r = mod_reduce(f, K);
  CHECK_FALSE(r.degree_preserved);
  CHECK(r.poly.degree() == 0);
  CHECK(r.poly.coeff(0) == K.from_fraction(1, 2));
  UniPoly<RationalField> g(Q, {Q.from_int(3), Q.from_int(1)});
  CHECK(mod_reduce(g, K).degree_preserved);
}

TEST_CASE("rational Smith form of a small matrix") {
  RationalField Q;
  PolyMatrix<RationalField> M(Q, 2, 2);
  M(0, 0) = UniPoly<RationalField>(Q, {Q.from_int(2), Q.from_int(1)});
  M(1, 1) = UniPoly<RationalField>(Q, {Q.from_int(2), Q.from_int(1)});
  M(0, 1) = UniPoly<RationalField>(Q, {Q.from_fraction(1, 3)});
  auto r = smith_normal_form(M);
  CHECK(r.transform_verified);
  CHECK(r.diagonal[0].degree() == 0);
  CHECK(r.diagonal[1].degree() == 2);
}
