#include <doctest.h>

#include "lforge/parse.hpp"
#include "lforge/veronese.hpp"
#include "lforge/workbench.hpp"
#include "oracles.hpp"

using namespace lforge;
using K17 = PrimeField;
using P = MPoly<K17>;

namespace {

Matrix<K17> random_N(std::uint64_t seed, std::size_t cols = 6) {
  K17 K;
  Rng rng(seed);
  Matrix<K17> N(K, 10, cols);
  for (std::size_t i = 0; i < 10; ++i)
    for (std::size_t j = 0; j < cols; ++j) N(i, j) = rng.element(K);
  return N;
}

std::vector<K17::Elem> point_on_veronese(CatalecticantKind kind, Rng& rng) {
  K17 K;
  auto src = veronese_source(kind, K);
  auto v = veronese_coordinates(kind, src);
  std::vector<K17::Elem> x;
  for (std::size_t i = 0; i < src->nvars(); ++i) x.push_back(rng.nonzero_element(K));
  std::vector<K17::Elem> out;
  for (auto& f : v) out.push_back(f.eval(x));
  return out;
}

std::size_t cat_rank(CatalecticantKind kind, const std::vector<K17::Elem>& pt) {
  K17 K;
  auto amb = make_ring(K, catalecticant_names(kind));
  auto C = catalecticant(kind, amb);
  std::vector<std::vector<oracle::u64>> rows;
  for (auto& r : C) {
    rows.emplace_back();
    for (auto& e : r) rows.back().push_back(e.eval(pt));
  }
  return oracle::rank_mod(rows, 17);
}

}  // namespace

TEST_CASE("Veronese maps") {
  K17 K;
  auto src = veronese_source(CatalecticantKind::p2cubics, K);
  CHECK(veronese_map(src, 3, false).size() == 10);
  CHECK(veronese_coordinates(CatalecticantKind::p2cubics, src).size() == 10);
  auto src3 = veronese_source(CatalecticantKind::p3quadrics, K);
  CHECK(veronese_coordinates(CatalecticantKind::p3quadrics, src3).size() == 10);
  CHECK(catalecticant_names(CatalecticantKind::p3quadrics).size() == 10);
}

TEST_CASE("catalecticant ranks of Veronese and secant points") {
  Rng rng(1);
  K17 K;
  for (auto kind : {CatalecticantKind::p2cubics, CatalecticantKind::p3quadrics}) {
    auto amb = make_ring(K, catalecticant_names(kind));
    auto sec = secant_ideal(kind, amb);
    for (int t = 0; t < 5; ++t) {
      auto p = point_on_veronese(kind, rng), q = point_on_veronese(kind, rng);
      CHECK(cat_rank(kind, p) == 1);
      std::vector<K17::Elem> s(10);
      for (int i = 0; i < 10; ++i) s[i] = K.add(p[i], q[i]);
      CHECK(cat_rank(kind, s) <= 2);
      for (auto& g : sec.gens()) CHECK(g.eval(s) == 0);
      std::vector<K17::Elem> r(10);
      for (auto& e : r) e = rng.element(K);
      bool vanishes = true;
      for (auto& g : sec.gens()) vanishes = vanishes && g.eval(r) == 0;
      CHECK(vanishes == (cat_rank(kind, r) <= 2));
    }
  }
}

TEST_CASE("projection specs") {
  K17 K;
  auto spec = make_projection(CatalecticantKind::p2cubics, random_N(1));
  CHECK(spec.target_size() == 6);
  CHECK(spec.composed().size() == 6);
  for (auto& f : spec.composed()) CHECK(f.homogeneous_degree() == 3);
  CHECK(spec.center_forms(spec.ambient()).size() == 6);
  Matrix<K17> bad(K, 10, 6);
  CHECK_THROWS(make_projection(CatalecticantKind::p2cubics, bad));
  // Centre equations round trip.
  auto back = projection_from_equations(CatalecticantKind::p2cubics, spec.center_forms(spec.ambient()));
  CHECK(back.composed().size() == 6);
  auto again = back.center_forms(back.ambient());
  Ideal<K17> a(spec.ambient(), spec.center_forms(spec.ambient())), b(back.ambient(), again);
  CHECK(a.equals(Ideal<K17>(spec.ambient(), [&] {
    std::vector<P> moved;
    for (auto& g : again) moved.push_back(parse_poly(g.to_string(), spec.ambient()));
    return moved;
  }())));
}

TEST_CASE("L_N against an independent rank computation") {
  for (std::uint64_t seed : {1, 2, 3}) {
    auto spec = make_projection(CatalecticantKind::p2cubics, random_N(seed));
    auto LN = build_LN(spec);
    CHECK(LN.L.rows() == 55);
    CHECK(LN.L.cols() == 56);
    // Independent: rank of the span of all cubic monomials in the six composed forms.
    auto forms = spec.composed();
    auto src = forms.front().ring();
    auto basis = oracle::monomials(3, 9);
    std::vector<std::vector<oracle::u64>> rows;
    for (auto& m : oracle::monomials(6, 3)) {
      P prod = P::from_int(src, 1);
      for (std::size_t i = 0; i < 6; ++i)
        for (unsigned e = 0; e < m[i]; ++e) prod *= forms[i];
      rows.push_back(oracle::coeff_vector(prod, basis));
    }
    auto rk = oracle::rank_mod(rows, 17);
    CHECK(LN.rank == rk);
    CHECK(LN.corank == 56 - rk);
    CHECK(LN.kernel_cubics.size() == LN.corank);
    for (auto& c : LN.kernel_cubics) CHECK(c.substitute(forms).is_zero());
  }
}

TEST_CASE("secant avoidance certificates") {
  K17 K;
  auto amb = make_ring(K, catalecticant_names(CatalecticantKind::p2cubics));
  auto sec = secant_ideal(CatalecticantKind::p2cubics, amb);
  auto cert = secant_avoidance(make_projection(CatalecticantKind::p2cubics, random_N(1)), sec);
  CHECK(cert.empty);
  CHECK(cert.dim == -1);
}

TEST_CASE("N0 fixture: corank 2, tangent codimension 1, unique-cubic analysis refuses") {
  Fixtures fx(LFORGE_TEST_FIXTURES);
  K17 K;
  auto spec = make_projection(CatalecticantKind::p2cubics, parse_int_grid(fx.read("n0.txt"), K));
  CHECK(build_LN(spec).corank == 2);
  CHECK(gamma_tangent_space(spec).codimension == 1);
  CHECK_THROWS(unique_cubic_analysis(spec));
  auto [A, B] = parse_affine_grid(fx.read("n_lambda.txt"), K);
  CHECK(A == spec.N);
  CHECK(A.rows() == 10);
  CHECK(B.cols() == 6);
}

TEST_CASE("the unique cubic of a random projection is singular along a sextic curve") {
  K17 K;
  auto spec = make_projection(CatalecticantKind::p2cubics, random_N(1));
  REQUIRE(build_LN(spec).corank == 1);
  auto rep = unique_cubic_analysis(spec, 1);
  CHECK(rep.singular_dim == 1);
  CHECK(rep.singular_degree == 6);
  CHECK(rep.singular_linear_forms == 0);
}

TEST_CASE("adjugate identity") {
  K17 K;
  auto N = random_N(4);
  auto M = N.row_block(0, 6);
  auto adj = adjugate(M);
  auto d = determinant(M);
  auto prod = M * adj;
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) CHECK(prod(i, j) == (i == j ? d : 0));
}
