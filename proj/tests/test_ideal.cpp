#include <doctest.h>

#include "lforge/ideal_ops.hpp"
#include "lforge/parse.hpp"
#include "oracles.hpp"

using namespace lforge;
using K17 = PrimeField;
using P = MPoly<K17>;

namespace {

Ideal<K17> ideal(const RingPtr<K17>& R, std::initializer_list<const char*> gens) {
  std::vector<P> g;
  for (auto s : gens) g.push_back(parse_poly(s, R));
  return Ideal<K17>(R, g);
}

}  // namespace

TEST_CASE("graded pieces match linear algebra") {
  K17 K;
  auto R = make_ring(K, indexed_names("x", 4));
  Rng rng(4);
  std::vector<P> g = {random_form(R, 2, rng), random_form(R, 2, rng), random_form(R, 3, rng)};
  Ideal<K17> I(R, g);
  for (int d = 0; d <= 5; ++d) {
    auto basis = oracle::monomials(4, d);
    std::vector<std::vector<oracle::u64>> rows;
    for (auto& f : g)
      if (f.degree() <= d)
        for (auto& m : oracle::monomials(4, d - f.degree())) rows.push_back(oracle::coeff_vector(f.mul_term(m, 1), basis));
    long long want = rows.empty() ? 0 : (long long)oracle::rank_mod(rows, 17);
    CHECK(I.graded_piece_dim(d) == want);
    CHECK((long long)I.basis_in_degree(d).size() == want);
    CHECK(I.hilbert().hilbert_function(d) == (long long)basis.size() - want);
  }
}

TEST_CASE("elimination recovers the twisted cubic from its parametrization") {
  K17 K;
  auto R = make_ring(K, {"s", "t", "x0", "x1", "x2", "x3"}, TermOrder::block(2));
  auto I = ideal(R, {"x0 - s^3", "x1 - s^2*t", "x2 - s*t^2", "x3 - t^3"});
  auto E = eliminate(I, 2);
  auto T = make_ring(K, {"x0", "x1", "x2", "x3"});
  auto TC = ideal(T, {"x0*x2 - x1^2", "x0*x3 - x1*x2", "x1*x3 - x2^2"});
  std::vector<P> moved;
  for (auto& g : E.gens()) moved.push_back(parse_poly(g.to_string(), T));
  CHECK(Ideal<K17>(T, moved).equals(TC));
  auto img = image_ideal_graded(std::vector<P>{parse_poly("s^3", R), parse_poly("s^2*t", R), parse_poly("s*t^2", R),
                                                parse_poly("t^3", R)},
                                T, 3);
  CHECK(img.ideal.equals(TC));
}

TEST_CASE("quotients, intersections and saturation") {
  K17 K;
  auto R = make_ring(K, {"x", "y", "z"});
  auto I = ideal(R, {"x*y", "x*z"});
  auto Jx = ideal(R, {"x"});
  CHECK(quotient(I, Jx).equals(ideal(R, {"y", "z"})));
  CHECK(intersect(ideal(R, {"x"}), ideal(R, {"y"})).equals(ideal(R, {"x*y"})));
  // Adding an embedded component at the irrelevant ideal and saturating it away.
  auto line = ideal(R, {"x"});
  auto m3 = ideal(R, {"x^3", "y^3", "z^3", "x*y*z"});
  auto mixed = intersect(line, m3);
  CHECK_FALSE(mixed.equals(line));
  SaturationInfo info;
  CHECK(saturate_irrelevant(mixed, 1, &info).equals(line));
  CHECK(info.certified);
  CHECK(saturate(mixed, irrelevant_ideal(R)).equals(line));
}

TEST_CASE("singular locus of a nodal cubic") {
  K17 K;
  auto R = make_ring(K, {"x", "y", "z"});
  auto C = ideal(R, {"y^2*z - x^3 - x^2*z"});
  auto S = singular_locus(C, 1);
  CHECK(S.dim_degree() == std::pair<int, long long>{0, 1});
  CHECK(S.equals(ideal(R, {"x", "y"})));
  auto smooth = ideal(R, {"x^3 + y^3 + z^3"});
  CHECK(singular_locus(smooth, 1).dim_degree().first == -1);
}

TEST_CASE("reducedness check separates reduced and fat points") {
  K17 K;
  auto R = make_ring(K, {"x", "y", "z"});
  auto three = ideal(R, {"x*y", "x*z", "y*z"});  // three coordinate points
  auto rc = zero_dim_reduced_check(three);
  CHECK(rc.reduced());
  CHECK(rc.degree == 3);
  auto fat = ideal(R, {"x^2", "y"});
  auto rf = zero_dim_reduced_check(fat);
  CHECK(rf.status == ReducedCheck::Status::not_reduced);
  CHECK(rf.degree == 2);
}

TEST_CASE("minors, jacobians and random elements") {
  K17 K;
  auto R = make_ring(K, indexed_names("x", 4));
  auto x = [&](int i) { return P::variable(R, i); };
  PolyGrid<K17> M = {{x(0), x(1), x(2)}, {x(1), x(2), x(3)}};
  auto I = minors_ideal(R, M, 2);
  CHECK(I.dim_degree() == std::pair<int, long long>{1, 3});
  auto J = jacobian(I.gens());
  CHECK(J.size() == I.gens().size());
  CHECK(J[0].size() == 4);
  Rng rng(1);
  for (int k = 0; k < 5; ++k) {
    auto f = random_element(I, 3, rng);
    CHECK(I.contains(f));
    CHECK(f.homogeneous_degree() == 3);
  }
}

TEST_CASE("evaluation matrix shape") {
  K17 K;
  auto S = make_ring(K, {"s", "t"});
  std::vector<P> forms = {parse_poly("s^2", S), parse_poly("s*t", S), parse_poly("t^2", S)};
  auto E = evaluation_matrix(forms, 2);
  // Rows: 6 quadrics in three target variables; columns: quartics in s, t.
  CHECK(E.rows() == 6);
  CHECK(E.cols() == 5);
  CHECK(rank(E) == 5);
}
