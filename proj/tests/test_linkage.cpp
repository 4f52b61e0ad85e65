#include <doctest.h>

#include "lforge/link.hpp"
#include "lforge/parse.hpp"
#include "lforge/rao.hpp"
#include "properties.hpp"

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

TEST_CASE("a line links to a twisted cubic in two quadrics") {
  K17 K;
  auto R = make_ring(K, {"x", "y", "z", "w"});
  auto L = ideal(R, {"x", "y"});
  auto CI = ideal(R, {"x*z - y*w", "x*w - y*z + x*x"});
  auto step = link(L, CI);
  CHECK(step.deg_in == 1);
  CHECK(step.deg_ci == 4);
  CHECK(step.deg_out == 3);
  CHECK(step.dim_out == 1);
  CHECK(step.ci_degrees == std::vector<int>{2, 2});
  CHECK(liaison_invariants(step).ok());
  CHECK(ci_degree_product(CI) == 4);
  // Linking back returns the line.
  CHECK(link(step.residual, CI).residual.equals(L));
}

TEST_CASE("link rejects bad input") {
  K17 K;
  auto R = make_ring(K, {"x", "y", "z", "w"});
  auto L = ideal(R, {"x", "y"});
  // Not contained in the line.
  CHECK_THROWS_AS(link(L, ideal(R, {"x*z", "z*w + y*y + w*w"})), LinkError);
  // Contained but not a complete intersection of codimension 2.
  CHECK_THROWS_AS(link(L, ideal(R, {"x*z", "x*w"})), LinkError);
}

TEST_CASE("liaison additivity on random links") {
  auto r = props::liaison_additivity(4, 21);
  CHECK_MESSAGE(r.ok(), r.first_failure);
}

TEST_CASE("linked Hilbert prediction on a double link of a line") {
  // line -> twisted cubic in (2,2) -> residual in (2,3) of degree 3 with the same Hilbert prediction.
  K17 K;
  auto R = make_ring(K, {"x", "y", "z", "w"});
  auto L = ideal(R, {"x", "y"});
  auto V1 = ideal(R, {"x*z - y*w", "x*w - y*z + x*x"});
  auto T = link(L, V1).residual;
  Rng rng(3);
  auto q = V1.gens()[0];
  auto c = random_element(T, 3, rng);
  auto V2 = Ideal<K17>(R, {q, c});
  auto S = link(T, V2).residual;
  auto rep = linked_hilbert_check(S, L, V1, V2, 8);
  CHECK(rep.matches);
  // The line itself does not have the predicted Hilbert function.
  auto bad = linked_hilbert_check(L, L, V1, V2, 8);
  CHECK_FALSE(bad.matches);
}
