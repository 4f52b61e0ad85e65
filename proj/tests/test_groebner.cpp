#include <doctest.h>

#include <cstdlib>
#include <filesystem>

#include "lforge/groebner.hpp"
#include "lforge/hilbert.hpp"
#include "lforge/ideal.hpp"
#include "lforge/parse.hpp"
#include "properties.hpp"

using namespace lforge;
using K17 = PrimeField;
using P = MPoly<K17>;

namespace {

std::vector<P> twisted_cubic(const RingPtr<K17>& R) {
  auto x = [&](int i) { return P::variable(R, i); };
  return {x(0) * x(2) - x(1) * x(1), x(0) * x(3) - x(1) * x(2), x(1) * x(3) - x(2) * x(2)};
}

}  // namespace

TEST_CASE("reduced basis of the twisted cubic") {
  K17 K;
  auto R = make_ring(K, indexed_names("x", 4));
  auto G = buchberger(twisted_cubic(R));
  CHECK(G.basis.size() == 3);
  CHECK(spair_audit(G));
  for (auto& g : G.basis) CHECK(g.lc() == 1);
  for (auto& g : twisted_cubic(R)) CHECK(normal_form(g, G.basis).is_zero());
  Ideal<K17> I(R, twisted_cubic(R));
  CHECK(I.dim_degree() == std::pair<int, long long>{1, 3});
  CHECK(I.hilbert().hilbert_polynomial(10) == 31);
}

TEST_CASE("bases agree across generator orders and scalings") {
  K17 K;
  auto R = make_ring(K, indexed_names("x", 3));
  Rng rng(2);
  for (int t = 0; t < 20; ++t) {
    std::vector<P> g = {random_form(R, 2, rng), random_form(R, 2, rng), random_form(R, 3, rng)};
    std::vector<P> h = {g[2].scaled(3), g[0] + g[1], g[1].scaled(5)};
    Ideal<K17> I(R, g), J(R, h);
    CHECK(I.equals(J));
    CHECK(spair_audit(I.gb()));
  }
}

TEST_CASE("rational coefficients") {
  RationalField Q;
  auto R = make_ring(Q, {"x", "y", "z"});
  auto f = parse_poly("x^2 - 1/3*y*z", R), g = parse_poly("x*y - 2*z^2", R);
  auto G = buchberger(std::vector<MPoly<RationalField>>{f, g});
  CHECK(spair_audit(G));
  Ideal<RationalField> I(R, {f, g});
  CHECK(I.contains(f * g + g.scaled(Q.from_fraction(7, 5))));
  CHECK_FALSE(I.contains(parse_poly("x", R)));
}

TEST_CASE("budget limits raise BudgetExceeded") {
  K17 K;
  auto R = make_ring(K, indexed_names("x", 5));
  Rng rng(8);
  std::vector<P> g;
  for (int i = 0; i < 4; ++i) g.push_back(random_form(R, 3, rng));
  GBOptions opt;
  opt.max_pairs = 2;
  CHECK_THROWS_AS(buchberger(g, opt), BudgetExceeded);
}

TEST_CASE("disk cache stores and reloads bases") {
  namespace fs = std::filesystem;
  auto dir = fs::temp_directory_path() / "lforge-gb-cache-test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  GBCache cache(dir.string());
  K17 K;
  auto R = make_ring(K, indexed_names("x", 4));
  auto G = buchberger(twisted_cubic(R));
  cache.store(G);
  auto back = cache.load(R, G.source_hash);
  REQUIRE(back.has_value());
  CHECK(back->basis == G.basis);
  CHECK(std::distance(fs::directory_iterator(dir), fs::directory_iterator()) == 1);
  setenv("LFORGE_CACHE", dir.string().c_str(), 1);
  CHECK(GBCache::from_env().dir() == dir.string());
  auto again = cached_groebner(twisted_cubic(R));
  CHECK(again.basis == G.basis);
  unsetenv("LFORGE_CACHE");
  fs::remove_all(dir);
}

TEST_CASE("Hilbert series of monomial ideals") {
  // (x, y) in three variables: a point.
  auto h = hilbert_from_monomials({Monomial({1, 0, 0}), Monomial({0, 1, 0})}, 3);
  CHECK(h.dim() == 0);
  CHECK(h.degree == 1);
  // (x^2) in three variables: a double line, H(d) = 2d + 1.
  auto h2 = hilbert_from_monomials({Monomial({2, 0, 0})}, 3);
  for (int d = 1; d < 8; ++d) CHECK(h2.hilbert_function(d) == 2 * d + 1);
  CHECK(minimalize_monomials({Monomial({2, 0}), Monomial({3, 1}), Monomial({0, 1})}).size() == 2);
}

TEST_CASE("membership agrees with linear algebra") {
  auto r = props::gb_membership(15, 77);
  CHECK_MESSAGE(r.ok(), r.first_failure);
}
