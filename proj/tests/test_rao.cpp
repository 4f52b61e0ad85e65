#include <doctest.h>

#include "lforge/rao.hpp"
#include "lforge/workbench.hpp"
#include "properties.hpp"

using namespace lforge;
using K17 = PrimeField;

namespace {

long long binom(long long n, long long k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

Matrix<K17> random_N(std::uint64_t seed) {
  K17 K;
  Rng rng(seed);
  Matrix<K17> N(K, 10, 6);
  for (std::size_t i = 0; i < 10; ++i)
    for (std::size_t j = 0; j < 6; ++j) N(i, j) = rng.element(K);
  return N;
}

}  // namespace

TEST_CASE("the residue field has the Koszul complex as resolution") {
  K17 K;
  for (std::size_t n : {2, 3, 4}) {
    auto M = make_rao_module(K, n, 0, {1}, {});
    auto B = graded_betti(M, ResolutionOptions{.max_hom = (int)n + 1});
    CHECK(B.complete);
    for (int i = 0; i <= (int)n; ++i) {
      CHECK(B.at(i, i) == binom(n, i));
      CHECK(B.rank(i) == binom(n, i));
    }
    CHECK(B.rank(n + 1) == 0);
    CHECK(compare_betti(B, koszul_betti(M), n).matches());
    auto pres = rao_presentation(M);
    CHECK(pres.generators == std::map<int, long long>{{0, 1}});
    CHECK(pres.relations == std::map<int, long long>{{1, (long long)n}});
  }
}

TEST_CASE("cokernel module of a random projection") {
  auto spec = make_projection(CatalecticantKind::p2cubics, random_N(1));
  auto M = rao_module_from_forms(spec.composed(), 5);
  auto h = rao_hilbert(M);
  REQUIRE(h.values.size() >= 4);
  CHECK(std::vector<long long>(h.values.begin(), h.values.begin() + 4) == std::vector<long long>{0, 4, 7, 0});
  CHECK(h.finite_length);
  CHECK(h.audit.at(1).find("10 - 6 = 4") != std::string::npos);
  CHECK(h.audit.at(2).find("28 - 21 = 7") != std::string::npos);
  CHECK(action_commutator_failures(M) == 0);
  auto pres = rao_presentation(M);
  CHECK(pres.generators == std::map<int, long long>{{1, 4}});
  auto B = graded_betti(M);
  auto KB = koszul_betti(M);
  CHECK(B.complete);
  CHECK(compare_betti(B, KB, 6).matches());
  CHECK(B.alternating_rank_sum() == 0);
  for (int k = 0; k <= 5; ++k) CHECK(betti_hilbert(B, 6, k) == M.dim(k));
  Fixtures fx(LFORGE_TEST_FIXTURES);
  auto displayed = BettiTable::parse_text(fx.read("betti_displayed.txt"), -2);
  CHECK(compare_betti(B, displayed, 6).matches());
}

TEST_CASE("Betti table formats") {
  BettiTable B;
  B.beta = {{{0, 1}, 4}, {{1, 2}, 17}, {{2, 3}, 18}, {{2, 4}, 29}};
  B.max_hom = 2;
  B.complete = true;
  auto fm = B.to_free_modules(-2);
  CHECK(fm.find("4R(1)") != std::string::npos);
  auto back = BettiTable::parse_free_modules(fm, -2);
  CHECK(compare_betti(back, B, 2).matches());
  auto t = BettiTable::parse_text(B.to_text(-2), -2);
  CHECK(compare_betti(t, B, 2).matches());
  CHECK(B.rank(2) == 47);
  auto j = nlohmann::json::parse(B.to_json(-2));
  CHECK(j.is_object());
  BettiTable C = B;
  C.beta[{2, 4}] = 28;
  auto cmp = compare_betti(C, B, 2);
  REQUIRE(cmp.mismatches.size() == 1);
  CHECK(cmp.mismatches[0].computed == 28);
  CHECK(cmp.mismatches[0].expected == 29);
}

TEST_CASE("action commutativity") {
  auto r = props::rao_commutativity(4, 1);
  CHECK_MESSAGE(r.ok(), r.first_failure);
}

TEST_CASE("the module constructor requires an empty secant certificate") {
  auto spec = make_projection(CatalecticantKind::p2cubics, random_N(1));
  SecantCertificate bad;
  bad.empty = false;
  CHECK_THROWS_AS(rao_module(spec, bad, 4), ConstructionError);
}

TEST_CASE("a resolution with a too-small bound is refused") {
  auto spec = make_projection(CatalecticantKind::p2cubics, random_N(1));
  auto M = rao_module_from_forms(spec.composed(), 2);
  CHECK_THROWS(graded_betti(M));
}
