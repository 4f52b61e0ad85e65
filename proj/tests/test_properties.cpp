#include <doctest.h>

#include "properties.hpp"

// Full-size runs of the randomized suites.

TEST_CASE("Pf^2 = det, 1000 cases") {
  auto r = props::pfaffian_squared_is_det(1000, 1);
  CHECK(r.cases == 1000);
  CHECK_MESSAGE(r.ok(), r.first_failure);
}

TEST_CASE("GB membership, 50 ideals") {
  auto r = props::gb_membership(50, 1);
  CHECK(r.cases == 50);
  CHECK_MESSAGE(r.ok(), r.first_failure);
}

TEST_CASE("liaison additivity, (2,2) and (2,3)") {
  auto r = props::liaison_additivity(10, 1);
  CHECK_MESSAGE(r.ok(), r.first_failure);
}

TEST_CASE("SNF, 100 random matrices") {
  auto r = props::snf_random(100, 1);
  CHECK(r.cases == 100);
  CHECK_MESSAGE(r.ok(), r.first_failure);
}

TEST_CASE("Cantor-Zassenhaus, 1000 polynomials") {
  auto r = props::cz_roundtrip(1000, 1);
  CHECK(r.cases == 1000);
  CHECK_MESSAGE(r.ok(), r.first_failure);
}

TEST_CASE("Rao action commutativity") {
  auto r = props::rao_commutativity(8, 100);
  CHECK_MESSAGE(r.ok(), r.first_failure);
}
