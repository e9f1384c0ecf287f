#include "support.hpp"

#include "eqdr/errors.hpp"

#include <doctest.h>

using namespace eqdr;
using namespace eqdr::testing;

TEST_CASE("point with u(1): H_S is a polynomial ring on one degree-2 class") {
  const SDgaModel point = builtin_sdga("point").with_acting_algebra(LieAlgebraData::u1());
  CHECK(cartan_dims(point, 8) == std::vector<std::size_t>{1, 0, 1, 0, 1, 0, 1, 0, 1});
  CHECK(weil_dims(point, 8) == std::vector<std::size_t>{1, 0, 1, 0, 1, 0, 1, 0, 1});
}

TEST_CASE("point with su(2): invariants of S(su2*) in degrees 0, 4, 8") {
  const SDgaModel point = builtin_sdga("point").with_acting_algebra(LieAlgebraData::su2());
  CHECK(cartan_dims(point, 8) == std::vector<std::size_t>{1, 0, 0, 0, 1, 0, 0, 0, 1});
  CHECK(weil_dims(point, 8) == std::vector<std::size_t>{1, 0, 0, 0, 1, 0, 0, 0, 1});
}

TEST_CASE("free circle rotation: equivariant cohomology is that of the quotient point") {
  const SDgaModel circle = builtin_sdga("circle_rotation");
  CHECK(cartan_dims(circle, 6) == std::vector<std::size_t>{1, 0, 0, 0, 0, 0, 0});
  CHECK(weil_dims(circle, 6) == std::vector<std::size_t>{1, 0, 0, 0, 0, 0, 0});
}

TEST_CASE("Cartan differential on the circle: d_C alpha = -u") {
  auto space = weil_model(builtin_sdga("circle_rotation"));
  const auto alpha = *space->model().find("alpha");
  const CartanElement a(space->basis(alpha));
  const CartanElement expected(-space->u(0));
  CHECK(space->cartan_d(a) == expected);
  CHECK(space->format(space->cartan_d(a)) == "-u1");
}

TEST_CASE("Weil differential and contraction on generators of W(u1)") {
  auto space = weil_model(builtin_sdga("point").with_acting_algebra(LieAlgebraData::u1()));
  CHECK(space->d(space->theta(0)) == space->u(0));
  CHECK(space->iota(0, space->theta(0)) == space->one());
  CHECK(space->iota(0, space->u(0)).is_zero());
}

TEST_CASE("Mathai-Quillen round trip on the circle") {
  auto space = weil_model(builtin_sdga("circle_rotation"));
  const auto alpha = *space->model().find("alpha");
  const CartanElement a(space->basis(alpha));
  const WeilModelElement w = space->mq_to_weil(a);
  // alpha - theta1 (iota alpha = 1).
  CHECK(w == space->basis(alpha) - space->theta(0));
  CHECK(space->is_basic(w).basic);
  CHECK(space->mq_to_cartan(w) == a);
  CHECK(space->mq_to_weil(space->cartan_d(a)) == space->d(w));
}

TEST_CASE("cutoff is enforced") {
  EquivariantComplex c(weil_model(builtin_sdga("circle_rotation")), 3);
  CHECK_NOTHROW(equivariant_cohomology(c, 2));
  CHECK_THROWS_AS(equivariant_cohomology(c, 3), std::out_of_range);
}

TEST_CASE("cartan_primitive and class coordinates") {
  auto space = weil_model(builtin_sdga("circle_rotation"));
  EquivariantComplex c(space, 4);
  const CartanElement u(space->u(0));
  const auto b = cartan_primitive(c, u);
  REQUIRE(b);
  CHECK(space->cartan_d(*b) == u);
  const auto group = equivariant_cohomology(c, 2);
  const auto coords = class_coordinates(c, group, u);
  REQUIRE(coords);
  CHECK(coords->empty());

  auto point_space = weil_model(builtin_sdga("point").with_acting_algebra(LieAlgebraData::u1()));
  EquivariantComplex pc(point_space, 4);
  const CartanElement pu(point_space->u(0));
  CHECK_FALSE(cartan_primitive(pc, pu));
  const auto pgroup = equivariant_cohomology(pc, 2);
  const auto pcoords = class_coordinates(pc, pgroup, pu);
  REQUIRE(pcoords);
  REQUIRE(pcoords->size() == 1);
  CHECK((*pcoords)[0] != 0);
}
