#include <catch_amalgamated.hpp>

#include <random>

#include "restopo/grid.hpp"
#include "support/oracles.hpp"

using namespace restopo;

TEST_CASE("geometry validates its inputs") {
  CHECK_THROWS_AS(GridGeometry(0, 1, 1, 1, 1, 1), config_error);
  CHECK_THROWS_AS(GridGeometry(1, -2, 1, 1, 1, 1), config_error);
  CHECK_THROWS_AS(GridGeometry(1, 1, 1, 0.0, 1, 1), config_error);
  CHECK_THROWS_AS(GridGeometry(1, 1, 1, 1, -0.5, 1), config_error);
  CHECK_NOTHROW(GridGeometry(1, 1, 1, 1, 1, 1));
}

TEST_CASE("linear index is x-fastest") {
  GridGeometry g(4, 3, 2, 1, 1, 1);
  CHECK(g.linear(0, 0, 0) == 0);
  CHECK(g.linear(1, 0, 0) == 1);
  CHECK(g.linear(0, 1, 0) == 4);
  CHECK(g.linear(0, 0, 1) == 12);
  CHECK(g.linear(3, 2, 1) == g.cell_count() - 1);

  for (int64_t i = 0; i < g.cell_count(); ++i) {
    const auto [ix, iy, iz] = g.unlinear(i);
    CHECK(g.linear(ix, iy, iz) == i);
  }
}

TEST_CASE("cell centers sit half a spacing inside the origin corner") {
  GridGeometry g(3, 3, 3, 100.0, 100.0, 1.0, 10.0, 20.0, 30.0);
  const Vec3 c = g.center(0, 0, 0);
  CHECK(c.x == Catch::Approx(60.0));
  CHECK(c.y == Catch::Approx(70.0));
  CHECK(c.z == Catch::Approx(30.5));
  const Vec3 c2 = g.center(2, 0, 1);
  CHECK(c2.x == Catch::Approx(260.0));
  CHECK(c2.z == Catch::Approx(31.5));
}

TEST_CASE("grey-level normalization maps the range onto [0,1]") {
  GridGeometry g(4, 1, 1, 1, 1, 1);
  ScalarField f(g, {10.0, 30.0, 50.0, 9.0}, ValueKind::raw_gl);

  SECTION("affine map with clamping") {
    auto r = normalize_gl(f, 10.0, 50.0);
    CHECK(r.field.kind() == ValueKind::alpha);
    CHECK(r.field[0] == Catch::Approx(0.0));
    CHECK(r.field[1] == Catch::Approx(0.5));
    CHECK(r.field[2] == Catch::Approx(1.0));
    CHECK(r.field[3] == Catch::Approx(0.0));  // clamped from below
    CHECK(r.stats.below_zero == 1);
    CHECK(r.stats.at_or_above_one == 1);
  }

  SECTION("keep policy leaves values outside the unit interval") {
    auto r = normalize_gl(f, 10.0, 50.0, ClampPolicy::keep);
    CHECK(r.field[3] == Catch::Approx(-0.025));
    CHECK(r.stats.below_zero == 1);
  }

  SECTION("degenerate range is rejected") {
    CHECK_THROWS_AS(normalize_gl(f, 50.0, 50.0), config_error);
    CHECK_THROWS_AS(normalize_gl(f, 50.0, 10.0), config_error);
  }
}

TEST_CASE("normalization preserves value order") {
  GridGeometry g(64, 1, 1, 1, 1, 1);
  std::mt19937_64 eng(11);
  std::uniform_real_distribution<double> u(-5.0, 40.0);
  std::vector<double> raw(64);
  for (auto& v : raw) v = u(eng);
  ScalarField f(g, raw, ValueKind::raw_gl);
  auto r = normalize_gl(f, 0.0, 35.0, ClampPolicy::keep);
  for (int i = 0; i < 64; ++i)
    for (int j = 0; j < 64; ++j)
      if (raw[size_t(i)] < raw[size_t(j)])
        CHECK(r.field[i] < r.field[j]);
}

TEST_CASE("excursion set keeps cells with value at most the threshold") {
  GridGeometry g(2, 1, 1, 1, 1, 1);
  ScalarField f(g, {0.3, 0.7}, ValueKind::alpha);
  auto s = excursion_set(f, 0.5);
  CHECK(s.contains(0));
  CHECK(!s.contains(1));
  CHECK(s.size() == 1);

  CHECK(excursion_set(f, 1.0).size() == 2);
  CHECK(excursion_set(f, 0.1).size() == 0);
  CHECK(excursion_set(f, 0.3).contains(0));  // boundary value is included
}

TEST_CASE("excursion sets are nested as the threshold grows") {
  GridGeometry g(5, 5, 5, 1, 1, 1);
  std::mt19937_64 eng(12);
  auto f = oracles::random_alpha_field(g, eng);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int rep = 0; rep < 20; ++rep) {
    double a = u(eng), b = u(eng);
    if (a > b) std::swap(a, b);
    auto lo = excursion_set(f, a);
    auto hi = excursion_set(f, b);
    for (int64_t i = 0; i < g.cell_count(); ++i)
      if (lo.contains(i)) CHECK(hi.contains(i));
  }
}

TEST_CASE("field and set constructors reject size mismatches") {
  GridGeometry g(2, 2, 2, 1, 1, 1);
  CHECK_THROWS_AS(ScalarField(g, {1.0, 2.0}, ValueKind::alpha), config_error);
  CHECK_THROWS_AS(CellSet(g, std::vector<uint8_t>{1, 0}), config_error);
}

TEST_CASE("excursion requires normalized values") {
  GridGeometry g(1, 1, 1, 1, 1, 1);
  ScalarField f(g, {42.0}, ValueKind::raw_gl);
  CHECK_THROWS_AS(excursion_set(f, 0.5), config_error);
}
