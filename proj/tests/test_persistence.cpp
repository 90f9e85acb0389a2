#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "restopo/components.hpp"
#include "restopo/filtration.hpp"
#include "restopo/persistence.hpp"
#include "support/oracles.hpp"

using namespace restopo;

namespace {
ScalarField alpha_field(const GridGeometry& g, std::vector<double> v) {
  return ScalarField(g, std::move(v), ValueKind::alpha);
}
}  // namespace

TEST_CASE("filtration thresholds must be sane") {
  GridGeometry g(2, 1, 1, 1, 1, 1);
  auto f = alpha_field(g, {0.1, 0.2});
  CHECK_THROWS_AS(Filtration(f, {}), config_error);
  CHECK_THROWS_AS(Filtration(f, {0.5, 0.5}), config_error);
  CHECK_THROWS_AS(Filtration(f, {0.5, 0.4}), config_error);
  CHECK_NOTHROW(Filtration(f, {0.5, 0.6}));

  auto fs = Filtration::fixed_step(f, 0.01);
  CHECK(fs.steps() == 101);
  CHECK(fs.thresholds().front() == Catch::Approx(0.0).margin(0.0));
  CHECK(fs.thresholds().back() == Catch::Approx(1.0).margin(0.0));
  CHECK_THROWS_AS(Filtration::fixed_step(f, 0.0), config_error);
}

TEST_CASE("admission step is the first threshold at or above the value") {
  GridGeometry g(3, 1, 1, 1, 1, 1);
  auto f = alpha_field(g, {0.1, 0.9, 0.2});
  Filtration filt(f, {0.15, 0.5, 0.95});
  CHECK(filt.admission_step(0.1) == 0);
  CHECK(filt.admission_step(0.15) == 0);
  CHECK(filt.admission_step(0.2) == 1);
  CHECK(filt.admission_step(0.9) == 2);
  CHECK(filt.admission_step(0.96) == 3);  // never admitted
}

TEST_CASE("three-cell line with a late middle cell") {
  // the two flank cells appear first as separate components; the middle cell
  // joins them at 0.2, killing the younger one; when everything is present
  // the merged component lives on at 0.9
  GridGeometry g(3, 1, 1, 1, 1, 1);
  auto f = alpha_field(g, {0.1, 0.9, 0.2});
  auto filt = Filtration::distinct_values(f);
  auto d = persistence_q0(filt);
  REQUIRE(d.points.size() == 1);
  CHECK(d.points[0][0] == Catch::Approx(0.2).margin(0.0));
  CHECK(d.points[0][1] == Catch::Approx(0.9).margin(0.0));
  REQUIRE(d.essential.size() == 1);
  CHECK(d.essential[0] == Catch::Approx(0.1).margin(0.0));

  auto dm = persistence_matrix(filt, 0);
  CHECK(dm == d);
}

TEST_CASE("a ramp has one essential class and no finite points") {
  GridGeometry g(5, 1, 1, 1, 1, 1);
  auto f = alpha_field(g, {0.1, 0.2, 0.3, 0.4, 0.5});
  auto filt = Filtration::distinct_values(f);
  auto d = persistence_q0(filt);
  CHECK(d.points.empty());
  REQUIRE(d.essential.size() == 1);
  CHECK(d.essential[0] == Catch::Approx(0.1).margin(0.0));
}

TEST_CASE("constant field above every threshold gives an empty diagram") {
  GridGeometry g(2, 2, 1, 1, 1, 1);
  auto f = alpha_field(g, {0.9, 0.9, 0.9, 0.9});
  Filtration filt(f, {0.1, 0.2});
  for (int q = 0; q < 3; ++q) {
    auto d = persistence_matrix(filt, q);
    CHECK(d.points.empty());
    CHECK(d.essential.empty());
  }
  auto d0 = persistence_q0(filt);
  CHECK(d0.points.empty());
  CHECK(d0.essential.empty());
}

TEST_CASE("ring that fills in: one loop with a finite lifetime") {
  GridGeometry g(3, 3, 1, 1, 1, 1);
  std::vector<double> v(9, 0.2);
  v[size_t(g.linear(1, 1, 0))] = 0.7;
  auto filt = Filtration::fixed_step(alpha_field(g, std::move(v)), 0.01);

  auto d1 = persistence_matrix(filt, 1);
  REQUIRE(d1.points.size() == 1);
  CHECK(d1.points[0][0] == Catch::Approx(0.2).margin(1e-12));
  CHECK(d1.points[0][1] == Catch::Approx(0.7).margin(1e-12));
  CHECK(d1.essential.empty());

  auto d0 = persistence_matrix(filt, 0);
  CHECK(d0.points.empty());
  REQUIRE(d0.essential.size() == 1);
  CHECK(d0.essential[0] == Catch::Approx(0.2).margin(1e-12));

  auto d2 = persistence_matrix(filt, 2);
  CHECK(d2.points.empty());
  CHECK(d2.essential.empty());
}

TEST_CASE("shell that closes around a late cavity") {
  GridGeometry g(3, 3, 3, 1, 1, 1);
  std::vector<double> v(27, 0.3);
  v[size_t(g.linear(1, 1, 1))] = 0.8;
  auto filt = Filtration::fixed_step(alpha_field(g, std::move(v)), 0.01);

  auto d2 = persistence_matrix(filt, 2);
  REQUIRE(d2.points.size() == 1);
  CHECK(d2.points[0][0] == Catch::Approx(0.3).margin(1e-12));
  CHECK(d2.points[0][1] == Catch::Approx(0.8).margin(1e-12));
  CHECK(d2.essential.empty());

  auto d1 = persistence_matrix(filt, 1);
  CHECK(d1.points.empty());
  CHECK(d1.essential.empty());
}

TEST_CASE("bridge cube merges two earlier components") {
  // diagonal pair admitted first, the bridging cube glues them into one
  // component one step later
  GridGeometry g(2, 2, 1, 1, 1, 1);
  std::vector<double> v(4, 0.9);
  v[size_t(g.linear(0, 0, 0))] = 0.1;
  v[size_t(g.linear(1, 1, 0))] = 0.1;
  v[size_t(g.linear(1, 0, 0))] = 0.2;
  auto f = alpha_field(g, std::move(v));
  Filtration filt(f, {0.1, 0.2, 0.9});

  auto d0 = persistence_q0(filt);
  REQUIRE(d0.points.size() == 1);
  CHECK(d0.points[0][0] == Catch::Approx(0.1).margin(0.0));
  CHECK(d0.points[0][1] == Catch::Approx(0.2).margin(0.0));
  REQUIRE(d0.essential.size() == 1);

  auto dm = persistence_matrix(filt, 0);
  CHECK(dm == d0);
}

TEST_CASE("alive count at each threshold equals the component count") {
  std::mt19937_64 eng(51);
  GridGeometry g(6, 6, 6, 1, 1, 1);
  for (int rep = 0; rep < 5; ++rep) {
    auto f = oracles::random_alpha_field(g, eng);
    auto filt = Filtration::fixed_step(f, 0.01);
    auto d = persistence_q0(filt);
    for (size_t s = 0; s < filt.steps(); ++s) {
      const double a = filt.thresholds()[s];
      int64_t alive = 0;
      for (const auto& p : d.points) alive += p[0] <= a && a < p[1];
      for (double b : d.essential) alive += b <= a;
      CHECK(alive == foreground_components(filt.excursion(s)));
    }
  }
}

TEST_CASE("matrix reduction agrees with union-find in dimension zero") {
  std::mt19937_64 eng(52);
  GridGeometry g(6, 6, 6, 1, 1, 1);
  for (int rep = 0; rep < 4; ++rep) {
    auto f = oracles::random_alpha_field(g, eng);
    auto filt = Filtration::fixed_step(f, 0.05);
    auto fast = persistence_q0(filt);
    auto slow = persistence_matrix(filt, 0);
    CHECK(fast == slow);
  }
}

TEST_CASE("diagram points are strictly ordered pairs") {
  std::mt19937_64 eng(53);
  GridGeometry g(5, 5, 5, 1, 1, 1);
  auto f = oracles::random_alpha_field(g, eng);
  auto filt = Filtration::fixed_step(f, 0.02);
  for (int q = 0; q < 3; ++q) {
    auto d = persistence_matrix(filt, q);
    CHECK(d.q == q);
    for (const auto& p : d.points) CHECK(p[0] < p[1]);
    CHECK(std::is_sorted(d.points.begin(), d.points.end()));
    CHECK(std::is_sorted(d.essential.begin(), d.essential.end()));
  }
}

TEST_CASE("persistence is deterministic") {
  std::mt19937_64 eng(54);
  GridGeometry g(5, 5, 5, 1, 1, 1);
  auto f = oracles::random_alpha_field(g, eng);
  auto filt = Filtration::fixed_step(f, 0.02);
  for (int q = 0; q < 3; ++q)
    CHECK(persistence_matrix(filt, q) == persistence_matrix(filt, q));
  CHECK(persistence_q0(filt) == persistence_q0(filt));
}

TEST_CASE("dimension and budget guards") {
  GridGeometry g(2, 2, 2, 1, 1, 1);
  auto f = alpha_field(g, std::vector<double>(8, 0.5));
  auto filt = Filtration::fixed_step(f, 0.5);
  CHECK_THROWS_AS(persistence_matrix(filt, 3), config_error);
  CHECK_THROWS_AS(persistence_matrix(filt, -1), config_error);
  CHECK_THROWS_AS(persistence_matrix(filt, 0, 10), size_error);
}
