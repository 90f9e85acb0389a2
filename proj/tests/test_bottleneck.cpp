#include <catch_amalgamated.hpp>

#include <algorithm>
#include <fstream>
#include <random>

#include "restopo/bottleneck.hpp"
#include "restopo/diagram_io.hpp"
#include "support/oracles.hpp"
#include "support/tempdir.hpp"

using namespace restopo;

TEST_CASE("distance to itself is zero") {
  std::mt19937_64 eng(61);
  for (int rep = 0; rep < 10; ++rep) {
    auto d = oracles::random_diagram(1 + int(eng() % 8), int(eng() % 3), eng);
    CHECK(bottleneck_distance(d, d, PlaneNorm::L1) == 0.0);
    CHECK(bottleneck_distance(d, d, PlaneNorm::Linf) == 0.0);
  }
}

TEST_CASE("single point against the empty diagram") {
  PersistenceDiagram a, b;
  a.points.push_back({0.0, 1.0});
  CHECK(bottleneck_distance(a, b, PlaneNorm::L1) == Catch::Approx(1.0));
  CHECK(bottleneck_distance(a, b, PlaneNorm::Linf) == Catch::Approx(0.5));
  CHECK(bottleneck_distance(b, a, PlaneNorm::L1) == Catch::Approx(1.0));
}

TEST_CASE("close points match, far points go to the diagonal") {
  PersistenceDiagram a, b;
  a.points.push_back({0.1, 0.9});
  b.points.push_back({0.12, 0.88});
  // matching: |0.1-0.12| + |0.9-0.88| = 0.04; diagonal would cost 0.8
  CHECK(bottleneck_distance(a, b, PlaneNorm::L1) == Catch::Approx(0.04));
  CHECK(bottleneck_distance(a, b, PlaneNorm::Linf) == Catch::Approx(0.02));

  b.points.push_back({0.5, 0.52});  // near-diagonal noise, costs 0.02
  CHECK(bottleneck_distance(a, b, PlaneNorm::L1) == Catch::Approx(0.04));
}

TEST_CASE("essential births are matched in sorted order") {
  PersistenceDiagram a, b;
  a.essential = {0.1, 0.5};
  b.essential = {0.45, 0.2};
  // sorted pairing: |0.1-0.2| and |0.5-0.45| -> 0.1
  CHECK(bottleneck_distance(a, b, PlaneNorm::L1) == Catch::Approx(0.1));
  CHECK(bottleneck_distance(a, b, PlaneNorm::Linf) == Catch::Approx(0.1));
}

TEST_CASE("mismatched diagrams are not comparable") {
  PersistenceDiagram a, b;
  a.q = 1;
  b.q = 2;
  CHECK_THROWS_AS(bottleneck_distance(a, b), metric_error);
  b.q = 1;
  b.essential = {0.3};
  CHECK_THROWS_AS(bottleneck_distance(a, b), metric_error);
}

TEST_CASE("exhaustive matcher agrees on small diagrams") {
  std::mt19937_64 eng(62);
  for (int rep = 0; rep < 120; ++rep) {
    auto a = oracles::random_diagram(int(eng() % 5), int(eng() % 3), eng);
    auto b = oracles::random_diagram(int(eng() % 5), a.essential.size() ? int(a.essential.size()) : 0, eng);
    b.essential.resize(a.essential.size());
    for (auto& e : b.essential) e = double(eng() % 1000) / 1000.0;
    std::sort(b.essential.begin(), b.essential.end());
    for (auto norm : {PlaneNorm::L1, PlaneNorm::Linf}) {
      const double fast = bottleneck_distance(a, b, norm);
      const double slow = oracles::brute_bottleneck(a, b, norm);
      CHECK(fast == Catch::Approx(slow).margin(1e-12));
    }
  }
}

TEST_CASE("metric axioms on random diagrams") {
  std::mt19937_64 eng(63);
  std::vector<PersistenceDiagram> ds;
  for (int i = 0; i < 8; ++i)
    ds.push_back(oracles::random_diagram(3 + int(eng() % 6), 1, eng));
  for (auto norm : {PlaneNorm::L1, PlaneNorm::Linf}) {
    for (size_t i = 0; i < ds.size(); ++i)
      for (size_t j = 0; j < ds.size(); ++j) {
        const double dij = bottleneck_distance(ds[i], ds[j], norm);
        CHECK(dij >= 0.0);
        CHECK(dij == Catch::Approx(bottleneck_distance(ds[j], ds[i], norm))
                         .margin(1e-12));
        for (size_t k = 0; k < ds.size(); ++k) {
          const double dik = bottleneck_distance(ds[i], ds[k], norm);
          const double dkj = bottleneck_distance(ds[k], ds[j], norm);
          CHECK(dij <= dik + dkj + 1e-9);
        }
      }
  }
}

TEST_CASE("unit-interval diagrams are at most one apart") {
  std::mt19937_64 eng(64);
  for (int rep = 0; rep < 40; ++rep) {
    auto a = oracles::random_diagram(int(eng() % 10), 1, eng);
    auto b = oracles::random_diagram(int(eng() % 10), 1, eng);
    CHECK(bottleneck_distance(a, b, PlaneNorm::L1) <= 1.0 + 1e-12);
    CHECK(bottleneck_distance(a, b, PlaneNorm::Linf) <= 1.0 + 1e-12);
    // without essential classes the max norm is bounded by half the range
    a.essential.clear();
    b.essential.clear();
    CHECK(bottleneck_distance(a, b, PlaneNorm::Linf) <= 0.5 + 1e-12);
  }
}

TEST_CASE("the max norm never exceeds the taxicab norm") {
  std::mt19937_64 eng(65);
  for (int rep = 0; rep < 30; ++rep) {
    auto a = oracles::random_diagram(int(eng() % 6), 2, eng);
    auto b = oracles::random_diagram(int(eng() % 6), 2, eng);
    CHECK(bottleneck_distance(a, b, PlaneNorm::Linf) <=
          bottleneck_distance(a, b, PlaneNorm::L1) + 1e-12);
  }
}

TEST_CASE("norm names parse") {
  CHECK(plane_norm_from_string("l1") == PlaneNorm::L1);
  CHECK(plane_norm_from_string("L1") == PlaneNorm::L1);
  CHECK(plane_norm_from_string("linf") == PlaneNorm::Linf);
  CHECK_THROWS_AS(plane_norm_from_string("l2"), parse_error);
}

TEST_CASE("diagram files round trip") {
  oracles::TempDir dir;
  std::mt19937_64 eng(66);
  auto d = oracles::random_diagram(7, 2, eng);
  d.q = 1;
  const auto path = dir.file("d.json");
  write_diagram(path, d);
  auto back = read_diagram(path);
  CHECK(back == d);
}

TEST_CASE("malformed diagram files are rejected") {
  oracles::TempDir dir;
  const auto path = dir.file("bad.json");

  SECTION("not json") {
    std::ofstream(path) << "not json at all";
    CHECK_THROWS_AS(read_diagram(path), parse_error);
  }
  SECTION("death before birth") {
    std::ofstream(path)
        << R"({"q":0,"points":[[0.9,0.1]],"essential":[]})";
    CHECK_THROWS_AS(read_diagram(path), parse_error);
  }
  SECTION("non-finite value") {
    std::ofstream(path)
        << R"({"q":0,"points":[],"essential":[null]})";
    CHECK_THROWS_AS(read_diagram(path), parse_error);
  }
  SECTION("missing file") {
    CHECK_THROWS_AS(read_diagram(dir.file("nope.json")), io_error);
  }
}
