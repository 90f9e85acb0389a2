#include <catch_amalgamated.hpp>

#include <random>

#include "restopo/betti.hpp"
#include "restopo/homology.hpp"
#include "support/oracles.hpp"

using namespace restopo;

namespace {
GridGeometry unit_grid(int nx, int ny, int nz) {
  return GridGeometry(nx, ny, nz, 1.0, 1.0, 1.0);
}
}  // namespace

TEST_CASE("single cube boundary matrices have the textbook shapes") {
  CubicComplex cx(CellSet::full(unit_grid(1, 1, 1)));
  auto m = boundaries(cx);
  CHECK(m.d1.rows() == 12);
  CHECK(m.d1.cols() == 8);
  CHECK(m.d2.rows() == 6);
  CHECK(m.d2.cols() == 12);
  CHECK(m.d3.rows() == 1);
  CHECK(m.d3.cols() == 6);

  // every edge has 2 endpoints, every face 4 edges, the cube 6 faces
  for (int64_t r = 0; r < 12; ++r) {
    int ones = 0;
    for (int64_t c = 0; c < 8; ++c) ones += m.d1.get(r, c);
    CHECK(ones == 2);
  }
  for (int64_t r = 0; r < 6; ++r) {
    int ones = 0;
    for (int64_t c = 0; c < 12; ++c) ones += m.d2.get(r, c);
    CHECK(ones == 4);
  }
  int ones = 0;
  for (int64_t c = 0; c < 6; ++c) ones += m.d3.get(0, c);
  CHECK(ones == 6);

  auto h = homology_ranks(cx);
  CHECK((h == HomologyRanks{1, 0, 0}));
}

TEST_CASE("boundary of a boundary vanishes") {
  std::mt19937_64 eng(41);
  for (double p : {0.3, 0.5, 0.7}) {
    for (int rep = 0; rep < 40; ++rep) {
      auto set = oracles::random_set(unit_grid(5, 5, 5), p, eng);
      CubicComplex cx(set);
      auto m = boundaries(cx);
      CHECK(boundary_squares_to_zero(m.d2, m.d1));
      CHECK(boundary_squares_to_zero(m.d3, m.d2));
    }
  }
}

TEST_CASE("rank computation on known matrices") {
  Z2Matrix m(3, 3);
  m.set(0, 0);
  m.set(0, 1);
  m.set(1, 1);
  m.set(1, 2);
  m.set(2, 0);
  m.set(2, 2);  // row2 = row0 + row1 over Z2
  CHECK(m.rank() == 2);

  Z2Matrix id(4, 4);
  for (int i = 0; i < 4; ++i) id.set(i, i);
  CHECK(id.rank() == 4);

  Z2Matrix zero(5, 7);
  CHECK(zero.rank() == 0);
}

TEST_CASE("homology of hand-built shapes") {
  SECTION("solid box") {
    CubicComplex cx(CellSet::full(unit_grid(3, 2, 2)));
    CHECK((homology_ranks(cx) == HomologyRanks{1, 0, 0}));
  }
  SECTION("hollow shell") {
    auto g = unit_grid(3, 3, 3);
    std::vector<uint8_t> m(27, 1);
    m[size_t(g.linear(1, 1, 1))] = 0;
    CubicComplex cx(CellSet(g, std::move(m)));
    CHECK((homology_ranks(cx) == HomologyRanks{1, 0, 1}));
  }
  SECTION("square ring") {
    auto g = unit_grid(3, 3, 1);
    std::vector<uint8_t> m(9, 1);
    m[size_t(g.linear(1, 1, 0))] = 0;
    CubicComplex cx(CellSet(g, std::move(m)));
    CHECK((homology_ranks(cx) == HomologyRanks{1, 1, 0}));
  }
  SECTION("two bubbles joined at a lattice vertex") {
    auto g = unit_grid(4, 4, 4);
    std::vector<uint8_t> m(64, 1);
    m[size_t(g.linear(1, 1, 1))] = 0;
    m[size_t(g.linear(2, 2, 2))] = 0;
    CubicComplex cx(CellSet(g, std::move(m)));
    CHECK((homology_ranks(cx) == HomologyRanks{1, 0, 2}));
  }
  SECTION("two disjoint cubes") {
    auto g = unit_grid(3, 1, 1);
    auto set = oracles::make_set(g, {{0, 0, 0}, {2, 0, 0}});
    CubicComplex cx(set);
    CHECK((homology_ranks(cx) == HomologyRanks{2, 0, 0}));
  }
}

TEST_CASE("alternating rank sum reproduces the euler characteristic") {
  std::mt19937_64 eng(42);
  for (int rep = 0; rep < 30; ++rep) {
    auto set = oracles::random_set(unit_grid(5, 5, 5), 0.5, eng);
    CubicComplex cx(set);
    auto h = homology_ranks(cx);
    CHECK(h.b0 - h.b1 + h.b2 == cx.counts().euler());
  }
}

TEST_CASE("fast betti path matches the boundary-matrix ranks") {
  std::mt19937_64 eng(43);
  for (double p : {0.2, 0.4, 0.6, 0.8}) {
    for (int rep = 0; rep < 25; ++rep) {
      auto set = oracles::random_set(unit_grid(5, 5, 5), p, eng);
      auto fast = betti_numbers(set);
      auto slow = homology_ranks(CubicComplex(set));
      CHECK(fast.b0 == slow.b0);
      CHECK(fast.b1 == slow.b1);
      CHECK(fast.b2 == slow.b2);
    }
  }
}
