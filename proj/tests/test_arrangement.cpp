// Copyright 2026 The ectkit Authors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <random>

#include "doctest.h"
#include "ectkit/arrangement.hpp"
#include "oracles.hpp"

using namespace ect;

namespace {
constexpr double kPi = 3.14159265358979323846;

double total_area(const Arrangement& a) {
  double s = 0;
  for (const auto& c : a.cells) s += polygon_area(c);
  return s;
}
}  // namespace

TEST_CASE("zero circles yield the full-sphere sentinel") {
  Arrangement a = build_arrangement({});
  CHECK(a.full_sphere);
  CHECK(a.cells.empty());
}

TEST_CASE("one circle yields two hemispheres") {
  Arrangement a = build_arrangement({make_circle({0, 0, 1})});
  REQUIRE(a.cells.size() == 2);
  CHECK(polygon_area(a.cells[0]) == doctest::Approx(2 * kPi).epsilon(1e-12));
  CHECK(polygon_area(a.cells[1]) == doctest::Approx(2 * kPi).epsilon(1e-12));
  CHECK(a.adjacency[0] == std::vector<int>{1});
  CHECK(a.adjacency[1] == std::vector<int>{0});
}

TEST_CASE("near-duplicate circles are merged") {
  Arrangement a = build_arrangement(
      {make_circle({0, 0, 1}), make_circle({0, 0, -1.0 + 1e-13})});
  CHECK(a.circles.size() == 1);
  CHECK(a.cells.size() == 2);
}

TEST_CASE("two orthogonal circles make four lunes") {
  Arrangement a =
      build_arrangement({make_circle({0, 0, 1}), make_circle({1, 0, 0})});
  REQUIRE(a.cells.size() == 4);
  for (const auto& c : a.cells)
    CHECK(polygon_area(c) == doctest::Approx(kPi).epsilon(1e-10));
  CHECK(total_area(a) == doctest::Approx(4 * kPi).epsilon(1e-10));
}

TEST_CASE("coordinate circles cut eight octants") {
  Arrangement a =
      build_arrangement({make_circle({1, 0, 0}), make_circle({0, 1, 0}),
                         make_circle({0, 0, 1})});
  REQUIRE(a.cells.size() == 8);
  for (const auto& c : a.cells)
    CHECK(polygon_area(c) == doctest::Approx(kPi / 2).epsilon(1e-10));
  for (size_t i = 0; i < a.cells.size(); ++i)
    CHECK(a.adjacency[i].size() == 3);
}

TEST_CASE("random arrangements tile the sphere") {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> nc(2, 6);
  for (int rep = 0; rep < 15; ++rep) {
    std::vector<GreatCircle> circles;
    for (int i = nc(rng); i > 0; --i)
      circles.push_back(make_circle(oracle::random_direction(rng)));
    Arrangement a = build_arrangement(circles);
    CHECK(total_area(a) == doctest::Approx(4 * kPi).epsilon(1e-9));
    for (const auto& c : a.cells) CHECK(polygon_area(c) > 0);

    // Adjacency is symmetric.
    for (size_t i = 0; i < a.adjacency.size(); ++i)
      for (int j : a.adjacency[i]) {
        bool back = false;
        for (int k : a.adjacency[j])
          if (k == static_cast<int>(i)) back = true;
        CHECK(back);
      }

    // A generic point lies in exactly one cell under the open test and at
    // least one under the closed test.
    for (int probes = 0; probes < 20; ++probes) {
      Vec3d v = oracle::random_direction(rng);
      int strict = 0;
      for (const auto& c : a.cells) {
        bool inside = true;
        const size_t n = c.verts.size();
        for (size_t i = 0; i < n; ++i)
          if (dot(v, cross(c.verts[i], c.verts[(i + 1) % n])) < 1e-9)
            inside = false;
        strict += inside;
      }
      CHECK(strict <= 1);
      int closed = 0;
      for (const auto& c : a.cells) closed += polygon_contains(c, v, 1e-9);
      CHECK(closed >= 1);
    }
  }
}
