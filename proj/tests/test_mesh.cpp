// Copyright 2026 The ectkit Authors.
// SPDX-License-Identifier: Apache-2.0

#include <random>

#include "doctest.h"
#include "ectkit/errors.hpp"
#include "ectkit/mesh.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace ect;

TEST_CASE("make_mesh closes faces and deduplicates") {
  Mesh m = make_mesh(3, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}},
                     {{1, 0}, {0, 1}}, {{2, 1, 0}, {0, 1, 2}});
  CHECK(m.triangles.size() == 1);
  CHECK(m.triangles[0] == std::array<int, 3>{0, 1, 2});
  // Induced edges of the triangle, deduplicated against the explicit ones.
  CHECK(m.edges.size() == 3);
  CHECK(euler_characteristic(m) == 4 - 3 + 1);
}

TEST_CASE("make_mesh rejects bad indices and coincident vertices") {
  CHECK_THROWS_AS(make_mesh(3, {{0, 0, 0}}, {{0, 1}}, {}), ArgError);
  CHECK_THROWS_AS(
      make_mesh(3, {{0, 0, 0}, {0, 0, 0}, {1, 0, 0}}, {}, {{0, 1, 2}}),
      DegeneracyError);
}

TEST_CASE("tetrahedron boundary is a sphere") {
  Mesh t = fixtures::tetrahedron();
  CHECK(t.vertices.size() == 4);
  CHECK(t.edges.size() == 6);
  CHECK(t.triangles.size() == 4);
  CHECK(euler_characteristic(t) == 2);
}

TEST_CASE("star collects the incident simplices") {
  Mesh t = fixtures::tetrahedron();
  Star s = star(t, 0);
  CHECK(s.center == 0);
  CHECK(s.link == std::vector<int>{1, 2, 3});
  CHECK(s.edges.size() == 3);
  CHECK(s.triangles.size() == 3);
}

TEST_CASE("load_off parses and reports line numbers") {
  const std::string good = fixtures::write_text("tetra.off", fixtures::kTetraOff);
  Mesh m = load_off(good);
  CHECK(m.vertices.size() == 4);
  CHECK(euler_characteristic(m) == 2);

  const std::string bad = fixtures::write_text(
      "bad.off", "OFF\n4 1 0\n0 0 0\n1 0 0\n0 1 0\n0 0 oops\n3 0 1 2\n");
  try {
    load_off(bad);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 6") != std::string::npos);
  }

  CHECK_THROWS_AS(load_off(fixtures::write_text("empty.off", "")), ParseError);
  CHECK_THROWS_AS(
      load_off(fixtures::write_text(
          "quad.off", "OFF\n4 1 0\n0 0 0\n1 0 0\n1 1 0\n0 1 0\n4 0 1 2 3\n")),
      ParseError);
}

TEST_CASE("normalize centers and scales to the unit ball") {
  Mesh m = make_mesh(3, {{10, 0, 0}, {12, 0, 0}, {11, 3, 0}, {11, 1, 5}}, {},
                     {{0, 1, 2}});
  Mesh n = normalize(m);
  Vec3d c{0, 0, 0};
  double maxn = 0;
  for (const auto& v : n.vertices) {
    c += v;
    maxn = std::max(maxn, norm(v));
  }
  CHECK(norm(c) < 1e-12);
  CHECK(maxn == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(
      normalize(make_mesh(3, {{5, 5, 5}}, {}, {})), DegeneracyError);
}

TEST_CASE("restriction_chi sweeps a tetrahedron bottom to top") {
  Mesh t = fixtures::tetrahedron();
  Vec3d v{0, 0, 1};
  CHECK(restriction_chi(t, v, -2.0) == 0);
  // Two bottom vertices enter at height -1/sqrt(3); above it the complex is
  // those two points plus the edge between them.
  CHECK(restriction_chi(t, v, -0.5) == 1);
  CHECK(restriction_chi(t, v, 2.0) == 2);
}

TEST_CASE("euler_curve_on_grid matches restriction_chi pointwise") {
  std::mt19937_64 rng(7);
  for (int rep = 0; rep < 10; ++rep) {
    Mesh m = oracle::random_mesh(rng);
    Vec3d v = oracle::random_direction(rng);
    std::vector<double> heights;
    for (int i = 0; i <= 40; ++i) heights.push_back(-1.0 + i * 0.05);
    std::vector<int> curve = euler_curve_on_grid(m, v, heights);
    for (size_t i = 0; i < heights.size(); ++i)
      CHECK(curve[i] == restriction_chi(m, v, heights[i]));
  }
}

TEST_CASE("octahedron_directions counts and symmetry") {
  CHECK_THROWS_AS(octahedron_directions(0), ArgError);
  for (int k : {1, 2, 3, 9}) {
    auto dirs = octahedron_directions(k);
    CHECK(static_cast<int>(dirs.size()) == 4 * k * k + 2);
    for (const auto& d : dirs) {
      CHECK(norm(d) == doctest::Approx(1.0).epsilon(1e-12));
      bool has_neg = false;
      for (const auto& e : dirs)
        if (norm(e + d) < 1e-9) has_neg = true;
      CHECK(has_neg);
    }
  }
  CHECK(octahedron_directions(9).size() == 326);
}
