// Copyright 2026 The ectkit Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Reference values come from the independent oracles in oracles.hpp
// or from closed forms worked out by hand.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "ectkit/align.hpp"
#include "ectkit/arrangement.hpp"
#include "ectkit/mesh.hpp"
#include "ectkit/metric.hpp"
#include "ectkit/transform.hpp"
#include "ectkit/transform2d.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace ect;

namespace {

constexpr double kPi = 3.14159265358979323846;
int g_failures = 0;

void report(int id, bool ok, const std::string& what) {
  std::printf("criterion %2d: %s  %s\n", id, ok ? "PASS" : "FAIL",
              what.c_str());
  if (!ok) ++g_failures;
}

// ---------------------------------------------------------------- 1 --------
bool worked_example_2d() {
  ArcTable tab = build_proto_transform_2d(fixtures::example2d(), 4.0);
  if (tab.arcs.size() != 12) return false;
  const std::vector<std::vector<int>> orders = {
      {0, 1, 2, 3}, {0, 1, 3, 2}, {0, 3, 1, 2}, {3, 0, 1, 2},
      {3, 1, 0, 2}, {3, 1, 2, 0}, {3, 2, 1, 0}, {2, 3, 1, 0},
      {2, 1, 3, 0}, {2, 1, 0, 3}, {2, 0, 1, 3}, {0, 2, 1, 3}};
  const std::vector<double> tans = {0.0, 0.5, 2.0, -4.0, -1.0, -0.4};
  for (int k = 0; k < 12; ++k) {
    if (tab.arcs[k].order != orders[k]) return false;
    std::vector<int> expected_chi = (k == 2 || k == 3)
                                        ? std::vector<int>{1, 2, 1, 1}
                                        : std::vector<int>{1, 1, 1, 1};
    if (tab.arcs[k].chi != expected_chi) return false;
    const double t = tans[k % 6];
    double theta = std::atan(t) + (t < 0 ? kPi : 0) + (k >= 6 ? kPi : 0);
    if (std::fabs(tab.arcs[k].theta0 - theta) > 1e-12) return false;
  }
  // Closed form derived by hand: integral of (R - h_min) over all arcs plus
  // 3x the height span between the second and third vertices on the two
  // arcs whose Euler vector is (1,2,1,1). Cross-checked against a dense
  // direction x height quadrature of the restriction oracle.
  const double expected = 8 * kPi + 6 * std::sqrt(2.0) +
                          5 * std::sqrt(5.0) - 2 * std::sqrt(17.0) +
                          std::sqrt(29.0);
  return std::fabs(inner_product_2d(tab, tab) - expected) < 1e-9;
}

// ---------------------------------------------------------------- 2 --------
bool oracle_equality() {
  std::mt19937_64 rng(101);
  for (int mesh_i = 0; mesh_i < 50; ++mesh_i) {
    Mesh m = oracle::random_mesh(rng, 12);
    ProtoTransform t = build_proto_transform(m);
    for (int probe = 0; probe < 100; ++probe) {
      const auto [v, h] = oracle::generic_probe(m, rng);
      if (evaluate_ect(t, v, h) != restriction_chi(m, v, h)) {
        std::fprintf(stderr, "  mismatch mesh %d probe %d\n", mesh_i, probe);
        return false;
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------- 3 --------
bool quadrature_equivalence() {
  std::mt19937_64 rng(103);
  for (int rep = 0; rep < 10; ++rep) {
    Mesh ma = oracle::random_mesh(rng, 8);
    Mesh mb = oracle::random_mesh(rng, 8);
    const double exact =
        inner_product(build_proto_transform(ma), build_proto_transform(mb));
    const double quad = oracle::inner_product_quad(ma, mb, 10000, 1000);
    const double rel =
        std::fabs(exact - quad) / std::max(1.0, std::fabs(exact));
    if (rel > 0.005) {
      std::fprintf(stderr, "  pair %d exact %.6f quad %.6f rel %.4f\n", rep,
                   exact, quad, rel);
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------- 4 --------
Polygon random_convex_polygon(std::mt19937_64& rng) {
  const Vec3d c = oracle::random_direction(rng);
  Vec3d u = cross(c, Vec3d{1, 0, 0});
  if (norm(u) < 1e-6) u = cross(c, Vec3d{0, 1, 0});
  u = normalized(u);
  const Vec3d w = normalized(cross(c, u));
  std::uniform_real_distribution<double> rho_dist(0.1, 1.2);
  std::uniform_real_distribution<double> ang(0.0, 2 * kPi);
  std::uniform_int_distribution<int> nv(3, 8);
  const double rho = rho_dist(rng);
  std::vector<double> angles(nv(rng));
  for (double& a : angles) a = ang(rng);
  std::sort(angles.begin(), angles.end());
  for (size_t i = 1; i < angles.size(); ++i)
    if (angles[i] - angles[i - 1] < 1e-3) return random_convex_polygon(rng);
  Polygon p;
  for (double a : angles)
    p.verts.push_back(c * std::cos(rho) +
                      (u * std::cos(a) + w * std::sin(a)) * std::sin(rho));
  return p;
}

bool height_integral() {
  Polygon octant;
  octant.verts = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  if (std::fabs(integrate_height(octant, Vec3d{0, 0, 1}) - kPi / 4) > 1e-9)
    return false;
  std::mt19937_64 rng(107);
  for (int rep = 0; rep < 100; ++rep) {
    Polygon p = random_convex_polygon(rng);
    const Vec3d anchor =
        oracle::random_direction(rng) *
        std::uniform_real_distribution<double>(0.1, 1.0)(rng);
    const double exact = integrate_height(p, anchor);
    const double quad = oracle::integrate_height_quad(p, anchor, 1e-10);
    if (std::fabs(exact - quad) > 1e-7 * std::max(1.0, std::fabs(exact)))
      return false;
  }
  return true;
}

// ---------------------------------------------------------------- 5 --------
bool metric_properties() {
  std::mt19937_64 rng(109);
  for (int rep = 0; rep < 20; ++rep) {
    ProtoTransform t[3];
    for (auto& ti : t)
      ti = build_proto_transform(oracle::random_mesh(rng, 8));
    double d[3][3] = {};
    for (int i = 0; i < 3; ++i) {
      if (std::sqrt(squared_distance(t[i], t[i])) > 1e-9) return false;
      for (int j = 0; j < 3; ++j)
        d[i][j] = std::sqrt(squared_distance(t[i], t[j]));
    }
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (d[i][j] != d[j][i]) return false;
    if (d[0][2] > d[0][1] + d[1][2] + 1e-8) return false;
    if (d[0][1] > d[0][2] + d[2][1] + 1e-8) return false;
    if (d[1][2] > d[1][0] + d[0][2] + 1e-8) return false;

    const Mat3d r = euler_to_matrix(random_rotation(1000 + rep));
    const double dr = std::sqrt(
        squared_distance(rotate_transform(t[0], r), rotate_transform(t[1], r)));
    if (std::fabs(dr - d[0][1]) > 1e-6) return false;
  }
  return true;
}

// ---------------------------------------------------------------- 6 --------
bool two_point_distance() {
  ProtoTransform a =
      build_proto_transform(make_mesh(3, {{0, 0, 0.5}}, {}, {}));
  ProtoTransform b =
      build_proto_transform(make_mesh(3, {{0, 0, -0.5}}, {}, {}));
  return std::fabs(squared_distance(a, b) - 2 * kPi) < 1e-8;
}

// ---------------------------------------------------------------- 7 --------
bool alignment_recovery() {
  std::mt19937_64 rng(113);
  // A random mesh has no rotational symmetry, so the optimum is unique.
  Mesh my = oracle::random_mesh(rng, 10);
  ProtoTransform y = build_proto_transform(my);
  const EulerAngles truth_angles = random_rotation(42);
  const Mat3d a = euler_to_matrix(truth_angles);
  ProtoTransform x = rotate_transform(y, a);

  AlignResult grid = adaptive_grid_search(x, y, 11, {}, &a);
  for (size_t i = 1; i < grid.trace.rows.size(); ++i)
    if (grid.trace.rows[i].objective < grid.trace.rows[i - 1].objective)
      return false;
  const double dg = so3_distance(a, euler_to_matrix(grid.angles));
  if (dg > 0.02) {
    std::fprintf(stderr, "  grid so3 distance %.5f\n", dg);
    return false;
  }
  AlignResult asc = gradient_ascent(x, y, grid.angles, {}, {}, &a);
  const double da = so3_distance(a, euler_to_matrix(asc.angles));
  if (da > 0.01) {
    std::fprintf(stderr, "  ascent so3 distance %.5f\n", da);
    return false;
  }
  return true;
}

// ---------------------------------------------------------------- 8 --------
bool gradient_check() {
  std::mt19937_64 rng(127);
  ProtoTransform a = build_proto_transform(oracle::random_mesh(rng, 7));
  ProtoTransform b = build_proto_transform(oracle::random_mesh(rng, 7));
  std::uniform_real_distribution<double> ang(0.05, 3.0);
  int checked = 0, attempts = 0;
  while (checked < 20 && attempts < 200) {
    ++attempts;
    EulerAngles e{ang(rng), ang(rng), ang(rng)};
    Gradient g = objective_gradient(a, b, e, {}, /*fd_check=*/true);
    if (g.non_smooth_warning) continue;  // non-generic; redraw
    const double h = 1e-5;
    for (int k = 0; k < 3; ++k) {
      EulerAngles ep = e, em = e;
      (k == 0 ? ep.alpha : k == 1 ? ep.beta : ep.gamma) += h;
      (k == 0 ? em.alpha : k == 1 ? em.beta : em.gamma) -= h;
      const double fd =
          (alignment_objective(a, b, ep) - alignment_objective(a, b, em)) /
          (2 * h);
      if (std::fabs(fd - g.g[k]) > 1e-3 * std::max(1.0, std::fabs(fd)))
        return false;
    }
    ++checked;
  }
  return checked >= 20;
}

// ---------------------------------------------------------------- 9 --------
DistanceMatrix discrete_matrix(const std::vector<Mesh>& meshes,
                               const std::vector<std::string>& labels,
                               const std::vector<Vec3d>& dirs, int heights) {
  std::vector<DiscreteEct> de;
  de.reserve(meshes.size());
  for (const auto& m : meshes) de.push_back(discrete_ect(m, dirs, heights));
  DistanceMatrix out;
  out.labels = labels;
  out.d.assign(meshes.size(), std::vector<double>(meshes.size(), 0.0));
  for (size_t i = 0; i < meshes.size(); ++i)
    for (size_t j = i + 1; j < meshes.size(); ++j)
      out.d[i][j] = out.d[j][i] =
          std::sqrt(discrete_distance(de[i], de[j]));
  return out;
}

bool discretization_convergence() {
  std::mt19937_64 rng(131);
  std::vector<Mesh> meshes;
  std::vector<ProtoTransform> transforms;
  std::vector<std::string> labels;
  for (int i = 0; i < 10; ++i) {
    meshes.push_back(oracle::random_mesh(rng, 9));
    transforms.push_back(build_proto_transform(meshes.back()));
    labels.push_back("m" + std::to_string(i));
  }
  const DistanceMatrix exact = distance_matrix(transforms, labels);

  // Levels subsample the full octahedral grid uniformly: k and the number
  // of heights both halve (roughly) per level.
  const int ks[4] = {9, 6, 4, 2};
  const int hs[4] = {100, 50, 25, 12};
  double prev = 2.0;
  for (int level = 0; level < 4; ++level) {
    const DistanceMatrix approx = discrete_matrix(
        meshes, labels, octahedron_directions(ks[level]), hs[level]);
    const double r = mantel_correlation(exact, approx);
    if (level == 0 && r < 0.99) {
      std::fprintf(stderr, "  full grid mantel %.5f\n", r);
      return false;
    }
    if (r > prev + 1e-12) {
      std::fprintf(stderr, "  level %d mantel %.5f above previous %.5f\n",
                   level, r, prev);
      return false;
    }
    prev = r;
  }
  return true;
}

// --------------------------------------------------------------- 10 --------
bool determinism() {
  const char* cli = std::getenv("ECT_CLI");
  if (!cli) {
    std::fprintf(stderr, "  ECT_CLI not set\n");
    return false;
  }
  const std::string dir = fixtures::tmpdir() + "/det";
  std::system(("rm -rf " + dir + " && mkdir -p " + dir).c_str());
  std::mt19937_64 rng(137);
  for (int i = 0; i < 3; ++i) {
    Mesh m = oracle::random_mesh(rng, 8);
    write_ectp_file(dir + "/m" + std::to_string(i) + ".ectp",
                    build_proto_transform(m));
  }
  std::string first_csv, first_align;
  for (int run = 0; run < 3; ++run) {
    const std::string csv = dir + "/d" + std::to_string(run) + ".csv";
    if (std::system((std::string(cli) + " --deterministic --seed 0 distmat " +
                     dir + " --out " + csv + " > /dev/null 2>&1")
                        .c_str()))
      return false;
    const std::string body = fixtures::read_text(csv);
    if (run == 0)
      first_csv = body;
    else if (body != first_csv)
      return false;

    const std::string trace = dir + "/t" + std::to_string(run) + ".csv";
    const std::string out = dir + "/o" + std::to_string(run) + ".txt";
    if (std::system((std::string(cli) + " --deterministic --seed 0 align " +
                     dir + "/m0.ectp " + dir + "/m1.ectp --method grid " +
                     "--iters 3 --out " + trace + " > " + out + " 2>/dev/null")
                        .c_str()))
      return false;
    const std::string stamp =
        fixtures::read_text(trace) + "|" + fixtures::read_text(out);
    if (run == 0)
      first_align = stamp;
    else if (stamp != first_align)
      return false;
  }
  return true;
}

}  // namespace

int main() {
  using clock = std::chrono::steady_clock;
  const auto timed = [](bool (*fn)()) {
    const auto t0 = clock::now();
    const bool ok = fn();
    const double s =
        std::chrono::duration<double>(clock::now() - t0).count();
    std::fprintf(stderr, "  (%.1fs)\n", s);
    return ok;
  };
  report(1, timed(worked_example_2d), "2D worked example, exact value");
  report(2, timed(oracle_equality), "ECT equals restriction oracle");
  report(3, timed(quadrature_equivalence), "inner product vs dense grid");
  report(4, timed(height_integral), "height integral vs quadrature");
  report(5, timed(metric_properties), "metric axioms + equivariance");
  report(6, timed(two_point_distance), "two-point closed form 2*pi");
  report(7, timed(alignment_recovery), "rotation recovery");
  report(8, timed(gradient_check), "dual gradient vs finite differences");
  report(9, timed(discretization_convergence), "discretization sweep");
  report(10, timed(determinism), "byte-identical repeated runs");
  return g_failures == 0 ? 0 : 1;
}
