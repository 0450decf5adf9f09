// Copyright 2026 The ectkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ectkit/transform2d.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ectkit/errors.hpp"

namespace ect {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2 * kPi;

double wrap_angle(double t) {
  t = std::fmod(t, kTwoPi);
  if (t < 0) t += kTwoPi;
  if (t > kTwoPi - 1e-15) t = 0.0;
  return t;
}

void check_2d(const Mesh& m) {
  if (m.dim != 2) throw ArgError("expected a 2D mesh");
  for (const auto& v : m.vertices)
    if (std::fabs(v.z) > 1e-12) throw ArgError("2D mesh with nonzero z");
}

// Angles (two antipodes) at which p and q have equal height.
void equi_height_angles(const Vec3d& p, const Vec3d& q,
                        std::vector<double>* out) {
  const double dx = p.x - q.x;
  const double dy = p.y - q.y;
  if (std::hypot(dx, dy) < 1e-12)
    throw DegeneracyError("coincident 2D vertices");
  const double t = std::atan2(dx, -dy);  // atan((x1-x2)/(y2-y1)) branch-safe
  out->push_back(wrap_angle(t));
  out->push_back(wrap_angle(t + kPi));
}

std::vector<double> sorted_unique_angles(std::vector<double> angles) {
  angles.push_back(0.0);  // anchor the partition at angle zero
  std::sort(angles.begin(), angles.end());
  std::vector<double> out;
  for (double a : angles)
    if (out.empty() || a - out.back() > 1e-12) out.push_back(a);
  while (out.size() > 1 && kTwoPi - out.back() < 1e-12) out.pop_back();
  return out;
}

}  // namespace

ArcTable build_proto_transform_2d(const Mesh& m, double radius) {
  check_2d(m);
  if (m.vertices.empty()) throw ArgError("empty mesh");
  for (const auto& v : m.vertices)
    if (norm(v) > radius + 1e-12)
      throw ArgError("vertex outside the radius-R ball");

  ArcTable table;
  table.vertices = m.vertices;
  table.radius = radius;

  std::vector<double> angles;
  for (size_t i = 0; i < m.vertices.size(); ++i)
    for (size_t j = i + 1; j < m.vertices.size(); ++j)
      equi_height_angles(m.vertices[i], m.vertices[j], &angles);
  const std::vector<double> bounds = sorted_unique_angles(std::move(angles));

  const size_t n = bounds.size();
  for (size_t k = 0; k < n; ++k) {
    Arc arc;
    arc.theta0 = bounds[k];
    arc.theta1 = k + 1 < n ? bounds[k + 1] : kTwoPi;
    const double mid = 0.5 * (arc.theta0 + arc.theta1);
    const Vec3d v{std::cos(mid), std::sin(mid), 0.0};

    std::vector<double> h(m.vertices.size());
    for (size_t i = 0; i < h.size(); ++i) h[i] = dot(m.vertices[i], v);
    arc.order.resize(h.size());
    std::iota(arc.order.begin(), arc.order.end(), 0);
    std::sort(arc.order.begin(), arc.order.end(),
              [&](int a, int b) { return h[a] < h[b]; });

    double min_gap = 2 * radius;
    for (size_t i = 1; i < arc.order.size(); ++i)
      min_gap = std::min(min_gap, h[arc.order[i]] - h[arc.order[i - 1]]);
    const double eps = arc.order.size() > 1 ? min_gap / 2 : radius / 2;
    if (eps <= 0)
      throw DegeneracyError("height tie inside a 2D arc");

    for (int idx : arc.order)
      arc.chi.push_back(restriction_chi(m, v, h[idx] + eps));
    table.arcs.push_back(std::move(arc));
  }
  return table;
}

double arc_height_integral(double tau, double theta, const Vec3d& p) {
  return (std::cos(tau) - std::cos(theta)) * p.y +
         (std::sin(theta) - std::sin(tau)) * p.x;
}

double inner_product_2d(const ArcTable& a, const ArcTable& b) {
  if (std::fabs(a.radius - b.radius) > 1e-12)
    throw ArgError("arc tables with different height radii");
  const double radius = a.radius;

  // Common refinement: both partitions plus all cross-pair equi-height
  // angles, so each refined arc has a constant merged vertex order.
  std::vector<double> angles;
  for (const auto& arc : a.arcs) angles.push_back(arc.theta0);
  for (const auto& arc : b.arcs) angles.push_back(arc.theta0);
  for (const auto& p : a.vertices)
    for (const auto& q : b.vertices)
      if (std::hypot(p.x - q.x, p.y - q.y) > 1e-12)
        equi_height_angles(p, q, &angles);
  const std::vector<double> bounds = sorted_unique_angles(std::move(angles));

  auto find_arc = [](const std::vector<Arc>& arcs, double mid) -> const Arc& {
    for (const auto& arc : arcs)
      if (mid >= arc.theta0 && mid < arc.theta1 + 1e-15) return arc;
    return arcs.back();
  };

  double total = 0.0;
  const size_t n = bounds.size();
  for (size_t k = 0; k < n; ++k) {
    const double t0 = bounds[k];
    const double t1 = k + 1 < n ? bounds[k + 1] : kTwoPi;
    const double mid = 0.5 * (t0 + t1);
    const Vec3d v{std::cos(mid), std::sin(mid), 0.0};
    const Arc& arc_a = find_arc(a.arcs, mid);
    const Arc& arc_b = find_arc(b.arcs, mid);

    struct Event {
      double h;
      Vec3d p;
      int side;  // 0 = a, 1 = b
      int pos;   // position in the parent arc's order
    };
    std::vector<Event> events;
    for (size_t i = 0; i < arc_a.order.size(); ++i) {
      const Vec3d& p = a.vertices[arc_a.order[i]];
      events.push_back({dot(p, v), p, 0, static_cast<int>(i)});
    }
    for (size_t i = 0; i < arc_b.order.size(); ++i) {
      const Vec3d& p = b.vertices[arc_b.order[i]];
      events.push_back({dot(p, v), p, 1, static_cast<int>(i)});
    }
    std::sort(events.begin(), events.end(),
              [](const Event& x, const Event& y) { return x.h < y.h; });

    int chi_a = 0, chi_b = 0;
    for (size_t l = 0; l < events.size(); ++l) {
      const Event& e = events[l];
      (e.side == 0 ? chi_a : chi_b) =
          (e.side == 0 ? arc_a.chi[e.pos] : arc_b.chi[e.pos]);
      const double prod = static_cast<double>(chi_a) * chi_b;
      if (prod == 0.0) continue;
      const double upper =
          l + 1 < events.size()
              ? arc_height_integral(t0, t1, events[l + 1].p)
              : radius * (t1 - t0);
      total += prod * (upper - arc_height_integral(t0, t1, e.p));
    }
  }
  return total;
}

}  // namespace ect
