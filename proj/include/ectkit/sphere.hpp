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

#pragma once

// Spherical computational geometry on S^2: convex geodesic polygons, areas,
// half-space clipping, intersections, and the closed-form height integral
//
//   integral over P of (anchor . v) dsigma  =  anchor . m(P),
//   m(P) = 1/2 * sum over edges of theta_k * n_k,
//
// where theta_k is the arc angle of edge k and n_k the unit normal of its
// great-circle plane, oriented with the polygon. The identity follows from
// Stokes' theorem applied edge by edge; geodesic edges keep v x dv constant,
// which is what makes the edge terms closed-form.
//
// Everything is templated on the scalar so the same kernel runs on plain
// doubles and on forward-mode duals (for gradients through rotations).
// Comparisons always branch on the value part.

#include <algorithm>
#include <cmath>
#include <type_traits>
#include <vector>

#include "ectkit/vec3.hpp"

namespace ect {

// Great circle {v : v . normal = 0}, canonicalized so the first nonzero
// coordinate of the normal is positive (n and -n are the same circle).
struct GreatCircle {
  Vec3d normal{0, 0, 1};
};

inline GreatCircle make_circle(Vec3d n) {
  const double len = norm(n);
  if (len < 1e-12) throw DegeneracyError("zero normal for great circle");
  n = n * (1.0 / len);
  if (n.x < 0 || (n.x == 0 && (n.y < 0 || (n.y == 0 && n.z < 0)))) n = -n;
  return {n};
}

// Directions where two points have equal height: normal || (a - b).
inline GreatCircle bisector_circle(const Vec3d& a, const Vec3d& b) {
  if (norm(a - b) < 1e-12)
    throw DegeneracyError("bisector of coincident points");
  return make_circle(a - b);
}

// Spherical cap; used only as a conservative pre-filter for intersections.
struct Cap {
  Vec3d center{0, 0, 1};
  double radius = 0.0;  // angular, [0, pi]
};

inline bool caps_disjoint(const Cap& a, const Cap& b) {
  const double c = std::clamp(dot(a.center, b.center), -1.0, 1.0);
  return std::acos(c) > a.radius + b.radius;
}

// Oriented convex geodesic polygon, CCW seen from outside the sphere.
// Vertices are unit; consecutive vertices are < pi/2 + eps apart (long arcs
// are subdivided at construction), so no edge is ambiguous.
template <class T>
struct PolygonT {
  std::vector<Vec3<T>> verts;
};

using Polygon = PolygonT<double>;

inline PolygonT<Dual3> promote(const Polygon& p) {
  PolygonT<Dual3> q;
  q.verts.reserve(p.verts.size());
  for (const auto& v : p.verts) q.verts.push_back(promote(v));
  return q;
}

inline Polygon to_value(const PolygonT<Dual3>& p) {
  Polygon q;
  q.verts.reserve(p.verts.size());
  for (const auto& v : p.verts) q.verts.push_back(to_value(v));
  return q;
}

// theta/sin(theta)-weighted edge normal: theta_k * n_k computed stably for
// short arcs as cross(a,b) * (theta/|cross|).
template <class T>
inline Vec3<T> edge_moment(const Vec3<T>& a, const Vec3<T>& b) {
  const Vec3<T> c = cross(a, b);
  using std::sqrt;
  using std::atan2;
  const T s = sqrt(dot(c, c));
  const T theta = atan2(s, dot(a, b));
  if (value(s) > 1e-8) return c * (theta / s);
  // theta/s -> 1 as the arc shrinks; second-order series is plenty here.
  return c * (T(1.0) + s * s * (1.0 / 6.0));
}

// Vector area 1/2 * contour integral of v x dv; points into the polygon for
// convex cells, with |m| <= area.
template <class T>
inline Vec3<T> vector_area(const PolygonT<T>& p) {
  Vec3<T> m{T(0.0), T(0.0), T(0.0)};
  const size_t n = p.verts.size();
  for (size_t i = 0; i < n; ++i) m += edge_moment(p.verts[i], p.verts[(i + 1) % n]);
  return m * T(0.5);
}

// Signed spherical excess of triangle (a,b,c) via the half-angle identity;
// robust for tiny triangles and exact at straight (angle pi) vertices.
template <class T>
inline T triangle_excess(const Vec3<T>& a, const Vec3<T>& b, const Vec3<T>& c) {
  using std::atan2;
  const T num = dot(a, cross(b, c));
  const T den = T(1.0) + dot(a, b) + dot(b, c) + dot(c, a);
  return T(2.0) * atan2(num, den);
}

// Area in steradians. Fans from the vector-area direction, which lies inside
// every convex cell; equivalent to Gauss-Bonnet (sum of angles - (n-2)pi).
template <class T>
inline T polygon_area(const PolygonT<T>& p) {
  if (p.verts.size() < 3) return T(0.0);
  const Vec3<T> m = vector_area(p);
  using std::sqrt;
  const T mn = sqrt(dot(m, m));
  if (value(mn) < 1e-14) return T(0.0);
  const Vec3<T> c = m * (T(1.0) / mn);
  T area = T(0.0);
  const size_t n = p.verts.size();
  for (size_t i = 0; i < n; ++i)
    area += triangle_excess(c, p.verts[i], p.verts[(i + 1) % n]);
  return area;
}

// Closed-form integral of the height function v -> anchor . v over p.
template <class T>
inline T integrate_height(const PolygonT<T>& p, const Vec3<T>& anchor) {
  return dot(anchor, vector_area(p));
}

inline double integrate_height(const Polygon& p, const Vec3d& anchor) {
  return dot(anchor, vector_area(p));
}

namespace detail {

// Point where the arc (a,b) meets the plane v.n = 0, on the minor arc side.
template <class T>
inline Vec3<T> edge_plane_point(const Vec3<T>& a, const Vec3<T>& b,
                                const Vec3<T>& n) {
  Vec3<T> p = a * dot(b, n) - b * dot(a, n);
  p = normalized(p);
  if (value(dot(p, a + b)) < 0) p = -p;
  return p;
}

template <class T>
inline void push_vertex(std::vector<Vec3<T>>& out, const Vec3<T>& v) {
  if (!out.empty() && norm(to_value(out.back()) - to_value(v)) < 1e-12) return;
  out.push_back(v);
}

}  // namespace detail

// Part of p on the side v . n >= 0, as 0 or 1 convex pieces. On-plane
// vertices (|v.n| < tol) are kept, so clipping by n and by -n partitions p.
template <class T>
inline std::vector<PolygonT<T>> clip_halfspace(const PolygonT<T>& p,
                                               const Vec3<T>& n,
                                               double tol = 1e-12) {
  const size_t cnt = p.verts.size();
  // Vertex signs alone cannot orient a polygon whose boundary lies entirely
  // on the clip circle (e.g. the two hemispheres it bounds); decide those by
  // an interior point, the spherical-excess area direction.
  bool all_on_plane = true;
  for (const auto& v : p.verts)
    if (std::fabs(value(dot(v, n))) > tol) all_on_plane = false;
  if (all_on_plane && cnt >= 3) {
    const Vec3d inside = normalized(to_value(vector_area(p)));
    if (dot(inside, to_value(n)) > 0) return {p};
    return {};
  }
  std::vector<Vec3<T>> out;
  out.reserve(cnt + 2);
  for (size_t i = 0; i < cnt; ++i) {
    const Vec3<T>& a = p.verts[i];
    const Vec3<T>& b = p.verts[(i + 1) % cnt];
    const double sa = value(dot(a, n));
    const double sb = value(dot(b, n));
    if (sa >= -tol) detail::push_vertex(out, a);
    if ((sa > tol && sb < -tol) || (sa < -tol && sb > tol))
      detail::push_vertex(out, detail::edge_plane_point(a, b, n));
  }
  while (out.size() > 1 &&
         norm(to_value(out.front()) - to_value(out.back())) < 1e-12)
    out.pop_back();
  if (out.size() < 3) return {};
  // The freshly cut edge runs along the clip circle and can approach a half
  // circle (two great circles always meet in an antipodal pair); split any
  // long arc so no downstream edge is ambiguous. For a near-antipodal pair
  // the midpoint comes from the clip circle itself: cross(n, u) is the
  // interior-left travel direction along the boundary of {v . n >= 0}.
  std::vector<Vec3<T>> split;
  split.reserve(out.size() + 2);
  for (size_t i = 0; i < out.size(); ++i) {
    const Vec3<T>& u = out[i];
    const Vec3<T>& w = out[(i + 1) % out.size()];
    split.push_back(u);
    if (value(dot(u, w)) < -0.5) {
      Vec3<T> mid = u + w;
      if (norm(to_value(mid)) < 1e-6) mid = cross(n, u);
      split.push_back(normalized(mid));
    }
  }
  PolygonT<T> q;
  q.verts = std::move(split);
  if (value(polygon_area(q)) < 1e-14) return {};
  return {std::move(q)};
}

// Intersection of convex polygons by successive half-space clips along q's
// edge circles (interior of a CCW polygon is where v . (a x b) >= 0).
template <class T, class U>
inline std::vector<PolygonT<T>> intersect_convex(const PolygonT<T>& p,
                                                 const PolygonT<U>& q) {
  std::vector<PolygonT<T>> cur = {p};
  const size_t n = q.verts.size();
  for (size_t i = 0; i < n && !cur.empty(); ++i) {
    const Vec3<U> en = cross(q.verts[i], q.verts[(i + 1) % n]);
    const Vec3d env = to_value(en);
    const double len = norm(env);
    if (len < 1e-14) continue;  // duplicate vertices
    Vec3<T> nn;
    if constexpr (std::is_same_v<T, U>) {
      nn = en * (T(1.0) / norm(en));
    } else {
      nn = promote(env * (1.0 / len));
    }
    std::vector<PolygonT<T>> next;
    for (const auto& piece : cur)
      for (auto& r : clip_halfspace(piece, nn)) next.push_back(std::move(r));
    cur = std::move(next);
  }
  return cur;
}

// Closed-convention point-in-polygon test for convex CCW polygons.
inline bool polygon_contains(const Polygon& p, const Vec3d& v,
                             double tol = 0.0) {
  const size_t n = p.verts.size();
  for (size_t i = 0; i < n; ++i)
    if (dot(v, cross(p.verts[i], p.verts[(i + 1) % n])) < -tol) return false;
  return true;
}

inline Cap bounding_cap(const Polygon& p) {
  Vec3d c = vector_area(p);
  if (norm(c) < 1e-14) {
    c = {0, 0, 0};
    for (const auto& v : p.verts) c += v;
  }
  if (norm(c) < 1e-14) c = {0, 0, 1};
  c = normalized(c);
  double r = 0.0;
  for (const auto& v : p.verts)
    r = std::max(r, std::acos(std::clamp(dot(c, v), -1.0, 1.0)));
  // Convex polygons sit inside a closed hemisphere around c, where the
  // geodesic distance to c is maximized at a vertex.
  return {c, std::min(r + 1e-12, 3.1415926535897932)};
}

template <class T>
inline PolygonT<T> rotate_polygon(const PolygonT<T>& p, const Mat3<T>& r) {
  PolygonT<T> q;
  q.verts.reserve(p.verts.size());
  for (const auto& v : p.verts) q.verts.push_back(r.apply(v));
  return q;
}

inline Polygon rotate_polygon_checked(const Polygon& p, const Mat3d& r) {
  check_rotation(r);
  return rotate_polygon(p, r);
}

// Splits arcs longer than max_arc by inserting midpoints, so downstream code
// never sees near-antipodal consecutive vertices.
inline Polygon subdivide_long_edges(const Polygon& p, double max_arc = 1.1) {
  Polygon q;
  const size_t n = p.verts.size();
  for (size_t i = 0; i < n; ++i) {
    const Vec3d& a = p.verts[i];
    const Vec3d& b = p.verts[(i + 1) % n];
    q.verts.push_back(a);
    const double ang = std::atan2(norm(cross(a, b)), dot(a, b));
    const int pieces = static_cast<int>(std::ceil(ang / max_arc));
    if (pieces > 1) {
      // interpolate along the great circle through a and b
      const Vec3d t = normalized(b - a * dot(a, b));
      for (int j = 1; j < pieces; ++j) {
        const double s = ang * j / pieces;
        q.verts.push_back(a * std::cos(s) + t * std::sin(s));
      }
    }
  }
  return q;
}

}  // namespace ect
