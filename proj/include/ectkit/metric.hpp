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

#include <string>
#include <vector>

#include "ectkit/mesh.hpp"
#include "ectkit/sphere.hpp"
#include "ectkit/transform.hpp"

namespace ect {

// Exact pairing of two terms over S^2 x [-1,1]:
//
//   gain_s * gain_t * ( area(Ps ^ Pt) - integral over Ps ^ Pt of
//                       max(xs . v, xt . v) dsigma ),
//
// the max handled by splitting the intersection along the bisector circle of
// the two anchors. Templated so the alignment gradient can push dual numbers
// through the t-side (rotated) polygon.
template <class T>
T term_pair_integral_t(const Polygon& ps, const Vec3d& as,
                       const PolygonT<T>& pt, const Vec3<T>& at) {
  T total = T(0.0);
  const Vec3d dv = as - to_value(at);
  const double dn = norm(dv);
  Vec3<T> ast;
  if constexpr (std::is_same_v<T, double>) ast = as;
  else ast = promote(as);

  for (const auto& piece : intersect_convex(pt, ps)) {
    if (dn < 1e-12) {
      total += polygon_area(piece) - integrate_height(piece, ast);
      continue;
    }
    const Vec3<T> n = normalized(ast - at);
    for (const auto& q : clip_halfspace(piece, n))
      total += polygon_area(q) - integrate_height(q, ast);
    for (const auto& q : clip_halfspace(piece, -n))
      total += polygon_area(q) - integrate_height(q, at);
  }
  return total;
}

inline double term_pair_integral(const Term& s, const Term& t) {
  return static_cast<double>(s.gain) * t.gain *
         term_pair_integral_t<double>(s.support, s.anchor, t.support, t.anchor);
}

struct MetricOptions {
  bool cap_prefilter = true;
  int jobs = 1;
};

// Exact inner product: sum of term-pair integrals in deterministic
// pairwise-reduction order (bit-identical across runs and job counts).
double inner_product(const ProtoTransform& a, const ProtoTransform& b,
                     const MetricOptions& opts = {});

// <a,a> - 2<a,b> + <b,b>, clamped to >= 0 within 1e-9.
double squared_distance(const ProtoTransform& a, const ProtoTransform& b,
                        const MetricOptions& opts = {});

struct DistanceMatrix {
  std::vector<std::string> labels;
  std::vector<std::vector<double>> d;  // symmetric, zero diagonal
};

DistanceMatrix distance_matrix(const std::vector<ProtoTransform>& collection,
                               const std::vector<std::string>& labels,
                               const MetricOptions& opts = {},
                               bool verbose = false);

void write_distance_csv(const std::string& path, const DistanceMatrix& m);
DistanceMatrix read_distance_csv(const std::string& path);

// Conventional approximation: restriction chi on a direction x height grid.
struct DiscreteEct {
  std::vector<Vec3d> directions;
  std::vector<double> heights;       // equally spaced, inclusive of +/-1
  std::vector<std::vector<int>> values;  // [direction][height]
};

DiscreteEct discrete_ect(const Mesh& m, const std::vector<Vec3d>& directions,
                         int n_heights);

// Weighted L2 distance with cell weight (4*pi/|dirs|)*(2/|heights|) so
// refinements converge to the exact distance; unweighted mode matches the
// plain matrix norm used in the literature.
double discrete_distance(const DiscreteEct& a, const DiscreteEct& b,
                         bool weighted = true);

// Pearson correlation over strictly-upper-triangle entries.
double mantel_correlation(const DistanceMatrix& a, const DistanceMatrix& b);

}  // namespace ect
