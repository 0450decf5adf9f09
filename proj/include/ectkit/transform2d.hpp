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

#include <vector>

#include "ectkit/mesh.hpp"

namespace ect {

// Circle arc [theta0, theta1] on which the height order of the vertices is
// constant. order lists vertex indices from lowest to highest height; chi[i]
// is the Euler characteristic just above the i-th vertex of that order.
struct Arc {
  double theta0 = 0.0, theta1 = 0.0;
  std::vector<int> order;
  std::vector<int> chi;
};

// Brute-force 2D proto-transform: arcs partition [0, 2*pi).
struct ArcTable {
  std::vector<Vec3d> vertices;  // z = 0
  std::vector<Arc> arcs;
  double radius = 1.0;  // heights integrate over [-radius, radius]
};

// Equi-height angles atan((x1-x2)/(y2-y1)) and their antipodes split the
// circle; per arc the vertex order and Euler values come from the
// restriction oracle evaluated just above each vertex.
ArcTable build_proto_transform_2d(const Mesh& m, double radius = 1.0);

// Integral of the height function of p over directions t in [tau, theta]:
// (cos(tau) - cos(theta)) * y + (sin(theta) - sin(tau)) * x.
double arc_height_integral(double tau, double theta, const Vec3d& p);

// Exact ECT inner product of two 2D meshes over S^1 x [-R, R], via the
// common refinement of both arc partitions plus all cross-pair equi-height
// angles (the product of the two step functions must not change order
// inside a refined arc).
double inner_product_2d(const ArcTable& a, const ArcTable& b);

}  // namespace ect
