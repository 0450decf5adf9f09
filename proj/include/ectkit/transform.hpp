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

#include <iosfwd>
#include <string>
#include <vector>

#include "ectkit/mesh.hpp"
#include "ectkit/sphere.hpp"

namespace ect {

// One piece of the exact ECT: gain * 1_{support}(v) * 1_{[anchor.v, 1]}(h).
struct Term {
  int gain = 0;
  Vec3d anchor{0, 0, 0};
  Polygon support;
};

struct ProtoTransform {
  int dim = 3;
  std::vector<Term> terms;
  std::string mesh_id;
};

// Jump of the Euler curve at the center's height: sum over star simplices of
// (-1)^dim, counting a simplex when all its non-center vertices lie strictly
// below the center along v. Throws on height ties within tol.
int local_gain(const Star& s, const std::vector<Vec3d>& positions,
               const Vec3d& v, double tie_tol = 1e-12);

// Nonzero-gain cells of the bisector-circle arrangement of vertex i's star.
// Isolated vertices yield the full sphere as two hemispheres. When merge is
// set, adjacent equal-gain cells are fused while the union stays convex.
std::vector<std::pair<Polygon, int>> vertex_regions(const Mesh& m, int i,
                                                    bool merge = false);

ProtoTransform build_proto_transform(const Mesh& m, bool merge = false);

// Sum of gains over terms containing v with anchor height <= h (closed
// conventions on both indicators). Equals restriction_chi at generic (v,h).
int evaluate_ect(const ProtoTransform& t, const Vec3d& v, double h);

ProtoTransform rotate_transform(const ProtoTransform& t, const Mat3d& r);

// Line-oriented "ECTP 1" text format; floats at 17 significant digits so a
// round trip is bit-stable.
void write_ectp(std::ostream& out, const ProtoTransform& t);
void write_ectp_file(const std::string& path, const ProtoTransform& t);
ProtoTransform read_ectp(std::istream& in, const std::string& name = "<ectp>");
ProtoTransform read_ectp_file(const std::string& path);

}  // namespace ect
