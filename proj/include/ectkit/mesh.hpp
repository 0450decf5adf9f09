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

#include <array>
#include <string>
#include <vector>

#include "ectkit/vec3.hpp"

namespace ect {

// Geometric simplicial complex of dimension <= 2 in R^2 or R^3.
// 2D meshes store z = 0. Immutable after construction; all ops are pure.
struct Mesh {
  int dim = 3;
  std::vector<Vec3d> vertices;
  std::vector<std::array<int, 2>> edges;      // sorted pairs, unique
  std::vector<std::array<int, 3>> triangles;  // sorted triples, unique
};

struct Star {
  int center = -1;
  std::vector<int> link;  // neighbor vertex indices, sorted
  std::vector<std::array<int, 2>> edges;
  std::vector<std::array<int, 3>> triangles;
};

// Builds a face-closed mesh from vertices plus any subset of simplices:
// induced edges/vertices of every triangle are added, duplicates removed.
Mesh make_mesh(int dim, std::vector<Vec3d> vertices,
               std::vector<std::array<int, 2>> edges,
               std::vector<std::array<int, 3>> triangles);

// ASCII OFF reader (triangle faces only). Comment (#) and blank lines allowed;
// per-face trailing color fields ignored. Errors carry the offending line number.
Mesh load_off(const std::string& path);

// Center on the vertex centroid and scale by 1/max-norm so the mesh sits in
// the unit ball with max vertex norm 1.
Mesh normalize(const Mesh& m);

int euler_characteristic(const Mesh& m);

Star star(const Mesh& m, int vertex);

// chi of the subcomplex of simplices whose vertices all satisfy x.v <= h.
// Brute-force oracle for every ECT value computed elsewhere.
int restriction_chi(const Mesh& m, const Vec3d& v, double h);

// Euler curve sampled on an inclusive equally spaced height grid over [-1,1];
// one pass over simplices per direction.
std::vector<int> euler_curve_on_grid(const Mesh& m, const Vec3d& v,
                                     const std::vector<double>& heights);

// Vertices of the k-fold edge-subdivided regular octahedron projected to S^2.
// 4k^2 + 2 directions, closed under v -> -v. k = 9 gives 326.
std::vector<Vec3d> octahedron_directions(int k);

}  // namespace ect
