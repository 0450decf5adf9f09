// Copyright 2026 The ectkit Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdlib>
#include <fstream>
#include <string>

#include "ectkit/mesh.hpp"

namespace fixtures {

// Boundary of a regular tetrahedron inscribed in the unit sphere.
inline ect::Mesh tetrahedron() {
  const double s = 1.0 / std::sqrt(3.0);
  return ect::make_mesh(3,
                        {{s, s, s}, {s, -s, -s}, {-s, s, -s}, {-s, -s, s}},
                        {},
                        {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
}

// Octahedron boundary (chi = 2), vertices on the axes.
inline ect::Mesh octahedron() {
  return ect::make_mesh(3,
                        {{1, 0, 0},
                         {-1, 0, 0},
                         {0, 1, 0},
                         {0, -1, 0},
                         {0, 0, 1},
                         {0, 0, -1}},
                        {},
                        {{0, 2, 4},
                         {2, 1, 4},
                         {1, 3, 4},
                         {3, 0, 4},
                         {2, 0, 5},
                         {1, 2, 5},
                         {3, 1, 5},
                         {0, 3, 5}});
}

// Two glued triangles in the plane; heights integrate over [-4, 4].
inline ect::Mesh example2d() {
  return ect::make_mesh(2,
                        {{-2, -1, 0}, {0, 1, 0}, {0, 4, 0}, {2, 0, 0}},
                        {},
                        {{0, 1, 2}, {1, 2, 3}});
}

inline std::string tmpdir() {
  const char* d = std::getenv("ECT_TEST_TMPDIR");
  return d ? d : "/tmp";
}

inline std::string write_text(const std::string& name,
                              const std::string& body) {
  const std::string path = tmpdir() + "/" + name;
  std::ofstream(path) << body;
  return path;
}

inline std::string read_text(const std::string& path) {
  std::ifstream in(path);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

inline const char* kTetraOff =
    "OFF\n"
    "4 4 0\n"
    "0.5773502691896258 0.5773502691896258 0.5773502691896258\n"
    "0.5773502691896258 -0.5773502691896258 -0.5773502691896258\n"
    "-0.5773502691896258 0.5773502691896258 -0.5773502691896258\n"
    "-0.5773502691896258 -0.5773502691896258 0.5773502691896258\n"
    "3 0 1 2\n"
    "3 0 1 3\n"
    "3 0 2 3\n"
    "3 1 2 3\n";

}  // namespace fixtures
