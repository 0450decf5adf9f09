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

#include "ectkit/sphere.hpp"

namespace ect {

// Cell complex of S^2 cut by a set of great circles. Cells are convex CCW
// polygons with disjoint interiors; their areas sum to 4*pi.
//
// With zero circles there is no polygonal decomposition to return; the
// full_sphere flag is the sentinel and callers pick their own split (see
// hemisphere_pair).
struct Arrangement {
  std::vector<GreatCircle> circles;  // deduplicated inputs
  std::vector<Polygon> cells;
  // adjacency[i] lists indices of cells sharing a (true, non-inserted) edge
  // with cell i. Parallel to cells.
  std::vector<std::vector<int>> adjacency;
  bool full_sphere = false;
};

// Two hemisphere cells split by the given circle (CCW, 4 vertices each; the
// first cell is the one on the +normal side).
std::vector<Polygon> hemisphere_pair(const GreatCircle& c);

// Near-coincident circles (|n_i . n_j| > 1 - 1e-10) are merged before the
// arrangement is built. Cells are traced by walking half-edges sorted by
// angle around each intersection vertex; arcs are pre-split so no cell edge
// exceeds pi/2.
Arrangement build_arrangement(const std::vector<GreatCircle>& circles);

}  // namespace ect
