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

#include "ectkit/arrangement.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "ectkit/errors.hpp"

namespace ect {

namespace {

constexpr double kPi = 3.14159265358979323846;

Vec3d any_orthogonal(const Vec3d& n) {
  const Vec3d trial = std::fabs(n.x) < 0.9 ? Vec3d{1, 0, 0} : Vec3d{0, 1, 0};
  return normalized(cross(n, trial));
}

struct HalfEdge {
  int src = -1, tgt = -1;
  int circle = -1;
  int dir = +1;       // +1 along increasing angle around the circle normal
  int twin = -1;
  int face = -1;
};

}  // namespace

std::vector<Polygon> hemisphere_pair(const GreatCircle& c) {
  const Vec3d n = c.normal;
  const Vec3d u = any_orthogonal(n);
  const Vec3d w = normalized(cross(n, u));
  Polygon pos, neg;
  pos.verts = {u, w, -u, -w};   // edge normals u x w = n: the +n side
  neg.verts = {u, -w, -u, w};
  return {pos, neg};
}

Arrangement build_arrangement(const std::vector<GreatCircle>& circles_in) {
  Arrangement arr;

  // Merge near-coincident circles.
  for (const auto& c : circles_in) {
    bool dup = false;
    for (const auto& k : arr.circles)
      if (std::fabs(dot(c.normal, k.normal)) > 1.0 - 1e-10) {
        dup = true;
        break;
      }
    if (!dup) arr.circles.push_back(c);
  }

  const int nc = static_cast<int>(arr.circles.size());
  if (nc == 0) {
    arr.full_sphere = true;
    return arr;
  }
  if (nc == 1) {
    arr.cells = hemisphere_pair(arr.circles[0]);
    arr.adjacency = {{1}, {0}};
    return arr;
  }

  // Intersection vertices, merged across pairs (triple intersections and
  // antipodal duplicates collapse here).
  std::vector<Vec3d> verts;
  std::vector<std::set<int>> member;  // circles through each vertex
  auto add_vertex = [&](const Vec3d& p, int ci, int cj) {
    for (size_t k = 0; k < verts.size(); ++k)
      if (norm(verts[k] - p) < 1e-9) {
        member[k].insert(ci);
        member[k].insert(cj);
        return;
      }
    verts.push_back(p);
    member.push_back({ci, cj});
  };
  for (int i = 0; i < nc; ++i)
    for (int j = i + 1; j < nc; ++j) {
      const Vec3d p = normalized(cross(arr.circles[i].normal, arr.circles[j].normal));
      add_vertex(p, i, j);
      add_vertex(-p, i, j);
    }
  // Catch memberships the pairwise pass missed by tolerance.
  for (size_t k = 0; k < verts.size(); ++k)
    for (int i = 0; i < nc; ++i)
      if (std::fabs(dot(verts[k], arr.circles[i].normal)) < 2e-9)
        member[k].insert(i);

  // Per circle: vertices sorted by angle, with pseudo-vertices inserted so
  // every arc is shorter than ~pi/2 (keeps polygon edges unambiguous).
  std::vector<HalfEdge> hes;
  std::vector<std::vector<int>> out_at(verts.size());  // grown lazily below

  for (int ci = 0; ci < nc; ++ci) {
    const Vec3d n = arr.circles[ci].normal;
    const Vec3d u = any_orthogonal(n);
    const Vec3d w = normalized(cross(n, u));
    std::vector<std::pair<double, int>> ring;  // (angle, vertex id)
    for (size_t k = 0; k < verts.size(); ++k)
      if (member[k].count(ci))
        ring.emplace_back(std::atan2(dot(verts[k], w), dot(verts[k], u)),
                          static_cast<int>(k));
    if (ring.size() < 2)
      throw DegeneracyError("arrangement circle with fewer than two vertices");
    std::sort(ring.begin(), ring.end());

    // Insert pseudo-vertices on long gaps.
    std::vector<std::pair<double, int>> full;
    const size_t rn = ring.size();
    for (size_t k = 0; k < rn; ++k) {
      full.push_back(ring[k]);
      const double a0 = ring[k].first;
      double a1 = ring[(k + 1) % rn].first;
      if (k + 1 == rn) a1 += 2 * kPi;
      const double gap = a1 - a0;
      const int pieces = static_cast<int>(std::ceil(gap / 1.3));
      for (int s = 1; s < pieces; ++s) {
        const double a = a0 + gap * s / pieces;
        verts.push_back(u * std::cos(a) + w * std::sin(a));
        member.push_back({ci});
        full.emplace_back(a, static_cast<int>(verts.size()) - 1);
      }
    }

    const size_t fn = full.size();
    for (size_t k = 0; k < fn; ++k) {
      const int a = full[k].second;
      const int b = full[(k + 1) % fn].second;
      const int h0 = static_cast<int>(hes.size());
      hes.push_back({a, b, ci, +1, h0 + 1, -1});
      hes.push_back({b, a, ci, -1, h0, -1});
    }
  }

  out_at.resize(verts.size());
  for (size_t h = 0; h < hes.size(); ++h)
    out_at[hes[h].src].push_back(static_cast<int>(h));

  // Tangent of a half-edge at one of its endpoints.
  auto tangent_at = [&](const HalfEdge& h, int vid) {
    const Vec3d n = arr.circles[h.circle].normal;
    return normalized(cross(n, verts[vid])) * static_cast<double>(h.dir);
  };

  // CCW-sort outgoing half-edges around each vertex; next-in-face is the
  // rotational predecessor of the twin.
  std::vector<int> next(hes.size(), -1);
  for (size_t vid = 0; vid < verts.size(); ++vid) {
    auto& out = out_at[vid];
    const Vec3d t1 = any_orthogonal(verts[vid]);
    const Vec3d t2 = normalized(cross(verts[vid], t1));
    std::sort(out.begin(), out.end(), [&](int ha, int hb) {
      const Vec3d ta = tangent_at(hes[ha], static_cast<int>(vid));
      const Vec3d tb = tangent_at(hes[hb], static_cast<int>(vid));
      return std::atan2(dot(ta, t2), dot(ta, t1)) <
             std::atan2(dot(tb, t2), dot(tb, t1));
    });
    std::map<int, int> pos;
    for (size_t k = 0; k < out.size(); ++k) pos[out[k]] = static_cast<int>(k);
    for (int h : out) {
      // h is outgoing at vid; it is the twin of some half-edge arriving here.
      const int arriving = hes[h].twin;
      const int prev = out[(pos[h] + out.size() - 1) % out.size()];
      next[arriving] = prev;
    }
  }

  // Trace faces.
  std::vector<std::vector<int>> face_cycles;
  for (size_t h0 = 0; h0 < hes.size(); ++h0) {
    if (hes[h0].face >= 0) continue;
    const int fid = static_cast<int>(face_cycles.size());
    std::vector<int> cyc;
    int h = static_cast<int>(h0);
    do {
      hes[h].face = fid;
      cyc.push_back(h);
      h = next[h];
      if (h < 0) throw DegeneracyError("arrangement face tracing failed");
    } while (h != static_cast<int>(h0));
    face_cycles.push_back(std::move(cyc));
  }

  arr.cells.reserve(face_cycles.size());
  arr.adjacency.assign(face_cycles.size(), {});
  for (size_t f = 0; f < face_cycles.size(); ++f) {
    Polygon p;
    std::set<int> nb;
    for (int h : face_cycles[f]) {
      p.verts.push_back(verts[hes[h].src]);
      const int of = hes[hes[h].twin].face;
      if (of != static_cast<int>(f)) nb.insert(of);
    }
    arr.cells.push_back(std::move(p));
    arr.adjacency[f].assign(nb.begin(), nb.end());
  }
  return arr;
}

}  // namespace ect
