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

#include "ectkit/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "ectkit/errors.hpp"

namespace ect {

Mesh make_mesh(int dim, std::vector<Vec3d> vertices,
               std::vector<std::array<int, 2>> edges,
               std::vector<std::array<int, 3>> triangles) {
  if (dim != 2 && dim != 3) throw ArgError("mesh dimension must be 2 or 3");
  const int nv = static_cast<int>(vertices.size());
  auto check = [&](int i) {
    if (i < 0 || i >= nv) throw ArgError("simplex vertex index out of range");
  };
  for (int i = 0; i < nv; ++i)
    for (int j = i + 1; j < nv; ++j)
      if (norm(vertices[i] - vertices[j]) < 1e-12)
        throw DegeneracyError("coincident vertices " + std::to_string(i) +
                              " and " + std::to_string(j));

  std::set<std::array<int, 2>> edge_set;
  std::set<std::array<int, 3>> tri_set;
  for (auto t : triangles) {
    std::sort(t.begin(), t.end());
    for (int i : t) check(i);
    if (t[0] == t[1] || t[1] == t[2])
      throw DegeneracyError("triangle with repeated vertex");
    tri_set.insert(t);
    edge_set.insert({t[0], t[1]});
    edge_set.insert({t[0], t[2]});
    edge_set.insert({t[1], t[2]});
  }
  for (auto e : edges) {
    std::sort(e.begin(), e.end());
    for (int i : e) check(i);
    if (e[0] == e[1]) throw DegeneracyError("edge with repeated vertex");
    edge_set.insert(e);
  }

  Mesh m;
  m.dim = dim;
  m.vertices = std::move(vertices);
  m.edges.assign(edge_set.begin(), edge_set.end());
  m.triangles.assign(tri_set.begin(), tri_set.end());
  return m;
}

Mesh load_off(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);

  int lineno = 0;
  auto next_line = [&](std::string& out) -> bool {
    while (std::getline(in, out)) {
      ++lineno;
      const auto pos = out.find_first_not_of(" \t\r\n");
      if (pos == std::string::npos || out[pos] == '#') continue;
      return true;
    }
    return false;
  };
  auto fail = [&](const std::string& what) -> void {
    throw ParseError(path + " line " + std::to_string(lineno) + ": " + what);
  };

  std::string line;
  if (!next_line(line)) fail("empty file");
  {
    std::istringstream ss(line);
    std::string magic;
    ss >> magic;
    if (magic != "OFF") fail("malformed header, expected OFF");
  }
  if (!next_line(line)) fail("missing count line");
  long nv = -1, nf = -1, ne = 0;
  {
    std::istringstream ss(line);
    if (!(ss >> nv >> nf >> ne) || nv < 0 || nf < 0) fail("malformed count line");
  }

  std::vector<Vec3d> verts;
  verts.reserve(nv);
  for (long i = 0; i < nv; ++i) {
    if (!next_line(line)) fail("unexpected end of file in vertex list");
    std::istringstream ss(line);
    double x, y, z;
    if (!(ss >> x >> y >> z)) fail("malformed vertex line");
    verts.push_back({x, y, z});
  }

  std::vector<std::array<int, 3>> tris;
  tris.reserve(nf);
  for (long i = 0; i < nf; ++i) {
    if (!next_line(line)) fail("unexpected end of file in face list");
    std::istringstream ss(line);
    int cnt;
    if (!(ss >> cnt)) fail("malformed face line");
    if (cnt != 3) fail("non-triangle face (count " + std::to_string(cnt) + ")");
    std::array<int, 3> f{};
    if (!(ss >> f[0] >> f[1] >> f[2])) fail("malformed face line");
    for (int idx : f)
      if (idx < 0 || idx >= nv) fail("face index out of range");
    if (f[0] == f[1] || f[1] == f[2] || f[0] == f[2]) fail("degenerate face");
    tris.push_back(f);
  }

  return make_mesh(3, std::move(verts), {}, std::move(tris));
}

Mesh normalize(const Mesh& m) {
  if (m.vertices.empty()) throw ArgError("cannot normalize an empty mesh");
  Vec3d c{0, 0, 0};
  for (const auto& v : m.vertices) c += v;
  c = c * (1.0 / static_cast<double>(m.vertices.size()));

  double maxn = 0.0;
  for (const auto& v : m.vertices) maxn = std::max(maxn, norm(v - c));
  if (maxn < 1e-300)
    throw DegeneracyError("degenerate mesh: all vertices coincide");

  Mesh out = m;
  for (auto& v : out.vertices) v = (v - c) * (1.0 / maxn);
  return out;
}

int euler_characteristic(const Mesh& m) {
  return static_cast<int>(m.vertices.size()) - static_cast<int>(m.edges.size()) +
         static_cast<int>(m.triangles.size());
}

Star star(const Mesh& m, int vertex) {
  if (vertex < 0 || vertex >= static_cast<int>(m.vertices.size()))
    throw ArgError("vertex index out of range");
  Star s;
  s.center = vertex;
  std::set<int> link;
  for (const auto& e : m.edges)
    if (e[0] == vertex || e[1] == vertex) {
      s.edges.push_back(e);
      link.insert(e[0] == vertex ? e[1] : e[0]);
    }
  for (const auto& t : m.triangles)
    if (t[0] == vertex || t[1] == vertex || t[2] == vertex) {
      s.triangles.push_back(t);
      for (int i : t)
        if (i != vertex) link.insert(i);
    }
  s.link.assign(link.begin(), link.end());
  return s;
}

int restriction_chi(const Mesh& m, const Vec3d& v, double h) {
  int chi = 0;
  for (const auto& p : m.vertices)
    if (dot(p, v) <= h) ++chi;
  for (const auto& e : m.edges)
    if (std::max(dot(m.vertices[e[0]], v), dot(m.vertices[e[1]], v)) <= h) --chi;
  for (const auto& t : m.triangles) {
    const double mh = std::max({dot(m.vertices[t[0]], v), dot(m.vertices[t[1]], v),
                                dot(m.vertices[t[2]], v)});
    if (mh <= h) ++chi;
  }
  return chi;
}

std::vector<int> euler_curve_on_grid(const Mesh& m, const Vec3d& v,
                                     const std::vector<double>& heights) {
  std::vector<int> delta(heights.size() + 1, 0);
  auto add = [&](double maxh, int sign) {
    const auto it = std::lower_bound(heights.begin(), heights.end(), maxh);
    delta[static_cast<size_t>(it - heights.begin())] += sign;
  };
  for (const auto& p : m.vertices) add(dot(p, v), 1);
  for (const auto& e : m.edges)
    add(std::max(dot(m.vertices[e[0]], v), dot(m.vertices[e[1]], v)), -1);
  for (const auto& t : m.triangles)
    add(std::max({dot(m.vertices[t[0]], v), dot(m.vertices[t[1]], v),
                  dot(m.vertices[t[2]], v)}),
        1);
  std::vector<int> chi(heights.size());
  int acc = 0;
  for (size_t i = 0; i < heights.size(); ++i) {
    acc += delta[i];
    chi[i] = acc;
  }
  return chi;
}

std::vector<Vec3d> octahedron_directions(int k) {
  if (k < 1) throw ArgError("octahedron subdivision count must be >= 1");
  const Vec3d axes[6] = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0},
                         {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
  // Faces = sign octants; barycentric grid on each face, projected to S^2.
  std::vector<Vec3d> out;
  auto push_unique = [&](const Vec3d& p) {
    for (const auto& q : out)
      if (norm(p - q) < 1e-9) return;
    out.push_back(p);
  };
  for (int sx : {1, -1})
    for (int sy : {1, -1})
      for (int sz : {1, -1}) {
        const Vec3d a = axes[sx > 0 ? 0 : 1];
        const Vec3d b = axes[sy > 0 ? 2 : 3];
        const Vec3d c = axes[sz > 0 ? 4 : 5];
        for (int i = 0; i <= k; ++i)
          for (int j = 0; j <= k - i; ++j) {
            const int l = k - i - j;
            const Vec3d p = a * (static_cast<double>(i) / k) +
                            b * (static_cast<double>(j) / k) +
                            c * (static_cast<double>(l) / k);
            push_unique(normalized(p));
          }
      }
  return out;
}

}  // namespace ect
