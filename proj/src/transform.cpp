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

#include "ectkit/transform.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "ectkit/arrangement.hpp"
#include "ectkit/errors.hpp"

namespace ect {

int local_gain(const Star& s, const std::vector<Vec3d>& positions,
               const Vec3d& v, double tie_tol) {
  const double hc = dot(positions[s.center], v);
  auto below = [&](int j) {
    const double hj = dot(positions[j], v);
    if (std::fabs(hj - hc) < tie_tol)
      throw DegeneracyError("height tie between vertex " +
                            std::to_string(s.center) + " and its neighbor " +
                            std::to_string(j));
    return hj < hc;
  };
  int gain = 1;  // the center vertex itself
  for (const auto& e : s.edges) {
    const int other = e[0] == s.center ? e[1] : e[0];
    if (below(other)) --gain;
  }
  for (const auto& t : s.triangles) {
    bool all_below = true;
    for (int j : t)
      if (j != s.center && !below(j)) all_below = false;
    if (all_below) ++gain;
  }
  return gain;
}

namespace {

// A point strictly inside the cell and at least 1e-9 off every circle.
Vec3d cell_interior_point(const Polygon& cell,
                          const std::vector<GreatCircle>& circles) {
  auto ok = [&](const Vec3d& p) {
    for (const auto& c : circles)
      if (std::fabs(dot(p, c.normal)) < 1e-9) return false;
    const size_t n = cell.verts.size();
    for (size_t i = 0; i < n; ++i)
      if (dot(p, cross(cell.verts[i], cell.verts[(i + 1) % n])) < 1e-12)
        return false;
    return true;
  };

  const Vec3d m = vector_area(cell);
  std::vector<Vec3d> candidates;
  if (norm(m) > 1e-14) candidates.push_back(normalized(m));
  Vec3d c{0, 0, 0};
  for (const auto& v : cell.verts) c += v;
  if (norm(c) > 1e-12) candidates.push_back(normalized(c));
  if (!candidates.empty())
    for (const auto& v : cell.verts)
      candidates.push_back(normalized(candidates.front() * 3.0 + v));
  for (const auto& p : candidates)
    if (ok(p)) return p;
  throw DegeneracyError("no interior point found for arrangement cell");
}

// Fuses two convex cells sharing a boundary chain; returns false when the
// union would not be convex (or the cells do not actually share an edge).
bool try_merge(const Polygon& a, const Polygon& b, Polygon* out) {
  auto key = [](const Vec3d& p, const Vec3d& q) {
    std::ostringstream ss;
    ss.precision(17);
    ss << p.x << ',' << p.y << ',' << p.z << '|' << q.x << ',' << q.y << ','
       << q.z;
    return ss.str();
  };
  std::map<std::string, std::pair<Vec3d, Vec3d>> edges;
  auto add_cycle = [&](const Polygon& p) {
    const size_t n = p.verts.size();
    for (size_t i = 0; i < n; ++i) {
      const Vec3d& s = p.verts[i];
      const Vec3d& t = p.verts[(i + 1) % n];
      const auto rev = key(t, s);
      if (auto it = edges.find(rev); it != edges.end())
        edges.erase(it);  // shared edge cancels
      else
        edges[key(s, t)] = {s, t};
    }
  };
  add_cycle(a);
  add_cycle(b);
  if (edges.size() < 3) return false;

  // Chain the remaining directed edges into a single cycle.
  std::map<std::string, std::pair<Vec3d, Vec3d>> by_src;
  auto vkey = [](const Vec3d& p) {
    std::ostringstream ss;
    ss.precision(17);
    ss << p.x << ',' << p.y << ',' << p.z;
    return ss.str();
  };
  for (const auto& [k, e] : edges) {
    if (by_src.count(vkey(e.first))) return false;  // pinched union
    by_src[vkey(e.first)] = e;
  }
  Polygon u;
  std::set<std::string> seen;
  Vec3d cur = edges.begin()->second.first;
  for (size_t i = 0; i < edges.size(); ++i) {
    const auto it = by_src.find(vkey(cur));
    if (it == by_src.end()) return false;
    if (!seen.insert(vkey(cur)).second) return false;  // disconnected union
    u.verts.push_back(cur);
    cur = it->second.second;
  }
  if (norm(cur - u.verts.front()) > 1e-12) return false;

  // Keep only convex unions so downstream clipping stays valid.
  const size_t n = u.verts.size();
  for (size_t i = 0; i < n; ++i) {
    const Vec3d en = cross(u.verts[i], u.verts[(i + 1) % n]);
    for (const auto& v : u.verts)
      if (dot(v, en) < -1e-9) return false;
  }
  *out = std::move(u);
  return true;
}

void merge_equal_gain(std::vector<std::pair<Polygon, int>>* cells) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < cells->size() && !changed; ++i)
      for (size_t j = i + 1; j < cells->size() && !changed; ++j) {
        if ((*cells)[i].second != (*cells)[j].second) continue;
        Polygon u;
        if (!try_merge((*cells)[i].first, (*cells)[j].first, &u)) continue;
        (*cells)[i].first = std::move(u);
        cells->erase(cells->begin() + static_cast<long>(j));
        changed = true;
      }
  }
}

}  // namespace

std::vector<std::pair<Polygon, int>> vertex_regions(const Mesh& m, int i,
                                                    bool merge) {
  const Star s = star(m, i);
  std::vector<GreatCircle> circles;
  for (int j : s.link) {
    if (norm(m.vertices[i] - m.vertices[j]) < 1e-12)
      throw DegeneracyError("coincident vertices " + std::to_string(i) + ", " +
                            std::to_string(j));
    circles.push_back(bisector_circle(m.vertices[i], m.vertices[j]));
  }

  const Arrangement arr = build_arrangement(circles);
  std::vector<Polygon> cells =
      arr.full_sphere ? hemisphere_pair(GreatCircle{{0, 0, 1}}) : arr.cells;

  std::vector<std::pair<Polygon, int>> out;
  for (auto& cell : cells) {
    const Vec3d p = cell_interior_point(cell, arr.circles);
    const int g = local_gain(s, m.vertices, p);
    if (g != 0) out.emplace_back(std::move(cell), g);
  }
  if (merge) merge_equal_gain(&out);
  return out;
}

ProtoTransform build_proto_transform(const Mesh& m, bool merge) {
  ProtoTransform t;
  t.dim = 3;
  for (size_t i = 0; i < m.vertices.size(); ++i) {
    if (norm(m.vertices[i]) > 1.0 + 1e-12)
      throw ArgError("mesh is not normalized to the unit ball");
    std::vector<std::pair<Polygon, int>> regions;
    try {
      regions = vertex_regions(m, static_cast<int>(i), merge);
    } catch (const DegeneracyError& e) {
      throw DegeneracyError("vertex " + std::to_string(i) + ": " + e.what());
    }
    for (auto& [poly, gain] : regions)
      t.terms.push_back({gain, m.vertices[i], std::move(poly)});
  }
  return t;
}

int evaluate_ect(const ProtoTransform& t, const Vec3d& v, double h) {
  int chi = 0;
  for (const auto& term : t.terms)
    if (dot(term.anchor, v) <= h && polygon_contains(term.support, v, 1e-12))
      chi += term.gain;
  return chi;
}

ProtoTransform rotate_transform(const ProtoTransform& t, const Mat3d& r) {
  check_rotation(r);
  ProtoTransform out;
  out.dim = t.dim;
  out.mesh_id = t.mesh_id;
  out.terms.reserve(t.terms.size());
  for (const auto& term : t.terms)
    out.terms.push_back(
        {term.gain, r.apply(term.anchor), rotate_polygon(term.support, r)});
  return out;
}

namespace {

std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace

void write_ectp(std::ostream& out, const ProtoTransform& t) {
  out << "ECTP 1 " << t.dim << ' ' << t.terms.size() << '\n';
  for (const auto& term : t.terms) {
    out << "g= " << term.gain << " a= " << fmt17(term.anchor.x) << ' '
        << fmt17(term.anchor.y) << ' ' << fmt17(term.anchor.z) << " p= "
        << term.support.verts.size();
    for (const auto& v : term.support.verts)
      out << ' ' << fmt17(v.x) << ' ' << fmt17(v.y) << ' ' << fmt17(v.z);
    out << '\n';
  }
}

void write_ectp_file(const std::string& path, const ProtoTransform& t) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open for writing: " + path);
  write_ectp(out, t);
}

ProtoTransform read_ectp(std::istream& in, const std::string& name) {
  auto fail = [&](const std::string& what) -> void {
    throw ParseError(name + ": " + what);
  };
  std::string magic;
  int version = 0, dim = 0;
  size_t nterms = 0;
  if (!(in >> magic >> version >> dim >> nterms) || magic != "ECTP" ||
      version != 1)
    fail("malformed ECTP header");
  if (dim != 2 && dim != 3) fail("bad dimension in ECTP header");
  ProtoTransform t;
  t.dim = dim;
  t.mesh_id = name;
  t.terms.reserve(nterms);
  for (size_t i = 0; i < nterms; ++i) {
    std::string tag;
    Term term;
    size_t nv = 0;
    if (!(in >> tag) || tag != "g=") fail("expected 'g=' in term");
    if (!(in >> term.gain)) fail("bad gain");
    if (!(in >> tag) || tag != "a=") fail("expected 'a=' in term");
    if (!(in >> term.anchor.x >> term.anchor.y >> term.anchor.z))
      fail("bad anchor");
    if (!(in >> tag) || tag != "p=") fail("expected 'p=' in term");
    if (!(in >> nv) || nv < 3) fail("bad polygon vertex count");
    term.support.verts.resize(nv);
    for (auto& v : term.support.verts)
      if (!(in >> v.x >> v.y >> v.z)) fail("bad polygon vertex");
    t.terms.push_back(std::move(term));
  }
  return t;
}

ProtoTransform read_ectp_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  return read_ectp(in, path);
}

}  // namespace ect
