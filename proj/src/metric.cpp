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

#include "ectkit/metric.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "ectkit/errors.hpp"

namespace ect {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Fixed-size chunks summed independently, then reduced pairwise; the result
// does not depend on the number of worker threads.
double deterministic_reduce(std::vector<double> sums) {
  if (sums.empty()) return 0.0;
  while (sums.size() > 1) {
    std::vector<double> next;
    next.reserve((sums.size() + 1) / 2);
    for (size_t i = 0; i + 1 < sums.size(); i += 2)
      next.push_back(sums[i] + sums[i + 1]);
    if (sums.size() % 2) next.push_back(sums.back());
    sums = std::move(next);
  }
  return sums[0];
}

}  // namespace

double inner_product(const ProtoTransform& a, const ProtoTransform& b,
                     const MetricOptions& opts) {
  if (a.dim != b.dim || a.dim != 3)
    throw ArgError("inner_product expects two 3D proto-transforms");

  std::vector<Cap> caps_a(a.terms.size()), caps_b(b.terms.size());
  if (opts.cap_prefilter) {
    for (size_t i = 0; i < a.terms.size(); ++i)
      caps_a[i] = bounding_cap(a.terms[i].support);
    for (size_t j = 0; j < b.terms.size(); ++j)
      caps_b[j] = bounding_cap(b.terms[j].support);
  }

  const size_t na = a.terms.size(), nb = b.terms.size();
  const size_t total = na * nb;
  constexpr size_t kChunk = 4096;
  const size_t nchunks = (total + kChunk - 1) / kChunk;
  std::vector<double> chunk_sums(nchunks, 0.0);

  auto run_chunk = [&](size_t c) {
    const size_t lo = c * kChunk;
    const size_t hi = std::min(lo + kChunk, total);
    double s = 0.0;
    for (size_t idx = lo; idx < hi; ++idx) {
      const size_t i = idx / nb, j = idx % nb;
      if (opts.cap_prefilter && caps_disjoint(caps_a[i], caps_b[j])) continue;
      s += term_pair_integral(a.terms[i], b.terms[j]);
    }
    chunk_sums[c] = s;
  };

  const int jobs = std::max(1, opts.jobs);
  if (jobs == 1 || nchunks < 2) {
    for (size_t c = 0; c < nchunks; ++c) run_chunk(c);
  } else {
    std::vector<std::thread> pool;
    std::atomic<size_t> cursor{0};
    for (int t = 0; t < jobs; ++t)
      pool.emplace_back([&] {
        for (size_t c = cursor.fetch_add(1); c < nchunks;
             c = cursor.fetch_add(1))
          run_chunk(c);
      });
    for (auto& th : pool) th.join();
  }
  return deterministic_reduce(std::move(chunk_sums));
}

namespace {

// Stable ordering on proto-transforms so that squared_distance(a, b) and
// squared_distance(b, a) perform the identical float operations.
bool proto_less(const ProtoTransform& a, const ProtoTransform& b) {
  if (a.terms.size() != b.terms.size())
    return a.terms.size() < b.terms.size();
  for (size_t i = 0; i < a.terms.size(); ++i) {
    const auto& s = a.terms[i];
    const auto& t = b.terms[i];
    if (s.gain != t.gain) return s.gain < t.gain;
    if (s.anchor.x != t.anchor.x) return s.anchor.x < t.anchor.x;
    if (s.anchor.y != t.anchor.y) return s.anchor.y < t.anchor.y;
    if (s.anchor.z != t.anchor.z) return s.anchor.z < t.anchor.z;
  }
  return false;
}

}  // namespace

double squared_distance(const ProtoTransform& a, const ProtoTransform& b,
                        const MetricOptions& opts) {
  const ProtoTransform* p = &a;
  const ProtoTransform* q = &b;
  if (proto_less(*q, *p)) std::swap(p, q);
  const double d2 =
      inner_product(*p, *p, opts) - 2 * inner_product(*p, *q, opts) +
      inner_product(*q, *q, opts);
  if (d2 < -1e-9)
    throw DegeneracyError("negative squared distance: " + std::to_string(d2));
  return std::max(d2, 0.0);
}

DistanceMatrix distance_matrix(const std::vector<ProtoTransform>& collection,
                               const std::vector<std::string>& labels,
                               const MetricOptions& opts, bool verbose) {
  if (collection.size() < 2)
    throw ArgError("distance matrix needs at least two transforms");
  if (labels.size() != collection.size())
    throw ArgError("label count mismatch");

  const size_t n = collection.size();
  std::vector<double> self(n);
  for (size_t i = 0; i < n; ++i) self[i] = inner_product(collection[i], collection[i], opts);

  DistanceMatrix out;
  out.labels = labels;
  out.d.assign(n, std::vector<double>(n, 0.0));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) {
      const double cross = inner_product(collection[i], collection[j], opts);
      const double d2 = self[i] - 2 * cross + self[j];
      if (d2 < -1e-9)
        throw DegeneracyError("negative squared distance in matrix");
      out.d[i][j] = out.d[j][i] = std::sqrt(std::max(d2, 0.0));
      if (verbose)
        std::cerr << "pair " << labels[i] << " / " << labels[j] << ": "
                  << out.d[i][j] << '\n';
    }
  return out;
}

namespace {

std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace

void write_distance_csv(const std::string& path, const DistanceMatrix& m) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open for writing: " + path);
  out << "id";
  for (const auto& l : m.labels) out << ',' << l;
  out << '\n';
  for (size_t i = 0; i < m.labels.size(); ++i) {
    out << m.labels[i];
    for (size_t j = 0; j < m.labels.size(); ++j) out << ',' << fmt17(m.d[i][j]);
    out << '\n';
  }
}

DistanceMatrix read_distance_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  auto split = [](const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    return cells;
  };
  std::string line;
  if (!std::getline(in, line)) throw ParseError(path + ": empty csv");
  auto header = split(line);
  if (header.size() < 3 || header[0] != "id")
    throw ParseError(path + ": malformed header");
  DistanceMatrix m;
  m.labels.assign(header.begin() + 1, header.end());
  const size_t n = m.labels.size();
  m.d.assign(n, std::vector<double>(n, 0.0));
  for (size_t i = 0; i < n; ++i) {
    if (!std::getline(in, line)) throw ParseError(path + ": truncated matrix");
    auto cells = split(line);
    if (cells.size() != n + 1 || cells[0] != m.labels[i])
      throw ParseError(path + ": bad row " + std::to_string(i));
    for (size_t j = 0; j < n; ++j) m.d[i][j] = std::stod(cells[j + 1]);
  }
  return m;
}

DiscreteEct discrete_ect(const Mesh& m, const std::vector<Vec3d>& directions,
                         int n_heights) {
  if (n_heights < 2) throw ArgError("need at least two heights");
  DiscreteEct out;
  out.directions = directions;
  out.heights.resize(n_heights);
  for (int j = 0; j < n_heights; ++j)
    out.heights[j] = -1.0 + 2.0 * j / (n_heights - 1);
  out.values.reserve(directions.size());
  for (const auto& v : directions)
    out.values.push_back(euler_curve_on_grid(m, v, out.heights));
  return out;
}

double discrete_distance(const DiscreteEct& a, const DiscreteEct& b,
                         bool weighted) {
  if (a.directions.size() != b.directions.size() ||
      a.heights.size() != b.heights.size())
    throw ArgError("discrete ECT grid mismatch");
  for (size_t i = 0; i < a.directions.size(); ++i)
    if (norm(a.directions[i] - b.directions[i]) > 1e-12)
      throw ArgError("discrete ECT direction grids differ");

  double s = 0.0;
  for (size_t i = 0; i < a.values.size(); ++i)
    for (size_t j = 0; j < a.values[i].size(); ++j) {
      const double diff = a.values[i][j] - b.values[i][j];
      s += diff * diff;
    }
  if (weighted)
    s *= (4 * kPi / static_cast<double>(a.directions.size())) *
         (2.0 / static_cast<double>(a.heights.size()));
  return std::sqrt(s);
}

double mantel_correlation(const DistanceMatrix& a, const DistanceMatrix& b) {
  const size_t n = a.labels.size();
  if (b.labels.size() != n || n < 3)
    throw ArgError("mantel correlation needs two matrices of equal size >= 3");
  for (size_t i = 0; i < n; ++i)
    if (a.labels[i] != b.labels[i]) throw ArgError("label mismatch");

  std::vector<double> x, y;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) {
      x.push_back(a.d[i][j]);
      y.push_back(b.d[i][j]);
    }
  const double nn = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (size_t k = 0; k < x.size(); ++k) {
    mx += x[k];
    my += y[k];
  }
  mx /= nn;
  my /= nn;
  double sxy = 0, sxx = 0, syy = 0;
  for (size_t k = 0; k < x.size(); ++k) {
    sxy += (x[k] - mx) * (y[k] - my);
    sxx += (x[k] - mx) * (x[k] - mx);
    syy += (y[k] - my) * (y[k] - my);
  }
  if (sxx < 1e-300 || syy < 1e-300)
    throw DegeneracyError("zero variance in distance matrix");
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace ect
