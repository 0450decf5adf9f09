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

#include "ectkit/align.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <random>

#include "ectkit/errors.hpp"

namespace ect {

namespace {

constexpr double kPi = 3.14159265358979323846;

double wrap_2pi(double t) {
  t = std::fmod(t, 2 * kPi);
  if (t < 0) t += 2 * kPi;
  return t;
}

template <class T>
Mat3<T> euler_matrix_t(const T& a, const T& b, const T& g) {
  using std::cos;
  using std::sin;
  Mat3<T> rz = Mat3<T>::identity();
  rz.m[0][0] = cos(a);
  rz.m[0][1] = -sin(a);
  rz.m[1][0] = sin(a);
  rz.m[1][1] = cos(a);
  Mat3<T> ry = Mat3<T>::identity();
  ry.m[0][0] = cos(b);
  ry.m[0][2] = sin(b);
  ry.m[2][0] = -sin(b);
  ry.m[2][2] = cos(b);
  Mat3<T> rx = Mat3<T>::identity();
  rx.m[1][1] = cos(g);
  rx.m[1][2] = -sin(g);
  rx.m[2][1] = sin(g);
  rx.m[2][2] = cos(g);
  return rz * (ry * rx);
}

// Objective (and, with T = Dual3, its derivative in the angles) as the sum
// of term-pair integrals between x and rotated y, in deterministic chunked
// pairwise order. batch restricts the x-side term indices.
template <class T>
T objective_t(const ProtoTransform& x, const ProtoTransform& y,
              const Mat3<T>& rot, const MetricOptions& opts,
              const std::vector<int>* batch) {
  if (x.dim != 3 || y.dim != 3)
    throw ArgError("alignment expects 3D proto-transforms");

  std::vector<PolygonT<T>> ypolys;
  std::vector<Vec3<T>> yanchors;
  ypolys.reserve(y.terms.size());
  for (const auto& t : y.terms) {
    if constexpr (std::is_same_v<T, double>) {
      ypolys.push_back(rotate_polygon(t.support, rot));
      yanchors.push_back(rot.apply(t.anchor));
    } else {
      ypolys.push_back(rotate_polygon(promote(t.support), rot));
      yanchors.push_back(rot.apply(promote(t.anchor)));
    }
  }

  std::vector<int> all;
  if (!batch) {
    all.resize(x.terms.size());
    for (size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
    batch = &all;
  }

  std::vector<Cap> caps_x, caps_y;
  if (opts.cap_prefilter) {
    caps_x.reserve(batch->size());
    for (int i : *batch) caps_x.push_back(bounding_cap(x.terms[i].support));
    caps_y.reserve(ypolys.size());
    for (const auto& p : ypolys) {
      if constexpr (std::is_same_v<T, double>)
        caps_y.push_back(bounding_cap(p));
      else
        caps_y.push_back(bounding_cap(to_value(p)));
    }
  }

  const size_t na = batch->size(), nb = ypolys.size();
  const size_t total = na * nb;
  constexpr size_t kChunk = 4096;
  std::vector<T> sums;
  sums.reserve((total + kChunk - 1) / kChunk);
  T acc = T(0.0);
  for (size_t idx = 0; idx < total; ++idx) {
    if (idx % kChunk == 0 && idx > 0) {
      sums.push_back(acc);
      acc = T(0.0);
    }
    const size_t bi = idx / nb, j = idx % nb;
    const int i = (*batch)[bi];
    if (opts.cap_prefilter && caps_disjoint(caps_x[bi], caps_y[j])) continue;
    const T pair = term_pair_integral_t<T>(x.terms[i].support,
                                           x.terms[i].anchor, ypolys[j],
                                           yanchors[j]);
    acc += pair * T(static_cast<double>(x.terms[i].gain) * y.terms[j].gain);
  }
  sums.push_back(acc);
  while (sums.size() > 1) {
    std::vector<T> next;
    for (size_t i = 0; i + 1 < sums.size(); i += 2)
      next.push_back(sums[i] + sums[i + 1]);
    if (sums.size() % 2) next.push_back(sums.back());
    sums = std::move(next);
  }
  return sums[0];
}

}  // namespace

Mat3d euler_to_matrix(const EulerAngles& e) {
  return euler_matrix_t<double>(e.alpha, e.beta, e.gamma);
}

EulerAngles canonical(const EulerAngles& e) {
  double a = wrap_2pi(e.alpha), b = wrap_2pi(e.beta), g = wrap_2pi(e.gamma);
  if (g >= kPi) {
    a = wrap_2pi(a - kPi);
    b = wrap_2pi(kPi - b);
    g -= kPi;
  }
  return {a, b, g};
}

double so3_distance(const Mat3d& a, const Mat3d& b) {
  double tr = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) tr += a.m[i][k] * b.m[i][k];
  return std::acos(std::clamp((tr - 1.0) / 2.0, -1.0, 1.0));
}

EulerAngles matrix_to_euler(const Mat3d& r) {
  const auto& m = r.m;
  const double cb = std::hypot(m[0][0], m[1][0]);
  EulerAngles e;
  e.beta = std::atan2(-m[2][0], cb);
  if (cb > 1e-12) {
    e.alpha = std::atan2(m[1][0], m[0][0]);
    e.gamma = std::atan2(m[2][1], m[2][2]);
  } else {
    e.alpha = 0.0;
    e.gamma = std::atan2(-m[1][2], m[1][1]);
  }
  return canonical(e);
}

EulerAngles random_rotation(uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  double q[4];
  double n2 = 0.0;
  do {
    n2 = 0.0;
    for (double& qi : q) {
      qi = gauss(rng);
      n2 += qi * qi;
    }
  } while (n2 < 1e-12);
  const double inv = 1.0 / std::sqrt(n2);
  const double w = q[0] * inv, x = q[1] * inv, y = q[2] * inv, z = q[3] * inv;
  Mat3d r;
  r.m = {{{1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)},
          {2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)},
          {2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)}}};
  return matrix_to_euler(r);
}

double alignment_objective(const ProtoTransform& x, const ProtoTransform& y,
                           const EulerAngles& e, const MetricOptions& opts) {
  return objective_t<double>(x, y, euler_to_matrix(e), opts, nullptr);
}

void write_trace_csv(const std::string& path, const SearchTrace& trace) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open for writing: " + path);
  out << "iteration,alpha,beta,gamma,objective,so3_distance\n";
  char buf[256];
  for (const auto& row : trace.rows) {
    std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,%.17g,%.17g,",
                  row.iteration, row.angles.alpha, row.angles.beta,
                  row.angles.gamma, row.objective);
    out << buf;
    if (row.so3_to_truth) {
      std::snprintf(buf, sizeof(buf), "%.17g", *row.so3_to_truth);
      out << buf;
    }
    out << '\n';
  }
}

namespace {

std::optional<double> truth_distance(const Mat3d* truth, const EulerAngles& e) {
  if (!truth) return std::nullopt;
  return so3_distance(*truth, euler_to_matrix(e));
}

}  // namespace

AlignResult adaptive_grid_search(const ProtoTransform& x,
                                 const ProtoTransform& y, int iters,
                                 const MetricOptions& opts,
                                 const Mat3d* truth) {
  if (iters < 1) throw ArgError("grid search needs at least one iteration");
  AlignResult res;
  res.objective = -std::numeric_limits<double>::infinity();

  auto consider = [&](const EulerAngles& e) {
    const double obj = alignment_objective(x, y, e, opts);
    if (obj > res.objective) {
      res.objective = obj;
      res.angles = e;
    }
  };

  // Iteration 1: the fixed 8 x 8 x 5 grid, spacing pi/4.
  for (int ia = 0; ia < 8; ++ia)
    for (int ib = 0; ib < 8; ++ib)
      for (int ig = 0; ig < 5; ++ig)
        consider({ia * kPi / 4, ib * kPi / 4, ig * kPi / 4});
  res.trace.rows.push_back(
      {1, res.angles, res.objective, truth_distance(truth, res.angles)});

  double delta = kPi / 4;
  for (int it = 2; it <= iters; ++it) {
    const EulerAngles c = res.angles;
    const double off[4] = {-3 * delta / 4, -delta / 4, delta / 4,
                           3 * delta / 4};
    for (double da : off)
      for (double db : off)
        for (double dg : off)
          consider({c.alpha + da, c.beta + db, c.gamma + dg});
    res.trace.rows.push_back(
        {it, res.angles, res.objective, truth_distance(truth, res.angles)});
    delta /= 2;
  }
  return res;
}

Gradient objective_gradient(const ProtoTransform& x, const ProtoTransform& y,
                            const EulerAngles& e, const MetricOptions& opts,
                            bool fd_check) {
  const Dual3 a = Dual3::variable(e.alpha, 0);
  const Dual3 b = Dual3::variable(e.beta, 1);
  const Dual3 g = Dual3::variable(e.gamma, 2);
  const Dual3 obj = objective_t<Dual3>(x, y, euler_matrix_t<Dual3>(a, b, g),
                                       opts, nullptr);
  Gradient out;
  out.objective = obj.v;
  out.g = obj.d;

  if (fd_check) {
    const double h = 1e-5;
    double gnorm = 0.0, errnorm = 0.0;
    for (int k = 0; k < 3; ++k) {
      EulerAngles ep = e, em = e;
      (k == 0 ? ep.alpha : k == 1 ? ep.beta : ep.gamma) += h;
      (k == 0 ? em.alpha : k == 1 ? em.beta : em.gamma) -= h;
      const double fd = (alignment_objective(x, y, ep, opts) -
                         alignment_objective(x, y, em, opts)) /
                        (2 * h);
      errnorm += (fd - out.g[k]) * (fd - out.g[k]);
      gnorm += out.g[k] * out.g[k];
    }
    if (std::sqrt(errnorm) > 1e-3 * std::max(std::sqrt(gnorm), 1e-12))
      out.non_smooth_warning = true;
  }
  return out;
}

std::array<double, 3> stochastic_gradient_step(const ProtoTransform& x,
                                               const ProtoTransform& y,
                                               const EulerAngles& e,
                                               const std::vector<int>& batch,
                                               const MetricOptions& opts) {
  if (batch.empty()) throw ArgError("empty stochastic gradient batch");
  const Dual3 a = Dual3::variable(e.alpha, 0);
  const Dual3 b = Dual3::variable(e.beta, 1);
  const Dual3 g = Dual3::variable(e.gamma, 2);
  const Dual3 obj = objective_t<Dual3>(x, y, euler_matrix_t<Dual3>(a, b, g),
                                       opts, &batch);
  const double scale =
      static_cast<double>(x.terms.size()) / static_cast<double>(batch.size());
  return {obj.d[0] * scale, obj.d[1] * scale, obj.d[2] * scale};
}

AlignResult gradient_ascent(const ProtoTransform& x, const ProtoTransform& y,
                            const EulerAngles& start,
                            const AscentSchedule& schedule,
                            const MetricOptions& opts, const Mat3d* truth) {
  AlignResult res;
  res.angles = start;
  res.objective = -std::numeric_limits<double>::infinity();

  EulerAngles e = start;
  for (int it = 1; it <= schedule.max_iters; ++it) {
    const Gradient g = objective_gradient(x, y, e, opts);
    if (g.objective > res.objective) {
      res.objective = g.objective;
      res.angles = e;
    }
    res.trace.rows.push_back({it, e, g.objective, truth_distance(truth, e)});
    const double gn =
        std::sqrt(g.g[0] * g.g[0] + g.g[1] * g.g[1] + g.g[2] * g.g[2]);
    if (gn < schedule.grad_tol) {
      if (it == 1) res.zero_gradient_start = true;
      break;
    }
    const double lam = schedule.lambda(it);
    e.alpha += lam * g.g[0] / gn;
    e.beta += lam * g.g[1] / gn;
    e.gamma += lam * g.g[2] / gn;
  }
  return res;
}

}  // namespace ect
