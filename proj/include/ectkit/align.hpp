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
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ectkit/metric.hpp"
#include "ectkit/transform.hpp"

namespace ect {

// z-y-x Euler angles; euler_to_matrix is Rz(alpha) * Ry(beta) * Rx(gamma).
struct EulerAngles {
  double alpha = 0, beta = 0, gamma = 0;
};

Mat3d euler_to_matrix(const EulerAngles& e);

// Representative with alpha, beta in [0, 2*pi) and gamma in [0, pi), using
// the rotation-preserving identification
// (alpha, beta, gamma) ~ (alpha + pi, pi - beta, gamma + pi).
EulerAngles canonical(const EulerAngles& e);

// Geodesic angle arccos((trace(A B^T) - 1) / 2), clamped.
double so3_distance(const Mat3d& a, const Mat3d& b);

// ZYX Euler extraction; euler_to_matrix(matrix_to_euler(R)) == R.
EulerAngles matrix_to_euler(const Mat3d& r);

// Haar-uniform rotation from a uniform unit quaternion; deterministic per seed.
EulerAngles random_rotation(uint64_t seed);

// <x, R(e) y>: the generalized cross-correlation being maximized.
double alignment_objective(const ProtoTransform& x, const ProtoTransform& y,
                           const EulerAngles& e, const MetricOptions& opts = {});

struct TraceRow {
  int iteration = 0;
  EulerAngles angles;
  double objective = 0;
  std::optional<double> so3_to_truth;
};

struct SearchTrace {
  std::vector<TraceRow> rows;
};

void write_trace_csv(const std::string& path, const SearchTrace& trace);

struct AlignResult {
  EulerAngles angles;
  double objective = 0;
  SearchTrace trace;
  bool zero_gradient_start = false;
};

// Iteration 1 evaluates the fixed 8 x 8 x 5 grid (spacing pi/4); each later
// iteration recenters on the best point so far and evaluates the 4^3 grid at
// c +/- delta/4, c +/- 3*delta/4 per axis, then halves delta. Best over all
// evaluations is returned; the best-objective trace is non-decreasing.
AlignResult adaptive_grid_search(const ProtoTransform& x,
                                 const ProtoTransform& y, int iters,
                                 const MetricOptions& opts = {},
                                 const Mat3d* truth = nullptr);

struct Gradient {
  std::array<double, 3> g{0, 0, 0};
  double objective = 0;
  bool non_smooth_warning = false;
};

// Forward-mode derivative of the objective with respect to (alpha, beta,
// gamma): dual numbers flow through the rotation into every term-pair
// closed form. With fd_check, disagreement with central differences beyond
// 1e-3 relative marks the point as non-smooth.
Gradient objective_gradient(const ProtoTransform& x, const ProtoTransform& y,
                            const EulerAngles& e, const MetricOptions& opts = {},
                            bool fd_check = false);

// Gradient of the partial pair sum over (batch x all terms of y), rescaled
// by |terms(x)| / |batch|; unbiased estimator of objective_gradient.
std::array<double, 3> stochastic_gradient_step(const ProtoTransform& x,
                                               const ProtoTransform& y,
                                               const EulerAngles& e,
                                               const std::vector<int>& batch,
                                               const MetricOptions& opts = {});

struct AscentSchedule {
  int max_iters = 70;
  double grad_tol = 1e-8;
  // lambda = 1 for iterations 1-30, 0.1 for 31-50, 0.01 after.
  double lambda(int iteration) const {
    if (iteration <= 30) return 1.0;
    if (iteration <= 50) return 0.1;
    return 0.01;
  }
};

// Normalized-gradient ascent e <- e + lambda * g/|g|; returns the best-seen
// angles, not the last iterate.
AlignResult gradient_ascent(const ProtoTransform& x, const ProtoTransform& y,
                            const EulerAngles& start,
                            const AscentSchedule& schedule = {},
                            const MetricOptions& opts = {},
                            const Mat3d* truth = nullptr);

}  // namespace ect
