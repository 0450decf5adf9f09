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
#include <cmath>

namespace ect {

// Forward-mode dual number carrying three partial derivatives.
// Branch decisions (comparisons) are taken on the value part.
struct Dual3 {
  double v = 0.0;
  std::array<double, 3> d{0.0, 0.0, 0.0};

  Dual3() = default;
  Dual3(double value) : v(value) {}  // NOLINT: implicit promotion intended
  Dual3(double value, const std::array<double, 3>& deriv) : v(value), d(deriv) {}

  static Dual3 variable(double value, int index) {
    Dual3 x(value);
    x.d[index] = 1.0;
    return x;
  }

  Dual3 operator-() const { return {-v, {-d[0], -d[1], -d[2]}}; }

  Dual3& operator+=(const Dual3& o) {
    v += o.v;
    for (int i = 0; i < 3; ++i) d[i] += o.d[i];
    return *this;
  }
  Dual3& operator-=(const Dual3& o) {
    v -= o.v;
    for (int i = 0; i < 3; ++i) d[i] -= o.d[i];
    return *this;
  }
  Dual3& operator*=(const Dual3& o) {
    for (int i = 0; i < 3; ++i) d[i] = d[i] * o.v + v * o.d[i];
    v *= o.v;
    return *this;
  }
  Dual3& operator/=(const Dual3& o) {
    const double inv = 1.0 / o.v;
    for (int i = 0; i < 3; ++i) d[i] = (d[i] - v * inv * o.d[i]) * inv;
    v *= inv;
    return *this;
  }
};

inline Dual3 operator+(Dual3 a, const Dual3& b) { return a += b; }
inline Dual3 operator-(Dual3 a, const Dual3& b) { return a -= b; }
inline Dual3 operator*(Dual3 a, const Dual3& b) { return a *= b; }
inline Dual3 operator/(Dual3 a, const Dual3& b) { return a /= b; }

inline bool operator<(const Dual3& a, const Dual3& b) { return a.v < b.v; }
inline bool operator>(const Dual3& a, const Dual3& b) { return a.v > b.v; }
inline bool operator<=(const Dual3& a, const Dual3& b) { return a.v <= b.v; }
inline bool operator>=(const Dual3& a, const Dual3& b) { return a.v >= b.v; }

inline Dual3 chain(double fv, double fprime, const Dual3& x) {
  return {fv, {fprime * x.d[0], fprime * x.d[1], fprime * x.d[2]}};
}

inline Dual3 sqrt(const Dual3& x) {
  const double r = std::sqrt(x.v);
  return chain(r, 0.5 / r, x);
}
inline Dual3 sin(const Dual3& x) { return chain(std::sin(x.v), std::cos(x.v), x); }
inline Dual3 cos(const Dual3& x) { return chain(std::cos(x.v), -std::sin(x.v), x); }
inline Dual3 fabs(const Dual3& x) { return x.v < 0.0 ? -x : x; }

inline Dual3 atan2(const Dual3& y, const Dual3& x) {
  const double den = x.v * x.v + y.v * y.v;
  Dual3 r;
  r.v = std::atan2(y.v, x.v);
  for (int i = 0; i < 3; ++i) r.d[i] = (x.v * y.d[i] - y.v * x.d[i]) / den;
  return r;
}

// Scalar access helpers so templated geometry can branch on values.
inline double value(double x) { return x; }
inline double value(const Dual3& x) { return x.v; }

}  // namespace ect
