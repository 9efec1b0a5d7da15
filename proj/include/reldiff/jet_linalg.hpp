#pragma once

#include <algorithm>
#include <array>

#include <Eigen/Dense>

#include "reldiff/jet.hpp"

namespace reldiff {

/// Vector-valued jet: one Jet2 per Cartesian component.
using JetVec3 = std::array<Jet2, 3>;

/// 2x2 tensor with jet entries, t[i][j] for indices i, j in {0, 1}.
struct Tensor2J {
  std::array<std::array<Jet2, 2>, 2> t;

  const Jet2& operator()(int i, int j) const { return t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }
  Jet2& operator()(int i, int j) { return t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }
  int order() const;
  Jet2 det() const;
  /// Full inverse via the adjugate; DivisionByZero when det vanishes.
  Tensor2J inverse() const;
  Tensor2J derivative(int axis) const;
  Eigen::Matrix2d value() const;
};

inline JetVec3 operator+(const JetVec3& a, const JetVec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline JetVec3 operator-(const JetVec3& a, const JetVec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline JetVec3 operator-(const JetVec3& a) { return {-a[0], -a[1], -a[2]}; }
inline JetVec3 operator*(const Jet2& s, const JetVec3& v) { return {s * v[0], s * v[1], s * v[2]}; }
inline JetVec3 operator*(double s, const JetVec3& v) { return {s * v[0], s * v[1], s * v[2]}; }

inline Jet2 dot(const JetVec3& a, const JetVec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

inline JetVec3 cross(const JetVec3& a, const JetVec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline JetVec3 derivative(const JetVec3& v, int axis) {
  return {v[0].derivative(axis), v[1].derivative(axis), v[2].derivative(axis)};
}

inline Eigen::Vector3d value(const JetVec3& v) { return {v[0].value(), v[1].value(), v[2].value()}; }

inline int order(const JetVec3& v) { return std::min({v[0].order(), v[1].order(), v[2].order()}); }

/// The zero vector at a given order.
inline JetVec3 zero_vec(int order) { return {Jet2(order), Jet2(order), Jet2(order)}; }

}  // namespace reldiff
