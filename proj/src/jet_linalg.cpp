#include "reldiff/jet_linalg.hpp"

#include <algorithm>

namespace reldiff {

int Tensor2J::order() const {
  return std::min({t[0][0].order(), t[0][1].order(), t[1][0].order(), t[1][1].order()});
}

Jet2 Tensor2J::det() const { return t[0][0] * t[1][1] - t[0][1] * t[1][0]; }

Tensor2J Tensor2J::inverse() const {
  const Jet2 inv_det = reciprocal(det());
  Tensor2J out;
  out.t[0][0] = t[1][1] * inv_det;
  out.t[0][1] = -t[0][1] * inv_det;
  out.t[1][0] = -t[1][0] * inv_det;
  out.t[1][1] = t[0][0] * inv_det;
  return out;
}

Tensor2J Tensor2J::derivative(int axis) const {
  Tensor2J out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out(i, j) = (*this)(i, j).derivative(axis);
  return out;
}

Eigen::Matrix2d Tensor2J::value() const {
  Eigen::Matrix2d m;
  m << t[0][0].value(), t[0][1].value(), t[1][0].value(), t[1][1].value();
  return m;
}

}  // namespace reldiff
