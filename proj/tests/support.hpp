#pragma once

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "ghk/sampling.hpp"

namespace ghk::test {

using ghk::random_local_symplectic;
using ghk::random_standard_form;
using ghk::random_state;
using ghk::random_symplectic;

inline double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

inline double max_abs_diff(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace ghk::test
