#pragma once

#include <Eigen/Dense>

#include "ghk/states.hpp"
#include "ghk/symplectic.hpp"

namespace ghk {

struct OverlapResult {
  double value = 0.0;
  /// Natural log of `value`, kept for sweeps where `value` underflows.
  double log_value = 0.0;
};

/// Tr(rho1 rho2) = [det(V1 + V2)]^(-1/2) exp(-1/2 dv^T (V1 + V2)^(-1) dv).
double gaussian_overlap_trace(const CovarianceMatrix& v1, const CovarianceMatrix& v2,
                              const Eigen::VectorXd& dv);

/// Tr sqrt(rho) = [det(2 V~)]^(1/4).
double trace_of_sqrt(const GaussianState& s);

/// Tr(sqrt(rho1) sqrt(rho2)) from the covariance matrices of the two
/// square-root states and the mean difference.
OverlapResult affinity_from_sqrt_cms(const Eigen::MatrixXd& sqrt_v1, const Eigen::MatrixXd& sqrt_v2,
                                     const Eigen::VectorXd& dv);

/// Fixed-size two-mode variant without heap allocation, zero displacement.
double affinity_from_sqrt_cms(const Eigen::Matrix4d& sqrt_v1, const Eigen::Matrix4d& sqrt_v2);

/// Affinity of two n-mode Gaussian states. States equal to within 1e-9
/// (max-norm over covariance and mean) have affinity exactly 1.
OverlapResult affinity(const GaussianState& s1, const GaussianState& s2);

/// sqrt(2 - 2 A).
double hellinger_distance(const GaussianState& s1, const GaussianState& s2);

}  // namespace ghk
