#pragma once

#include <span>

#include <Eigen/Dense>

#include "ghk/symplectic.hpp"

namespace ghk {

/// Gaussian state: first moments plus a physical covariance matrix.
class GaussianState {
 public:
  /// Zero-mean state. Throws NotPhysical.
  explicit GaussianState(CovarianceMatrix cm);
  /// Throws NotPhysical, DimensionMismatch, or InvalidParams for a non-finite mean.
  GaussianState(CovarianceMatrix cm, Eigen::VectorXd mean);

  const CovarianceMatrix& cm() const noexcept { return cm_; }
  const Eigen::VectorXd& mean() const noexcept { return mean_; }
  int modes() const noexcept { return cm_.modes(); }

 private:
  CovarianceMatrix cm_;
  Eigen::VectorXd mean_;
};

/// Two-mode squeezed thermal state parameters.
struct StsParams {
  double nbar1 = 0.0;
  double nbar2 = 0.0;
  double r = 0.0;
  double phi = 0.0;
};

/// Mode-mixed thermal state: product thermal state through a beam splitter.
struct MtsParams {
  double kappa1 = 0.5;
  double kappa2 = 0.5;
  double theta = 0.0;
  double phi = 0.0;
};

GaussianState thermal_state(std::span<const double> nbars);

/// Standard-form STS; the phase only rotates the state locally and is not applied.
StandardForm sts_standard_form(const StsParams& p);
GaussianState sts_state(const StsParams& p);

/// Standard-form MTS; kappa1 == kappa2 yields the product thermal state.
StandardForm mts_standard_form(const MtsParams& p);
GaussianState mts_state(const MtsParams& p);

/// Largest squeeze r_s for which the STS is separable:
/// sinh^2(r_s) = nbar1 nbar2 / (nbar1 + nbar2 + 1).
double sts_separability_threshold(const StsParams& p);

/// [det(2V)]^(-1/2).
double purity(const GaussianState& s);

/// h(x) = (x + 1/2) ln(x + 1/2) - (x - 1/2) ln(x - 1/2), with h(1/2) = 0.
double entropy_function(double x);

double von_neumann_entropy(const GaussianState& s);

/// Tensor product: covariance direct sum, means concatenated.
GaussianState direct_sum(const GaussianState& a, const GaussianState& b);

/// Gaussian unitary action: V -> S V S^T, mean -> S mean + shift.
GaussianState transform(const GaussianState& s, const Eigen::MatrixXd& symplectic,
                        const Eigen::VectorXd& shift);

}  // namespace ghk
