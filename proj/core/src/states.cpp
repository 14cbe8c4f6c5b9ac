#include "ghk/states.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "ghk/error.hpp"

namespace ghk {

GaussianState::GaussianState(CovarianceMatrix cm)
    : GaussianState(cm, Eigen::VectorXd::Zero(cm.dimension())) {}

GaussianState::GaussianState(CovarianceMatrix cm, Eigen::VectorXd mean)
    : cm_(std::move(cm)), mean_(std::move(mean)) {
  if (mean_.size() != cm_.dimension()) {
    throw Error(ErrorCode::DimensionMismatch, "mean vector length " + std::to_string(mean_.size()) +
                                                  " does not match covariance size " +
                                                  std::to_string(cm_.dimension()));
  }
  if (!mean_.allFinite()) throw Error(ErrorCode::InvalidParams, "mean vector is not finite");
  require_physical(cm_);
}

GaussianState thermal_state(std::span<const double> nbars) {
  if (nbars.empty()) throw Error(ErrorCode::InvalidParams, "at least one mode required");
  const auto n = static_cast<int>(nbars.size());
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (int k = 0; k < n; ++k) {
    const double nbar = nbars[static_cast<std::size_t>(k)];
    if (!(nbar >= 0.0) || !std::isfinite(nbar)) {
      throw Error(ErrorCode::NegativeOccupancy, "mean occupancy " + std::to_string(nbar) + " is negative");
    }
    v(2 * k, 2 * k) = v(2 * k + 1, 2 * k + 1) = nbar + 0.5;
  }
  return GaussianState(CovarianceMatrix(v));
}

namespace {

bool valid_phase(double phi) { return std::isfinite(phi) && phi > -std::numbers::pi && phi <= std::numbers::pi; }

void validate(const StsParams& p) {
  if (!(p.nbar1 >= 0.0) || !(p.nbar2 >= 0.0) || !std::isfinite(p.nbar1) || !std::isfinite(p.nbar2)) {
    throw Error(ErrorCode::InvalidParams, "STS occupancies must be finite and non-negative");
  }
  if (!(p.r >= 0.0) || !std::isfinite(p.r)) {
    throw Error(ErrorCode::InvalidParams, "STS squeeze parameter must be finite and non-negative");
  }
  if (!valid_phase(p.phi)) throw Error(ErrorCode::InvalidParams, "STS phase must lie in (-pi, pi]");
}

void validate(const MtsParams& p) {
  if (!std::isfinite(p.kappa1) || !(p.kappa2 >= 0.5) || !(p.kappa1 >= p.kappa2)) {
    throw Error(ErrorCode::InvalidParams, "MTS requires kappa1 >= kappa2 >= 1/2");
  }
  if (!(p.theta >= 0.0) || !(p.theta <= std::numbers::pi)) {
    throw Error(ErrorCode::InvalidParams, "MTS co-latitude must lie in [0, pi]");
  }
  if (!valid_phase(p.phi)) throw Error(ErrorCode::InvalidParams, "MTS phase must lie in (-pi, pi]");
}

}  // namespace

StandardForm sts_standard_form(const StsParams& p) {
  validate(p);
  const double k1 = p.nbar1 + 0.5;
  const double k2 = p.nbar2 + 0.5;
  const double ch = std::cosh(p.r);
  const double sh = std::sinh(p.r);
  StandardForm sf;
  sf.b1 = k1 * ch * ch + k2 * sh * sh;
  sf.b2 = k2 * ch * ch + k1 * sh * sh;
  sf.c = (k1 + k2) * ch * sh;
  sf.d = -sf.c;
  return sf;
}

GaussianState sts_state(const StsParams& p) { return GaussianState(covariance(sts_standard_form(p))); }

StandardForm mts_standard_form(const MtsParams& p) {
  validate(p);
  const double co = std::cos(0.5 * p.theta);
  const double si = std::sin(0.5 * p.theta);
  StandardForm sf;
  sf.b1 = p.kappa1 * co * co + p.kappa2 * si * si;
  sf.b2 = p.kappa2 * co * co + p.kappa1 * si * si;
  sf.c = (p.kappa1 - p.kappa2) * co * si;
  sf.d = sf.c;
  return sf;
}

GaussianState mts_state(const MtsParams& p) { return GaussianState(covariance(mts_standard_form(p))); }

double sts_separability_threshold(const StsParams& p) {
  validate(p);
  return std::asinh(std::sqrt(p.nbar1 * p.nbar2 / (p.nbar1 + p.nbar2 + 1.0)));
}

double purity(const GaussianState& s) {
  // det(2V) = prod (2 kappa_j)^2
  double value = 1.0;
  for (double kappa : symplectic_eigenvalues(s.cm()).kappas) value /= 2.0 * kappa;
  return value;
}

double entropy_function(double x) {
  if (x < 0.5 - kPhysicalityTolerance) {
    throw Error(ErrorCode::NotPhysical, "entropy function argument " + std::to_string(x) + " < 1/2");
  }
  const double up = x + 0.5;
  const double down = x - 0.5;
  const double head = up * std::log(up);
  if (down < 1e-12) return head;
  return head - down * std::log(down);
}

double von_neumann_entropy(const GaussianState& s) {
  double total = 0.0;
  for (double kappa : symplectic_eigenvalues(s.cm()).kappas) total += entropy_function(kappa);
  return total;
}

GaussianState direct_sum(const GaussianState& a, const GaussianState& b) {
  const int da = a.cm().dimension();
  const int db = b.cm().dimension();
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(da + db, da + db);
  v.topLeftCorner(da, da) = a.cm().matrix();
  v.bottomRightCorner(db, db) = b.cm().matrix();
  Eigen::VectorXd mean(da + db);
  mean << a.mean(), b.mean();
  return GaussianState(CovarianceMatrix(v), mean);
}

GaussianState transform(const GaussianState& s, const Eigen::MatrixXd& symplectic,
                        const Eigen::VectorXd& shift) {
  if (shift.size() != s.cm().dimension()) {
    throw Error(ErrorCode::DimensionMismatch, "shift length does not match state dimension");
  }
  return GaussianState(congruence(symplectic, s.cm()), symplectic * s.mean() + shift);
}

}  // namespace ghk
