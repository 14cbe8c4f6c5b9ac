#include "ghk/affinity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ghk/error.hpp"

namespace ghk {

namespace {

inline constexpr double kEqualStatesTolerance = 1e-9;

struct LogGaussianTerms {
  double log_det = 0.0;
  double quadratic = 0.0;
};

LogGaussianTerms factorize_sum(const Eigen::MatrixXd& sum, const Eigen::VectorXd& dv) {
  Eigen::LLT<Eigen::MatrixXd> llt(sum);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorCode::SingularSum, "sum of covariance matrices is not positive definite");
  }
  LogGaussianTerms terms;
  const auto& lower = llt.matrixL();
  for (Eigen::Index i = 0; i < sum.rows(); ++i) terms.log_det += 2.0 * std::log(llt.matrixLLT()(i, i));
  if (dv.size() > 0) {
    const Eigen::VectorXd w = lower.solve(dv);
    terms.quadratic = w.squaredNorm();
  }
  return terms;
}

double log_det_spd(const Eigen::MatrixXd& m) {
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorCode::NotPositiveDefinite, "matrix is not positive definite");
  }
  double out = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) out += 2.0 * std::log(llt.matrixLLT()(i, i));
  return out;
}

void require_same_dimension(const CovarianceMatrix& a, const CovarianceMatrix& b) {
  if (a.dimension() != b.dimension()) {
    throw Error(ErrorCode::DimensionMismatch, "covariance matrices have different mode counts");
  }
}

}  // namespace

double gaussian_overlap_trace(const CovarianceMatrix& v1, const CovarianceMatrix& v2,
                              const Eigen::VectorXd& dv) {
  require_same_dimension(v1, v2);
  if (dv.size() != v1.dimension()) {
    throw Error(ErrorCode::DimensionMismatch, "displacement length does not match covariance size");
  }
  const LogGaussianTerms t = factorize_sum(v1.matrix() + v2.matrix(), dv);
  return std::exp(-0.5 * t.log_det - 0.5 * t.quadratic);
}

double trace_of_sqrt(const GaussianState& s) {
  const CovarianceMatrix tilde = square_root_cm(s.cm());
  const double log_det_2v = log_det_spd(2.0 * tilde.matrix());
  return std::exp(0.25 * log_det_2v);
}

OverlapResult affinity_from_sqrt_cms(const Eigen::MatrixXd& sqrt_v1, const Eigen::MatrixXd& sqrt_v2,
                                     const Eigen::VectorXd& dv) {
  if (sqrt_v1.rows() != sqrt_v2.rows() || dv.size() != sqrt_v1.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "affinity operands have inconsistent sizes");
  }
  const auto n = static_cast<double>(sqrt_v1.rows() / 2);
  const LogGaussianTerms t = factorize_sum(sqrt_v1 + sqrt_v2, dv);
  OverlapResult out;
  out.log_value = n * std::numbers::ln2 + 0.25 * (log_det_spd(sqrt_v1) + log_det_spd(sqrt_v2)) -
                  0.5 * t.log_det - 0.5 * t.quadratic;
  out.log_value = std::min(out.log_value, 0.0);
  out.value = std::exp(out.log_value);
  return out;
}

double affinity_from_sqrt_cms(const Eigen::Matrix4d& sqrt_v1, const Eigen::Matrix4d& sqrt_v2) {
  const double num = det4(sqrt_v1) * det4(sqrt_v2);
  const double den = det4(sqrt_v1 + sqrt_v2);
  return 4.0 * std::sqrt(std::sqrt(num)) / std::sqrt(den);
}

OverlapResult affinity(const GaussianState& s1, const GaussianState& s2) {
  require_same_dimension(s1.cm(), s2.cm());
  const double cm_gap = (s1.cm().matrix() - s2.cm().matrix()).cwiseAbs().maxCoeff();
  const double mean_gap = (s1.mean() - s2.mean()).cwiseAbs().maxCoeff();
  if (std::max(cm_gap, mean_gap) < kEqualStatesTolerance) return OverlapResult{1.0, 0.0};

  const CovarianceMatrix t1 = square_root_cm(s1.cm());
  const CovarianceMatrix t2 = square_root_cm(s2.cm());
  return affinity_from_sqrt_cms(t1.matrix(), t2.matrix(), s1.mean() - s2.mean());
}

double hellinger_distance(const GaussianState& s1, const GaussianState& s2) {
  return std::sqrt(std::max(2.0 - 2.0 * affinity(s1, s2).value, 0.0));
}

}  // namespace ghk
