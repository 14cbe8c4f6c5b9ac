#pragma once

#include <array>
#include <optional>

#include <Eigen/Dense>

#include "ghk/states.hpp"
#include "ghk/symplectic.hpp"

namespace ghk {

/// Product of two one-mode displaced squeezed thermal states.
/// Each mode has covariance
///   eta [cosh 2r + cos(phi) sinh 2r,  sin(phi) sinh 2r;
///        sin(phi) sinh 2r,            cosh 2r - cos(phi) sinh 2r].
struct ProductStateParams {
  double eta1 = 0.5;
  double eta2 = 0.5;
  double r1 = 0.0;
  double r2 = 0.0;
  double phi1 = 0.0;
  double phi2 = 0.0;
  Eigen::Vector4d mean = Eigen::Vector4d::Zero();
};

/// Unvalidated block-diagonal covariance for the parameters.
Eigen::Matrix4d product_covariance_matrix(const ProductStateParams& p);
/// Throws InvalidParams when an eta is below 1/2.
CovarianceMatrix product_covariance(const ProductStateParams& p);
/// Purity 1 / (4 eta1 eta2).
double product_purity(const ProductStateParams& p);

/// eta -> eta + sqrt(eta^2 - 1/4): one-mode square-root map.
double sqrt_eta(double eta);
/// Inverse of sqrt_eta: (eta~ + 1 / (4 eta~)) / 2.
double eta_from_sqrt(double eta_tilde);

struct ClosestProduct {
  /// Parameters of the square root of the closest product state, in the
  /// standard-form frame of the input (phi = 0).
  ProductStateParams params;
  double max_affinity = 1.0;
  /// The closest product state itself, in the frame of the input.
  GaussianState state;
  /// Its square-root state, in the frame of the input.
  GaussianState sqrt_state;
};

ClosestProduct closest_product_state(const CovarianceMatrix& cm, const Eigen::Vector4d& mean);
ClosestProduct closest_product_state(const GaussianState& s);

/// Closest product parameters from the square-root standard form.
ProductStateParams closest_product_params(const StandardForm& sqrt_form);

/// Residuals of the four stationarity conditions of the undisplaced affinity
/// at the given square-root-level product parameters.
std::array<double, 4> stationarity_residual(const StandardForm& sqrt_form, const ProductStateParams& sqrt_params);

/// Maximal affinity with the product states, from the square-root standard form.
double max_affinity(const StandardForm& sf);
double max_affinity(const CovarianceMatrix& cm);

/// The same quantity written directly in the entries of V through the
/// invariants K, M1, M2 and the intermediates B1, B2, Q. Throws
/// PureModeSingularity for pure states (K = 0).
double max_affinity_v_route(const StandardForm& sf);
double max_affinity_v_route(const CovarianceMatrix& cm);

/// 1 - max_affinity; exactly 0 for product states.
double hellinger_discord(const StandardForm& sf);
double hellinger_discord(const CovarianceMatrix& cm);

/// Symmetric states (b1 = b2 = b), written with the spectra of the state and
/// of its partial transpose.
double hellinger_discord_symmetric(double b, double c, double d);
double hellinger_discord_sts(const StsParams& p);
double hellinger_discord_mts(const MtsParams& p);

/// Partial transpose flips p2; separable iff the result is physical.
CovarianceMatrix partial_transpose(const CovarianceMatrix& cm);
bool simon_separable(const CovarianceMatrix& cm);

/// Gaussian entropic discord for symmetric |d| = c states; throws OutOfFamily otherwise.
double entropic_discord(const CovarianceMatrix& cm);
/// h(b1) + h(b2) - h(kappa1) - h(kappa2).
double mutual_information(const CovarianceMatrix& cm);
/// h(b) - h(y); throws OutOfFamily outside the symmetric |d| = c family.
double classical_correlations(const CovarianceMatrix& cm);
/// Entanglement of formation of the symmetric state with d = -c.
double entanglement_of_formation_symmetric(double b, double c);

/// True when b1 = b2 and |d| = c to within 1e-9 relative.
bool in_symmetric_family(const StandardForm& sf);

struct CorrelationReport {
  StandardForm standard_form;
  std::array<double, 2> symplectic_spectrum{};
  std::array<double, 2> pt_spectrum{};
  double max_affinity = 1.0;
  double hellinger_discord = 0.0;
  double mutual_information = 0.0;
  std::optional<double> entropic_discord;
  std::optional<double> classical_correlations;
  std::optional<double> eof;
  bool separable = true;
  Eigen::Vector4d mean = Eigen::Vector4d::Zero();
};

CorrelationReport correlation_report(const CovarianceMatrix& cm, const Eigen::Vector4d& mean);

}  // namespace ghk
