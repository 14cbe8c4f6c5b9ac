#pragma once

#include <vector>

#include <Eigen/Dense>

namespace ghk {

/// Maximum absolute asymmetry accepted for a covariance matrix.
inline constexpr double kSymmetryTolerance = 1e-10;
/// Slack below 1/2 tolerated on symplectic eigenvalues.
inline constexpr double kPhysicalityTolerance = 1e-9;

/// Real symmetric 2n x 2n matrix of quadrature second moments, ordered
/// (q1, p1, ..., qn, pn). Vacuum variance is 1/2.
class CovarianceMatrix {
 public:
  /// Throws NonSymmetric when the asymmetry exceeds kSymmetryTolerance and
  /// DimensionMismatch for non-square or odd-sized input.
  explicit CovarianceMatrix(const Eigen::MatrixXd& entries);

  static CovarianceMatrix scaled_identity(int modes, double scale);

  int modes() const noexcept { return static_cast<int>(entries_.rows() / 2); }
  int dimension() const noexcept { return static_cast<int>(entries_.rows()); }
  const Eigen::MatrixXd& matrix() const noexcept { return entries_; }
  double operator()(int row, int col) const { return entries_(row, col); }

  /// 2x2 block coupling mode `i` to mode `j`.
  Eigen::Matrix2d block(int i, int j) const { return entries_.block<2, 2>(2 * i, 2 * j); }

 private:
  Eigen::MatrixXd entries_;
};

/// Block-diagonal J with J_k = [[0, 1], [-1, 0]].
Eigen::MatrixXd symplectic_form(int modes);

struct SymplecticSpectrum {
  std::vector<double> kappas;  // descending

  double min() const { return kappas.back(); }
  double max() const { return kappas.front(); }
};

/// V = S * diag(kappa_1, kappa_1, ..., kappa_n, kappa_n) * S^T with S symplectic.
struct WilliamsonDecomposition {
  Eigen::MatrixXd symplectic;
  SymplecticSpectrum spectrum;
};

SymplecticSpectrum symplectic_eigenvalues(const CovarianceMatrix& cm);
WilliamsonDecomposition williamson(const CovarianceMatrix& cm);

/// Robertson-Schroedinger test: every symplectic eigenvalue >= 1/2 - tolerance.
/// Non positive-definite input is reported as unphysical.
bool is_physical(const CovarianceMatrix& cm);

/// Throws NotPhysical unless is_physical(cm).
void require_physical(const CovarianceMatrix& cm);

/// Symplectic eigenvalue of the square-root state: kappa + sqrt(kappa^2 - 1/4),
/// with pure modes (kappa - 1/2 < kPhysicalityTolerance) mapped to themselves.
double sqrt_state_kappa(double kappa);

/// Covariance matrix of the normalized square root of the state.
CovarianceMatrix square_root_cm(const CovarianceMatrix& cm);

double det2(const Eigen::Matrix2d& m);
double det4(const Eigen::Matrix4d& m);

// ---------------------------------------------------------------------------
// Two-mode standard forms

/// Scaled two-mode standard form: diagonal blocks diag(b_j s_j, b_j / s_j),
/// cross block diag(c sqrt(s1 s2), d / sqrt(s1 s2)), with c >= |d|.
struct StandardForm {
  double b1 = 0.5;
  double b2 = 0.5;
  double c = 0.0;
  double d = 0.0;
  double s1 = 1.0;
  double s2 = 1.0;

  double b1b2() const { return b1 * b2; }
  /// det V = (b1 b2 - c^2)(b1 b2 - d^2); independent of the scale factors.
  double det() const { return (b1 * b2 - c * c) * (b1 * b2 - d * d); }
};

Eigen::Matrix4d standard_form_matrix(const StandardForm& sf);
CovarianceMatrix covariance(const StandardForm& sf);

/// Two-mode spectrum from the local invariants, without diagonalization.
SymplecticSpectrum two_mode_spectrum(const StandardForm& sf);

/// Standard-form parameters from the local symplectic invariants
/// det V1, det V2, det C and det V. Emits s1 = s2 = 1.
StandardForm standard_form(const CovarianceMatrix& cm);

/// Explicit local reduction: cm = local * covariance(form) * local^T with
/// `local` a direct sum of one-mode symplectic matrices.
struct LocalReduction {
  StandardForm form;
  Eigen::Matrix4d local;
};

LocalReduction reduce_to_standard_form(const CovarianceMatrix& cm);

struct SymplecticInvariants {
  double K = 0.0;
  double L = 0.0;
  double M1 = 0.0;
  double M2 = 0.0;
  double N1 = 0.0;
  double N2 = 0.0;
  /// det(V + iJ/2) from the block determinants.
  double D = 0.0;
  /// The same invariant as M1 * M2 from the spectrum.
  double D_spectral = 0.0;
};

SymplecticInvariants invariants(const CovarianceMatrix& cm);
SymplecticInvariants invariants(const SymplecticSpectrum& spectrum, const StandardForm& sf);

/// Closed-form scaled standard form of the square-root state.
StandardForm square_root_standard_form(const StandardForm& sf);

// ---------------------------------------------------------------------------
// Elementary symplectic matrices, quadrature ordering (q1, p1, ..., qn, pn)

Eigen::MatrixXd phase_rotation(int modes, int mode, double angle);
Eigen::MatrixXd single_mode_squeezer(int modes, int mode, double r);
/// Two-mode squeezer exp[r (a1^+ a2^+ - a1 a2)] on modes (i, j).
Eigen::MatrixXd two_mode_squeezer(int modes, int i, int j, double r);
/// Lossless beam splitter with transmission cos^2(theta/2) on modes (i, j).
Eigen::MatrixXd beam_splitter(int modes, int i, int j, double theta);

CovarianceMatrix congruence(const Eigen::MatrixXd& symplectic, const CovarianceMatrix& cm);

}  // namespace ghk
