#include "ghk/symplectic.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <string>

#include "ghk/error.hpp"

namespace ghk {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonSymmetric: return "NonSymmetric";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::NotPhysical: return "NotPhysical";
    case ErrorCode::DegenerateBlocks: return "DegenerateBlocks";
    case ErrorCode::PureModeSingularity: return "PureModeSingularity";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::SingularSum: return "SingularSum";
    case ErrorCode::NegativeOccupancy: return "NegativeOccupancy";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::OutOfFamily: return "OutOfFamily";
    case ErrorCode::NotConverged: return "NotConverged";
    case ErrorCode::TruncationInsufficient: return "TruncationInsufficient";
  }
  return "Unknown";
}

CovarianceMatrix::CovarianceMatrix(const Eigen::MatrixXd& entries) {
  if (entries.rows() != entries.cols() || entries.rows() == 0 || entries.rows() % 2 != 0) {
    throw Error(ErrorCode::DimensionMismatch,
                "covariance matrix must be square with even, non-zero size; got " +
                    std::to_string(entries.rows()) + "x" + std::to_string(entries.cols()));
  }
  if (!entries.allFinite()) {
    throw Error(ErrorCode::InvalidParams, "covariance matrix has non-finite entries");
  }
  const double asymmetry = (entries - entries.transpose()).cwiseAbs().maxCoeff();
  if (asymmetry > kSymmetryTolerance) {
    throw Error(ErrorCode::NonSymmetric,
                "max |V - V^T| = " + std::to_string(asymmetry) + " exceeds tolerance");
  }
  entries_ = 0.5 * (entries + entries.transpose());
}

CovarianceMatrix CovarianceMatrix::scaled_identity(int modes, double scale) {
  return CovarianceMatrix(scale * Eigen::MatrixXd::Identity(2 * modes, 2 * modes));
}

Eigen::MatrixXd symplectic_form(int modes) {
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(2 * modes, 2 * modes);
  for (int k = 0; k < modes; ++k) {
    j(2 * k, 2 * k + 1) = 1.0;
    j(2 * k + 1, 2 * k) = -1.0;
  }
  return j;
}

namespace {

Eigen::MatrixXd cholesky_factor(const CovarianceMatrix& cm) {
  Eigen::LLT<Eigen::MatrixXd> llt(cm.matrix());
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorCode::NotPositiveDefinite, "Cholesky factorization failed");
  }
  return llt.matrixL();
}

// Pairs the +kappa / -kappa eigenvalues of i*A (A antisymmetric) and returns
// the n magnitudes in descending order.
std::vector<double> paired_magnitudes(const Eigen::VectorXd& ascending) {
  const auto size = ascending.size();
  const auto n = size / 2;
  std::vector<double> kappas(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) {
    const double positive = ascending(size - 1 - k);
    const double negative = -ascending(k);
    const double scale = std::max(std::abs(positive), std::abs(negative));
    if (std::abs(positive - negative) > 1e-7 * scale) {
      throw Error(ErrorCode::NotPositiveDefinite,
                  "symplectic eigenvalue pair mismatch: " + std::to_string(positive) + " vs " +
                      std::to_string(negative));
    }
    kappas[static_cast<std::size_t>(k)] = 0.5 * (positive + negative);
  }
  return kappas;
}

}  // namespace

SymplecticSpectrum symplectic_eigenvalues(const CovarianceMatrix& cm) {
  const Eigen::MatrixXd lower = cholesky_factor(cm);
  // L^T J L is similar to J V and antisymmetric, so i L^T J L is Hermitian
  // with eigenvalues +-kappa_j.
  const Eigen::MatrixXd antisym = lower.transpose() * symplectic_form(cm.modes()) * lower;
  const Eigen::MatrixXcd hermitian = std::complex<double>(0.0, 1.0) * antisym.cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hermitian, Eigen::EigenvaluesOnly);
  return SymplecticSpectrum{paired_magnitudes(solver.eigenvalues())};
}

WilliamsonDecomposition williamson(const CovarianceMatrix& cm) {
  cholesky_factor(cm);  // positive-definiteness check
  const int n = cm.modes();
  const int dim = cm.dimension();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cm.matrix());
  const Eigen::MatrixXd root =
      eig.eigenvectors() * eig.eigenvalues().cwiseSqrt().asDiagonal() * eig.eigenvectors().transpose();

  // R J R is antisymmetric; its real Schur form is block diagonal with
  // blocks a_j * J_k, and |a_j| = kappa_j.
  const Eigen::MatrixXd antisym = root * symplectic_form(n) * root;
  Eigen::RealSchur<Eigen::MatrixXd> schur(antisym);
  const Eigen::MatrixXd& t = schur.matrixT();
  Eigen::MatrixXd orth = schur.matrixU();

  std::vector<double> kappas(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double upper = t(2 * k, 2 * k + 1);
    const double lower_entry = t(2 * k + 1, 2 * k);
    const double a = 0.5 * (upper - lower_entry);
    if (a < 0.0) orth.col(2 * k).swap(orth.col(2 * k + 1));
    kappas[static_cast<std::size_t>(k)] = std::abs(a);
  }

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
    return kappas[static_cast<std::size_t>(x)] > kappas[static_cast<std::size_t>(y)];
  });

  Eigen::MatrixXd sorted_orth(dim, dim);
  SymplecticSpectrum spectrum;
  spectrum.kappas.reserve(static_cast<std::size_t>(n));
  Eigen::VectorXd inv_sqrt_kappa(dim);
  for (int k = 0; k < n; ++k) {
    const int src = order[static_cast<std::size_t>(k)];
    const double kappa = kappas[static_cast<std::size_t>(src)];
    sorted_orth.col(2 * k) = orth.col(2 * src);
    sorted_orth.col(2 * k + 1) = orth.col(2 * src + 1);
    spectrum.kappas.push_back(kappa);
    inv_sqrt_kappa(2 * k) = inv_sqrt_kappa(2 * k + 1) = 1.0 / std::sqrt(kappa);
  }

  return WilliamsonDecomposition{root * sorted_orth * inv_sqrt_kappa.asDiagonal(), std::move(spectrum)};
}

bool is_physical(const CovarianceMatrix& cm) {
  try {
    return symplectic_eigenvalues(cm).min() >= 0.5 - kPhysicalityTolerance;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotPositiveDefinite) return false;
    throw;
  }
}

void require_physical(const CovarianceMatrix& cm) {
  SymplecticSpectrum spectrum;
  try {
    spectrum = symplectic_eigenvalues(cm);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotPositiveDefinite) {
      throw Error(ErrorCode::NotPhysical, "covariance matrix is not positive definite");
    }
    throw;
  }
  if (spectrum.min() < 0.5 - kPhysicalityTolerance) {
    throw Error(ErrorCode::NotPhysical,
                "smallest symplectic eigenvalue " + std::to_string(spectrum.min()) + " < 1/2");
  }
}

double sqrt_state_kappa(double kappa) {
  if (kappa - 0.5 < kPhysicalityTolerance) return kappa;
  return kappa + std::sqrt(kappa * kappa - 0.25);
}

CovarianceMatrix square_root_cm(const CovarianceMatrix& cm) {
  const WilliamsonDecomposition w = williamson(cm);
  if (w.spectrum.min() < 0.5 - kPhysicalityTolerance) {
    throw Error(ErrorCode::NotPhysical,
                "smallest symplectic eigenvalue " + std::to_string(w.spectrum.min()) + " < 1/2");
  }
  Eigen::VectorXd diag(cm.dimension());
  for (int k = 0; k < cm.modes(); ++k) {
    diag(2 * k) = diag(2 * k + 1) = sqrt_state_kappa(w.spectrum.kappas[static_cast<std::size_t>(k)]);
  }
  const Eigen::MatrixXd tilde = w.symplectic * diag.asDiagonal() * w.symplectic.transpose();
  return CovarianceMatrix(0.5 * (tilde + tilde.transpose()));
}

double det2(const Eigen::Matrix2d& m) { return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0); }

double det4(const Eigen::Matrix4d& m) {
  // Laplace expansion along the first two rows.
  const double s0 = m(0, 0) * m(1, 1) - m(1, 0) * m(0, 1);
  const double s1 = m(0, 0) * m(1, 2) - m(1, 0) * m(0, 2);
  const double s2 = m(0, 0) * m(1, 3) - m(1, 0) * m(0, 3);
  const double s3 = m(0, 1) * m(1, 2) - m(1, 1) * m(0, 2);
  const double s4 = m(0, 1) * m(1, 3) - m(1, 1) * m(0, 3);
  const double s5 = m(0, 2) * m(1, 3) - m(1, 2) * m(0, 3);
  const double c5 = m(2, 2) * m(3, 3) - m(3, 2) * m(2, 3);
  const double c4 = m(2, 1) * m(3, 3) - m(3, 1) * m(2, 3);
  const double c3 = m(2, 1) * m(3, 2) - m(3, 1) * m(2, 2);
  const double c2 = m(2, 0) * m(3, 3) - m(3, 0) * m(2, 3);
  const double c1 = m(2, 0) * m(3, 2) - m(3, 0) * m(2, 2);
  const double c0 = m(2, 0) * m(3, 1) - m(3, 0) * m(2, 1);
  return s0 * c5 - s1 * c4 + s2 * c3 + s3 * c2 - s4 * c1 + s5 * c0;
}

Eigen::MatrixXd phase_rotation(int modes, int mode, double angle) {
  Eigen::MatrixXd s = Eigen::MatrixXd::Identity(2 * modes, 2 * modes);
  const double c = std::cos(angle);
  const double sn = std::sin(angle);
  s.block<2, 2>(2 * mode, 2 * mode) << c, sn, -sn, c;
  return s;
}

Eigen::MatrixXd single_mode_squeezer(int modes, int mode, double r) {
  Eigen::MatrixXd s = Eigen::MatrixXd::Identity(2 * modes, 2 * modes);
  s(2 * mode, 2 * mode) = std::exp(r);
  s(2 * mode + 1, 2 * mode + 1) = std::exp(-r);
  return s;
}

Eigen::MatrixXd two_mode_squeezer(int modes, int i, int j, double r) {
  Eigen::MatrixXd s = Eigen::MatrixXd::Identity(2 * modes, 2 * modes);
  const double ch = std::cosh(r);
  const double sh = std::sinh(r);
  const Eigen::Matrix2d z = (Eigen::Matrix2d() << sh, 0.0, 0.0, -sh).finished();
  s.block<2, 2>(2 * i, 2 * i) = ch * Eigen::Matrix2d::Identity();
  s.block<2, 2>(2 * j, 2 * j) = ch * Eigen::Matrix2d::Identity();
  s.block<2, 2>(2 * i, 2 * j) = z;
  s.block<2, 2>(2 * j, 2 * i) = z;
  return s;
}

Eigen::MatrixXd beam_splitter(int modes, int i, int j, double theta) {
  Eigen::MatrixXd s = Eigen::MatrixXd::Identity(2 * modes, 2 * modes);
  const double c = std::cos(0.5 * theta);
  const double sn = std::sin(0.5 * theta);
  s.block<2, 2>(2 * i, 2 * i) = c * Eigen::Matrix2d::Identity();
  s.block<2, 2>(2 * j, 2 * j) = c * Eigen::Matrix2d::Identity();
  s.block<2, 2>(2 * i, 2 * j) = -sn * Eigen::Matrix2d::Identity();
  s.block<2, 2>(2 * j, 2 * i) = sn * Eigen::Matrix2d::Identity();
  return s;
}

CovarianceMatrix congruence(const Eigen::MatrixXd& symplectic, const CovarianceMatrix& cm) {
  if (symplectic.rows() != cm.dimension() || symplectic.cols() != cm.dimension()) {
    throw Error(ErrorCode::DimensionMismatch, "symplectic matrix does not match covariance size");
  }
  const Eigen::MatrixXd out = symplectic * cm.matrix() * symplectic.transpose();
  return CovarianceMatrix(0.5 * (out + out.transpose()));
}

}  // namespace ghk
