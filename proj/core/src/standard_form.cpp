#include <algorithm>
#include <cmath>
#include <string>

#include "ghk/error.hpp"
#include "ghk/symplectic.hpp"

namespace ghk {

namespace {

void require_two_modes(const CovarianceMatrix& cm) {
  if (cm.modes() != 2) {
    throw Error(ErrorCode::DimensionMismatch,
                "two-mode covariance matrix required, got " + std::to_string(cm.modes()) + " modes");
  }
}

Eigen::Matrix2d inverse2(const Eigen::Matrix2d& m) {
  return (Eigen::Matrix2d() << m(1, 1), -m(0, 1), -m(1, 0), m(0, 0)).finished() / det2(m);
}

// Square root of a 2x2 symmetric positive matrix with unit determinant.
Eigen::Matrix2d unimodular_sqrt(const Eigen::Matrix2d& m) {
  return (m + Eigen::Matrix2d::Identity()) / std::sqrt(m.trace() + 2.0);
}

}  // namespace

Eigen::Matrix4d standard_form_matrix(const StandardForm& sf) {
  const double root = std::sqrt(sf.s1 * sf.s2);
  Eigen::Matrix4d v = Eigen::Matrix4d::Zero();
  v(0, 0) = sf.b1 * sf.s1;
  v(1, 1) = sf.b1 / sf.s1;
  v(2, 2) = sf.b2 * sf.s2;
  v(3, 3) = sf.b2 / sf.s2;
  v(0, 2) = v(2, 0) = sf.c * root;
  v(1, 3) = v(3, 1) = sf.d / root;
  return v;
}

CovarianceMatrix covariance(const StandardForm& sf) {
  if (!(sf.s1 > 0.0) || !(sf.s2 > 0.0)) {
    throw Error(ErrorCode::InvalidParams, "standard-form scale factors must be positive");
  }
  return CovarianceMatrix(standard_form_matrix(sf));
}

SymplecticSpectrum two_mode_spectrum(const StandardForm& sf) {
  const double det = sf.det();
  if (!(det > 0.0)) {
    throw Error(ErrorCode::NotPositiveDefinite, "standard form has non-positive determinant");
  }
  const double delta = sf.b1 * sf.b1 + sf.b2 * sf.b2 + 2.0 * sf.c * sf.d;
  const double disc = std::max(delta * delta - 4.0 * det, 0.0);
  const double upper_sq = 0.5 * (delta + std::sqrt(disc));
  const double upper = std::sqrt(upper_sq);
  // kappa_- from det V = kappa_+^2 kappa_-^2 avoids cancellation.
  return SymplecticSpectrum{{upper, std::sqrt(det) / upper}};
}

StandardForm standard_form(const CovarianceMatrix& cm) {
  require_two_modes(cm);
  require_physical(cm);

  const Eigen::Matrix2d v1 = cm.block(0, 0);
  const Eigen::Matrix2d v2 = cm.block(1, 1);
  const Eigen::Matrix2d cross = cm.block(0, 1);

  StandardForm sf;
  sf.b1 = std::sqrt(det2(v1));
  sf.b2 = std::sqrt(det2(v2));
  const double det_c = det2(cross);

  // c^2 and d^2 are the roots of t^2 - sum t + det_c^2, where the sum is the
  // local invariant b1 b2 tr(V1^-1 C V2^-1 C^T).
  const double sum = sf.b1 * sf.b2 * (inverse2(v1) * cross * inverse2(v2) * cross.transpose()).trace();
  const double product = det_c * det_c;
  const double disc = sum * sum - 4.0 * product;
  const double scale = std::max(sum * sum, 1e-300);
  if (sum < -1e-12 * sf.b1 * sf.b2 || disc < -1e-9 * scale) {
    throw Error(ErrorCode::DegenerateBlocks,
                "no real non-negative (c^2, d^2) solution: sum = " + std::to_string(sum) +
                    ", discriminant = " + std::to_string(disc));
  }
  // The roots are the squared singular values of the locally reduced cross
  // block; the SVD keeps c - |d| accurate where the quadratic has a double root.
  const StandardForm reduced = reduce_to_standard_form(cm).form;
  sf.c = reduced.c;
  sf.d = det_c == 0.0 ? 0.0 : std::copysign(std::abs(reduced.d), det_c);
  return sf;
}

LocalReduction reduce_to_standard_form(const CovarianceMatrix& cm) {
  require_two_modes(cm);
  require_physical(cm);

  const Eigen::Matrix2d v1 = cm.block(0, 0);
  const Eigen::Matrix2d v2 = cm.block(1, 1);
  const double b1 = std::sqrt(det2(v1));
  const double b2 = std::sqrt(det2(v2));
  const Eigen::Matrix2d s1 = unimodular_sqrt(v1 / b1);
  const Eigen::Matrix2d s2 = unimodular_sqrt(v2 / b2);
  const Eigen::Matrix2d reduced = inverse2(s1) * cm.block(0, 1) * inverse2(s2);

  Eigen::JacobiSVD<Eigen::Matrix2d> svd(reduced, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::Matrix2d u = svd.matrixU();
  Eigen::Matrix2d w = svd.matrixV();
  Eigen::Vector2d sigma = svd.singularValues();
  // Local symplectic maps must be rotations; push reflections into the sign of d.
  if (det2(u) < 0.0) {
    u.col(1) *= -1.0;
    sigma(1) *= -1.0;
  }
  if (det2(w) < 0.0) {
    w.col(1) *= -1.0;
    sigma(1) *= -1.0;
  }

  LocalReduction out;
  out.form = StandardForm{b1, b2, sigma(0), sigma(1), 1.0, 1.0};
  out.local = Eigen::Matrix4d::Zero();
  out.local.block<2, 2>(0, 0) = s1 * u;
  out.local.block<2, 2>(2, 2) = s2 * w;
  return out;
}

SymplecticInvariants invariants(const SymplecticSpectrum& spectrum, const StandardForm& sf) {
  if (spectrum.kappas.size() != 2) {
    throw Error(ErrorCode::DimensionMismatch, "two-mode spectrum required");
  }
  const double k1 = spectrum.kappas[0];
  const double k2 = spectrum.kappas[1];
  if (k2 < 0.5 - kPhysicalityTolerance) {
    throw Error(ErrorCode::NotPhysical, "smallest symplectic eigenvalue " + std::to_string(k2) + " < 1/2");
  }
  const double minus1 = std::max(k1 - 0.5, 0.0);
  const double minus2 = std::max(k2 - 0.5, 0.0);

  SymplecticInvariants inv;
  inv.K = k1 * std::sqrt(std::max(k2 * k2 - 0.25, 0.0)) + k2 * std::sqrt(std::max(k1 * k1 - 0.25, 0.0));
  inv.L = 4.0 * k1 * k2 * sqrt_state_kappa(k1) * sqrt_state_kappa(k2);
  inv.M1 = minus1 * (k2 + 0.5);
  inv.M2 = (k1 + 0.5) * minus2;
  inv.N1 = (k1 + 0.5) * (k2 + 0.5);
  inv.N2 = minus1 * minus2;
  inv.D = sf.det() - 0.25 * (sf.b1 * sf.b1 + sf.b2 * sf.b2 + 2.0 * sf.c * sf.d) + 1.0 / 16.0;
  inv.D_spectral = inv.M1 * inv.M2;
  return inv;
}

SymplecticInvariants invariants(const CovarianceMatrix& cm) {
  const StandardForm sf = standard_form(cm);
  return invariants(symplectic_eigenvalues(cm), sf);
}

StandardForm square_root_standard_form(const StandardForm& sf) {
  const SymplecticSpectrum spectrum = two_mode_spectrum(sf);
  const double k1 = spectrum.kappas[0];
  const double k2 = spectrum.kappas[1];
  if (k2 < 0.5 - kPhysicalityTolerance) {
    throw Error(ErrorCode::NotPhysical, "smallest symplectic eigenvalue " + std::to_string(k2) + " < 1/2");
  }
  // Pure state: the square root is proportional to the state itself.
  if (k1 - 0.5 < kPhysicalityTolerance) return sf;

  const SymplecticInvariants inv = invariants(spectrum, sf);
  const double f = 1.0 / (4.0 * k1 * k2 * inv.K);
  const double bb = sf.b1b2();
  const double pc = bb - sf.c * sf.c;
  const double pd = bb - sf.d * sf.d;
  const double root_s = std::sqrt(sf.s1 * sf.s2);

  const double q1 = (sf.b1 * inv.L - sf.b2 * pc) * f * sf.s1;  // b1~ s1~
  const double p1 = (sf.b1 * inv.L - sf.b2 * pd) * f / sf.s1;  // b1~ / s1~
  const double q2 = (sf.b2 * inv.L - sf.b1 * pc) * f * sf.s2;
  const double p2 = (sf.b2 * inv.L - sf.b1 * pd) * f / sf.s2;
  const double cq = (sf.c * inv.L + sf.d * pc) * f * root_s;  // c~ sqrt(s1~ s2~)
  const double dp = (sf.d * inv.L + sf.c * pd) * f / root_s;  // d~ / sqrt(s1~ s2~)

  StandardForm out;
  out.b1 = std::sqrt(q1 * p1);
  out.b2 = std::sqrt(q2 * p2);
  out.s1 = std::sqrt(q1 / p1);
  out.s2 = std::sqrt(q2 / p2);
  const double root_out = std::sqrt(out.s1 * out.s2);
  out.c = cq / root_out;
  out.d = dp * root_out;
  return out;
}

}  // namespace ghk
