#include "ghk/discord.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ghk/error.hpp"

namespace ghk {

namespace {

inline constexpr double kFamilyTolerance = 1e-9;

Eigen::Matrix2d one_mode_block(double eta, double r, double phi) {
  const double ch = std::cosh(2.0 * r);
  const double sh = std::sinh(2.0 * r);
  Eigen::Matrix2d m;
  m(0, 0) = eta * (ch + std::cos(phi) * sh);
  m(1, 1) = eta * (ch - std::cos(phi) * sh);
  m(0, 1) = m(1, 0) = eta * std::sin(phi) * sh;
  return m;
}

// Discord and affinity from the square-root standard form. Written through
// e = (1 - x) / (1 + x), x = sqrt(1 - c~^2 / b1~ b2~), so that 1 - A keeps
// full relative precision for weakly correlated states.
struct TildeAffinity {
  double affinity = 1.0;
  double discord = 0.0;
};

TildeAffinity tilde_affinity(const StandardForm& t) {
  const double bb = t.b1b2();
  auto ratio = [bb](double off) {
    const double frac = off * off / bb;
    const double x = std::sqrt(std::max(1.0 - frac, 0.0));
    return (frac / (1.0 + x)) / (1.0 + x);
  };
  const double ec = ratio(t.c);
  const double ed = ratio(t.d);
  TildeAffinity out;
  out.affinity = std::sqrt((1.0 - ec) * (1.0 - ed));
  out.discord = std::max((ec + ed - ec * ed) / (1.0 + out.affinity), 0.0);
  return out;
}

TildeAffinity tilde_affinity_for(const StandardForm& sf) {
  if (sf.c == 0.0 && sf.d == 0.0) return TildeAffinity{};
  return tilde_affinity(square_root_standard_form(sf));
}

void require_two_mode_physical(const CovarianceMatrix& cm) {
  if (cm.modes() != 2) throw Error(ErrorCode::DimensionMismatch, "two-mode covariance matrix required");
  require_physical(cm);
}

// kappa1 kappa2 + sign/4 - sqrt(D) rewritten free of cancellation:
// (kappa1 + sign kappa2)^2 / (4 (kappa1 kappa2 + sign/4 + sqrt(D))).
double invariant_gap(double k1, double k2, double sign) {
  const double p = k1 * k2 + sign * 0.25;
  const double root_d = std::sqrt(std::max((k1 * k1 - 0.25) * (k2 * k2 - 0.25), 0.0));
  const double diff = k1 + sign * k2;
  const double den = p + root_d;
  if (den <= 0.0) return 0.0;
  return 0.25 * diff * diff / den;
}

double discord_from_x(double x) {
  // 1 - 2 / (sqrt(X) + 1) = (X - 1) / (sqrt(X) + 1)^2
  const double root = std::sqrt(x);
  return (x - 1.0) / ((root + 1.0) * (root + 1.0));
}

}  // namespace

Eigen::Matrix4d product_covariance_matrix(const ProductStateParams& p) {
  Eigen::Matrix4d v = Eigen::Matrix4d::Zero();
  v.block<2, 2>(0, 0) = one_mode_block(p.eta1, p.r1, p.phi1);
  v.block<2, 2>(2, 2) = one_mode_block(p.eta2, p.r2, p.phi2);
  return v;
}

CovarianceMatrix product_covariance(const ProductStateParams& p) {
  if (!(p.eta1 >= 0.5 - kPhysicalityTolerance) || !(p.eta2 >= 0.5 - kPhysicalityTolerance)) {
    throw Error(ErrorCode::InvalidParams, "product-state symplectic eigenvalues must be >= 1/2");
  }
  return CovarianceMatrix(product_covariance_matrix(p));
}

double product_purity(const ProductStateParams& p) { return 1.0 / (4.0 * p.eta1 * p.eta2); }

double sqrt_eta(double eta) { return sqrt_state_kappa(eta); }

double eta_from_sqrt(double eta_tilde) { return 0.5 * (eta_tilde + 0.25 / eta_tilde); }

ProductStateParams closest_product_params(const StandardForm& t) {
  const double bb = t.b1b2();
  const double pc = bb - t.c * t.c;
  const double pd = bb - t.d * t.d;
  const double kappa_product = std::sqrt(pc * pd);  // kappa1~ kappa2~ = sqrt(det V~)
  ProductStateParams p;
  p.eta1 = std::sqrt(t.b1 / t.b2 * kappa_product);
  p.eta2 = std::sqrt(t.b2 / t.b1 * kappa_product);
  const double quarter_log = 0.25 * std::log(pc / pd);
  p.r1 = 0.5 * (std::log(t.s1) + quarter_log);
  p.r2 = 0.5 * (std::log(t.s2) + quarter_log);
  p.phi1 = p.phi2 = 0.0;
  return p;
}

std::array<double, 4> stationarity_residual(const StandardForm& t, const ProductStateParams& p) {
  const double q1 = t.b1 * t.s1;
  const double q2 = t.b2 * t.s2;
  const double w1 = t.b1 / t.s1;
  const double w2 = t.b2 / t.s2;
  const double up1 = p.eta1 * std::exp(2.0 * p.r1);
  const double up2 = p.eta2 * std::exp(2.0 * p.r2);
  const double dn1 = p.eta1 * std::exp(-2.0 * p.r1);
  const double dn2 = p.eta2 * std::exp(-2.0 * p.r2);
  const double cc = t.c * t.c * t.s1 * t.s2;
  const double dd = t.d * t.d / (t.s1 * t.s2);
  return {(q1 + up1) * (q2 - up2) - cc, (q1 - up1) * (q2 + up2) - cc, (w1 + dn1) * (w2 - dn2) - dd,
          (w1 - dn1) * (w2 + dn2) - dd};
}

ClosestProduct closest_product_state(const CovarianceMatrix& cm, const Eigen::Vector4d& mean) {
  require_two_mode_physical(cm);
  const LocalReduction reduction = reduce_to_standard_form(cm);
  const StandardForm tilde = square_root_standard_form(reduction.form);

  ProductStateParams sqrt_params = closest_product_params(tilde);
  sqrt_params.mean = mean;
  ProductStateParams params = sqrt_params;
  params.eta1 = eta_from_sqrt(sqrt_params.eta1);
  params.eta2 = eta_from_sqrt(sqrt_params.eta2);

  const Eigen::Matrix4d& local = reduction.local;
  const Eigen::Matrix4d sqrt_cm = local * product_covariance_matrix(sqrt_params) * local.transpose();
  const Eigen::Matrix4d state_cm = local * product_covariance_matrix(params) * local.transpose();

  const TildeAffinity a =
      (reduction.form.c == 0.0 && reduction.form.d == 0.0) ? TildeAffinity{} : tilde_affinity(tilde);
  return ClosestProduct{sqrt_params, a.affinity,
                        GaussianState(CovarianceMatrix(0.5 * (state_cm + state_cm.transpose())), mean),
                        GaussianState(CovarianceMatrix(0.5 * (sqrt_cm + sqrt_cm.transpose())), mean)};
}

ClosestProduct closest_product_state(const GaussianState& s) {
  if (s.modes() != 2) throw Error(ErrorCode::DimensionMismatch, "two-mode state required");
  return closest_product_state(s.cm(), Eigen::Vector4d(s.mean()));
}

double max_affinity(const StandardForm& sf) { return tilde_affinity_for(sf).affinity; }

double max_affinity(const CovarianceMatrix& cm) {
  require_two_mode_physical(cm);
  return max_affinity(standard_form(cm));
}

double max_affinity_v_route(const StandardForm& sf) {
  const SymplecticSpectrum spectrum = two_mode_spectrum(sf);
  const SymplecticInvariants inv = invariants(spectrum, sf);
  if (inv.K <= 1e-300 || spectrum.kappas[0] - 0.5 < kPhysicalityTolerance) {
    throw Error(ErrorCode::PureModeSingularity, "V-route maximal affinity is 0/0 for pure states");
  }
  const double b1 = sf.b1;
  const double b2 = sf.b2;
  const double bb = b1 * b2;
  const double k2 = inv.K * inv.K;
  const double det = sf.det();
  const double root_det = std::sqrt(det);
  const double quarter_det = std::sqrt(root_det);

  const double big_b1 = bb * k2 + 0.25 * std::pow(b1 * sf.c + b2 * sf.d, 2);
  const double big_b2 = bb * k2 + 0.25 * std::pow(b2 * sf.c + b1 * sf.d, 2);
  const double sum_roots = std::sqrt(bb - sf.c * sf.c) + std::sqrt(bb - sf.d * sf.d);
  const double sum_m = std::sqrt(inv.M1) + std::sqrt(inv.M2);
  const double q = sum_roots * sum_roots * (bb * sum_m * sum_m - 0.25 * (b1 - b2) * (b1 - b2)) -
                   std::pow(std::sqrt(big_b1) - std::sqrt(big_b2), 2);

  const double den = k2 * root_det + inv.K * quarter_det * std::sqrt(std::max(q, 0.0)) + std::sqrt(big_b1 * big_b2);
  return 2.0 * inv.K * quarter_det / std::sqrt(den);
}

double max_affinity_v_route(const CovarianceMatrix& cm) {
  require_two_mode_physical(cm);
  return max_affinity_v_route(standard_form(cm));
}

double hellinger_discord(const StandardForm& sf) { return tilde_affinity_for(sf).discord; }

double hellinger_discord(const CovarianceMatrix& cm) {
  require_two_mode_physical(cm);
  return hellinger_discord(standard_form(cm));
}

double hellinger_discord_symmetric(double b, double c, double d) {
  if (!(b >= 0.5) || !(c >= std::abs(d))) {
    throw Error(ErrorCode::NotPhysical, "symmetric standard form requires b >= 1/2 and c >= |d|");
  }
  const double k1 = std::sqrt((b + c) * (b + d));
  const double k2 = std::sqrt(std::max((b - c) * (b - d), 0.0));
  if (k2 < 0.5 - kPhysicalityTolerance) {
    throw Error(ErrorCode::NotPhysical, "smallest symplectic eigenvalue " + std::to_string(k2) + " < 1/2");
  }
  if (c == 0.0 && d == 0.0) return 0.0;
  const double kpt1 = std::sqrt((b + c) * (b - d));
  const double kpt2 = std::sqrt(std::max((b - c) * (b + d), 0.0));
  const double quarter_det = std::sqrt(k1 * k2);
  const double n1 = (k1 + 0.5) * (k2 + 0.5);
  const double n2 = std::max(k1 - 0.5, 0.0) * std::max(k2 - 0.5, 0.0);
  // sqrt(N1) - sqrt(N2) = (N1 - N2) / (sqrt(N1) + sqrt(N2)), N1 - N2 = kappa1 + kappa2
  const double root_gap = (k1 + k2) / (std::sqrt(n1) + std::sqrt(n2));
  const double den = kpt1 + kpt2 + 2.0 * quarter_det * root_gap;
  return std::max(1.0 - 4.0 * quarter_det / den, 0.0);
}

double hellinger_discord_sts(const StsParams& p) {
  sts_standard_form(p);  // validates
  const double k1 = p.nbar1 + 0.5;
  const double k2 = p.nbar2 + 0.5;
  const double sh = std::sinh(2.0 * p.r);
  const double x = 1.0 + 2.0 * invariant_gap(k1, k2, +1.0) * sh * sh;
  return discord_from_x(x);
}

double hellinger_discord_mts(const MtsParams& p) {
  mts_standard_form(p);  // validates
  const double sn = std::sin(p.theta);
  const double y = 1.0 + 2.0 * invariant_gap(p.kappa1, p.kappa2, -1.0) * sn * sn;
  return discord_from_x(y);
}

CovarianceMatrix partial_transpose(const CovarianceMatrix& cm) {
  if (cm.modes() != 2) throw Error(ErrorCode::DimensionMismatch, "two-mode covariance matrix required");
  Eigen::MatrixXd v = cm.matrix();
  v.row(3) *= -1.0;
  v.col(3) *= -1.0;
  return CovarianceMatrix(v);
}

bool simon_separable(const CovarianceMatrix& cm) {
  require_two_mode_physical(cm);
  return is_physical(partial_transpose(cm));
}

bool in_symmetric_family(const StandardForm& sf) {
  const double b_scale = std::max(1.0, std::max(sf.b1, sf.b2));
  const double c_scale = std::max(1.0, sf.c);
  return std::abs(sf.b1 - sf.b2) <= kFamilyTolerance * b_scale &&
         std::abs(std::abs(sf.d) - sf.c) <= kFamilyTolerance * c_scale;
}

namespace {

struct FamilyTerms {
  double b = 0.0;
  double c = 0.0;
  double y = 0.0;
  SymplecticSpectrum spectrum;
};

FamilyTerms family_terms(const CovarianceMatrix& cm) {
  require_two_mode_physical(cm);
  const StandardForm sf = standard_form(cm);
  if (!in_symmetric_family(sf)) {
    throw Error(ErrorCode::OutOfFamily, "entropic measures need b1 = b2 and |d| = c; got b1 = " +
                                            std::to_string(sf.b1) + ", b2 = " + std::to_string(sf.b2) +
                                            ", c = " + std::to_string(sf.c) + ", d = " + std::to_string(sf.d));
  }
  FamilyTerms t;
  t.b = 0.5 * (sf.b1 + sf.b2);
  t.c = sf.c;
  t.y = t.b - t.c * t.c / (t.b + 0.5);
  t.spectrum = symplectic_eigenvalues(cm);
  return t;
}

}  // namespace

double entropic_discord(const CovarianceMatrix& cm) {
  const FamilyTerms t = family_terms(cm);
  if (t.c == 0.0) return 0.0;
  const double value = entropy_function(t.b) - entropy_function(t.spectrum.kappas[0]) -
                       entropy_function(t.spectrum.kappas[1]) + entropy_function(t.y);
  return std::max(value, 0.0);
}

double mutual_information(const CovarianceMatrix& cm) {
  require_two_mode_physical(cm);
  const double b1 = std::sqrt(det2(cm.block(0, 0)));
  const double b2 = std::sqrt(det2(cm.block(1, 1)));
  const SymplecticSpectrum spectrum = symplectic_eigenvalues(cm);
  const double value = entropy_function(b1) + entropy_function(b2) - entropy_function(spectrum.kappas[0]) -
                       entropy_function(spectrum.kappas[1]);
  return std::max(value, 0.0);
}

double classical_correlations(const CovarianceMatrix& cm) {
  const FamilyTerms t = family_terms(cm);
  if (t.c == 0.0) return 0.0;
  return std::max(entropy_function(t.b) - entropy_function(t.y), 0.0);
}

double entanglement_of_formation_symmetric(double b, double c) {
  if (!(b >= 0.5) || !(c >= 0.0) || !(b > c) || b * b - c * c < 0.25 - kPhysicalityTolerance) {
    throw Error(ErrorCode::NotPhysical, "symmetric squeezed thermal state requires b^2 - c^2 >= 1/4");
  }
  const double gap = b - c;  // smallest partially transposed symplectic eigenvalue
  if (gap >= 0.5) return 0.0;
  const double z = (gap * gap + 0.25) / (2.0 * gap);
  return entropy_function(z);
}

CorrelationReport correlation_report(const CovarianceMatrix& cm, const Eigen::Vector4d& mean) {
  require_two_mode_physical(cm);
  if (!mean.allFinite()) throw Error(ErrorCode::InvalidParams, "mean vector is not finite");

  CorrelationReport report;
  report.mean = mean;
  report.standard_form = standard_form(cm);
  const SymplecticSpectrum spectrum = symplectic_eigenvalues(cm);
  const SymplecticSpectrum pt = symplectic_eigenvalues(partial_transpose(cm));
  report.symplectic_spectrum = {spectrum.kappas[0], spectrum.kappas[1]};
  report.pt_spectrum = {pt.kappas[0], pt.kappas[1]};

  const TildeAffinity a = tilde_affinity_for(report.standard_form);
  report.max_affinity = a.affinity;
  report.hellinger_discord = a.discord;
  report.mutual_information = mutual_information(cm);
  report.separable = pt.min() >= 0.5 - kPhysicalityTolerance;

  const StandardForm& sf = report.standard_form;
  if (in_symmetric_family(sf)) {
    report.entropic_discord = entropic_discord(cm);
    report.classical_correlations = classical_correlations(cm);
  }
  if (report.separable) {
    report.eof = 0.0;
  } else if (in_symmetric_family(sf) && sf.d <= 0.0) {
    report.eof = entanglement_of_formation_symmetric(0.5 * (sf.b1 + sf.b2), sf.c);
  }
  return report;
}

}  // namespace ghk
