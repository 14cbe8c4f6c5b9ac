#include "ghk/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>
#include <limits>
#include <random>
#include <sstream>
#include <thread>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include "ghk/affinity.hpp"
#include "ghk/error.hpp"

namespace ghk {

namespace {

inline constexpr double kEtaEpsilon = 1e-12;
inline constexpr int kMaxRestarts = 8;
inline constexpr std::size_t kDims = 6;

// Search coordinates: (u1, u2, x1, y1, x2, y2) with
//   eta~_j = 1/2 + max(exp(u_j) - eps, 0)   (square-root-state eigenvalue)
//   (x_j, y_j) = r_j (cos phi_j, sin phi_j).
// The polar pair removes the phi degeneracy at r = 0.
struct SearchProblem {
  Eigen::Matrix4d sqrt_input;
  double eta_tilde_max = 0.0;
  double r_max = 0.0;
};

struct Point {
  double eta_tilde1, eta_tilde2, r1, phi1, r2, phi2;
};

Point decode(const double* x) {
  auto eta = [](double u) { return 0.5 + std::max(std::exp(u) - kEtaEpsilon, 0.0); };
  return Point{eta(x[0]),
               eta(x[1]),
               std::hypot(x[2], x[3]),
               std::atan2(x[3], x[2]),
               std::hypot(x[4], x[5]),
               std::atan2(x[5], x[4])};
}

double penalty(const SearchProblem& problem, const Point& p) {
  double excess = 0.0;
  excess += std::max(p.eta_tilde1 - problem.eta_tilde_max, 0.0);
  excess += std::max(p.eta_tilde2 - problem.eta_tilde_max, 0.0);
  excess += std::max(p.r1 - problem.r_max, 0.0);
  excess += std::max(p.r2 - problem.r_max, 0.0);
  return excess;
}

double negative_affinity(const gsl_vector* x, void* params) {
  const auto& problem = *static_cast<const SearchProblem*>(params);
  const Point p = decode(gsl_vector_const_ptr(x, 0));
  // Outside the box every feasible value (>= -1) beats the penalty.
  if (const double excess = penalty(problem, p); excess > 0.0) return 1.0 + excess;
  ProductStateParams sqrt_params;
  sqrt_params.eta1 = p.eta_tilde1;
  sqrt_params.eta2 = p.eta_tilde2;
  sqrt_params.r1 = p.r1;
  sqrt_params.phi1 = p.phi1;
  sqrt_params.r2 = p.r2;
  sqrt_params.phi2 = p.phi2;
  const double a = affinity_from_sqrt_cms(problem.sqrt_input, product_covariance_matrix(sqrt_params));
  return std::isfinite(a) ? -a : 1.0;
}

struct StartResult {
  double value = -std::numeric_limits<double>::infinity();
  std::array<double, kDims> x{};
};

using MinimizerPtr = std::unique_ptr<gsl_multimin_fminimizer, decltype(&gsl_multimin_fminimizer_free)>;
using VectorPtr = std::unique_ptr<gsl_vector, decltype(&gsl_vector_free)>;

StartResult run_start(const SearchProblem& problem, const OptimizerConfig& cfg, double kappa_tilde_max,
                      int index) {
  std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                    static_cast<std::uint32_t>(index)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> eta_dist(
      0.5, std::min(problem.eta_tilde_max, 2.0 * kappa_tilde_max + 1.0));
  std::uniform_real_distribution<double> r_dist(0.0, std::min(1.5, problem.r_max));
  std::uniform_real_distribution<double> phi_dist(-std::numbers::pi, std::numbers::pi);

  VectorPtr x(gsl_vector_alloc(kDims), &gsl_vector_free);
  VectorPtr step(gsl_vector_alloc(kDims), &gsl_vector_free);
  for (int j = 0; j < 2; ++j) {
    const double eta = eta_dist(rng);
    const double r = r_dist(rng);
    const double phi = phi_dist(rng);
    gsl_vector_set(x.get(), static_cast<std::size_t>(j), std::log(eta - 0.5 + kEtaEpsilon));
    gsl_vector_set(x.get(), static_cast<std::size_t>(2 + 2 * j), r * std::cos(phi));
    gsl_vector_set(x.get(), static_cast<std::size_t>(3 + 2 * j), r * std::sin(phi));
  }

  gsl_multimin_function fn{&negative_affinity, kDims, const_cast<SearchProblem*>(&problem)};
  MinimizerPtr minimizer(gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, kDims),
                         &gsl_multimin_fminimizer_free);

  double previous = std::numeric_limits<double>::infinity();
  for (int restart = 0; restart <= kMaxRestarts; ++restart) {
    gsl_vector_set(step.get(), 0, 1.0);
    gsl_vector_set(step.get(), 1, 1.0);
    for (std::size_t k = 2; k < kDims; ++k) gsl_vector_set(step.get(), k, 0.3);
    gsl_multimin_fminimizer_set(minimizer.get(), &fn, x.get(), step.get());

    for (int iter = 0; iter < cfg.max_iters; ++iter) {
      if (gsl_multimin_fminimizer_iterate(minimizer.get()) != GSL_SUCCESS) break;
      const double size = gsl_multimin_fminimizer_size(minimizer.get());
      if (gsl_multimin_test_size(size, cfg.xtol) == GSL_SUCCESS) break;
    }
    gsl_vector_memcpy(x.get(), gsl_multimin_fminimizer_x(minimizer.get()));
    const double current = gsl_multimin_fminimizer_minimum(minimizer.get());
    const bool settled = previous - current < cfg.ftol;
    previous = std::min(previous, current);
    if (settled) break;
  }

  StartResult out;
  out.value = -previous;
  for (std::size_t k = 0; k < kDims; ++k) out.x[k] = gsl_vector_get(x.get(), k);
  return out;
}

// (r, phi) ~ (-r, phi + pi): bring phi into (-pi/2, pi/2].
void fold_angle(double& r, double& phi) {
  if (phi > 0.5 * std::numbers::pi) {
    phi -= std::numbers::pi;
    r = -r;
  } else if (phi <= -0.5 * std::numbers::pi) {
    phi += std::numbers::pi;
    r = -r;
  }
}

}  // namespace

OracleResult oracle_max_affinity(const CovarianceMatrix& cm, const OptimizerConfig& cfg) {
  if (cm.modes() != 2) throw Error(ErrorCode::DimensionMismatch, "two-mode covariance matrix required");
  if (cfg.starts < 1) throw Error(ErrorCode::InvalidParams, "at least one start required");
  const WilliamsonDecomposition w = williamson(cm);
  if (w.spectrum.min() < 0.5 - kPhysicalityTolerance) {
    throw Error(ErrorCode::NotPhysical, "input covariance matrix is not physical");
  }
  gsl_set_error_handler_off();

  const double kappa_tilde_max = sqrt_state_kappa(w.spectrum.max());
  const double eta_max = cfg.eta_bounds[1] > 0.0 ? cfg.eta_bounds[1] : 10.0 * kappa_tilde_max;
  SearchProblem problem;
  problem.sqrt_input = square_root_cm(cm).matrix();
  problem.eta_tilde_max = sqrt_state_kappa(eta_max);
  problem.r_max = std::max(-cfg.r_bounds[0], cfg.r_bounds[1]);

  std::vector<StartResult> results(static_cast<std::size_t>(cfg.starts));
  const unsigned hw = cfg.threads > 0 ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  const unsigned workers = std::min<unsigned>(hw, static_cast<unsigned>(cfg.starts));
  auto work = [&](unsigned worker) {
    for (int i = static_cast<int>(worker); i < cfg.starts; i += static_cast<int>(workers)) {
      results[static_cast<std::size_t>(i)] = run_start(problem, cfg, kappa_tilde_max, i);
    }
  };
  if (workers <= 1) {
    work(0);
  } else {
    std::vector<std::future<void>> jobs;
    for (unsigned k = 0; k < workers; ++k) jobs.push_back(std::async(std::launch::async, work, k));
    for (auto& job : jobs) job.get();
  }

  OracleResult out;
  out.start_values.reserve(results.size());
  for (const auto& r : results) out.start_values.push_back(r.value);
  const auto best = std::max_element(results.begin(), results.end(),
                                     [](const StartResult& a, const StartResult& b) { return a.value < b.value; });

  if (results.size() >= 2) {
    std::vector<double> sorted = out.start_values;
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    if (sorted[0] - sorted[1] > 10.0 * cfg.ftol) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "best two starts disagree: " << sorted[0] << " vs " << sorted[1];
      throw Error(ErrorCode::NotConverged, msg.str());
    }
  }

  const Point p = decode(best->x.data());
  out.value = best->value;
  ProductStateParams& s = out.sqrt_params;
  s.eta1 = p.eta_tilde1;
  s.eta2 = p.eta_tilde2;
  s.r1 = p.r1;
  s.phi1 = p.phi1;
  s.r2 = p.r2;
  s.phi2 = p.phi2;
  fold_angle(s.r1, s.phi1);
  fold_angle(s.r2, s.phi2);
  out.params = s;
  out.params.eta1 = eta_from_sqrt(s.eta1);
  out.params.eta2 = eta_from_sqrt(s.eta2);
  return out;
}

bool verify_phi_zero(const CovarianceMatrix& cm, const OptimizerConfig& cfg) {
  const OracleResult res = oracle_max_affinity(covariance(standard_form(cm)), cfg);
  const auto settled = [](double r, double phi) { return std::abs(r) < 1e-3 || std::abs(phi) < 1e-3; };
  return settled(res.params.r1, res.params.phi1) && settled(res.params.r2, res.params.phi2);
}

// ---------------------------------------------------------------------------
// Fock-space sums for thermal (diagonal) states

namespace {

inline constexpr int kMaxTruncation = 1 << 14;

double thermal_ratio(double nbar) {
  if (!(nbar >= 0.0) || !std::isfinite(nbar)) {
    throw Error(ErrorCode::NegativeOccupancy, "mean occupancy must be finite and non-negative");
  }
  return nbar / (nbar + 1.0);
}

// Smallest cutoff N = truncation * 2^k with tail(N) <= tail_bound.
int certified_cutoff(const FockOracleConfig& cfg, const std::function<double(int)>& tail) {
  int n = std::max(cfg.truncation, 1);
  while (tail(n) > cfg.tail_bound) {
    if (n >= kMaxTruncation) {
      throw Error(ErrorCode::TruncationInsufficient,
                  "tail " + std::to_string(tail(n)) + " above bound at cutoff " + std::to_string(n));
    }
    n = std::min(2 * n, kMaxTruncation);
  }
  return n;
}

// Geometric tail sum_{n > N} a q^n = a q^(N+1) / (1 - q).
double geometric_tail(double a, double q, int n) {
  if (q <= 0.0) return 0.0;
  return a * std::pow(q, n + 1) / (1.0 - q);
}

}  // namespace

std::vector<double> fock_thermal_spectrum(double nbar, const FockOracleConfig& cfg) {
  const double q = thermal_ratio(nbar);
  const int n = certified_cutoff(cfg, [&](int cut) { return geometric_tail(1.0 - q, q, cut); });
  std::vector<double> p(static_cast<std::size_t>(n) + 1);
  double term = 1.0 - q;
  for (auto& v : p) {
    v = term;
    term *= q;
  }
  return p;
}

double fock_affinity_diagonal(double nbar1, double nbar2, const FockOracleConfig& cfg) {
  const double q = std::sqrt(thermal_ratio(nbar1) * thermal_ratio(nbar2));
  const double a = std::sqrt((1.0 - thermal_ratio(nbar1)) * (1.0 - thermal_ratio(nbar2)));
  const int n = certified_cutoff(cfg, [&](int cut) { return geometric_tail(a, q, cut); });
  FockOracleConfig fixed{n, 1.0};
  const auto p = fock_thermal_spectrum(nbar1, fixed);
  const auto r = fock_thermal_spectrum(nbar2, fixed);
  double sum = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) sum += std::sqrt(p[k] * r[k]);
  return sum;
}

double fock_trace_distance_diagonal(double nbar1, double nbar2, const FockOracleConfig& cfg) {
  const double q1 = thermal_ratio(nbar1);
  const double q2 = thermal_ratio(nbar2);
  const int n = certified_cutoff(
      cfg, [&](int cut) { return geometric_tail(1.0 - q1, q1, cut) + geometric_tail(1.0 - q2, q2, cut); });
  FockOracleConfig fixed{n, 1.0};
  const auto p = fock_thermal_spectrum(nbar1, fixed);
  const auto r = fock_thermal_spectrum(nbar2, fixed);
  double sum = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) sum += std::abs(p[k] - r[k]);
  return 0.5 * sum;
}

double fock_trace_sqrt(double nbar, const FockOracleConfig& cfg) {
  const double q = thermal_ratio(nbar);
  const int n = certified_cutoff(cfg, [&](int cut) { return geometric_tail(std::sqrt(1.0 - q), std::sqrt(q), cut); });
  const auto p = fock_thermal_spectrum(nbar, FockOracleConfig{n, 1.0});
  double sum = 0.0;
  for (double v : p) sum += std::sqrt(v);
  return sum;
}

double fock_overlap_diagonal(double nbar1, double nbar2, const FockOracleConfig& cfg) {
  const double q1 = thermal_ratio(nbar1);
  const double q2 = thermal_ratio(nbar2);
  const int n = certified_cutoff(cfg, [&](int cut) { return geometric_tail((1.0 - q1) * (1.0 - q2), q1 * q2, cut); });
  FockOracleConfig fixed{n, 1.0};
  const auto p = fock_thermal_spectrum(nbar1, fixed);
  const auto r = fock_thermal_spectrum(nbar2, fixed);
  double sum = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) sum += p[k] * r[k];
  return sum;
}

}  // namespace ghk
