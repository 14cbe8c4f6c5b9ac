#pragma once

#include <array>
#include <cstdint>
#include <numbers>
#include <vector>

#include "ghk/discord.hpp"
#include "ghk/symplectic.hpp"

namespace ghk {

/// Multi-start simplex search over product states.
struct OptimizerConfig {
  int starts = 32;
  /// Iteration cap per simplex run (a start may restart the simplex a few times).
  int max_iters = 4000;
  double xtol = 1e-10;
  double ftol = 1e-12;
  /// Upper eta bound; non-positive means 10 * max(kappa~_1, kappa~_2).
  std::array<double, 2> eta_bounds{0.5, 0.0};
  std::array<double, 2> r_bounds{-5.0, 5.0};
  std::array<double, 2> phi_bounds{-std::numbers::pi, std::numbers::pi};
  std::uint64_t seed = 20140101;
  /// Worker threads; 0 uses the hardware concurrency.
  unsigned threads = 0;
};

struct OracleResult {
  double value = 0.0;
  /// Best product state found (phi folded into (-pi/2, pi/2]).
  ProductStateParams params;
  /// Square-root-state parameters of the same product state.
  ProductStateParams sqrt_params;
  /// Best value reached by each start, in start order.
  std::vector<double> start_values;
};

/// Brute-force maximum of the undisplaced affinity between `cm` and the
/// product Gaussian states. Throws NotConverged when the two best starts
/// disagree by more than 10 * ftol.
OracleResult oracle_max_affinity(const CovarianceMatrix& cm, const OptimizerConfig& cfg = {});

/// Runs the oracle on the standard form of `cm` and checks that the optimal
/// squeeze angles vanish (within 1e-3, modulo pi; ignored when r < 1e-3).
bool verify_phi_zero(const CovarianceMatrix& cm, const OptimizerConfig& cfg = {});

struct FockOracleConfig {
  int truncation = 200;
  /// Required bound on the neglected probability (or square-root) mass.
  double tail_bound = 1e-15;
};

/// Thermal photon-number distribution p_n = (1 / (nbar + 1)) (nbar / (nbar + 1))^n.
/// The cutoff doubles until the tail is below cfg.tail_bound, up to 2^14.
std::vector<double> fock_thermal_spectrum(double nbar, const FockOracleConfig& cfg = {});

/// sum_n sqrt(p_n q_n) for two thermal states.
double fock_affinity_diagonal(double nbar1, double nbar2, const FockOracleConfig& cfg = {});
/// 1/2 sum_n |p_n - q_n|.
double fock_trace_distance_diagonal(double nbar1, double nbar2, const FockOracleConfig& cfg = {});
/// sum_n sqrt(p_n).
double fock_trace_sqrt(double nbar, const FockOracleConfig& cfg = {});
/// sum_n p_n q_n.
double fock_overlap_diagonal(double nbar1, double nbar2, const FockOracleConfig& cfg = {});

}  // namespace ghk
