#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

#include "cli.hpp"
#include "commands.hpp"
#include "ghk/affinity.hpp"
#include "ghk/discord.hpp"
#include "ghk/error.hpp"
#include "ghk/oracle.hpp"
#include "ghk/sampling.hpp"

namespace ghk::cli {

namespace {

std::string describe(const StandardForm& sf) {
  return "b1=" + format_number(sf.b1) + " b2=" + format_number(sf.b2) + " c=" + format_number(sf.c) +
         " d=" + format_number(sf.d);
}

double rel_diff(double a, double b) { return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}); }

struct Suite {
  Suite(std::string n, double tol) : name(std::move(n)), tolerance(tol) {}

  std::string name;
  double tolerance = 0.0;
  int checks = 0;
  double worst = 0.0;
  std::string worst_case;
  std::string failure;  // set when a check could not run

  void record(double deviation, const std::string& where) {
    ++checks;
    if (std::isnan(worst)) return;
    if (deviation > worst || std::isnan(deviation)) {
      worst = deviation;
      worst_case = where;
    }
  }
  bool ok() const { return failure.empty() && worst <= tolerance; }
};

GaussianState thermal(double nbar) {
  const std::vector<double> n{nbar};
  return thermal_state(n);
}

}  // namespace

Tolerances tolerance_profile() {
  const char* env = std::getenv("GHK_TOLERANCE_PROFILE");
  const std::string profile = env ? env : "default";
  Tolerances t;
  if (profile == "default" || profile.empty()) {
    t.name = "default";
    return t;
  }
  if (profile == "strict") {
    t.name = "strict";
    t.oracle_above = 1e-9;
    t.oracle_below = 1e-7;
    t.route = 1e-11;
    t.stationarity = 1e-11;
    t.fock = 1e-10;
    t.invariants = 1e-11;
    t.sqrt_identity = 1e-10;
    return t;
  }
  throw ParseError("GHK_TOLERANCE_PROFILE must be 'default' or 'strict', got '" + profile + "'");
}

int run_verify(const VerifyOptions& options, const Tolerances& tol, std::ostream& out) {
  Suite above{"oracle_above_closed", tol.oracle_above};
  Suite below{"closed_above_oracle", tol.oracle_below};
  Suite routes{"tilde_vs_v_route", tol.route};
  Suite appendix{"sqrt_form_vs_williamson", tol.route};
  Suite stationarity{"stationarity", tol.stationarity};
  Suite invariant{"invariant_identities", tol.invariants};
  Suite identity{"sqrt_cm_identity", tol.sqrt_identity};
  Suite fock{"fock_vs_gaussian", tol.fock};
  // An exact inequality; the slack only absorbs rounding in the Fock sums.
  Suite holevo{"holevo_sandwich", 1e-12};

  std::mt19937_64 rng(options.seed);
  for (int trial = 0; trial < options.trials; ++trial) {
    const StandardForm sf = random_standard_form(rng);
    const CovarianceMatrix cm = congruence(random_local_symplectic(rng), covariance(sf));
    const std::string where = describe(sf);

    const double closed = max_affinity(cm) + options.inject_breach;
    OptimizerConfig cfg;
    cfg.seed = rng();
    try {
      const OracleResult res = oracle_max_affinity(cm, cfg);
      above.record(std::max(res.value - closed, 0.0), where);
      below.record(std::max(closed - res.value, 0.0), where);
    } catch (const Error& e) {
      above.failure = below.failure = std::string(e.what()) + " at " + where;
    }

    const StandardForm reduced = standard_form(cm);
    routes.record(rel_diff(max_affinity(reduced), max_affinity_v_route(reduced)), where);

    const Eigen::MatrixXd williamson_route = square_root_cm(cm).matrix();
    const Eigen::MatrixXd closed_route = standard_form_matrix(square_root_standard_form(sf));
    const Eigen::MatrixXd sqrt_sf = square_root_cm(covariance(sf)).matrix();
    appendix.record((closed_route - sqrt_sf).cwiseAbs().maxCoeff() / std::max(1.0, sqrt_sf.norm()), where);

    const StandardForm tilde = square_root_standard_form(reduced);
    for (double r : stationarity_residual(tilde, closest_product_params(tilde))) {
      stationarity.record(std::abs(r), where);
    }

    const SymplecticInvariants inv = invariants(cm);
    invariant.record(rel_diff(inv.M1 * inv.M2, inv.N1 * inv.N2), where);
    invariant.record(rel_diff(inv.D, inv.D_spectral), where);
    const SymplecticSpectrum spec = symplectic_eigenvalues(cm);
    const double prod = spec.max() * spec.max() * spec.min() * spec.min();
    invariant.record(rel_diff(prod, cm.matrix().determinant()), where);

    const Eigen::MatrixXd j = symplectic_form(2);
    const Eigen::MatrixXd back = 0.5 * (williamson_route - 0.25 * j * williamson_route.inverse() * j);
    identity.record((back - cm.matrix()).cwiseAbs().maxCoeff() / cm.matrix().norm(), where);
  }

  const FockOracleConfig fock_cfg{400, 1e-15};
  for (double n1 : {0.0, 0.3, 1.0, 3.0, 10.0}) {
    for (double n2 : {0.0, 0.3, 1.0, 3.0, 10.0}) {
      const std::string where = "nbar1=" + format_number(n1) + " nbar2=" + format_number(n2);
      try {
        const double a = fock_affinity_diagonal(n1, n2, fock_cfg);
        fock.record(std::abs(affinity(thermal(n1), thermal(n2)).value - a), where);
        fock.record(std::abs(gaussian_overlap_trace(thermal(n1).cm(), thermal(n2).cm(), Eigen::VectorXd::Zero(2)) -
                             fock_overlap_diagonal(n1, n2, fock_cfg)),
                    where);
        const double t = fock_trace_distance_diagonal(n1, n2, fock_cfg);
        holevo.record(std::max({0.0, (1 - a) - t, t - std::sqrt(std::max(0.0, 1 - a * a))}), where);
      } catch (const Error& e) {
        fock.failure = std::string(e.what()) + " at " + where;
      }
    }
    const double ts = fock_trace_sqrt(n1, fock_cfg);
    fock.record(std::abs(trace_of_sqrt(thermal(n1)) - ts) / ts, "nbar=" + format_number(n1));
  }

  const std::vector<const Suite*> suites{&above,    &below,     &routes, &appendix, &stationarity,
                                         &invariant, &identity, &fock,   &holevo};
  out << "verify seed=" << options.seed << " trials=" << options.trials << " profile=" << tol.name << '\n';
  out << std::left << std::setw(26) << "suite" << std::setw(8) << "checks" << std::setw(20) << "max_deviation"
      << std::setw(12) << "tolerance" << "status\n";
  bool all_ok = true;
  for (const Suite* s : suites) {
    all_ok = all_ok && s->ok();
    out << std::left << std::setw(26) << s->name << std::setw(8) << s->checks << std::setw(20)
        << format_number(s->worst) << std::setw(12) << format_number(s->tolerance) << (s->ok() ? "ok" : "BREACH")
        << '\n';
  }
  for (const Suite* s : suites) {
    if (!s->failure.empty()) {
      out << "breach in " << s->name << ": " << s->failure << '\n';
    } else if (!s->ok()) {
      out << "breach in " << s->name << ": deviation " << format_number(s->worst) << " at " << s->worst_case << '\n';
    }
  }
  return all_ok ? kExitOk : kExitBreach;
}

}  // namespace ghk::cli
