// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "ghk/affinity.hpp"
#include "ghk/discord.hpp"
#include "ghk/error.hpp"
#include "ghk/oracle.hpp"
#include "ghk/sampling.hpp"
#include "ghk/states.hpp"

using namespace ghk;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double rel_diff(double a, double b) { return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}); }

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& title, const Outcome& o) {
  if (!o.pass) ++failures;
  std::cout << "criterion " << id << " " << (o.pass ? "PASS" : "FAIL") << "  " << title << ": " << o.detail
            << std::endl;
}

Outcome guarded(const std::function<Outcome()>& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    return {false, std::string("exception: ") + e.what()};
  }
}

GaussianState thermal(double nbar) {
  const std::vector<double> n{nbar};
  return thermal_state(n);
}

// ---- 1 ------------------------------------------------------------------

Outcome symmetric_sts_universality() {
  const auto t0 = Clock::now();
  double worst = 0.0;
  for (double nbar : {0.0, 0.5, 1.0, 5.0, 20.0}) {
    for (double r : {0.1, 0.5, 1.0, 2.0}) {
      const double hd = hellinger_discord_sts({nbar, nbar, r, 0.0});
      worst = std::max(worst, std::abs(hd - std::pow(std::tanh(r), 2)));
    }
  }
  const double elapsed = seconds_since(t0);
  return {worst <= 1e-10 && elapsed < 1.0,
          "max |D - tanh^2 r| = " + sci(worst) + " (tol 1e-10), " + sci(elapsed) + " s (limit 1 s)"};
}

// ---- 2, 3, 4 share one random suite -------------------------------------

constexpr int kSuiteSize = 500;

std::vector<StandardForm> random_suite() {
  std::mt19937_64 rng(20140101);
  std::vector<StandardForm> forms;
  forms.reserve(kSuiteSize);
  for (int i = 0; i < kSuiteSize; ++i) forms.push_back(random_standard_form(rng));
  return forms;
}

Outcome closed_form_vs_oracle(const std::vector<StandardForm>& forms) {
  const auto t0 = Clock::now();
  double worst_abs = 0.0;
  double worst_excess = 0.0;
  OptimizerConfig cfg;
  for (std::size_t i = 0; i < forms.size(); ++i) {
    cfg.seed = 1000 + i;
    const double closed = max_affinity(forms[i]);
    const double oracle = oracle_max_affinity(covariance(forms[i]), cfg).value;
    worst_abs = std::max(worst_abs, std::abs(closed - oracle));
    worst_excess = std::max(worst_excess, oracle - closed);
  }
  const double elapsed = seconds_since(t0);
  return {worst_abs <= 1e-5 && worst_excess <= 1e-7 && elapsed < 300.0,
          std::to_string(forms.size()) + " states, max |closed - oracle| = " + sci(worst_abs) +
              " (tol 1e-5), max oracle excess = " + sci(worst_excess) + " (tol 1e-7), " + sci(elapsed) +
              " s (limit 300 s)"};
}

Outcome route_equivalence(const std::vector<StandardForm>& forms) {
  double worst_route = 0.0;
  double worst_sqrt = 0.0;
  for (const StandardForm& sf : forms) {
    worst_route = std::max(worst_route, rel_diff(max_affinity(sf), max_affinity_v_route(sf)));
    const Eigen::MatrixXd closed = standard_form_matrix(square_root_standard_form(sf));
    const Eigen::MatrixXd williamson_route = square_root_cm(covariance(sf)).matrix();
    worst_sqrt = std::max(worst_sqrt, (closed - williamson_route).cwiseAbs().maxCoeff());
  }
  return {worst_route <= 1e-8 && worst_sqrt <= 1e-8,
          "tilde vs V route max rel diff = " + sci(worst_route) + " (tol 1e-8), square-root form vs Williamson = " +
              sci(worst_sqrt) + " (tol 1e-8)"};
}

Outcome stationarity(const std::vector<StandardForm>& forms) {
  double worst = 0.0;
  for (const StandardForm& sf : forms) {
    const StandardForm tilde = square_root_standard_form(sf);
    for (double r : stationarity_residual(tilde, closest_product_params(tilde))) worst = std::max(worst, std::abs(r));
  }
  return {worst <= 1e-9, "max residual over " + std::to_string(forms.size()) + " states = " + sci(worst) +
                             " (tol 1e-9)"};
}

// ---- 5 ------------------------------------------------------------------

Outcome spectral_cross_checks() {
  const FockOracleConfig fock_cfg{400, 1e-15};
  const double target = 1 + std::numbers::sqrt2;
  const double tr_gauss = std::abs(trace_of_sqrt(thermal(1.0)) - target);
  const double tr_fock = std::abs(fock_trace_sqrt(1.0, fock_cfg) - target);

  const double a_target = 1 / std::numbers::sqrt2;
  const double a_gauss = std::abs(affinity(thermal(0.0), thermal(1.0)).value - a_target);
  const double a_fock = std::abs(fock_affinity_diagonal(0.0, 1.0, fock_cfg) - a_target);

  double holevo = 0.0;
  for (double n1 : {0.0, 0.3, 1.0, 3.0, 10.0}) {
    for (double n2 : {0.0, 0.3, 1.0, 3.0, 10.0}) {
      const double a = fock_affinity_diagonal(n1, n2, fock_cfg);
      const double t = fock_trace_distance_diagonal(n1, n2, fock_cfg);
      holevo = std::max({holevo, (1 - a) - t, t - std::sqrt(std::max(0.0, 1 - a * a))});
    }
  }
  const bool pass = tr_gauss <= 1e-9 && tr_fock <= 1e-9 && a_gauss <= 1e-6 && a_fock <= 1e-6 && holevo <= 1e-12;
  return {pass, "Tr sqrt(rho) err gauss/fock = " + sci(tr_gauss) + "/" + sci(tr_fock) +
                    " (tol 1e-9), A(vac, th1) err gauss/fock = " + sci(a_gauss) + "/" + sci(a_fock) +
                    " (tol 1e-6), Holevo sandwich worst violation = " + sci(holevo) + " (rounding slack 1e-12)"};
}

// ---- 6 ------------------------------------------------------------------

using Table = std::map<std::string, std::vector<std::string>>;

Table sweep(std::vector<std::string> args) {
  args.insert(args.begin(), "sweep");
  std::ostringstream out;
  std::ostringstream err;
  if (cli::run_cli(args, out, err) != cli::kExitOk) throw std::runtime_error("sweep failed: " + err.str());
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  std::vector<std::string> header;
  std::stringstream hs(line);
  std::string cell;
  while (std::getline(hs, cell, ',')) header.push_back(cell);
  Table t;
  while (std::getline(in, line)) {
    std::stringstream ls(line);
    for (const auto& name : header) {
      std::getline(ls, cell, ',');
      t[name].push_back(cell);
    }
  }
  return t;
}

std::vector<double> numbers(const Table& t, const std::string& name) {
  std::vector<double> out;
  for (const auto& s : t.at(name)) out.push_back(std::stod(s));
  return out;
}

bool strictly_increasing(const std::vector<double>& v, std::size_t from = 0) {
  for (std::size_t i = from + 1; i < v.size(); ++i) {
    if (!(v[i] > v[i - 1])) return false;
  }
  return true;
}

// Second differences at the grid point `k` compared with those two steps
// either side; a kink shows up as a spike in the middle.
bool smooth_at(const std::vector<double>& v, std::size_t k) {
  auto d2 = [&](std::size_t i) { return std::abs(v[i + 1] - 2 * v[i] + v[i - 1]); };
  return d2(k) <= 1.5 * std::max(d2(k - 2), d2(k + 2));
}

Outcome sweep_shapes() {
  std::vector<std::string> problems;

  const Table squeeze = sweep({"--family", "sts", "--fixed", "kappa1=0.5", "--fixed", "kappa2=20.5", "--sweep-param",
                            "r", "--range", "0:3:61", "--columns", "hellinger_discord"});
  const auto hd1 = numbers(squeeze, "hellinger_discord");
  if (!strictly_increasing(hd1)) problems.push_back("squeeze sweep not strictly increasing");
  if (*std::max_element(hd1.begin(), hd1.end()) >= 1.0) problems.push_back("squeeze sweep reaches 1");

  const std::string cols = "hellinger_discord,entropic_discord,mutual_information,classical_correlations";
  const Table mts = sweep({"--family", "symmetric", "--fixed", "gap=6.25", "--fixed", "sign=1", "--sweep-param", "b",
                           "--range", "2.5:6.5:33", "--columns", cols});
  const Table sts = sweep({"--family", "symmetric", "--fixed", "gap=6.25", "--fixed", "sign=-1", "--sweep-param", "b",
                           "--range", "2.5:6.5:33", "--columns", cols});
  for (const Table* t : {&mts, &sts}) {
    const auto mi = numbers(*t, "mutual_information");
    const auto ed = numbers(*t, "entropic_discord");
    for (std::size_t i = 0; i < mi.size(); ++i) {
      if (mi[i] < ed[i]) problems.push_back("fixed-purity sweep mutual < entropic at b=" + t->at("b")[i]);
    }
  }
  for (const char* m : {"hellinger_discord", "entropic_discord", "mutual_information"}) {
    const auto a = numbers(mts, m);
    const auto b = numbers(sts, m);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] < b[i]) problems.push_back(std::string("fixed-purity sweep MTS < STS for ") + m + " at b=" + mts.at("b")[i]);
    }
  }
  if (mts.at("classical_correlations") != sts.at("classical_correlations")) {
    problems.push_back("fixed-purity sweep classical correlations differ between d=+c and d=-c");
  }

  // b in steps of 0.125 so that 6.5 is a grid point
  const Table threshold_sweep = sweep({"--family", "symmetric", "--fixed", "gap=6.25", "--fixed", "sign=-1", "--sweep-param",
                            "b", "--range", "2.5:10.5:65", "--columns", "hellinger_discord,entropic_discord,eof"});
  const auto b = numbers(threshold_sweep, "b");
  const auto eof = numbers(threshold_sweep, "eof");
  const std::size_t threshold = 32;
  if (b[threshold] != 6.5) problems.push_back("threshold sweep grid misses b=6.5");
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (b[i] <= 6.5 && eof[i] != 0.0) problems.push_back("threshold sweep eof nonzero at b=" + threshold_sweep.at("b")[i]);
    if (b[i] > 6.5 && !(eof[i] > 0.0)) problems.push_back("threshold sweep eof zero at b=" + threshold_sweep.at("b")[i]);
  }
  if (!strictly_increasing(eof, threshold)) problems.push_back("threshold sweep eof not increasing above threshold");
  for (const char* m : {"hellinger_discord", "entropic_discord"}) {
    const auto v = numbers(threshold_sweep, m);
    if (!strictly_increasing(v)) problems.push_back(std::string("threshold sweep ") + m + " not monotone");
    for (std::size_t k = threshold - 1; k <= threshold + 1; ++k) {
      if (!smooth_at(v, k)) problems.push_back(std::string("threshold sweep ") + m + " kinks near b=" + threshold_sweep.at("b")[k]);
    }
  }

  Outcome o{problems.empty(), "squeeze sweep monotone below 1; fixed-purity sweeps mutual >= entropic, MTS >= STS, classical equal; "
                              "threshold sweep eof turns on after 6.5 and discords smooth across it"};
  if (!o.pass) {
    o.detail = problems.front() + " (" + std::to_string(problems.size()) + " problems)";
  }
  return o;
}

// ---- 7 ------------------------------------------------------------------

Outcome zero_discord() {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> bdist(0.5, 5.0);
  double worst_product = 0.0;
  double smallest_perturbed = 1.0;
  int trials = 0;
  for (int i = 0; i < 100; ++i) {
    const double b1 = bdist(rng);
    const double b2 = bdist(rng);
    const CovarianceMatrix product = congruence(random_local_symplectic(rng), covariance(StandardForm{b1, b2, 0, 0}));
    worst_product = std::max(worst_product, hellinger_discord(product));
    for (double eps : {1e-4, 1e-3, 1e-2}) {
      for (const auto& [c, d] : {std::pair{eps, 0.0}, {0.0, eps}, {eps, -eps}}) {
        const StandardForm sf{b1, b2, c, d};
        if (!is_physical(covariance(sf))) continue;
        const CovarianceMatrix cm = congruence(random_local_symplectic(rng), covariance(sf));
        smallest_perturbed = std::min(smallest_perturbed, hellinger_discord(cm));
        ++trials;
      }
    }
  }
  return {worst_product <= 1e-12 && smallest_perturbed > 1e-12,
          "max over 100 products = " + sci(worst_product) + " (tol 1e-12), min over " + std::to_string(trials) +
              " perturbed (eps >= 1e-4) = " + sci(smallest_perturbed) + " (must exceed 1e-12)"};
}

// ---- 8 ------------------------------------------------------------------

Outcome affinity_properties() {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> normal;
  double symmetry = 0.0;
  double invariance = 0.0;
  double multiplicativity = 0.0;
  int bound_failures = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int modes = 1 + trial % 2;
    const GaussianState a = random_state(modes, rng);
    const GaussianState b = random_state(modes, rng);
    const double ab = affinity(a, b).value;
    symmetry = std::max(symmetry, std::abs(ab - affinity(b, a).value));
    if (!(ab > 0.0 && ab < 1.0) || affinity(a, a).value != 1.0) ++bound_failures;

    const Eigen::MatrixXd s = random_symplectic(modes, rng);
    Eigen::VectorXd shift(2 * modes);
    for (int k = 0; k < shift.size(); ++k) shift(k) = normal(rng);
    invariance = std::max(invariance, std::abs(affinity(transform(a, s, shift), transform(b, s, shift)).value - ab));

    const GaussianState c = random_state(1, rng);
    const GaussianState d = random_state(1, rng);
    multiplicativity = std::max(
        multiplicativity, std::abs(affinity(direct_sum(a, c), direct_sum(b, d)).value - ab * affinity(c, d).value));
  }
  return {symmetry <= 1e-12 && bound_failures == 0 && invariance <= 1e-9 && multiplicativity <= 1e-10,
          "200 trials: symmetry " + sci(symmetry) + " (tol 1e-12), bound failures " + std::to_string(bound_failures) +
              ", unitary invariance " + sci(invariance) + " (tol 1e-9), multiplicativity " + sci(multiplicativity) +
              " (tol 1e-10)"};
}

// ---- 9 ------------------------------------------------------------------

Outcome closest_product(const std::vector<StandardForm>& forms) {
  std::mt19937_64 rng(9);
  double purity_err = 0.0;
  for (const StandardForm& sf : forms) {
    const CovarianceMatrix cm = congruence(random_local_symplectic(rng), covariance(sf));
    const ClosestProduct cp = closest_product_state(cm, Eigen::Vector4d::Zero());
    const SymplecticSpectrum spec = symplectic_eigenvalues(cm);
    const double expected = 1 / (4 * sqrt_state_kappa(spec.max()) * sqrt_state_kappa(spec.min()));
    purity_err = std::max(purity_err, rel_diff(purity(cp.sqrt_state), expected));
  }

  double worst_r = 0.0;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const double b1 = 0.5 + 4.5 * u(rng);
    const double b2 = 0.5 + 4.5 * u(rng);
    const double c = u(rng) * std::sqrt((b1 - 0.5) * (b2 - 0.5));
    for (double d : {c, -c}) {
      const ProductStateParams p = closest_product_state(covariance(StandardForm{b1, b2, c, d}), Eigen::Vector4d::Zero()).params;
      worst_r = std::max({worst_r, std::abs(p.r1), std::abs(p.r2)});
    }
  }
  return {purity_err <= 1e-9 && worst_r <= 1e-12,
          "square-root product purity vs (4 k1~ k2~)^-1 max rel err = " + sci(purity_err) +
              " (tol 1e-9); |d| = c inputs max |r*| = " + sci(worst_r)};
}

}  // namespace

int main() {
  std::cout << "acceptance criteria" << std::endl;
  report(1, "symmetric squeezed thermal universality", guarded(symmetric_sts_universality));

  const std::vector<StandardForm> forms = random_suite();
  report(2, "closed form vs brute-force oracle", guarded([&] { return closed_form_vs_oracle(forms); }));
  report(3, "route equivalence", guarded([&] { return route_equivalence(forms); }));
  report(4, "stationarity residual", guarded([&] { return stationarity(forms); }));
  report(5, "spectral cross-checks", guarded(spectral_cross_checks));
  report(6, "sweep shapes", guarded(sweep_shapes));
  report(7, "zero-discord characterization", guarded(zero_discord));
  report(8, "affinity property suite", guarded(affinity_properties));
  report(9, "closest product state", guarded([&] { return closest_product(forms); }));

  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
