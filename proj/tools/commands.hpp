#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ghk/symplectic.hpp"
#include "json.hpp"

namespace ghk::cli {

using Json = nlohmann::ordered_json;

/// Malformed command-line input (exit code 2).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A two-mode covariance matrix with mean, plus an echo of where it came from.
struct StateInput {
  Eigen::Matrix4d cm = Eigen::Matrix4d::Zero();
  Eigen::Vector4d mean = Eigen::Vector4d::Zero();
  Json echo;
};

struct InputFlags {
  std::vector<std::string> sts;
  std::vector<std::string> mts;
  std::string std_form;
  std::string matrix;
  std::string mean;
};

StateInput parse_state(const InputFlags& flags);

/// key=value tokens, also split on commas.
std::map<std::string, double> parse_assignments(const std::vector<std::string>& tokens);
std::vector<double> parse_numbers(const std::string& text);

/// Shortest representation with at most 12 significant digits.
std::string format_number(double value);

Json report_json(const StateInput& input);
void write_report_csv(const Json& report, std::ostream& out);

struct SweepSpec {
  std::string family;
  std::map<std::string, double> fixed;
  std::string sweep_param;
  double start = 0.0;
  double stop = 0.0;
  int steps = 0;
  std::vector<std::string> columns;
};

SweepSpec parse_sweep(const std::string& family, const std::vector<std::string>& fixed,
                      const std::string& sweep_param, const std::string& range, const std::string& columns);
void run_sweep(const SweepSpec& spec, bool json, std::ostream& out);

struct Tolerances {
  std::string name;
  double oracle_above = 1e-7;  // oracle may exceed the closed form by at most this
  double oracle_below = 1e-5;  // closed form may exceed the oracle by at most this
  double route = 1e-8;
  double stationarity = 1e-9;
  double fock = 1e-6;
  double invariants = 1e-9;
  double sqrt_identity = 1e-8;
};

/// Reads GHK_TOLERANCE_PROFILE (unset, "default" or "strict").
Tolerances tolerance_profile();

struct VerifyOptions {
  std::uint64_t seed = 42;
  int trials = 100;
  double inject_breach = 0.0;
};

int run_verify(const VerifyOptions& options, const Tolerances& tol, std::ostream& out);

}  // namespace ghk::cli
