#include <algorithm>
#include <functional>
#include <future>
#include <ostream>
#include <sstream>
#include <thread>

#include "commands.hpp"
#include "ghk/discord.hpp"
#include "ghk/error.hpp"
#include "ghk/states.hpp"
#include "ghk/version.hpp"

namespace ghk::cli {

namespace {

using Params = std::map<std::string, double>;

const std::vector<std::string> kMeasures = {"hellinger_discord",      "max_affinity", "mutual_information",
                                            "entropic_discord",       "classical_correlations",
                                            "eof",                    "separable",    "purity"};

double take(const Params& p, const std::string& key, const std::string& family) {
  const auto it = p.find(key);
  if (it == p.end()) throw ParseError("family " + family + " needs parameter " + key);
  return it->second;
}

void allow_only(const Params& p, std::initializer_list<const char*> keys, const std::string& family) {
  for (const auto& [key, value] : p) {
    if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return key == k; })) {
      throw ParseError("family " + family + " has no parameter '" + key + "'");
    }
  }
}

void exclusive(const Params& p, const char* a, const char* b) {
  if (p.count(a) && p.count(b)) throw ParseError(std::string("give only one of ") + a + " and " + b);
}

// ParseError for a malformed parameter set; ghk::Error for an unphysical point.
StandardForm resolve(const std::string& family, const Params& p) {
  if (family == "sts") {
    allow_only(p, {"nbar1", "nbar2", "kappa1", "kappa2", "r"}, family);
    exclusive(p, "nbar1", "kappa1");
    exclusive(p, "nbar2", "kappa2");
    const double n1 = p.count("kappa1") ? p.at("kappa1") - 0.5 : take(p, "nbar1", family);
    const double n2 = p.count("kappa2") ? p.at("kappa2") - 0.5 : take(p, "nbar2", family);
    return sts_standard_form({n1, n2, take(p, "r", family), 0.0});
  }
  if (family == "mts") {
    allow_only(p, {"kappa1", "kappa2", "theta"}, family);
    return mts_standard_form({take(p, "kappa1", family), take(p, "kappa2", family), take(p, "theta", family), 0.0});
  }
  if (family == "symmetric") {
    allow_only(p, {"b", "c", "d", "gap", "sign"}, family);
    exclusive(p, "c", "gap");
    exclusive(p, "d", "sign");
    const double b = take(p, "b", family);
    double c = 0.0;
    if (p.count("gap")) {
      const double c_sq = b * b - p.at("gap");
      if (c_sq < 0.0) throw Error(ErrorCode::NotPhysical, "b^2 below the requested b^2 - c^2");
      c = std::sqrt(c_sq);
    } else {
      c = take(p, "c", family);
    }
    double d = 0.0;
    if (p.count("sign")) {
      d = p.at("sign") >= 0.0 ? c : -c;
    } else {
      d = take(p, "d", family);
    }
    return StandardForm{b, b, c, d};
  }
  throw ParseError("unknown family '" + family + "' (expected sts, mts or symmetric)");
}

struct Row {
  bool physical = false;
  std::map<std::string, std::optional<double>> values;
  bool separable = false;
};

Row compute_row(const SweepSpec& spec, double x) {
  Params p = spec.fixed;
  p[spec.sweep_param] = x;
  Row row;
  try {
    const StandardForm sf = resolve(spec.family, p);
    if (!(sf.b1 > 0.0) || !(sf.b2 > 0.0) || !is_physical(covariance(sf))) return row;
    const CovarianceMatrix cm = covariance(sf);
    const CorrelationReport r = correlation_report(cm, Eigen::Vector4d::Zero());
    row.separable = r.separable;
    row.values["hellinger_discord"] = r.hellinger_discord;
    row.values["max_affinity"] = r.max_affinity;
    row.values["mutual_information"] = r.mutual_information;
    row.values["entropic_discord"] = r.entropic_discord;
    row.values["classical_correlations"] = r.classical_correlations;
    row.values["eof"] = r.eof;
    row.values["purity"] = purity(GaussianState(cm));
    row.physical = true;
  } catch (const Error&) {
    return Row{};
  }
  return row;
}

std::vector<double> grid(const SweepSpec& spec) {
  std::vector<double> xs(static_cast<std::size_t>(spec.steps));
  for (int i = 0; i < spec.steps; ++i) {
    xs[static_cast<std::size_t>(i)] =
        i == spec.steps - 1 ? spec.stop : spec.start + (spec.stop - spec.start) * i / (spec.steps - 1);
  }
  return xs;
}

std::vector<Row> compute_rows(const SweepSpec& spec, const std::vector<double>& xs) {
  std::vector<Row> rows(xs.size());
  const unsigned workers =
      std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), static_cast<unsigned>(xs.size())));
  auto work = [&](unsigned w) {
    for (std::size_t i = w; i < xs.size(); i += workers) rows[i] = compute_row(spec, xs[i]);
  };
  std::vector<std::future<void>> jobs;
  for (unsigned w = 1; w < workers; ++w) jobs.push_back(std::async(std::launch::async, work, w));
  work(0);
  for (auto& job : jobs) job.get();
  return rows;
}

}  // namespace

SweepSpec parse_sweep(const std::string& family, const std::vector<std::string>& fixed,
                      const std::string& sweep_param, const std::string& range, const std::string& columns) {
  SweepSpec spec;
  spec.family = family;
  spec.fixed = parse_assignments(fixed);
  spec.sweep_param = sweep_param;
  if (spec.fixed.count(sweep_param)) throw ParseError("sweep parameter '" + sweep_param + "' is also fixed");

  std::vector<std::string> parts;
  std::stringstream ss(range);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() != 3) throw ParseError("--range expects start:stop:steps");
  const auto start = parse_numbers(parts[0]);
  const auto stop = parse_numbers(parts[1]);
  const auto steps = parse_numbers(parts[2]);
  if (start.size() != 1 || stop.size() != 1 || steps.size() != 1) throw ParseError("--range expects start:stop:steps");
  spec.start = start[0];
  spec.stop = stop[0];
  if (steps[0] < 2 || steps[0] != std::floor(steps[0]) || steps[0] > 1e6) {
    throw ParseError("--range steps must be an integer >= 2");
  }
  spec.steps = static_cast<int>(steps[0]);

  if (columns.empty()) {
    spec.columns = kMeasures;
  } else {
    std::stringstream cs(columns);
    while (std::getline(cs, item, ',')) {
      if (std::find(kMeasures.begin(), kMeasures.end(), item) == kMeasures.end()) {
        throw ParseError("unknown column '" + item + "'");
      }
      spec.columns.push_back(item);
    }
  }

  // Surface malformed parameter sets before any work; unphysical values are fine here.
  Params probe = spec.fixed;
  probe[spec.sweep_param] = spec.start;
  try {
    resolve(spec.family, probe);
  } catch (const Error&) {
  }
  return spec;
}

void run_sweep(const SweepSpec& spec, bool json, std::ostream& out) {
  const std::vector<double> xs = grid(spec);
  const std::vector<Row> rows = compute_rows(spec, xs);

  std::vector<std::string> params{spec.sweep_param};
  for (const auto& [key, value] : spec.fixed) params.push_back(key);

  if (json) {
    Json doc;
    doc["schema"] = 1;
    doc["provenance"] = Json{{"tool", "ghk"},
                             {"version", std::string(kVersion)},
                             {"family", spec.family},
                             {"sweep_param", spec.sweep_param},
                             {"range", Json::array({spec.start, spec.stop, spec.steps})},
                             {"fixed", spec.fixed}};
    Json items = Json::array();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      Json item;
      item[spec.sweep_param] = xs[i];
      for (const auto& [key, value] : spec.fixed) item[key] = value;
      for (const auto& column : spec.columns) {
        if (column == "separable") {
          item[column] = rows[i].physical ? Json(rows[i].separable) : Json(nullptr);
          continue;
        }
        const auto it = rows[i].values.find(column);
        item[column] = it != rows[i].values.end() && it->second ? Json(*it->second) : Json(nullptr);
      }
      item["physical"] = rows[i].physical;
      items.push_back(item);
    }
    doc["rows"] = items;
    out << doc.dump(2) << '\n';
    return;
  }

  for (const auto& name : params) out << name << ',';
  for (const auto& column : spec.columns) out << column << ',';
  out << "physical\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out << format_number(xs[i]) << ',';
    for (const auto& [key, value] : spec.fixed) out << format_number(value) << ',';
    for (const auto& column : spec.columns) {
      if (column == "separable") {
        if (rows[i].physical) out << (rows[i].separable ? "true" : "false");
      } else {
        const auto it = rows[i].values.find(column);
        if (it != rows[i].values.end() && it->second) out << format_number(*it->second);
      }
      out << ',';
    }
    out << (rows[i].physical ? "true" : "false") << '\n';
  }
}

}  // namespace ghk::cli
