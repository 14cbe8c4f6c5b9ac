#include <ostream>

#include "commands.hpp"
#include "ghk/discord.hpp"
#include "ghk/version.hpp"

namespace ghk::cli {

namespace {

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

Json matrix_rows(const Eigen::Matrix4d& m) {
  Json rows = Json::array();
  for (int i = 0; i < 4; ++i) {
    Json row = Json::array();
    for (int j = 0; j < 4; ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

Json product_params(const ProductStateParams& p) {
  return Json{{"eta1", p.eta1}, {"eta2", p.eta2}, {"r1", p.r1}, {"r2", p.r2}, {"phi1", p.phi1}, {"phi2", p.phi2}};
}

}  // namespace

Json report_json(const StateInput& input) {
  const CovarianceMatrix cm(input.cm);
  const CorrelationReport r = correlation_report(cm, input.mean);
  const ClosestProduct cp = closest_product_state(cm, input.mean);

  ProductStateParams physical_params = cp.params;
  physical_params.eta1 = eta_from_sqrt(cp.params.eta1);
  physical_params.eta2 = eta_from_sqrt(cp.params.eta2);

  Json doc;
  doc["schema"] = 1;
  doc["provenance"] = Json{{"tool", "ghk"}, {"version", std::string(kVersion)}, {"input", input.echo}};
  doc["input"] = Json{{"covariance_matrix", matrix_rows(input.cm)},
                      {"mean", Json::array({input.mean(0), input.mean(1), input.mean(2), input.mean(3)})}};
  const StandardForm& sf = r.standard_form;
  doc["standard_form"] =
      Json{{"b1", sf.b1}, {"b2", sf.b2}, {"c", sf.c}, {"d", sf.d}, {"s1", sf.s1}, {"s2", sf.s2}};
  doc["symplectic_spectrum"] = Json::array({r.symplectic_spectrum[0], r.symplectic_spectrum[1]});
  doc["pt_spectrum"] = Json::array({r.pt_spectrum[0], r.pt_spectrum[1]});
  doc["max_affinity"] = r.max_affinity;
  doc["hellinger_discord"] = r.hellinger_discord;
  doc["mutual_information"] = r.mutual_information;
  doc["entropic_discord"] = optional_number(r.entropic_discord);
  doc["classical_correlations"] = optional_number(r.classical_correlations);
  doc["eof"] = optional_number(r.eof);
  doc["separable"] = r.separable;
  doc["closest_product"] = Json{{"frame", "standard form"},
                                {"sqrt_state", product_params(cp.params)},
                                {"state", product_params(physical_params)}};
  return doc;
}

void write_report_csv(const Json& report, std::ostream& out) {
  static constexpr const char* kScalars[] = {"max_affinity",      "hellinger_discord",      "mutual_information",
                                             "entropic_discord",  "classical_correlations", "eof"};
  out << "b1,b2,c,d,kappa1,kappa2";
  for (const char* name : kScalars) out << ',' << name;
  out << ",separable\n";

  const Json& sf = report.at("standard_form");
  out << format_number(sf.at("b1").get<double>()) << ',' << format_number(sf.at("b2").get<double>()) << ','
      << format_number(sf.at("c").get<double>()) << ',' << format_number(sf.at("d").get<double>()) << ','
      << format_number(report.at("symplectic_spectrum")[0].get<double>()) << ','
      << format_number(report.at("symplectic_spectrum")[1].get<double>());
  for (const char* name : kScalars) {
    out << ',';
    if (!report.at(name).is_null()) out << format_number(report.at(name).get<double>());
  }
  out << ',' << (report.at("separable").get<bool>() ? "true" : "false") << '\n';
}

}  // namespace ghk::cli
