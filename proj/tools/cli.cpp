#include "cli.hpp"

#include <ostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "ghk/error.hpp"
#include "ghk/version.hpp"

namespace ghk::cli {

namespace {

void add_input_flags(CLI::App& cmd, InputFlags& flags) {
  cmd.add_option("--sts", flags.sts, "Squeezed thermal state: nbar1=.. nbar2=.. r=.. [phi=..]");
  cmd.add_option("--mts", flags.mts, "Mode-mixed thermal state: kappa1=.. kappa2=.. theta=.. [phi=..]");
  cmd.add_option("--std-form", flags.std_form, "Standard form b1,b2,c,d[,s1,s2]");
  cmd.add_option("--matrix", flags.matrix,
                 "4x4 covariance matrix: a file or inline text with 16 numbers, a JSON array, or a report");
  cmd.add_option("--mean", flags.mean, "Mean vector q1,p1,q2,p2 (default zero)");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hellinger (affinity-based) Gaussian discord of two-mode Gaussian states", "ghk"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  InputFlags input_flags;
  std::string report_out = "json";
  auto* report = app.add_subcommand("report", "Correlation report for one two-mode state");
  add_input_flags(*report, input_flags);
  report->add_option("--out", report_out, "Output format")->check(CLI::IsMember({"json", "csv"}));

  std::string family;
  std::vector<std::string> fixed;
  std::string sweep_param;
  std::string range;
  std::string columns;
  std::string sweep_out = "csv";
  auto* sweep = app.add_subcommand("sweep", "Sweep one parameter of a state family");
  sweep->add_option("--family", family, "sts, mts or symmetric")->required();
  sweep->add_option("--fixed", fixed, "Fixed parameters k=v (repeatable)");
  sweep->add_option("--sweep-param", sweep_param, "Parameter to sweep")->required();
  sweep->add_option("--range", range, "start:stop:steps")->required();
  sweep->add_option("--columns", columns, "Comma-separated measures (default all)");
  sweep->add_option("--out", sweep_out, "Output format")->check(CLI::IsMember({"json", "csv"}));

  VerifyOptions verify_options;
  auto* verify = app.add_subcommand("verify", "Cross-check closed forms against the oracles");
  verify->add_option("--seed", verify_options.seed, "RNG seed");
  verify->add_option("--trials", verify_options.trials, "Random states for the oracle suites")
      ->check(CLI::PositiveNumber);
  verify->add_option("--inject-breach", verify_options.inject_breach)->group("");

  std::vector<std::string> argv_storage{"ghk"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\nRun with --help for usage.\n";
    return kExitInvalid;
  }

  try {
    if (*report) {
      const Json doc = report_json(parse_state(input_flags));
      if (report_out == "csv") {
        write_report_csv(doc, out);
      } else {
        out << doc.dump(2) << '\n';
      }
      return kExitOk;
    }
    if (*sweep) {
      run_sweep(parse_sweep(family, fixed, sweep_param, range, columns), sweep_out == "json", out);
      return kExitOk;
    }
    return run_verify(verify_options, tolerance_profile(), out);
  } catch (const ParseError& e) {
    err << "ParseError: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const Error& e) {
    err << e.what() << '\n';
    return kExitInvalid;
  }
}

}  // namespace ghk::cli
