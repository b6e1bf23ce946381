// qgeo command line: thin flag parser over the shared library's qgeo_run.
// Exit codes: 0 all checks pass, 1 some check failed, 2 usage/config error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qgeo/qgeo.h"

namespace {

using Json = nlohmann::ordered_json;

struct CliOptions {
  Json config;  // only fields the user actually set
  std::string out_path;
};

/// Registers the flags shared by every subcommand; values land in the config
/// object only when the user passes them, so library defaults stay in charge.
void add_common_flags(CLI::App* cmd, CliOptions& opts) {
  const auto set_double = [&opts](const std::string& key) {
    return [&opts, key](double v) { opts.config[key] = v; };
  };
  const auto set_int = [&opts](const std::string& key) {
    return [&opts, key](std::int64_t v) { opts.config[key] = v; };
  };

  cmd->add_option_function<double>("--hbar", set_double("hbar"), "Planck constant over 2*pi");
  cmd->add_option_function<std::int64_t>("--dim", set_int("dim"), "Hilbert space dimension");
  cmd->add_option_function<double>("--a0", set_double("a0"), "split generator level a0");
  cmd->add_option_function<double>("--a1", set_double("a1"), "split generator coupling a1 > 0");
  cmd->add_option_function<std::int64_t>("--i", set_int("i"), "first level index");
  cmd->add_option_function<std::int64_t>("--j", set_int("j"), "second level index");
  cmd->add_option_function<std::vector<double>>(
         "--spectrum",
         [&opts](const std::vector<double>& v) { opts.config["spectrum"] = v; },
         "diagonal generator spectrum (indices address it ascending)")
      ->delimiter(',');
  cmd->add_option_function<double>("--lambda1", set_double("lambda1"), "start of the parameter range");
  cmd->add_option_function<double>("--lambda2", set_double("lambda2"), "end of the parameter range");
  cmd->add_option_function<std::int64_t>("--samples", set_int("n_samples"),
                                         "grid samples (>= 3)");
  cmd->add_option_function<std::uint64_t>(
      "--seed", [&opts](std::uint64_t v) { opts.config["seed"] = v; }, "RNG seed");
  cmd->add_option_function<std::string>(
         "--format", [&opts](const std::string& v) { opts.config["format"] = v; },
         "report format")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--out", opts.out_path, "output path (default stdout)");

  const auto set_tol = [&opts](const std::string& key) {
    return [&opts, key](double v) { opts.config["tolerances"][key] = v; };
  };
  cmd->add_option_function<double>("--tol-norm", set_tol("norm"), "normalization tolerance");
  cmd->add_option_function<double>("--tol-herm", set_tol("herm"), "Hermiticity tolerance");
  cmd->add_option_function<double>("--tol-saturation", set_tol("saturation_rel"),
                                   "PBUR saturation tolerance");
  cmd->add_option_function<double>("--tol-residual", set_tol("residual_abs"),
                                   "geodesic residual tolerance");
  cmd->add_option_function<double>("--tol-rank-cutoff", set_tol("rank_cutoff"),
                                   "Gram rank cutoff");
}

int write_output(const std::string& out_path, const char* report) {
  if (out_path.empty()) {
    std::cout << report;
    return 0;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) {
    std::cerr << "qgeo: cannot open output path '" << out_path << "'\n";
    return 2;
  }
  file << report;
  if (!file.good()) {
    std::cerr << "qgeo: failed writing '" << out_path << "'\n";
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"state-space geometry of parametric quantum evolution"};
  app.require_subcommand(1);

  CliOptions verify_opts, sweep_opts, trace_opts;

  CLI::App* verify = app.add_subcommand(
      "verify-intelligent", "verify the saturating families against the PBUR and the geodesic equation");
  verify->add_option_function<std::string>(
            "--kind", [&](const std::string& v) { verify_opts.config["kind"] = v; },
            "which family to verify")
      ->check(CLI::IsMember({"orthogonal", "nonorthogonal", "both"}));
  add_common_flags(verify, verify_opts);

  CLI::App* sweep = app.add_subcommand(
      "random-sweep", "seeded random generators/states: check S >= S0 and PBUR ratios");
  sweep->add_option_function<std::int64_t>(
      "--trials", [&](std::int64_t v) { sweep_opts.config["trials"] = v; }, "trial count >= 1");
  sweep->add_option_function<std::string>(
           "--generator", [&](const std::string& v) { sweep_opts.config["generator"] = v; },
           "trial generator ensemble")
      ->check(CLI::IsMember({"gaussian", "split"}));
  add_common_flags(sweep, sweep_opts);

  CLI::App* trace = app.add_subcommand(
      "trace-path", "emit plot-ready lambda, Delta A, fidelity and cumulative lengths");
  trace->add_option_function<std::string>(
           "--kind", [&](const std::string& v) { trace_opts.config["kind"] = v; },
           "path to trace")
      ->check(CLI::IsMember({"orthogonal", "nonorthogonal", "eigenstate"}));
  add_common_flags(trace, trace_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e);
    return 0;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  CliOptions* opts = nullptr;
  if (verify->parsed()) {
    verify_opts.config["command"] = "verify-intelligent";
    opts = &verify_opts;
  } else if (sweep->parsed()) {
    sweep_opts.config["command"] = "random-sweep";
    opts = &sweep_opts;
  } else {
    trace_opts.config["command"] = "trace-path";
    opts = &trace_opts;
  }
  opts->config["out"] = opts->out_path;

  char* report = nullptr;
  int exit_code = 0;
  const qgeo_status status = qgeo_run(opts->config.dump().c_str(), &report, &exit_code);
  if (status != QGEO_OK) {
    std::cerr << "qgeo: " << qgeo_last_error_message() << " ["
              << qgeo_status_name(status) << "]\n";
    return 2;
  }
  const int io_code = write_output(opts->out_path, report);
  qgeo_string_free(report);
  return io_code != 0 ? io_code : exit_code;
}
