#ifndef QGEO_RUNNER_HPP
#define QGEO_RUNNER_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "intelligent.hpp"

namespace qgeo::run {

using Json = nlohmann::ordered_json;

/// Full configuration of one CLI invocation. Identical config + seed produce
/// byte-identical reports.
struct RunConfig {
  std::string command;              // verify-intelligent | random-sweep | trace-path
  std::string kind = "both";        // orthogonal | nonorthogonal | both | eigenstate
  int dim = 2;
  double hbar = 1.0;
  double a0 = 2.0;
  double a1 = 1.0;
  int i = 0;
  int j = 1;
  std::vector<double> spectrum = {1.0, 3.0};
  double lambda1 = 0.0;
  std::optional<double> lambda2;    // resolved per command when absent
  int n_samples = 1001;
  std::uint64_t seed = 42;
  int trials = 100;
  std::string generator = "gaussian";  // random-sweep: gaussian | split
  std::string format;               // json | csv; default json (trace-path: csv)
  std::string out;                  // output path, empty = stdout
  Tolerances tol;

  void validate() const;            // throws Error on config problems
  std::string resolved_format() const;
};

RunConfig config_from_json(const Json& j);
Json config_to_json(const RunConfig& c);

struct RunResult {
  int exit_code = 0;     // 0 pass, 1 check failure, 2 usage/config error
  std::string report;    // emitted report (empty on exit 2)
  std::string error;     // human-readable message (exit 2 only)
};

/// Executes the configured command. All failures modes are folded into the
/// exit code contract: thrown configuration/range/numerical errors become
/// exit 2 with a message, failed checks become exit 1 with the full report.
RunResult execute(const RunConfig& config);

/// Same, from a JSON-encoded config (the C API entry point).
RunResult execute_json(const std::string& config_json);

/// Shortest decimal representation that round-trips to the same double.
std::string format_double(double value);

}  // namespace qgeo::run

#endif  // QGEO_RUNNER_HPP
