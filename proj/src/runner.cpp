#include "runner.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <random>
#include <set>

#include "quadrature.hpp"

namespace qgeo::run {

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

namespace {

constexpr int kSchemaVersion = 1;
constexpr double kEq7DeviationTol = 1e-8;
constexpr double kOverlapTol = 1e-10;
constexpr double kSweepExcessTol = 1e-6;

struct Check {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

Json to_json(const Check& c) {
  Json j;
  j["name"] = c.name;
  j["value"] = c.value;
  j["tolerance"] = c.tolerance;
  j["pass"] = c.pass;
  return j;
}

const char* require_string(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_string()) {
    fail(Status::invalid_argument, std::string("config field '") + key + "' must be a string");
  }
  return key;
}

Generator diagonal_generator(const std::vector<double>& spectrum, const Tolerances& tol) {
  const Index n = static_cast<Index>(spectrum.size());
  Matrix m = Matrix::Zero(n, n);
  for (Index k = 0; k < n; ++k) m(k, k) = spectrum[static_cast<std::size_t>(k)];
  return Generator(std::move(m), tol);
}

}  // namespace

void RunConfig::validate() const {
  tol.validate();
  if (command != "verify-intelligent" && command != "random-sweep" &&
      command != "trace-path") {
    fail(Status::invalid_argument, "unknown command '" + command + "'");
  }
  if (!(hbar > 0.0)) fail(Status::invalid_argument, "hbar must be positive");
  if (dim < 2 || dim > 64) fail(Status::invalid_argument, "dim must lie in [2, 64]");
  if (!(a1 > 0.0)) fail(Status::invalid_argument, "a1 must be positive");
  if (i < 0 || j < 0 || i == j) fail(Status::invalid_argument, "indices need i != j, both >= 0");
  if (n_samples < 3 || n_samples > 2000001) {
    fail(Status::invalid_argument, "n_samples must lie in [3, 2000001]");
  }
  if (!(lambda1 >= 0.0)) fail(Status::invalid_argument, "lambda1 must be >= 0");
  if (lambda2 && !(*lambda2 > lambda1)) {
    fail(Status::invalid_argument, "lambda2 must exceed lambda1");
  }
  if (!format.empty() && format != "json" && format != "csv") {
    fail(Status::invalid_argument, "format must be json or csv");
  }

  const bool uses_spectrum =
      (command == "verify-intelligent" && kind != "nonorthogonal") ||
      (command == "trace-path" && (kind == "orthogonal" || kind == "eigenstate"));
  if (uses_spectrum) {
    if (spectrum.size() < 2) fail(Status::invalid_argument, "spectrum needs >= 2 entries");
    for (double v : spectrum) {
      if (!std::isfinite(v)) fail(Status::invalid_argument, "spectrum entries must be finite");
    }
    if (i >= static_cast<int>(spectrum.size()) || j >= static_cast<int>(spectrum.size())) {
      fail(Status::invalid_argument, "indices i, j must address the spectrum");
    }
  }
  const bool uses_split =
      (command == "verify-intelligent" && kind != "orthogonal") ||
      (command == "trace-path" && kind == "nonorthogonal") ||
      (command == "random-sweep" && generator == "split");
  if (uses_split && (i >= dim || j >= dim)) {
    fail(Status::invalid_argument, "indices i, j must lie in [0, dim)");
  }

  if (command == "verify-intelligent") {
    if (kind != "orthogonal" && kind != "nonorthogonal" && kind != "both") {
      fail(Status::invalid_argument, "verify-intelligent kind must be orthogonal|nonorthogonal|both");
    }
    if (lambda1 != 0.0) {
      fail(Status::invalid_argument, "verify-intelligent paths are anchored at lambda1 = 0");
    }
  } else if (command == "random-sweep") {
    if (trials < 1 || trials > 1000000) {
      fail(Status::invalid_argument, "trials must lie in [1, 1000000]");
    }
    if (generator != "gaussian" && generator != "split") {
      fail(Status::invalid_argument, "generator must be gaussian or split");
    }
  } else {  // trace-path
    if (kind != "orthogonal" && kind != "nonorthogonal" && kind != "eigenstate") {
      fail(Status::invalid_argument, "trace-path kind must be orthogonal|nonorthogonal|eigenstate");
    }
  }
}

std::string RunConfig::resolved_format() const {
  if (!format.empty()) return format;
  return command == "trace-path" ? "csv" : "json";
}

RunConfig config_from_json(const Json& j) {
  if (!j.is_object()) fail(Status::invalid_argument, "config must be a JSON object");
  static const std::set<std::string> known = {
      "command", "kind", "dim", "hbar", "a0", "a1", "i", "j", "spectrum",
      "lambda1", "lambda2", "n_samples", "seed", "trials", "generator",
      "format", "out", "tolerances"};
  for (const auto& item : j.items()) {
    if (!known.count(item.key())) {
      fail(Status::invalid_argument, "unknown config field '" + item.key() + "'");
    }
  }
  RunConfig c;
  try {
    c.command = j.at(require_string(j, "command")).get<std::string>();
    if (j.contains("kind")) c.kind = j["kind"].get<std::string>();
    if (j.contains("dim")) c.dim = j["dim"].get<int>();
    if (j.contains("hbar")) c.hbar = j["hbar"].get<double>();
    if (j.contains("a0")) c.a0 = j["a0"].get<double>();
    if (j.contains("a1")) c.a1 = j["a1"].get<double>();
    if (j.contains("i")) c.i = j["i"].get<int>();
    if (j.contains("j")) c.j = j["j"].get<int>();
    if (j.contains("spectrum")) c.spectrum = j["spectrum"].get<std::vector<double>>();
    if (j.contains("lambda1")) c.lambda1 = j["lambda1"].get<double>();
    if (j.contains("lambda2") && !j["lambda2"].is_null()) {
      c.lambda2 = j["lambda2"].get<double>();
    }
    if (j.contains("n_samples")) c.n_samples = j["n_samples"].get<int>();
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("trials")) c.trials = j["trials"].get<int>();
    if (j.contains("generator")) c.generator = j["generator"].get<std::string>();
    if (j.contains("format")) c.format = j["format"].get<std::string>();
    if (j.contains("out")) c.out = j["out"].get<std::string>();
    if (j.contains("tolerances")) {
      const Json& t = j["tolerances"];
      if (t.contains("norm")) c.tol.norm = t["norm"].get<double>();
      if (t.contains("herm")) c.tol.herm = t["herm"].get<double>();
      if (t.contains("saturation_rel")) c.tol.saturation_rel = t["saturation_rel"].get<double>();
      if (t.contains("residual_abs")) c.tol.residual_abs = t["residual_abs"].get<double>();
      if (t.contains("rank_cutoff")) c.tol.rank_cutoff = t["rank_cutoff"].get<double>();
    }
  } catch (const nlohmann::json::exception& e) {
    fail(Status::invalid_argument, std::string("malformed config: ") + e.what());
  }
  return c;
}

Json config_to_json(const RunConfig& c) {
  Json j;
  j["command"] = c.command;
  j["kind"] = c.kind;
  j["dim"] = c.dim;
  j["hbar"] = c.hbar;
  j["a0"] = c.a0;
  j["a1"] = c.a1;
  j["i"] = c.i;
  j["j"] = c.j;
  j["spectrum"] = c.spectrum;
  j["lambda1"] = c.lambda1;
  if (c.lambda2) {
    j["lambda2"] = *c.lambda2;
  } else {
    j["lambda2"] = nullptr;
  }
  j["n_samples"] = c.n_samples;
  j["seed"] = c.seed;
  j["trials"] = c.trials;
  j["generator"] = c.generator;
  j["format"] = c.resolved_format();
  // The output path is I/O routing, not computation config: reports must be
  // byte-identical wherever they are written, so it is not echoed.
  j["tolerances"] = Json{{"norm", c.tol.norm},
                         {"herm", c.tol.herm},
                         {"saturation_rel", c.tol.saturation_rel},
                         {"residual_abs", c.tol.residual_abs},
                         {"rank_cutoff", c.tol.rank_cutoff}};
  return j;
}

namespace {

/// One family verification pass; appends prefixed checks.
void verify_family(const IntelligentFamily& family, double lambda2, const RunConfig& c,
                   const Units& units, const std::string& prefix,
                   std::vector<Check>& checks, double& worst_ratio, double& max_residual) {
  family.require_endpoint(lambda2);
  const ParameterGrid grid(0.0, lambda2, c.n_samples);
  const Path path = family.sample(grid);
  const Generator& a = family.generator();
  const TheoremReport theorem = verify_theorem(family, grid, units, c.tol);
  const PburReport pbur = evaluate_pbur(path, a, units, c.tol);

  double amp_norm_dev = 0.0;
  for (Index k = 0; k < grid.n; ++k) {
    const double lam = grid.lambda(k);
    const double closure =
        std::norm(family.amplitude_i(lam)) + std::norm(family.amplitude_j(lam));
    amp_norm_dev = std::max(amp_norm_dev, std::abs(closure - 1.0));
  }

  checks.push_back({prefix + ".saturated", pbur.ratio, pbur.saturation_rel, pbur.saturated});
  checks.push_back({prefix + ".pbur_lower_bound", pbur.ratio, pbur.saturation_rel,
                    !pbur.bound_violated});
  checks.push_back({prefix + ".residual_max", theorem.residual_max, c.tol.residual_abs,
                    theorem.residual_max < c.tol.residual_abs});
  checks.push_back({prefix + ".gram_rank", static_cast<double>(theorem.gram_rank), 2.0,
                    theorem.gram_rank == 2});
  checks.push_back({prefix + ".eq7_max_deviation", theorem.eq7_max_deviation,
                    kEq7DeviationTol, theorem.eq7_match});
  checks.push_back({prefix + ".endpoint_form_deviation", theorem.endpoint_form_deviation,
                    kEq7DeviationTol, theorem.endpoint_form_deviation < kEq7DeviationTol});
  checks.push_back({prefix + ".transport_defect", theorem.transport_defect, 1e-6,
                    theorem.transport_defect < 1e-6});
  checks.push_back({prefix + ".amplitude_norm_closure", amp_norm_dev, c.tol.norm,
                    amp_norm_dev <= c.tol.norm});

  if (family.kind() == FamilyKind::orthogonal) {
    const double sup = family.lambda_sup();
    if (std::abs(lambda2 - sup) <= 1e-12 * std::max(1.0, sup)) {
      const double overlap =
          std::abs(inner_product(path.states.front(), path.states.back()));
      checks.push_back({prefix + ".final_overlap", overlap, kOverlapTol,
                        overlap < kOverlapTol});
    }
  } else {
    const double avg = averaged_uncertainty(path, a);
    const double dev = std::abs(avg - family.param_a1());
    checks.push_back({prefix + ".avg_uncertainty_dev", dev, 1e-10, dev < 1e-10});
  }

  if (std::abs(pbur.ratio - 1.0) > std::abs(worst_ratio - 1.0)) worst_ratio = pbur.ratio;
  max_residual = std::max(max_residual, theorem.residual_max);
}

RunResult emit_checks_report(const RunConfig& c, const std::vector<Check>& checks,
                             double worst_ratio, double max_residual,
                             Json extra = Json()) {
  bool all_pass = true;
  for (const Check& chk : checks) all_pass = all_pass && chk.pass;

  RunResult result;
  result.exit_code = all_pass ? 0 : 1;
  if (c.resolved_format() == "json") {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = c.command;
    j["config"] = config_to_json(c);
    if (!extra.is_null()) {
      for (auto& item : extra.items()) j[item.key()] = item.value();
    }
    Json arr = Json::array();
    for (const Check& chk : checks) arr.push_back(to_json(chk));
    j["checks"] = arr;
    j["summary"] = Json{{"pass", all_pass},
                        {"worst_ratio", worst_ratio},
                        {"max_residual", max_residual}};
    result.report = j.dump(2) + "\n";
  } else {
    std::string s = "name,value,tolerance,pass\n";
    for (const Check& chk : checks) {
      s += chk.name + "," + format_double(chk.value) + "," + format_double(chk.tolerance) +
           "," + (chk.pass ? "true" : "false") + "\n";
    }
    s += "summary.pass," + std::string(all_pass ? "1" : "0") + ",,\n";
    s += "summary.worst_ratio," + format_double(worst_ratio) + ",,\n";
    s += "summary.max_residual," + format_double(max_residual) + ",,\n";
    result.report = s;
  }
  return result;
}

RunResult run_verify_intelligent(const RunConfig& c) {
  const Units units(c.hbar);
  std::vector<Check> checks;
  double worst_ratio = 1.0;
  double max_residual = 0.0;
  RunConfig echo = c;

  if (c.kind == "orthogonal" || c.kind == "both") {
    const Generator a = diagonal_generator(c.spectrum, c.tol);
    const IntelligentFamily family = horesh_mann_family(a, c.i, c.j, units, c.tol);
    const double lambda2 = c.lambda2.value_or(family.lambda_sup());
    if (c.kind == "orthogonal") echo.lambda2 = lambda2;
    verify_family(family, lambda2, c, units, "orthogonal", checks, worst_ratio,
                  max_residual);
  }
  if (c.kind == "nonorthogonal" || c.kind == "both") {
    SplitGeneratorSpec spec;
    spec.dim = c.dim;
    spec.i = c.i;
    spec.j = c.j;
    spec.a0 = c.a0;
    spec.a1 = c.a1;
    const IntelligentFamily family = nonorthogonal_family(spec, units, c.tol);
    const double lambda2 = c.lambda2.value_or(0.5 * family.lambda_sup());
    if (c.kind == "nonorthogonal") echo.lambda2 = lambda2;
    verify_family(family, lambda2, c, units, "nonorthogonal", checks, worst_ratio,
                  max_residual);
  }
  return emit_checks_report(echo, checks, worst_ratio, max_residual);
}

RunResult run_random_sweep(const RunConfig& c) {
  const Units units(c.hbar);
  std::mt19937_64 rng(c.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  double lambda2 = 0.0;
  std::optional<Generator> split_gen;
  if (c.generator == "split") {
    SplitGeneratorSpec spec;
    spec.dim = c.dim;
    spec.i = c.i;
    spec.j = c.j;
    spec.a0 = c.a0;
    spec.a1 = c.a1;
    split_gen = build_split_generator(spec, c.tol);
    lambda2 = c.lambda2.value_or(0.8 * kPi * c.hbar / (2.0 * c.a1));
  } else {
    lambda2 = c.lambda2.value_or(c.lambda1 + 1.0);
  }
  if (!(lambda2 > c.lambda1)) {
    fail(Status::invalid_argument, "lambda2 must exceed lambda1");
  }
  const ParameterGrid grid(c.lambda1, lambda2, c.n_samples);

  Json trials_json = Json::array();
  double min_excess = std::numeric_limits<double>::infinity();
  std::vector<double> excesses;
  double min_ratio = std::numeric_limits<double>::infinity();
  double worst_ratio = 1.0;
  int violations = 0;

  for (int t = 0; t < c.trials; ++t) {
    Generator a = [&]() {
      if (split_gen) return *split_gen;
      Matrix g(c.dim, c.dim);
      for (Index r = 0; r < c.dim; ++r) {
        for (Index col = 0; col < c.dim; ++col) {
          const double re = gauss(rng);
          const double im = gauss(rng);
          g(r, col) = cxd(re, im);
        }
      }
      Matrix h = 0.5 * (g + g.adjoint());
      return Generator(std::move(h), c.tol);
    }();
    State psi0 = [&]() {
      if (split_gen) return State::basis(c.dim, c.i, c.tol);
      Vector v(c.dim);
      for (Index k = 0; k < c.dim; ++k) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        v[k] = cxd(re, im);
      }
      return State::normalized(std::move(v), c.tol);
    }();

    const Path path = sample_path(a, psi0, grid, units);
    const double s = fubini_study_length(path, a, units);
    const double s0 = bargmann_angle(path.states.front(), path.states.back());
    const PburReport pbur = evaluate_pbur(path, a, units, c.tol);
    const double excess = s - s0;

    excesses.push_back(excess);
    min_excess = std::min(min_excess, excess);
    min_ratio = std::min(min_ratio, pbur.ratio);
    if (std::abs(pbur.ratio - 1.0) > std::abs(worst_ratio - 1.0)) worst_ratio = pbur.ratio;
    if (excess < -kSweepExcessTol) ++violations;

    Json row;
    row["index"] = t;
    row["s"] = s;
    row["s0"] = s0;
    row["excess"] = excess;
    row["ratio"] = pbur.ratio;
    trials_json.push_back(row);
  }

  std::vector<double> sorted = excesses;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  const double median_excess =
      n % 2 == 1 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);

  std::vector<Check> checks;
  checks.push_back({"sweep.min_excess", min_excess, -kSweepExcessTol,
                    min_excess >= -kSweepExcessTol});
  checks.push_back({"sweep.violations", static_cast<double>(violations), 0.0,
                    violations == 0});
  checks.push_back({"sweep.min_ratio", min_ratio, 1.0 - c.tol.saturation_rel,
                    min_ratio >= 1.0 - c.tol.saturation_rel});

  RunConfig echo = c;
  echo.lambda2 = lambda2;
  Json extra;
  extra["trials"] = std::move(trials_json);
  extra["median_excess"] = median_excess;
  return emit_checks_report(echo, checks, worst_ratio, 0.0, std::move(extra));
}

RunResult run_trace_path(const RunConfig& c) {
  const Units units(c.hbar);
  std::optional<IntelligentFamily> family;
  std::optional<Generator> gen;
  std::optional<State> psi0;
  double default_lambda2 = 1.0;

  if (c.kind == "orthogonal") {
    gen = diagonal_generator(c.spectrum, c.tol);
    family = horesh_mann_family(*gen, c.i, c.j, units, c.tol);
    default_lambda2 = family->lambda_sup();
  } else if (c.kind == "nonorthogonal") {
    SplitGeneratorSpec spec;
    spec.dim = c.dim;
    spec.i = c.i;
    spec.j = c.j;
    spec.a0 = c.a0;
    spec.a1 = c.a1;
    family = nonorthogonal_family(spec, units, c.tol);
    default_lambda2 = 0.5 * family->lambda_sup();
  } else {  // eigenstate: stationary ray under a diagonal generator
    gen = diagonal_generator(c.spectrum, c.tol);
    psi0 = gen->eigenstate(c.i);
  }

  const double lambda2 = c.lambda2.value_or(default_lambda2);
  const ParameterGrid grid(c.lambda1, lambda2, c.n_samples);
  Path path = [&]() {
    if (family) return family->sample(grid);
    return sample_path(*gen, *psi0, grid, units);
  }();
  const Generator& a = family ? family->generator() : *gen;

  std::vector<double> delta_a(path.states.size());
  for (std::size_t k = 0; k < path.states.size(); ++k) {
    delta_a[k] = uncertainty(a, path.states[k]);
  }
  std::vector<double> integrand = delta_a;
  for (double& v : integrand) v *= 2.0 / units.hbar;
  const std::vector<double> cum_s = cumulative_trapezoid(integrand, grid.step());

  RunConfig echo = c;
  echo.lambda2 = lambda2;
  RunResult result;
  if (c.resolved_format() == "csv") {
    std::string s = "lambda,delta_A,fidelity_to_start,cumulative_S,cumulative_S0_chord\n";
    for (Index k = 0; k < grid.n; ++k) {
      const double fid = fidelity(path.states.front(), path.states[k]);
      const double chord = bargmann_angle(path.states.front(), path.states[k]);
      s += format_double(grid.lambda(k)) + "," + format_double(delta_a[k]) + "," +
           format_double(fid) + "," + format_double(cum_s[k]) + "," +
           format_double(chord) + "\n";
    }
    result.report = std::move(s);
  } else {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = c.command;
    j["config"] = config_to_json(echo);
    Json rows = Json::array();
    for (Index k = 0; k < grid.n; ++k) {
      Json row;
      row["lambda"] = grid.lambda(k);
      row["delta_A"] = delta_a[k];
      row["fidelity_to_start"] = fidelity(path.states.front(), path.states[k]);
      row["cumulative_S"] = cum_s[k];
      row["cumulative_S0_chord"] = bargmann_angle(path.states.front(), path.states[k]);
      rows.push_back(row);
    }
    j["rows"] = rows;
    result.report = j.dump(2) + "\n";
  }
  result.exit_code = 0;
  return result;
}

}  // namespace

RunResult execute(const RunConfig& config) {
  try {
    config.validate();
    if (config.command == "verify-intelligent") return run_verify_intelligent(config);
    if (config.command == "random-sweep") return run_random_sweep(config);
    return run_trace_path(config);
  } catch (const Error& e) {
    RunResult r;
    r.exit_code = 2;
    r.error = e.what();
    return r;
  } catch (const std::exception& e) {
    RunResult r;
    r.exit_code = 2;
    r.error = std::string("internal error: ") + e.what();
    return r;
  }
}

RunResult execute_json(const std::string& config_json) {
  Json j = Json::parse(config_json, nullptr, false);
  if (j.is_discarded()) {
    RunResult r;
    r.exit_code = 2;
    r.error = "config is not valid JSON";
    return r;
  }
  try {
    return execute(config_from_json(j));
  } catch (const Error& e) {
    RunResult r;
    r.exit_code = 2;
    r.error = e.what();
    return r;
  }
}

}  // namespace qgeo::run
