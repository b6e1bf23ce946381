#include "pbur.hpp"

#include <cmath>

#include "geometry.hpp"
#include "quadrature.hpp"

namespace qgeo {

double averaged_uncertainty(const Path& path, const Generator& a) {
  if (path.grid.n < 3) {
    fail(Status::invalid_argument, "averaged_uncertainty needs at least 3 samples");
  }
  std::vector<double> values;
  values.reserve(path.states.size());
  for (const State& s : path.states) values.push_back(uncertainty(a, s));
  return integrate_uniform(values, path.grid.step()) / path.grid.span();
}

double parameter_uncertainty(double s0, double lambda1, double lambda2, double eps0) {
  if (!(lambda2 > lambda1)) {
    fail(Status::invalid_argument, "parameter_uncertainty requires lambda2 > lambda1");
  }
  if (!(s0 > eps0)) {
    fail(Status::coincident_endpoints,
         "endpoints lie on the same ray (S0 = " + std::to_string(s0) +
             " <= " + std::to_string(eps0) + "); Delta lambda is undefined");
  }
  return kPi / s0 * (lambda2 - lambda1);
}

PburReport evaluate_pbur(const Path& path, const Generator& a, const Units& units,
                         const Tolerances& tol) {
  tol.validate();
  PburReport report;
  report.saturation_rel =
      path.method == Method::ode ? std::max(tol.saturation_rel, 1e-6) : tol.saturation_rel;

  std::vector<double> values;
  values.reserve(path.states.size());
  for (const State& s : path.states) values.push_back(uncertainty(a, s));
  const double h = path.grid.step();
  report.avg_uncertainty = integrate_uniform(values, h) / path.grid.span();
  report.quad_error = quadrature_error_estimate(values, h) / path.grid.span();

  const double s0 = bargmann_angle(path.states.front(), path.states.back());
  report.delta_lambda = parameter_uncertainty(s0, path.grid.start, path.grid.end);

  report.product = report.avg_uncertainty * report.delta_lambda;
  report.bound = units.bound();
  report.ratio = report.product / report.bound;
  report.saturated = std::abs(report.ratio - 1.0) < report.saturation_rel;
  report.bound_violated = report.ratio < 1.0 - report.saturation_rel;
  return report;
}

}  // namespace qgeo
