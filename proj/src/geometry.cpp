#include "geometry.hpp"

#include <algorithm>
#include <cmath>

#include "quadrature.hpp"

namespace qgeo {

double bargmann_angle(const State& psi1, const State& psi2) {
  const double overlap = std::abs(inner_product(psi1, psi2));
  return 2.0 * std::acos(std::clamp(overlap, 0.0, 1.0));
}

namespace {

std::vector<double> uncertainty_samples(const Path& path, const Generator& a) {
  std::vector<double> values;
  values.reserve(path.states.size());
  for (const State& s : path.states) values.push_back(uncertainty(a, s));
  return values;
}

void require_samples(const Path& path, Index minimum, const char* who) {
  if (path.grid.n < minimum) {
    fail(Status::invalid_argument,
         std::string(who) + " needs at least " + std::to_string(minimum) + " samples");
  }
}

/// ||d psi/dlambda|| at every node: central differences inside, one-sided
/// second order stencils at the two ends.
std::vector<double> derivative_norms(const std::vector<State>& states, double h) {
  const std::size_t n = states.size();
  std::vector<double> norms(n, 0.0);
  const auto amp = [&](std::size_t k) -> const Vector& { return states[k].amplitudes(); };
  norms[0] = (-3.0 * amp(0) + 4.0 * amp(1) - amp(2)).norm() / (2.0 * h);
  for (std::size_t k = 1; k + 1 < n; ++k) {
    norms[k] = (amp(k + 1) - amp(k - 1)).norm() / (2.0 * h);
  }
  norms[n - 1] = (3.0 * amp(n - 1) - 4.0 * amp(n - 2) + amp(n - 3)).norm() / (2.0 * h);
  return norms;
}

/// Every-second-sample copy of a path (n must be odd and >= 5).
Path subsample_half(const Path& path) {
  const Index n = path.grid.n;
  std::vector<State> states;
  states.reserve((n + 1) / 2);
  for (Index k = 0; k < n; k += 2) states.push_back(path.states[k]);
  ParameterGrid grid(path.grid.start, path.grid.lambda(n - 1), (n + 1) / 2);
  return Path(grid, std::move(states), path.method, path.max_norm_drift, path.generator);
}

}  // namespace

double fubini_study_length(const Path& path, const Generator& a, const Units& units) {
  require_samples(path, 3, "fubini_study_length");
  std::vector<double> values = uncertainty_samples(path, a);
  for (double& v : values) v *= 2.0 / units.hbar;
  return integrate_uniform(values, path.grid.step());
}

TransportedPath parallel_transport(const Path& path, const Generator& a,
                                   const Units& units) {
  require_samples(path, 3, "parallel_transport");
  std::vector<double> mean(path.states.size());
  for (std::size_t k = 0; k < path.states.size(); ++k) {
    mean[k] = expectation(a, path.states[k]);
  }
  const double h = path.grid.step();
  const std::vector<double> phase_integral = cumulative_trapezoid(mean, h);

  std::vector<State> transported;
  transported.reserve(path.states.size());
  for (std::size_t k = 0; k < path.states.size(); ++k) {
    const cxd factor = std::exp(kImag * phase_integral[k] / units.hbar);
    transported.emplace_back(factor * path.states[k].amplitudes(), a.tol());
  }

  double defect = 0.0;
  for (std::size_t k = 1; k + 1 < transported.size(); ++k) {
    const Vector deriv =
        (transported[k + 1].amplitudes() - transported[k - 1].amplitudes()) / (2.0 * h);
    defect = std::max(defect, std::abs(transported[k].amplitudes().dot(deriv)));
  }

  Path out(path.grid, std::move(transported), path.method, path.max_norm_drift,
           path.generator);
  return TransportedPath{std::move(out), defect};
}

double transported_length(const Path& transported) {
  require_samples(transported, 3, "transported_length");
  const double h = transported.grid.step();
  return integrate_uniform(derivative_norms(transported.states, h), h);
}

LengthEstimate transported_length_with_error(const Path& transported) {
  LengthEstimate out;
  out.value = transported_length(transported);
  const Index n = transported.grid.n;
  const Index m = (n % 2 == 1) ? n : n - 1;
  if (m < 5) {
    out.error_estimate = std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  Path prefix = transported;
  if (m != n) {
    std::vector<State> states(transported.states.begin(), transported.states.begin() + m);
    prefix = Path(ParameterGrid(transported.grid.start, transported.grid.lambda(m - 1), m),
                  std::move(states), transported.method, transported.max_norm_drift,
                  transported.generator);
  }
  const double fine = transported_length(prefix);
  const double coarse = transported_length(subsample_half(prefix));
  // The differences are O(h^2), so |fine - coarse|/3 estimates the fine error.
  out.error_estimate = std::max(std::abs(fine - coarse) / 3.0,
                                8.0 * std::numeric_limits<double>::epsilon() *
                                    (1.0 + std::abs(out.value)));
  return out;
}

State geodesic_curve(const State& psi0, const Vector& dpsi0, double v,
                     double lambda, const Tolerances& tol) {
  tol.validate();
  if (!(v > 0.0)) fail(Status::invalid_argument, "geodesic speed v must be positive");
  if (dpsi0.size() != psi0.dim()) {
    fail(Status::dimension_mismatch, "geodesic_curve: dimensions differ");
  }
  const double speed_defect = std::abs(dpsi0.squaredNorm() - v * v);
  if (speed_defect > tol.norm * std::max(1.0, v * v)) {
    fail(Status::invalid_argument,
         "||dpsi0||^2 differs from v^2 by " + std::to_string(speed_defect));
  }
  const double transversality = std::abs(psi0.amplitudes().dot(dpsi0));
  if (transversality > tol.norm * std::max(1.0, v)) {
    fail(Status::invalid_argument,
         "<psi0|dpsi0> = " + std::to_string(transversality) + " violates transport condition");
  }
  const Vector out = std::cos(v * lambda) * psi0.amplitudes() +
                     (std::sin(v * lambda) / v) * dpsi0;
  return State::normalized(out, tol);
}

double geodesic_residual(const Path& transported, double v) {
  require_samples(transported, 5, "geodesic_residual");
  const double h = transported.grid.step();
  double residual = 0.0;
  for (std::size_t k = 1; k + 1 < transported.states.size(); ++k) {
    const Vector second =
        (transported.states[k + 1].amplitudes() - 2.0 * transported.states[k].amplitudes() +
         transported.states[k - 1].amplitudes()) /
        (h * h);
    residual = std::max(residual,
                        (second + v * v * transported.states[k].amplitudes()).norm());
  }
  return residual;
}

int subspace_rank(const Path& path, double rank_cutoff) {
  require_samples(path, 3, "subspace_rank");
  const Index dim = path.states.front().dim();
  Matrix accum = Matrix::Zero(dim, dim);
  for (const State& s : path.states) {
    accum += s.amplitudes() * s.amplitudes().adjoint();
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(accum);
  if (solver.info() != Eigen::Success) {
    fail(Status::numerical_error, "Gram accumulation eigendecomposition failed");
  }
  const double largest = solver.eigenvalues().maxCoeff();
  if (!(largest > 0.0)) return 0;
  int rank = 0;
  for (Index k = 0; k < dim; ++k) {
    if (solver.eigenvalues()[k] > rank_cutoff * largest) ++rank;
  }
  return rank;
}

GeometryReport geometry_report(const Path& path, const Generator& a,
                               const Units& units, const Tolerances& tol) {
  require_samples(path, 5, "geometry_report");
  GeometryReport report;

  std::vector<double> values = uncertainty_samples(path, a);
  for (double& v : values) v *= 2.0 / units.hbar;
  const double h = path.grid.step();
  report.fs_length = integrate_uniform(values, h);
  report.quad_error_s = quadrature_error_estimate(values, h);

  report.geodesic_distance = bargmann_angle(path.states.front(), path.states.back());
  report.speed = report.fs_length / (2.0 * path.grid.span());

  TransportedPath transported = parallel_transport(path, a, units);
  report.transport_defect = transported.transport_defect;
  const LengthEstimate length = transported_length_with_error(transported.path);
  report.transported_length = length.value;
  report.quad_error_l = length.error_estimate;
  report.residual_max = geodesic_residual(transported.path, report.speed);
  report.gram_rank = subspace_rank(transported.path, tol.rank_cutoff);
  return report;
}

}  // namespace qgeo
