#include "evolution.hpp"

#include <cmath>

namespace qgeo {

ParameterGrid::ParameterGrid(double start_, double end_, Index n_)
    : start(start_), end(end_), n(n_) {
  if (!(end > start)) {
    fail(Status::invalid_argument, "grid requires end > start");
  }
  if (n < 3) {
    fail(Status::invalid_argument, "grid requires at least 3 samples");
  }
  if (!std::isfinite(start) || !std::isfinite(end)) {
    fail(Status::invalid_argument, "grid bounds must be finite");
  }
}

Path::Path(ParameterGrid g, std::vector<State> s, Method m, double drift,
           std::shared_ptr<const Generator> gen)
    : grid(g), states(std::move(s)), method(m), max_norm_drift(drift),
      generator(std::move(gen)) {
  if (static_cast<Index>(states.size()) != grid.n) {
    fail(Status::invalid_argument, "path sample count does not match grid");
  }
}

State evolve_exact(const Generator& a, const State& psi0, double lambda,
                   const Units& units) {
  if (a.dim() != psi0.dim()) {
    fail(Status::dimension_mismatch, "evolve_exact: dimensions differ");
  }
  const Matrix& basis = a.eigenvectors();
  Vector coeffs = basis.adjoint() * psi0.amplitudes();
  for (Index k = 0; k < coeffs.size(); ++k) {
    coeffs[k] *= std::exp(-kImag * a.eigenvalues()[k] * lambda / units.hbar);
  }
  return State(basis * coeffs, a.tol());
}

Path sample_path(const Generator& a, const State& psi0,
                 const ParameterGrid& grid, const Units& units) {
  // One basis change up front; phases per node.
  const Matrix& basis = a.eigenvectors();
  const Vector coeffs0 = basis.adjoint() * psi0.amplitudes();
  std::vector<State> states;
  states.reserve(grid.n);
  for (Index k = 0; k < grid.n; ++k) {
    const double lambda = grid.lambda(k);
    Vector coeffs = coeffs0;
    for (Index m = 0; m < coeffs.size(); ++m) {
      coeffs[m] *= std::exp(-kImag * a.eigenvalues()[m] * lambda / units.hbar);
    }
    states.emplace_back(basis * coeffs, a.tol());
  }
  return Path(grid, std::move(states), Method::spectral, 0.0,
              std::make_shared<Generator>(a));
}

namespace {

Matrix checked_hermitian(const std::function<Matrix(double)>& a, double lambda,
                         Index dim, const Tolerances& tol) {
  Matrix m = a(lambda);
  if (m.rows() != dim || m.cols() != dim) {
    fail(Status::dimension_mismatch, "generator dimension changed along the path");
  }
  double defect = 0.0;
  for (Index r = 0; r < dim; ++r) {
    for (Index c = r; c < dim; ++c) {
      defect = std::max(defect, std::abs(m(r, c) - std::conj(m(c, r))));
    }
  }
  if (defect > tol.herm) {
    fail(Status::not_hermitian,
         "A(lambda) is not Hermitian at lambda = " + std::to_string(lambda));
  }
  return m;
}

}  // namespace

Path evolve_ode(const std::function<Matrix(double)>& a, const State& psi0,
                const ParameterGrid& grid, const Units& units,
                const Tolerances& tol) {
  const Index dim = psi0.dim();
  const double h = grid.step();
  const cxd factor = -kImag / units.hbar;
  constexpr double kMaxStepDrift = 1e-6;

  std::vector<State> states;
  states.reserve(grid.n);
  states.push_back(psi0);

  Vector psi = psi0.amplitudes();
  double max_drift = 0.0;
  for (Index k = 0; k + 1 < grid.n; ++k) {
    const double lam = grid.lambda(k);
    const Matrix a0 = checked_hermitian(a, lam, dim, tol);
    const Matrix a_half = checked_hermitian(a, lam + 0.5 * h, dim, tol);
    const Matrix a1 = checked_hermitian(a, lam + h, dim, tol);

    const Vector k1 = factor * (a0 * psi);
    const Vector k2 = factor * (a_half * (psi + 0.5 * h * k1));
    const Vector k3 = factor * (a_half * (psi + 0.5 * h * k2));
    const Vector k4 = factor * (a1 * (psi + h * k3));
    psi += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    const double drift = std::abs(psi.norm() - 1.0);
    max_drift = std::max(max_drift, drift);
    if (drift > kMaxStepDrift) {
      // Local drift scales like h^5; suggest the grid that gets back under.
      const double shrink = std::pow(drift / kMaxStepDrift, 0.2);
      const Index suggested =
          static_cast<Index>(std::ceil(static_cast<double>(grid.n - 1) * shrink * 1.25)) + 1;
      fail(Status::step_too_coarse,
           "ODE step norm drift " + std::to_string(drift) +
               " exceeds 1e-6; increase n_samples to about " + std::to_string(suggested));
    }
    psi /= psi.norm();
    states.emplace_back(psi, tol);
  }
  return Path(grid, std::move(states), Method::ode, max_drift, nullptr);
}

Path evolve_ode(const Generator& a, const State& psi0, const ParameterGrid& grid,
                const Units& units) {
  Matrix m = a.matrix();
  Path path = evolve_ode([m](double) { return m; }, psi0, grid, units, a.tol());
  path.generator = std::make_shared<Generator>(a);
  return path;
}

}  // namespace qgeo
