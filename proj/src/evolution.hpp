#ifndef QGEO_EVOLUTION_HPP
#define QGEO_EVOLUTION_HPP

#include <functional>
#include <memory>
#include <vector>

#include "core.hpp"

namespace qgeo {

/// Uniform grid of n >= 3 samples on [start, end], end > start.
struct ParameterGrid {
  double start = 0.0;
  double end = 1.0;
  Index n = 3;

  ParameterGrid(double start_, double end_, Index n_);

  double span() const { return end - start; }
  double step() const { return span() / static_cast<double>(n - 1); }
  double lambda(Index k) const {
    return start + step() * static_cast<double>(k);
  }
};

enum class Method { spectral, ode };

/// Ordered samples (lambda_k, |psi(lambda_k)>) plus provenance. The state at
/// grid point k is the parameter-0 initial state evolved to lambda(k).
struct Path {
  ParameterGrid grid;
  std::vector<State> states;
  Method method = Method::spectral;
  double max_norm_drift = 0.0;  // largest pre-renormalization drift (ODE only)
  std::shared_ptr<const Generator> generator;  // provenance, may be null

  Path(ParameterGrid g, std::vector<State> s, Method m,
       double drift = 0.0, std::shared_ptr<const Generator> gen = nullptr);
};

/// exp(-i*A*lambda/hbar)|psi0> via the spectral decomposition of A.
State evolve_exact(const Generator& a, const State& psi0, double lambda,
                   const Units& units = {});

/// Spectral propagation of psi0 to every grid node. method = spectral.
Path sample_path(const Generator& a, const State& psi0,
                 const ParameterGrid& grid, const Units& units = {});

/// Fixed-step RK4 integration of i*hbar d|psi>/dlambda = A(lambda)|psi| with
/// renormalization after each step. Hermiticity of A(lambda) is checked at
/// every evaluation point. Errors if any single step drifts the norm by more
/// than 1e-6, reporting the grid size that would bring the drift back under
/// the limit.
Path evolve_ode(const std::function<Matrix(double)>& a, const State& psi0,
                const ParameterGrid& grid, const Units& units = {},
                const Tolerances& tol = {});

/// Convenience overload for a lambda-independent generator.
Path evolve_ode(const Generator& a, const State& psi0,
                const ParameterGrid& grid, const Units& units = {});

}  // namespace qgeo

#endif  // QGEO_EVOLUTION_HPP
