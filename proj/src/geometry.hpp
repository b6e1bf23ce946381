#ifndef QGEO_GEOMETRY_HPP
#define QGEO_GEOMETRY_HPP

#include "evolution.hpp"

namespace qgeo {

/// Geodesic distance S0 = 2*arccos(|<psi1|psi2>|) in [0, pi].
double bargmann_angle(const State& psi1, const State& psi2);

/// Fubini-Study length S = (2/hbar) * integral of Delta A over the grid.
double fubini_study_length(const Path& path, const Generator& a,
                           const Units& units = {});

/// Parallel transport output: the rephased path plus the measured transport
/// defect max_k |<psibar_k | d psibar/dlambda at k>| over interior nodes.
struct TransportedPath {
  Path path;
  double transport_defect = 0.0;
};

/// Removes the dynamical phase: multiplies sample k by
/// exp((i/hbar) * cumtrapz(<A>)(lambda_k)). The output approximately
/// satisfies <psibar|dpsibar/dlambda> = 0; the residual defect is recorded,
/// and is small (h^2 scale) whenever the grid resolves the path.
TransportedPath parallel_transport(const Path& path, const Generator& a,
                                   const Units& units = {});

/// Length of the curve traced by a parallel-transported path: quadrature of
/// ||d psibar / dlambda||, central differences inside, one-sided 2nd order at
/// the ends. The input must already be parallel transported.
double transported_length(const Path& transported);

/// As above plus a Richardson error estimate of the full pipeline (recompute
/// at half resolution, scale by the h^2 order of the differences).
struct LengthEstimate {
  double value = 0.0;
  double error_estimate = 0.0;
};
LengthEstimate transported_length_with_error(const Path& transported);

/// General geodesic solution cos(v*lambda)|psi0> + sin(v*lambda)/v |dpsi0>.
/// Preconditions: |psi0| = 1, ||dpsi0|| = v > 0, <psi0|dpsi0> = 0.
State geodesic_curve(const State& psi0, const Vector& dpsi0, double v,
                     double lambda, const Tolerances& tol = {});

/// Max over interior nodes of ||(psi_{k+1} - 2 psi_k + psi_{k-1})/h^2 +
/// v^2 psi_k|| on a parallel-transported path; O(h^2) stencil.
double geodesic_residual(const Path& transported, double v);

/// Numerical rank of the Gram matrix of the sampled states: eigenvalues of
/// sum_k |psi_k><psi_k| above rank_cutoff * largest.
int subspace_rank(const Path& path, double rank_cutoff = 1e-8);

struct GeometryReport {
  double fs_length = 0.0;            // S
  double geodesic_distance = 0.0;    // S0 between endpoints
  double transported_length = 0.0;   // l, with S = 2l
  double residual_max = 0.0;         // geodesic residual at v = <Delta A>/hbar
  int gram_rank = 0;
  double speed = 0.0;                // v used for the residual
  double quad_error_s = 0.0;         // Richardson estimate for S
  double quad_error_l = 0.0;         // Richardson estimate for l
  double transport_defect = 0.0;
};

GeometryReport geometry_report(const Path& path, const Generator& a,
                               const Units& units = {}, const Tolerances& tol = {});

}  // namespace qgeo

#endif  // QGEO_GEOMETRY_HPP
