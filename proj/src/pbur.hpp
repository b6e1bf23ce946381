#ifndef QGEO_PBUR_HPP
#define QGEO_PBUR_HPP

#include "evolution.hpp"

namespace qgeo {

/// Parameter-based uncertainty relation evaluation for one evolution path.
struct PburReport {
  double avg_uncertainty = 0.0;  // <Delta A>, parameter average
  double delta_lambda = 0.0;     // (pi/S0)(lambda2 - lambda1)
  double product = 0.0;          // <Delta A> * Delta lambda
  double bound = 0.0;            // h/4 = pi*hbar/2
  double ratio = 0.0;            // product / bound, >= 1 up to tolerance
  bool saturated = false;        // |ratio - 1| < effective saturation tol
  bool bound_violated = false;   // ratio < 1 - tol: numerical diagnostic
  double saturation_rel = 0.0;   // effective tolerance used (method dependent)
  double quad_error = 0.0;       // Richardson estimate for the average
};

/// (1/(lambda2-lambda1)) * integral of Delta A, same quadrature as the
/// Fubini-Study length. Carries the units of A; hbar never enters.
double averaged_uncertainty(const Path& path, const Generator& a);

/// Delta lambda = (pi/S0)(lambda2 - lambda1). Errors when S0 <= eps0: the
/// endpoints sit on the same ray and the scaled displacement is undefined.
double parameter_uncertainty(double s0, double lambda1, double lambda2,
                             double eps0 = 1e-8);

/// Assembles the report. Saturation tolerance is tol.saturation_rel for
/// spectral paths and is relaxed to at least 1e-6 for ODE paths, where the
/// integrator dominates the error. A ratio below 1 - tol is flagged, never
/// silently accepted: the inequality is exact, so a violation always means
/// under-resolved numerics.
PburReport evaluate_pbur(const Path& path, const Generator& a,
                         const Units& units = {}, const Tolerances& tol = {});

}  // namespace qgeo

#endif  // QGEO_PBUR_HPP
