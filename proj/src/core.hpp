#ifndef QGEO_CORE_HPP
#define QGEO_CORE_HPP

#include <optional>

#include "types.hpp"

namespace qgeo {

/// Unit-norm complex amplitude vector over an N-dimensional Hilbert space,
/// N >= 2. Immutable after construction.
class State {
 public:
  /// Requires |normSq - 1| <= tol.norm; use normalized() to rescale first.
  explicit State(Vector amplitudes, const Tolerances& tol = {});

  /// Rescales to unit norm, then constructs.
  static State normalized(Vector amplitudes, const Tolerances& tol = {});

  /// Standard basis vector e_k.
  static State basis(Index dim, Index k, const Tolerances& tol = {});

  Index dim() const { return amps_.size(); }
  const Vector& amplitudes() const { return amps_; }

 private:
  Vector amps_;
};

/// <a|b>, conjugate-linear in the first argument.
cxd inner_product(const State& a, const State& b);

/// |<a|b>|^2.
double fidelity(const State& a, const State& b);

/// Split structure A = a0*I + a1*(|i><j| + |j><i|) attached to a generator.
struct SplitInfo {
  Index i = 0;
  Index j = 1;
  double a0 = 0.0;
  double a1 = 1.0;
};

/// N x N Hermitian matrix, generator of parametric evolution. The
/// eigendecomposition (ascending eigenvalues, orthonormal eigenvectors) is
/// computed at construction. Immutable.
class Generator {
 public:
  explicit Generator(Matrix m, const Tolerances& tol = {});

  /// As above, and validates + records the split A = a0*I + a1*(ij coupling).
  /// Couplings from rows/columns i, j to any other level are rejected with a
  /// block-leakage diagnostic: they would drain probability out of the
  /// two-level block.
  Generator(Matrix m, const SplitInfo& split, const Tolerances& tol = {});

  Index dim() const { return matrix_.rows(); }
  const Matrix& matrix() const { return matrix_; }

  /// Ascending.
  const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }
  /// Columns, orthonormal, aligned with eigenvalues().
  const Matrix& eigenvectors() const { return eigenvectors_; }
  State eigenstate(Index k) const;

  /// True when the minimal spectral gap is <= tol.herm * max(1, ||A||_2).
  bool degenerate() const { return degenerate_; }
  double min_gap() const { return min_gap_; }

  const std::optional<SplitInfo>& split() const { return split_; }
  const Tolerances& tol() const { return tol_; }

 private:
  void decompose();

  Matrix matrix_;
  Eigen::VectorXd eigenvalues_;
  Matrix eigenvectors_;
  double min_gap_ = 0.0;
  bool degenerate_ = false;
  std::optional<SplitInfo> split_;
  Tolerances tol_;
};

/// <psi|A|psi>. Errors if the imaginary part exceeds tol.herm.
double expectation(const Generator& a, const State& psi);

/// Delta A = sqrt(<A^2> - <A>^2) >= 0. Radicands in (-tol.norm, 0) clamp to
/// zero; anything below -tol.norm errors as a numerical inconsistency.
double uncertainty(const Generator& a, const State& psi);

}  // namespace qgeo

#endif  // QGEO_CORE_HPP
