#include "core.hpp"

#include <cmath>

namespace qgeo {

State::State(Vector amplitudes, const Tolerances& tol) : amps_(std::move(amplitudes)) {
  tol.validate();
  if (amps_.size() < 2) {
    fail(Status::invalid_argument, "state dimension must be >= 2");
  }
  const double norm_sq = amps_.squaredNorm();
  if (std::abs(norm_sq - 1.0) > tol.norm) {
    fail(Status::not_normalized,
         "state is not normalized: |psi|^2 = " + std::to_string(norm_sq));
  }
}

State State::normalized(Vector amplitudes, const Tolerances& tol) {
  const double n = amplitudes.norm();
  if (!(n > 0.0) || !std::isfinite(n)) {
    fail(Status::invalid_argument, "cannot normalize a zero or non-finite vector");
  }
  return State(amplitudes / n, tol);
}

State State::basis(Index dim, Index k, const Tolerances& tol) {
  if (k < 0 || k >= dim) {
    fail(Status::invalid_argument, "basis index out of range");
  }
  Vector v = Vector::Zero(dim);
  v[k] = 1.0;
  return State(std::move(v), tol);
}

cxd inner_product(const State& a, const State& b) {
  if (a.dim() != b.dim()) {
    fail(Status::dimension_mismatch, "inner_product: dimensions differ");
  }
  return a.amplitudes().dot(b.amplitudes());
}

double fidelity(const State& a, const State& b) {
  return std::norm(inner_product(a, b));
}

Generator::Generator(Matrix m, const Tolerances& tol) : matrix_(std::move(m)), tol_(tol) {
  tol_.validate();
  decompose();
}

Generator::Generator(Matrix m, const SplitInfo& split, const Tolerances& tol)
    : Generator(std::move(m), tol) {
  const Index n = dim();
  const Index i = split.i;
  const Index j = split.j;
  if (i < 0 || j < 0 || i >= n || j >= n || i == j) {
    fail(Status::invalid_argument, "split indices must be distinct and in range");
  }
  if (!(split.a1 > 0.0)) {
    fail(Status::invalid_argument, "split coupling a1 must be positive");
  }
  // A - a0*I must be exactly the two-level coupling a1*(|i><j| + |j><i|).
  Matrix a1_part = matrix_ - split.a0 * Matrix::Identity(n, n);
  a1_part(i, j) -= split.a1;
  a1_part(j, i) -= split.a1;
  double defect = 0.0;
  double leakage = 0.0;
  for (Index r = 0; r < n; ++r) {
    for (Index c = 0; c < n; ++c) {
      const double mag = std::abs(a1_part(r, c));
      defect = std::max(defect, mag);
      const bool touches_block = (r == i || r == j || c == i || c == j);
      const bool inside_block = (r == i || r == j) && (c == i || c == j);
      if (touches_block && !inside_block) leakage = std::max(leakage, mag);
    }
  }
  if (leakage > tol_.herm) {
    fail(Status::invalid_argument,
         "split generator has block leakage: coupling of magnitude " +
             std::to_string(leakage) + " from levels (i,j) to the rest of the space");
  }
  if (defect > tol_.herm) {
    fail(Status::invalid_argument,
         "matrix does not match the declared split A0 + A1 (max defect " +
             std::to_string(defect) + ")");
  }
  split_ = split;
}

void Generator::decompose() {
  const Index n = matrix_.rows();
  if (n < 2 || matrix_.cols() != n) {
    fail(Status::invalid_argument, "generator must be a square matrix with N >= 2");
  }
  double herm_defect = 0.0;
  for (Index r = 0; r < n; ++r) {
    for (Index c = r; c < n; ++c) {
      herm_defect = std::max(herm_defect, std::abs(matrix_(r, c) - std::conj(matrix_(c, r))));
    }
  }
  if (herm_defect > tol_.herm) {
    fail(Status::not_hermitian,
         "matrix is not Hermitian (max entrywise defect " + std::to_string(herm_defect) + ")");
  }

  Eigen::SelfAdjointEigenSolver<Matrix> solver(matrix_);
  if (solver.info() != Eigen::Success) {
    fail(Status::numerical_error, "eigendecomposition failed");
  }
  eigenvalues_ = solver.eigenvalues();
  eigenvectors_ = solver.eigenvectors();

  min_gap_ = std::numeric_limits<double>::infinity();
  for (Index k = 0; k + 1 < n; ++k) {
    min_gap_ = std::min(min_gap_, eigenvalues_[k + 1] - eigenvalues_[k]);
  }
  const double scale = std::max({1.0, std::abs(eigenvalues_[0]), std::abs(eigenvalues_[n - 1])});
  degenerate_ = min_gap_ <= tol_.herm * scale;
}

State Generator::eigenstate(Index k) const {
  if (k < 0 || k >= dim()) {
    fail(Status::invalid_argument, "eigenstate index out of range");
  }
  return State(eigenvectors_.col(k), tol_);
}

double expectation(const Generator& a, const State& psi) {
  if (a.dim() != psi.dim()) {
    fail(Status::dimension_mismatch, "expectation: dimensions differ");
  }
  const cxd value = psi.amplitudes().dot(a.matrix() * psi.amplitudes());
  const double scale = std::max(1.0, std::abs(value));
  if (std::abs(value.imag()) > a.tol().herm * scale) {
    fail(Status::not_hermitian,
         "expectation value has imaginary part " + std::to_string(value.imag()));
  }
  return value.real();
}

double uncertainty(const Generator& a, const State& psi) {
  const Vector apsi = a.matrix() * psi.amplitudes();
  const double mean = expectation(a, psi);
  const double mean_sq = apsi.squaredNorm();  // <psi|A^2|psi> for Hermitian A
  double radicand = mean_sq - mean * mean;
  if (radicand < 0.0) {
    if (radicand < -a.tol().norm) {
      fail(Status::numerical_error,
           "variance radicand " + std::to_string(radicand) + " below -tol.norm");
    }
    radicand = 0.0;
  }
  return std::sqrt(radicand);
}

}  // namespace qgeo
