#include "intelligent.hpp"

#include <cmath>

namespace qgeo {

namespace {

constexpr double kEq7DeviationTol = 1e-8;

void check_indices(Index dim, Index i, Index j) {
  if (dim < 2) fail(Status::invalid_argument, "dimension must be >= 2");
  if (i < 0 || j < 0 || i >= dim || j >= dim) {
    fail(Status::invalid_argument, "indices must lie in [0, N)");
  }
  if (i == j) fail(Status::invalid_argument, "indices i and j must differ");
}

}  // namespace

Generator build_split_generator(const SplitGeneratorSpec& spec, const Tolerances& tol) {
  check_indices(spec.dim, spec.i, spec.j);
  if (!(spec.a1 > 0.0)) {
    fail(Status::invalid_argument, "split coupling a1 must be positive");
  }
  Vector bi, bj;
  if (spec.basis) {
    const Matrix& b = *spec.basis;
    if (b.rows() != spec.dim || b.cols() != spec.dim) {
      fail(Status::dimension_mismatch, "basis must be N x N");
    }
    const double ortho_defect =
        (b.adjoint() * b - Matrix::Identity(spec.dim, spec.dim)).cwiseAbs().maxCoeff();
    if (ortho_defect > tol.norm) {
      fail(Status::invalid_argument,
           "basis is not orthonormal (defect " + std::to_string(ortho_defect) + ")");
    }
    bi = b.col(spec.i);
    bj = b.col(spec.j);
  } else {
    bi = Vector::Zero(spec.dim);
    bj = Vector::Zero(spec.dim);
    bi[spec.i] = 1.0;
    bj[spec.j] = 1.0;
  }
  Matrix m = spec.a0 * Matrix::Identity(spec.dim, spec.dim) +
             spec.a1 * (bi * bj.adjoint() + bj * bi.adjoint());
  if (!spec.basis) {
    return Generator(std::move(m), SplitInfo{spec.i, spec.j, spec.a0, spec.a1}, tol);
  }
  return Generator(std::move(m), tol);
}

cxd IntelligentFamily::amplitude_i(double lambda) const {
  if (kind_ == FamilyKind::orthogonal) {
    return phase_ * std::exp(-kImag * p0_ * lambda / hbar_) / std::sqrt(2.0);
  }
  return phase_ * std::exp(-kImag * p0_ * lambda / hbar_) * std::cos(p1_ * lambda / hbar_);
}

cxd IntelligentFamily::amplitude_j(double lambda) const {
  if (kind_ == FamilyKind::orthogonal) {
    return phase_ * std::exp(-kImag * p1_ * lambda / hbar_) / std::sqrt(2.0);
  }
  return -kImag * phase_ * std::exp(-kImag * p0_ * lambda / hbar_) *
         std::sin(p1_ * lambda / hbar_);
}

State IntelligentFamily::state_at(double lambda) const {
  return State(amplitude_i(lambda) * vi_ + amplitude_j(lambda) * vj_, tol_);
}

double IntelligentFamily::speed() const {
  if (kind_ == FamilyKind::orthogonal) return std::abs(p1_ - p0_) / (2.0 * hbar_);
  return p1_ / hbar_;
}

void IntelligentFamily::require_endpoint(double lambda2) const {
  const bool ok = lambda2 > 0.0 &&
                  (sup_inclusive_ ? lambda2 <= lambda_sup_ : lambda2 < lambda_sup_);
  if (!ok) {
    fail(Status::range_error,
         "endpoint lambda2 = " + std::to_string(lambda2) +
             " outside the family's valid range (orthogonality threshold " +
             std::to_string(lambda_sup_) + ")");
  }
}

Path IntelligentFamily::sample(const ParameterGrid& grid) const {
  if (grid.start < 0.0) {
    fail(Status::range_error, "family grids start at lambda >= 0");
  }
  require_endpoint(grid.end);
  std::vector<State> states;
  states.reserve(grid.n);
  for (Index k = 0; k < grid.n; ++k) states.push_back(state_at(grid.lambda(k)));
  return Path(grid, std::move(states), Method::spectral, 0.0, generator_);
}

IntelligentFamily IntelligentFamily::rephased(cxd unit_phase) const {
  if (std::abs(std::abs(unit_phase) - 1.0) > tol_.norm) {
    fail(Status::invalid_argument, "rephase factor must have unit modulus");
  }
  IntelligentFamily out = *this;
  out.phase_ *= unit_phase;
  return out;
}

IntelligentFamily horesh_mann_family(const Generator& a, Index i, Index j,
                                     const Units& units, const Tolerances& tol) {
  check_indices(a.dim(), i, j);
  const double ai = a.eigenvalues()[i];
  const double aj = a.eigenvalues()[j];
  const double scale =
      std::max({1.0, std::abs(a.eigenvalues()[0]), std::abs(a.eigenvalues()[a.dim() - 1])});
  if (std::abs(aj - ai) <= tol.herm * scale) {
    fail(Status::degenerate_pair,
         "eigenvalue pair (" + std::to_string(ai) + ", " + std::to_string(aj) +
             ") is degenerate; the family needs a_i != a_j");
  }
  IntelligentFamily family;
  family.kind_ = FamilyKind::orthogonal;
  family.generator_ = std::make_shared<Generator>(a);
  family.vi_ = a.eigenvectors().col(i);
  family.vj_ = a.eigenvectors().col(j);
  family.p0_ = ai;
  family.p1_ = aj;
  family.hbar_ = units.hbar;
  family.lambda_sup_ = kPi * units.hbar / std::abs(aj - ai);
  family.sup_inclusive_ = true;
  family.tol_ = tol;
  return family;
}

IntelligentFamily nonorthogonal_family(const SplitGeneratorSpec& spec,
                                       const Units& units, const Tolerances& tol) {
  Generator gen = build_split_generator(spec, tol);
  IntelligentFamily family;
  family.kind_ = FamilyKind::nonorthogonal;
  family.generator_ = std::make_shared<Generator>(std::move(gen));
  if (spec.basis) {
    family.vi_ = spec.basis->col(spec.i);
    family.vj_ = spec.basis->col(spec.j);
  } else {
    family.vi_ = Vector::Zero(spec.dim);
    family.vj_ = Vector::Zero(spec.dim);
    family.vi_[spec.i] = 1.0;
    family.vj_[spec.j] = 1.0;
  }
  family.p0_ = spec.a0;
  family.p1_ = spec.a1;
  family.hbar_ = units.hbar;
  family.lambda_sup_ = kPi * units.hbar / (2.0 * spec.a1);
  family.sup_inclusive_ = false;  // endpoints stay strictly non-orthogonal
  family.tol_ = tol;
  return family;
}

TheoremReport verify_theorem(const IntelligentFamily& family, const ParameterGrid& grid,
                             const Units& units, const Tolerances& tol) {
  if (grid.start != 0.0) {
    fail(Status::range_error, "verify_theorem grids are anchored at lambda = 0");
  }
  if (grid.n < 5) {
    fail(Status::invalid_argument, "verify_theorem needs at least 5 samples");
  }
  const Generator& a = family.generator();
  const Path path = family.sample(grid);
  TransportedPath transported = parallel_transport(path, a, units);
  const std::vector<State>& tstates = transported.path.states;

  TheoremReport report;
  report.transport_defect = transported.transport_defect;

  const State& start = tstates.front();
  const double mean0 = expectation(a, start);
  const Vector tangent =
      -kImag / units.hbar * (a.matrix() * start.amplitudes() - mean0 * start.amplitudes());
  const double v = tangent.norm();
  report.speed = uncertainty(a, start) / units.hbar;
  report.speed_defect = std::abs(v - family.speed());

  report.residual_max = geodesic_residual(transported.path, v);
  report.gram_rank = subspace_rank(transported.path, tol.rank_cutoff);

  // Max deviation from the cos/sin geodesic reconstruction out of the first
  // transported sample.
  for (Index k = 0; k < grid.n; ++k) {
    const State expected = geodesic_curve(start, tangent, v, grid.lambda(k), tol);
    report.eq7_max_deviation =
        std::max(report.eq7_max_deviation,
                 (tstates[k].amplitudes() - expected.amplitudes()).norm());
  }
  report.eq7_match = report.eq7_max_deviation < kEq7DeviationTol;

  // Tangent re-derived purely from the first five samples (4th-order
  // one-sided stencil), as a cross-check on the algebraic tangent.
  {
    const double h = grid.step();
    const Vector fd = (-25.0 * tstates[0].amplitudes() + 48.0 * tstates[1].amplitudes() -
                       36.0 * tstates[2].amplitudes() + 16.0 * tstates[3].amplitudes() -
                       3.0 * tstates[4].amplitudes()) /
                      (12.0 * h);
    report.fd_tangent_deviation = (fd - tangent).norm();
  }

  // Canonical endpoint forms, compared up to the family's U(1) freedom.
  Vector canonical0, canonical1;
  if (family.kind() == FamilyKind::orthogonal) {
    const double sign = family.param_a1() > family.param_a0() ? 1.0 : -1.0;
    canonical0 = (family.basis_i() + family.basis_j()) / std::sqrt(2.0);
    canonical1 = sign * kImag * (family.basis_i() - family.basis_j()) / std::sqrt(2.0);
  } else {
    canonical0 = family.basis_i();
    canonical1 = -kImag * family.basis_j();
  }
  cxd align = canonical0.dot(start.amplitudes());
  align /= std::abs(align);
  const double dev0 = (start.amplitudes() - align * canonical0).norm();
  const double dev1 = (tangent / v - align * canonical1).norm();
  report.endpoint_form_deviation = std::max(dev0, dev1);
  return report;
}

CounterexampleReport counterexample_three_level(double scale, const Units& units,
                                                const Tolerances& tol) {
  if (!(scale > 0.0)) fail(Status::invalid_argument, "scale must be positive");
  Matrix m = Matrix::Zero(3, 3);
  m(1, 1) = 1.0 * scale;
  m(2, 2) = 3.0 * scale;
  const Generator a(std::move(m), tol);
  const State psi0 = State::normalized(Vector::Ones(3), tol);

  // Dense sweep for the first fidelity minimum; the dynamics is periodic
  // with period 2*pi*hbar/scale.
  const double period = 2.0 * kPi * units.hbar / scale;
  constexpr Index kSweep = 10000;
  std::vector<double> fid(kSweep);
  for (Index k = 0; k < kSweep; ++k) {
    const double lam = period * static_cast<double>(k + 1) / static_cast<double>(kSweep);
    fid[k] = fidelity(psi0, evolve_exact(a, psi0, lam, units));
  }
  Index at = 0;
  for (Index k = 1; k + 1 < kSweep; ++k) {
    if (fid[k] < fid[k - 1] && fid[k] <= fid[k + 1]) {
      at = k;
      break;
    }
  }
  if (at == 0) fail(Status::numerical_error, "no interior fidelity minimum found");
  // Parabolic refinement around the grid minimum.
  const double dl = period / static_cast<double>(kSweep);
  const double denom = fid[at - 1] - 2.0 * fid[at] + fid[at + 1];
  double lambda_star = dl * static_cast<double>(at + 1);
  if (denom > 0.0) {
    lambda_star += dl * 0.5 * (fid[at - 1] - fid[at + 1]) / denom;
  }

  CounterexampleReport report;
  report.lambda_star = lambda_star;
  const ParameterGrid grid(0.0, lambda_star, 2001);
  const Path path = sample_path(a, psi0, grid, units);
  const PburReport pbur = evaluate_pbur(path, a, units, tol);
  report.ratio = pbur.ratio;
  TransportedPath transported = parallel_transport(path, a, units);
  report.speed = uncertainty(a, psi0) / units.hbar;
  report.residual_max = geodesic_residual(transported.path, report.speed);
  report.gram_rank = subspace_rank(transported.path, tol.rank_cutoff);
  return report;
}

}  // namespace qgeo
