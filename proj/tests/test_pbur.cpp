#include <doctest.h>

#include <cmath>

#include "geometry.hpp"
#include "intelligent.hpp"
#include "pbur.hpp"
#include "test_helpers.hpp"

using namespace qgeo;

namespace {

IntelligentFamily split_family(double a0, double a1) {
  SplitGeneratorSpec spec;
  spec.a0 = a0;
  spec.a1 = a1;
  return nonorthogonal_family(spec);
}

}  // namespace

TEST_CASE("averaged uncertainty of constant-Delta-A paths") {
  std::mt19937_64 rng(41);
  const Generator a(test::random_hermitian(4, rng));
  const State psi0 = test::random_state(4, rng);
  const Path path = sample_path(a, psi0, ParameterGrid(0.0, 2.3, 101));
  CHECK(averaged_uncertainty(path, a) ==
        doctest::Approx(uncertainty(a, psi0)).epsilon(1e-12));
}

TEST_CASE("averaged uncertainty of the split family is a1") {
  const IntelligentFamily family = split_family(2.0, 1.0);
  const Path path = family.sample(ParameterGrid(0.0, 1.0, 501));
  CHECK(averaged_uncertainty(path, family.generator()) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("averaged uncertainty of the Horesh-Mann family is (a_j - a_i)/2") {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = 3.0;
  const Generator a(m);
  const IntelligentFamily family = horesh_mann_family(a, 0, 1);
  const Path path = family.sample(ParameterGrid(0.0, family.lambda_sup(), 501));
  CHECK(averaged_uncertainty(path, a) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("parameter uncertainty formula and guards") {
  // Orthogonal endpoints: Delta lambda reduces to the plain difference.
  CHECK(parameter_uncertainty(kPi, 0.3, 1.8) == doctest::Approx(1.5).epsilon(1e-14));

  // Split family: (pi/S0) lambda2 = pi hbar / (2 a1), independent of lambda2.
  const double a1 = 0.8;
  for (double lambda2 : {0.3, 0.9, 1.5}) {
    const double s0 = 2.0 * a1 * lambda2;
    CHECK(parameter_uncertainty(s0, 0.0, lambda2) ==
          doctest::Approx(kPi / (2.0 * a1)).epsilon(1e-13));
  }

  try {
    parameter_uncertainty(1e-9, 0.0, 1.0);
    FAIL("expected coincident_endpoints");
  } catch (const Error& e) {
    CHECK(e.status() == Status::coincident_endpoints);
  }
  CHECK_THROWS_AS(parameter_uncertainty(1.0, 1.0, 1.0), Error);
}

TEST_CASE("split family saturates the PBUR at any endpoint in range") {
  const IntelligentFamily family = split_family(2.0, 1.0);
  const Path path = family.sample(ParameterGrid(0.0, 0.785398, 1001));
  const PburReport report = evaluate_pbur(path, family.generator());
  CHECK(report.bound == doctest::Approx(kPi / 2.0));
  CHECK(std::abs(report.ratio - 1.0) < 1e-9);
  CHECK(report.saturated);
  CHECK_FALSE(report.bound_violated);
  CHECK(report.saturation_rel == 1e-9);
}

TEST_CASE("Horesh-Mann family saturates at the orthogonality endpoint") {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = 3.0;
  const Generator a(m);
  const IntelligentFamily family = horesh_mann_family(a, 0, 1);
  const Path path = family.sample(ParameterGrid(0.0, family.lambda_sup(), 1001));
  const PburReport report = evaluate_pbur(path, a);
  CHECK(std::abs(report.ratio - 1.0) < 1e-9);
  CHECK(report.saturated);
}

TEST_CASE("three-level superposition stays strictly above the bound") {
  const CounterexampleReport report = counterexample_three_level(1.0);
  CHECK(report.ratio > 1.0 + 1e-3);
}

TEST_CASE("report is independent of lambda2 across the split family range") {
  const IntelligentFamily family = split_family(1.3, 0.7);
  const double sup = family.lambda_sup();
  PburReport first;
  bool have_first = false;
  for (int k = 1; k <= 10; ++k) {
    const double lambda2 = sup * static_cast<double>(k) / 11.0;
    const Path path = family.sample(ParameterGrid(0.0, lambda2, 801));
    const PburReport report = evaluate_pbur(path, family.generator());
    CHECK(std::abs(report.ratio - 1.0) < 1e-9);
    if (have_first) {
      CHECK(std::abs(report.avg_uncertainty - first.avg_uncertainty) < 1e-9);
      CHECK(std::abs(report.delta_lambda - first.delta_lambda) < 1e-9);
      CHECK(std::abs(report.product - first.product) < 1e-9);
    } else {
      first = report;
      have_first = true;
    }
  }
}

TEST_CASE("scale covariance: A -> cA with lambda -> lambda/c") {
  std::mt19937_64 rng(42);
  const Matrix base = test::random_hermitian(4, rng);
  const State psi0 = test::random_state(4, rng);
  for (double c : {0.5, 2.0, 7.0}) {
    const Generator a(base);
    const Generator scaled(c * base);
    const Path path = sample_path(a, psi0, ParameterGrid(0.0, 1.0, 401));
    const Path path_scaled = sample_path(scaled, psi0, ParameterGrid(0.0, 1.0 / c, 401));
    const PburReport r1 = evaluate_pbur(path, a);
    const PburReport r2 = evaluate_pbur(path_scaled, scaled);
    CHECK(std::abs(r1.product - r2.product) < 1e-12 * std::max(1.0, r1.product));
    CHECK(std::abs(r1.ratio - r2.ratio) < 1e-12);
  }
}

TEST_CASE("hbar covariance: rescaling hbar with the grid leaves the ratio fixed") {
  std::mt19937_64 rng(43);
  const Matrix base = test::random_hermitian(4, rng);
  const State psi0 = test::random_state(4, rng);
  const Generator a(base);
  const double kappa = 3.0;
  const Path p1 = sample_path(a, psi0, ParameterGrid(0.0, 1.0, 301), Units(1.0));
  const Path p2 = sample_path(a, psi0, ParameterGrid(0.0, kappa, 301), Units(kappa));
  const PburReport r1 = evaluate_pbur(p1, a, Units(1.0));
  const PburReport r2 = evaluate_pbur(p2, a, Units(kappa));
  CHECK(std::abs(r1.ratio - r2.ratio) < 1e-12);
}

TEST_CASE("ODE paths relax the saturation tolerance to 1e-6") {
  SplitGeneratorSpec spec;
  spec.a0 = 2.0;
  spec.a1 = 1.0;
  const Generator a = build_split_generator(spec);
  const Path path = evolve_ode(a, State::basis(2, 0), ParameterGrid(0.0, 0.8, 1001));
  const PburReport report = evaluate_pbur(path, a);
  CHECK(report.saturation_rel == 1e-6);
  CHECK(report.saturated);  // RK4 at this resolution is far better than 1e-6
}

TEST_CASE("coincident endpoints are rejected, not returned as infinity") {
  // S0 = 2 a1 lambda2 = 2e-10 sits below the eps0 = 1e-8 guard.
  const IntelligentFamily family = split_family(0.0, 1.0);
  const Path path = family.sample(ParameterGrid(0.0, 1e-10, 11));
  try {
    evaluate_pbur(path, family.generator());
    FAIL("expected coincident_endpoints");
  } catch (const Error& e) {
    CHECK(e.status() == Status::coincident_endpoints);
  }
}
