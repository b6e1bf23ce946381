#ifndef QGEO_TYPES_HPP
#define QGEO_TYPES_HPP

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qgeo {

using cxd = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;
using Index = Eigen::Index;

inline constexpr cxd kImag{0.0, 1.0};
inline constexpr double kPi = std::numbers::pi;

/// Error categories, mirrored one-to-one by the C API status codes.
enum class Status : int {
  ok = 0,
  invalid_argument = 1,
  dimension_mismatch = 2,
  not_hermitian = 3,
  not_normalized = 4,
  degenerate_pair = 5,
  range_error = 6,
  coincident_endpoints = 7,
  step_too_coarse = 8,
  numerical_error = 9,
  io_error = 10,
};

class Error : public std::runtime_error {
 public:
  Error(Status status, const std::string& what)
      : std::runtime_error(what), status_(status) {}
  Status status() const noexcept { return status_; }

 private:
  Status status_;
};

[[noreturn]] inline void fail(Status status, const std::string& what) {
  throw Error(status, what);
}

/// Numeric tolerances shared by all modules. All values must be positive.
struct Tolerances {
  double norm = 1e-12;            // state normalization, transport condition
  double herm = 1e-12;            // entrywise Hermiticity, split consistency
  double saturation_rel = 1e-9;   // |ratio - 1| for PBUR saturation (spectral)
  double residual_abs = 1e-6;     // geodesic residual bound
  double rank_cutoff = 1e-8;      // Gram singular values below cutoff*max drop

  void validate() const {
    if (!(norm > 0.0 && herm > 0.0 && saturation_rel > 0.0 &&
          residual_abs > 0.0 && rank_cutoff > 0.0)) {
      fail(Status::invalid_argument, "tolerances must all be positive");
    }
  }
};

/// Unit convention. The PBUR bound h/4 is always pi*hbar/2.
struct Units {
  double hbar = 1.0;

  Units() = default;
  explicit Units(double hb) : hbar(hb) {
    if (!(hbar > 0.0)) fail(Status::invalid_argument, "hbar must be positive");
  }

  double h() const { return 2.0 * kPi * hbar; }
  double bound() const { return kPi * hbar / 2.0; }
};

}  // namespace qgeo

#endif  // QGEO_TYPES_HPP
