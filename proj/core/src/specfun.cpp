#include <fmt/core.h>

#include "dytwist/errors.hpp"
#include "dytwist/specfun.hpp"
#include "gamma_internal.hpp"

namespace dytwist {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kPoleProximity: return "PoleProximity";
    case ErrorCode::kQuadratureFailure: return "QuadratureFailure";
    case ErrorCode::kZeroOrPole: return "ZeroOrPole";
    case ErrorCode::kNotRepresentable: return "NotRepresentable";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

void DeformationParams::validate() const {
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw InvalidArgument(fmt::format("deformation scale r must be > 0, got {}", r));
  }
  if (!(guard > 0.0)) {
    throw InvalidArgument(fmt::format("pole guard must be > 0, got {}", guard));
  }
}

namespace specfun {

Complex log_rho_dy(SpectralPoint beta, double guard) {
  const Complex x = beta.x();
  const Complex z = 0.5 * x;
  if (z.real() >= 15.0) {
    // Far from the poles the three log Gammas are O(z log z) while rho is
    // 1 + O(1/z); use the shifted Stirling difference instead.
    return detail::log_gamma_shift_difference(z, 1.0, 0.5) -
           detail::log_gamma_shift_difference(z, 0.5, 0.0);
  }
  return log_gamma(0.5 * x, guard) + log_gamma(1.0 + 0.5 * x, guard) -
         2.0 * log_gamma(0.5 * (1.0 + x), guard);
}

Complex rho_dy(SpectralPoint beta, double guard) {
  return std::exp(log_rho_dy(beta, guard));
}

Complex log_rho_r(SpectralPoint beta, double r, const QuadratureSettings& q,
                  double guard) {
  const Complex x = beta.x();
  const Periods p{r, 2.0};
  return 2.0 * log_double_sine(1.0 + x, p, q, guard) -
         log_double_sine(x, p, q, guard) - log_double_sine(2.0 + x, p, q, guard);
}

Complex rho_r(SpectralPoint beta, double r, const QuadratureSettings& q,
              double guard) {
  return std::exp(log_rho_r(beta, r, q, guard));
}

Complex log_rho_F(SpectralPoint beta, double r, const QuadratureSettings& q,
                  double guard) {
  const Complex x = beta.x();
  const Periods p{2.0, r};
  return 2.0 * log_gamma2(x + 1.0 + r, p, q, guard) -
         log_gamma2(x + r, p, q, guard) - log_gamma2(x + 2.0 + r, p, q, guard);
}

Complex rho_F(SpectralPoint beta, double r, const QuadratureSettings& q,
              double guard) {
  return std::exp(log_rho_F(beta, r, q, guard));
}

}  // namespace specfun
}  // namespace dytwist
