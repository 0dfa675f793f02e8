#include <array>
#include <cmath>

#include <fmt/core.h>

#include "dytwist/errors.hpp"
#include "dytwist/specfun.hpp"
#include "gamma_internal.hpp"

namespace dytwist::specfun {
namespace {

constexpr double kHalfLog2Pi = 0.918938533204672741780329736406;

// B_{2k} / (2k (2k - 1)) for k = 1..10.
constexpr std::array<double, 10> kStirling = {
    1.0 / 12.0,         -1.0 / 360.0,       1.0 / 1260.0,
    -1.0 / 1680.0,      1.0 / 1188.0,       -691.0 / 360360.0,
    1.0 / 156.0,        -3617.0 / 122400.0, 43867.0 / 244188.0,
    -174611.0 / 125400.0};

// Stirling series needs Re(w) >= kShiftTarget for full double precision.
constexpr double kShiftTarget = 15.0;

Complex stirling(Complex w) {
  return (w - 0.5) * std::log(w) - w + kHalfLog2Pi + detail::stirling_tail(w);
}

}  // namespace

}  // namespace dytwist::specfun

namespace dytwist::detail {

Complex stirling_tail(Complex w) {
  const Complex inv = 1.0 / w;
  const Complex inv2 = inv * inv;
  Complex series{0.0, 0.0};
  Complex power = inv;
  for (double c : specfun::kStirling) {
    series += c * power;
    power *= inv2;
  }
  return series;
}

Complex log1p_complex(Complex w) {
  const Complex u = 1.0 + w;
  if (u == Complex(1.0, 0.0)) return w;
  return std::log(u) * w / (u - 1.0);
}

Complex log_gamma_shift_difference(Complex z, double a, double b) {
  // (z + a - 1/2) log(1 + a/z) - a + tail(z + a), minus the same for b.
  auto piece = [&](double s) -> Complex {
    return (z + s - 0.5) * log1p_complex(s / z) - s + stirling_tail(z + s);
  };
  return piece(a) - piece(b);
}

}  // namespace dytwist::detail

namespace dytwist::specfun {

Complex log_gamma(Complex z, double guard) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw InvalidArgument(fmt::format("log_gamma: non-finite argument ({}, {})",
                                      z.real(), z.imag()));
  }
  if (z.real() <= 0.5) {
    const double k = std::round(z.real());
    if (k <= 0.0 && std::abs(z - k) < guard) {
      throw PoleProximity(fmt::format(
          "log_gamma: argument ({}, {}) within {} of the pole at {}", z.real(),
          z.imag(), guard, k));
    }
  }
  if (z.real() >= kShiftTarget) return stirling(z);

  // log Gamma(z) = log Gamma(z + n) - sum_k log(z + k). Summing principal
  // logarithms term by term keeps the result on the principal branch of
  // log Gamma in both half planes.
  const int n = static_cast<int>(std::ceil(kShiftTarget - z.real()));
  double log_modulus = 0.0;
  double arg_sum = 0.0;
  for (int k = 0; k < n; ++k) {
    const Complex t = z + static_cast<double>(k);
    log_modulus += std::log(std::abs(t));
    arg_sum += std::arg(t);
  }
  return stirling(z + static_cast<double>(n)) - Complex(log_modulus, arg_sum);
}

Complex log_gamma1(Complex x, Complex omega, double guard) {
  const Complex u = x / omega;
  return (u - 0.5) * std::log(omega) + log_gamma(u, guard) - kHalfLog2Pi;
}

Complex gamma1_ratio(Complex a, Complex b, Complex omega, double guard) {
  const Complex ua = a / omega;
  const Complex ub = b / omega;
  return std::exp((ua - ub) * std::log(omega) + log_gamma(ua, guard) -
                  log_gamma(ub, guard));
}

}  // namespace dytwist::specfun
