// Barnes double Gamma and double sine.
//
// With g(t) = exp(-x t) / ((1 - exp(-w1 t)) (1 - exp(-w2 t))) and the
// expansion t^2 g(t) = sum_k a_k t^k, the zeta-regularized value is, for any
// split point tau > 0 and Re(x) > 0,
//
//   log Gamma_2(x) =   int_0^tau (g - a0/t^2 - a1/t - a2) dt/t
//                    + int_tau^inf g dt/t
//                    - a0/(2 tau^2) - a1/tau + a2 (gamma_E + log tau).
//
// The first integral is done termwise from the series; the second by
// adaptive Gauss-Kronrod with an exponential tail bound.

#include <array>
#include <cmath>

#include <fmt/core.h>

#include "dytwist/errors.hpp"
#include "dytwist/specfun.hpp"
#include "quadrature.hpp"

namespace dytwist::specfun {
namespace {

constexpr int kSeriesTerms = 26;
constexpr double kEulerGamma = 0.577215664901532860606512090082;

// B+_n / n! (B+_1 = +1/2), n = 0..kSeriesTerms-1.
constexpr std::array<double, kSeriesTerms> bernoulli_over_factorial() {
  // Nonzero Bernoulli numbers B_{2k}, k = 0..12, as numerator / denominator.
  constexpr std::array<double, 13> num = {
      1.0,      1.0,         -1.0,       1.0,        -1.0,
      5.0,      -691.0,      7.0,        -3617.0,    43867.0,
      -174611.0, 854513.0,   -236364091.0};
  constexpr std::array<double, 13> den = {1.0,   6.0,   30.0,  42.0, 30.0,
                                          66.0,  2730.0, 6.0,  510.0, 798.0,
                                          330.0, 138.0, 2730.0};
  std::array<double, kSeriesTerms> out{};
  double factorial = 1.0;
  for (int n = 0; n < kSeriesTerms; ++n) {
    if (n > 0) factorial *= n;
    double b = 0.0;
    if (n == 1) {
      b = 0.5;
    } else if (n % 2 == 0) {
      b = num[n / 2] / den[n / 2];
    }
    out[n] = b / factorial;
  }
  return out;
}

constexpr auto kBernoulli = bernoulli_over_factorial();

// exp(z) - 1 without cancellation for small |z|.
Complex expm1c(Complex z) {
  const double a = z.real();
  const double b = z.imag();
  const double s = std::sin(0.5 * b);
  return {std::expm1(a) * std::cos(b) - 2.0 * s * s, std::exp(a) * std::sin(b)};
}

// Coefficients a_k of t^2 g(t).
std::array<Complex, kSeriesTerms> laurent_coefficients(Complex x,
                                                       const Periods& p) {
  std::array<Complex, kSeriesTerms> b1{}, b2{}, e{}, prod{}, out{};
  Complex pw1 = 1.0 / p.omega1;
  Complex pw2 = 1.0 / p.omega2;
  Complex pe = 1.0;
  double factorial = 1.0;
  for (int n = 0; n < kSeriesTerms; ++n) {
    if (n > 0) factorial *= n;
    b1[n] = kBernoulli[n] * pw1;
    b2[n] = kBernoulli[n] * pw2;
    e[n] = pe / factorial;
    pw1 *= p.omega1;
    pw2 *= p.omega2;
    pe *= -x;
  }
  for (int k = 0; k < kSeriesTerms; ++k) {
    Complex s = 0.0;
    for (int i = 0; i <= k; ++i) s += b1[i] * b2[k - i];
    prod[k] = s;
  }
  for (int k = 0; k < kSeriesTerms; ++k) {
    Complex s = 0.0;
    for (int i = 0; i <= k; ++i) s += e[i] * prod[k - i];
    out[k] = s;
  }
  return out;
}

// Exact log Gamma_2 for Re(x) > 0.
Complex log_gamma2_in_strip(Complex x, const Periods& p,
                            const QuadratureSettings& q) {
  const double scale =
      std::max({std::abs(p.omega1), std::abs(p.omega2), std::abs(x)});
  const double tau = q.series_cutoff / scale;
  const auto a = laurent_coefficients(x, p);

  Complex series{0.0, 0.0};
  double tau_pow = tau;
  for (int k = 3; k < kSeriesTerms; ++k) {
    series += a[k] * tau_pow / static_cast<double>(k - 2);
    tau_pow *= tau;
  }
  const Complex constants = -a[0] / (2.0 * tau * tau) - a[1] / tau +
                            a[2] * (kEulerGamma + std::log(tau));

  const double decay = x.real();
  const double w1 = p.omega1.real();
  const double w2 = p.omega2.real();
  auto tail_bound = [&](double t) {
    return std::exp(-decay * t) /
           (decay * t * -std::expm1(-w1 * t) * -std::expm1(-w2 * t));
  };
  double upper = std::max(q.tail_cutoff / decay, 2.0 * tau);
  int doublings = 0;
  while (tail_bound(upper) > 0.1 * q.abs_tol) {
    upper *= 2.0;
    if (++doublings > 60) {
      throw QuadratureFailure("log_gamma2: tail bound does not decay");
    }
  }

  const Complex mx = -x;
  const Complex m1 = -p.omega1;
  const Complex m2 = -p.omega2;
  auto integrand = [&](double t) -> Complex {
    return std::exp(mx * t) / (t * expm1c(m1 * t) * expm1c(m2 * t));
  };
  const auto body =
      detail::integrate_adaptive(integrand, tau, upper, q.abs_tol, q.max_panels);
  if (!body.converged) {
    throw QuadratureFailure(fmt::format(
        "log_gamma2: error {:.3g} above tolerance {:.3g} after {} panels at "
        "x = ({}, {})",
        body.error, q.abs_tol, body.panels, x.real(), x.imag()));
  }
  return series + body.value + constants;
}

double pole_scale(const Periods& p) {
  return std::min(std::abs(p.omega1), std::abs(p.omega2));
}

}  // namespace

void Periods::validate() const {
  if (!(omega1.real() > 0.0) || !(omega2.real() > 0.0)) {
    throw InvalidArgument(fmt::format(
        "periods need positive real parts, got ({}, {}) and ({}, {})",
        omega1.real(), omega1.imag(), omega2.real(), omega2.imag()));
  }
}

void QuadratureSettings::validate() const {
  if (!(abs_tol > 0.0) || !(series_cutoff > 0.0) ||
      !(tail_cutoff > series_cutoff) || max_panels < 1 || max_shifts < 0) {
    throw InvalidArgument("invalid quadrature settings");
  }
}

Complex log_gamma2(Complex x, const Periods& p, const QuadratureSettings& q,
                   double guard) {
  p.validate();
  q.validate();
  const bool first_small = p.omega1.real() <= p.omega2.real();
  const Complex small = first_small ? p.omega1 : p.omega2;
  const Complex large = first_small ? p.omega2 : p.omega1;
  const double lower = 0.5 * small.real();
  const double upper = (p.omega1 + p.omega2).real();

  // Gamma_2(x) = Gamma_2(x + w) Gamma_1(x | w'), w' the other period.
  Complex shift_log{0.0, 0.0};
  int shifts = 0;
  while (x.real() < lower) {
    if (++shifts > q.max_shifts) {
      throw InvalidArgument("log_gamma2: too many shifts to reach the strip");
    }
    shift_log += log_gamma1(x, large, guard);
    x += small;
  }
  while (x.real() > upper) {
    if (++shifts > q.max_shifts) {
      throw InvalidArgument("log_gamma2: too many shifts to reach the strip");
    }
    x -= large;
    shift_log -= log_gamma1(x, small, guard);
  }
  return shift_log + log_gamma2_in_strip(x, p, q);
}

Complex log_double_sine(Complex x, const Periods& p, const QuadratureSettings& q,
                        double guard) {
  p.validate();
  q.validate();
  const bool first_small = p.omega1.real() <= p.omega2.real();
  const Complex small = first_small ? p.omega1 : p.omega2;
  const Complex large = first_small ? p.omega2 : p.omega1;
  const Complex total = p.omega1 + p.omega2;
  const double scale = pole_scale(p);

  // S_2(x + w) = S_2(x) / (2 sin(pi x / w')).
  auto log_two_sine = [&](Complex y, Complex other) {
    const Complex s = std::sin(kPi * y / other);
    if (std::abs(s) < guard) {
      throw ZeroOrPole(fmt::format(
          "double_sine: argument on the zero/pole lattice (reduced x = ({}, {}))",
          y.real(), y.imag()));
    }
    return std::log(2.0 * s);
  };

  Complex shift_log{0.0, 0.0};
  int shifts = 0;
  while (x.real() <= 0.0) {
    if (++shifts > q.max_shifts) {
      throw InvalidArgument("double_sine: too many shifts to reach the strip");
    }
    shift_log += log_two_sine(x, large);
    x += small;
  }
  while (x.real() >= total.real()) {
    if (++shifts > q.max_shifts) {
      throw InvalidArgument("double_sine: too many shifts to reach the strip");
    }
    x -= large;
    shift_log -= log_two_sine(x, small);
  }
  if (std::abs(x) < guard * scale || std::abs(x - total) < guard * scale) {
    throw ZeroOrPole(fmt::format(
        "double_sine: argument on the zero/pole lattice (reduced x = ({}, {}))",
        x.real(), x.imag()));
  }
  return shift_log + log_gamma2(total - x, p, q, guard) -
         log_gamma2(x, p, q, guard);
}

Complex double_sine(Complex x, const Periods& p, const QuadratureSettings& q,
                    double guard) {
  return std::exp(log_double_sine(x, p, q, guard));
}

}  // namespace dytwist::specfun
