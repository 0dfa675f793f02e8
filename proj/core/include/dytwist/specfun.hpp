#pragma once

// Complex special functions behind the R-matrix normalizations: log Gamma,
// Barnes Gamma_1 ratios, the zeta-regularized Barnes double Gamma Gamma_2,
// the double sine S_2 and the scalar factors rho, rho_r and rho_F.
//
// Gamma_1 follows the concrete form
//   Gamma_1(x|w) = w^{x/w - 1/2} Gamma(x/w) / sqrt(2 pi),
// which makes the ladders Gamma_1(x+w|w) = x Gamma_1(x|w) and
// Gamma_2(x+w1|w1,w2) = Gamma_2(x|w1,w2) / Gamma_1(x|w2) exact.
// All functions are pure and thread-safe. Complex powers and logarithms use
// the principal branch.

#include "dytwist/types.hpp"

namespace dytwist::specfun {

/// Pair of periods of the Barnes double Gamma. Both need Re > 0.
struct Periods {
  Complex omega1{1.0, 0.0};
  Complex omega2{1.0, 0.0};

  void validate() const;
  Periods swapped() const { return {omega2, omega1}; }
};

/// Controls for the half-line integral behind log Gamma_2.
///
/// `series_cutoff` is dimensionless: the small-t series is used on
/// [0, series_cutoff / max(|w1|, |w2|, |x|)]. `tail_cutoff` counts e-folds of
/// the integrand decay exp(-Re(x) t); the truncation point is pushed further
/// out until the analytic tail bound drops below abs_tol / 10.
struct QuadratureSettings {
  double abs_tol = 1e-12;
  double series_cutoff = 0.5;
  double tail_cutoff = 40.0;
  int max_panels = 4000;
  /// Maximum number of shift relations used to reach the convergence strip.
  int max_shifts = 64;

  void validate() const;
};

/// Principal branch of log Gamma(z), analytic off (-inf, 0].
/// Throws PoleProximity within `guard` of a non-positive integer.
Complex log_gamma(Complex z, double guard = kDefaultPoleGuard);

/// log Gamma_1(x|w) with the normalization documented above.
Complex log_gamma1(Complex x, Complex omega, double guard = kDefaultPoleGuard);

/// Gamma_1(a|w) / Gamma_1(b|w) = w^{(a-b)/w} Gamma(a/w) / Gamma(b/w).
Complex gamma1_ratio(Complex a, Complex b, Complex omega,
                     double guard = kDefaultPoleGuard);

/// Zeta-regularized log Gamma_2(x|w1,w2). The value is exact (no free
/// additive constant) up to 2 pi i branch ambiguity; consumers only use
/// exponentials of combinations.
Complex log_gamma2(Complex x, const Periods& p, const QuadratureSettings& q = {},
                   double guard = kDefaultPoleGuard);

/// log S_2(x|w1,w2) = log Gamma_2(w1+w2-x) - log Gamma_2(x).
Complex log_double_sine(Complex x, const Periods& p,
                        const QuadratureSettings& q = {},
                        double guard = kDefaultPoleGuard);

/// S_2(x|w1,w2). Throws ZeroOrPole on the lattice -m w1 - n w2 (zeros) or
/// w1 + w2 + m w1 + n w2 (poles).
Complex double_sine(Complex x, const Periods& p, const QuadratureSettings& q = {},
                    double guard = kDefaultPoleGuard);

/// rho(beta) = Gamma(x/2) Gamma(1+x/2) / Gamma((1+x)/2)^2, x = i beta / pi.
Complex rho_dy(SpectralPoint beta, double guard = kDefaultPoleGuard);
Complex log_rho_dy(SpectralPoint beta, double guard = kDefaultPoleGuard);

/// rho_r(beta) = S_2(1+x|r,2)^2 / (S_2(x|r,2) S_2(2+x|r,2)).
Complex rho_r(SpectralPoint beta, double r, const QuadratureSettings& q = {},
              double guard = kDefaultPoleGuard);
Complex log_rho_r(SpectralPoint beta, double r, const QuadratureSettings& q = {},
                  double guard = kDefaultPoleGuard);

/// rho_F(beta) = Gamma_2(x+1+r|2,r)^2 / (Gamma_2(x+r|2,r) Gamma_2(x+2+r|2,r)).
Complex rho_F(SpectralPoint beta, double r, const QuadratureSettings& q = {},
              double guard = kDefaultPoleGuard);
Complex log_rho_F(SpectralPoint beta, double r, const QuadratureSettings& q = {},
                  double guard = kDefaultPoleGuard);

}  // namespace dytwist::specfun
