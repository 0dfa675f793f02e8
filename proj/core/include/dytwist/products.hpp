#pragma once

// Truncated evaluation of the infinite-product forms of rho_F and of the
// twist F, with a two-point extrapolation that removes the logarithmic
// divergence.
//
// Every factor is flip-invariant, so the 4x4 product is carried out on
// M-descriptors: conjugation by D^n is the identity for even n and swaps
// (b+, b-) for odd n. Factors commute; ranges may be summed in any order.

#include "dytwist/rmat.hpp"
#include "dytwist/specfun.hpp"
#include "dytwist/types.hpp"

namespace dytwist::products {

/// Two samples of a divergent log-sum and its regularized value.
///
/// With L(N) the partial log over N factors, the slope of the ln N
/// divergence is a = (L(2N) - L(N)) / ln 2 and the regularized value is
/// L(N) - a ln(N r). The ln r part matches the Gamma-function
/// regularization of the closed forms, whose factors grow like n r.
struct ScalarProductRun {
  int n = 0;
  Complex partial_log{0.0, 0.0};
  Complex partial_log_doubled{0.0, 0.0};
  Complex divergence_slope{0.0, 0.0};
  Complex extrapolated_log{0.0, 0.0};
};

ScalarProductRun extrapolate(Complex log_n, Complex log_2n, int n, double r);

struct TwistProductRun {
  int n = 0;
  ScalarProductRun scalar;
  ScalarProductRun b_plus;
  ScalarProductRun b_minus;
  CMatrix4 partial_matrix = CMatrix4::Identity();
  CMatrix4 extrapolated_matrix = CMatrix4::Identity();

  rmat::MDescriptor extrapolated_descriptor() const;
};

/// sum_{n = first}^{last} -log rho(beta - i n pi r).
Complex rho_F_log_partial(SpectralPoint beta, const DeformationParams& p,
                          int first, int last);

/// log-descriptor (sum log b+, sum log b-) of the product of
/// D^n R_DY(beta - i n pi r)^{-1} D^{-n} (matrix part only) over [first, last].
struct LogDescriptor {
  Complex log_plus{0.0, 0.0};
  Complex log_minus{0.0, 0.0};
};
LogDescriptor twist_log_partial(SpectralPoint beta, const DeformationParams& p,
                                int first, int last);

/// M-descriptor of the n-th twist factor (matrix part, no scalar).
rmat::MDescriptor twist_factor_descriptor(SpectralPoint beta,
                                          const DeformationParams& p, int n);

/// Full normalized n-th factor D^n R_DY(beta - i n pi r)^{-1} D^{-n}.
CMatrix4 twist_factor_matrix(SpectralPoint beta, const DeformationParams& p,
                             int n);

/// Partial product of rho(beta - i n pi r)^{-1}, n = 1..N, and the same at 2N.
ScalarProductRun rho_F_product(SpectralPoint beta, const DeformationParams& p,
                               int n);

/// Partial product of the twist factors, n = 1..N, with per-descriptor
/// extrapolation.
TwistProductRun twist_F_product(SpectralPoint beta, const DeformationParams& p,
                                int n);

/// Divergence-free identity: applying the difference equation N times,
///   F(beta) = D^N F(beta - i N pi r) D^{-N} prod_{n=1}^N (n-th factor).
CMatrix4 twist_F_telescoped(SpectralPoint beta, const DeformationParams& p,
                            int n, const specfun::QuadratureSettings& q = {});

}  // namespace dytwist::products
