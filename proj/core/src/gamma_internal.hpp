#pragma once

#include "dytwist/types.hpp"

namespace dytwist::detail {

/// Sum of the Bernoulli correction terms of Stirling's series at w.
Complex stirling_tail(Complex w);

/// log(1 + w) accurate for small |w|.
Complex log1p_complex(Complex w);

/// log Gamma(z + a) - log Gamma(z + b) - (a - b) log z for Re(z) large,
/// free of the O(z log z) cancellation.
Complex log_gamma_shift_difference(Complex z, double a, double b);

}  // namespace dytwist::detail
