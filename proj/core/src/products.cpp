#include "dytwist/products.hpp"

#include <cmath>
#include <future>

#include <fmt/core.h>

#include "dytwist/errors.hpp"
#include "gamma_internal.hpp"

namespace dytwist::products {
namespace {

void require_order(int n) {
  if (n < 2) throw InvalidArgument(fmt::format("truncation order must be >= 2, got {}", n));
}

void require_range(int first, int last) {
  if (first < 1 || last < first - 1) {
    throw InvalidArgument(fmt::format("bad factor range [{}, {}]", first, last));
  }
}

SpectralPoint shifted(SpectralPoint beta, double r, int n) {
  return SpectralPoint(beta.beta() - kI * (static_cast<double>(n) * kPi * r));
}

// log((y + 1) / (y - 1)) with y = x + n r, the nontrivial entry of the
// inverse DY factor.
Complex log_factor_entry(SpectralPoint beta, const DeformationParams& p, int n) {
  const Complex y = beta.x() + static_cast<double>(n) * p.r;
  if (std::abs(y - 1.0) < p.guard || std::abs(y + 1.0) < p.guard) {
    throw PoleProximity(fmt::format("twist factor n = {} hits a pole at x + n r = {}{:+}i",
                                    n, y.real(), y.imag()));
  }
  return detail::log1p_complex(2.0 / (y - 1.0));
}

// Sums [first, last] and [last + 1, 2 last - first + 1] concurrently.
template <typename Sum>
auto split_sum(Sum sum, int n) {
  auto upper = std::async(std::launch::async, sum, n + 1, 2 * n);
  auto lower = sum(1, n);
  return std::pair{lower, upper.get()};
}

}  // namespace

ScalarProductRun extrapolate(Complex log_n, Complex log_2n, int n, double r) {
  ScalarProductRun run;
  run.n = n;
  run.partial_log = log_n;
  run.partial_log_doubled = log_2n;
  run.divergence_slope = (log_2n - log_n) / std::log(2.0);
  run.extrapolated_log = log_n - run.divergence_slope * std::log(n * r);
  return run;
}

rmat::MDescriptor TwistProductRun::extrapolated_descriptor() const {
  return {std::exp(b_plus.extrapolated_log), std::exp(b_minus.extrapolated_log)};
}

Complex rho_F_log_partial(SpectralPoint beta, const DeformationParams& p,
                          int first, int last) {
  p.validate();
  require_range(first, last);
  Complex sum{0.0, 0.0};
  // Largest n first: the terms shrink like 1/n.
  for (int n = last; n >= first; --n) {
    sum -= specfun::log_rho_dy(shifted(beta, p.r, n), p.guard);
  }
  return sum;
}

LogDescriptor twist_log_partial(SpectralPoint beta, const DeformationParams& p,
                                int first, int last) {
  p.validate();
  require_range(first, last);
  LogDescriptor acc;
  for (int n = last; n >= first; --n) {
    const Complex v = log_factor_entry(beta, p, n);
    if (n % 2 != 0) {
      acc.log_plus += v;
    } else {
      acc.log_minus += v;
    }
  }
  return acc;
}

rmat::MDescriptor twist_factor_descriptor(SpectralPoint beta,
                                          const DeformationParams& p, int n) {
  const Complex v = std::exp(log_factor_entry(beta, p, n));
  // Conjugating by an odd power of D swaps the two parameters.
  return n % 2 != 0 ? rmat::MDescriptor{v, 1.0} : rmat::MDescriptor{1.0, v};
}

CMatrix4 twist_factor_matrix(SpectralPoint beta, const DeformationParams& p,
                             int n) {
  const Complex scale = std::exp(-specfun::log_rho_dy(shifted(beta, p.r, n), p.guard));
  return scale * rmat::build_M(twist_factor_descriptor(beta, p, n));
}

ScalarProductRun rho_F_product(SpectralPoint beta, const DeformationParams& p,
                               int n) {
  require_order(n);
  p.validate();
  const auto [lower, upper] = split_sum(
      [&](int a, int b) { return rho_F_log_partial(beta, p, a, b); }, n);
  return extrapolate(lower, lower + upper, n, p.r);
}

TwistProductRun twist_F_product(SpectralPoint beta, const DeformationParams& p,
                                int n) {
  require_order(n);
  p.validate();
  TwistProductRun run;
  run.n = n;
  run.scalar = rho_F_product(beta, p, n);
  const auto [lower, upper] = split_sum(
      [&](int a, int b) { return twist_log_partial(beta, p, a, b); }, n);
  run.b_plus = extrapolate(lower.log_plus, lower.log_plus + upper.log_plus, n, p.r);
  run.b_minus =
      extrapolate(lower.log_minus, lower.log_minus + upper.log_minus, n, p.r);

  run.partial_matrix =
      std::exp(run.scalar.partial_log) *
      rmat::build_M({std::exp(lower.log_plus), std::exp(lower.log_minus)});
  run.extrapolated_matrix = std::exp(run.scalar.extrapolated_log) *
                            rmat::build_M(run.extrapolated_descriptor());
  return run;
}

CMatrix4 twist_F_telescoped(SpectralPoint beta, const DeformationParams& p,
                            int n, const specfun::QuadratureSettings& q) {
  if (n < 0) throw InvalidArgument(fmt::format("telescoping depth must be >= 0, got {}", n));
  p.validate();
  CMatrix4 tail = rmat::twist_F_closed(shifted(beta, p.r, n), p, q);
  if (n % 2 != 0) tail = rmat::tau(tail);
  CMatrix4 prod = CMatrix4::Identity();
  for (int k = 1; k <= n; ++k) prod = prod * twist_factor_matrix(beta, p, k);
  return tail * prod;
}

}  // namespace dytwist::products
