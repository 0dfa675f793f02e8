#include <cmath>

#include <Eigen/LU>
#include <fmt/core.h>

#include "dytwist/errors.hpp"
#include "dytwist/verify.hpp"

namespace dytwist::verify {
namespace {

using rmat::RKind;

CheckResult make_result(std::string id, CheckParams params, double residual,
                        double tolerance, std::string diagnostics = {}) {
  CheckResult res;
  res.identity_id = std::move(id);
  res.params = std::move(params);
  res.residual = residual;
  res.tolerance = tolerance;
  res.status = residual <= tolerance ? Status::kPass : Status::kFail;
  res.diagnostics = std::move(diagnostics);
  return res;
}

SpectralPoint shifted(SpectralPoint beta, double r, int n) {
  return SpectralPoint(beta.beta() - kI * (static_cast<double>(n) * kPi * r));
}

CMatrix4 flipped(const CMatrix4& m) {
  const CMatrix4 p = rmat::flip();
  return p * m * p;
}

CheckParams specfun_params(Complex x, const specfun::Periods& w) {
  // The argument sits in the beta slot; r carries the second period.
  return CheckParams{{x}, w.omega2.real(), {}, {}, {}};
}

}  // namespace

std::string_view to_string(Status s) noexcept {
  switch (s) {
    case Status::kPass: return "pass";
    case Status::kFail: return "fail";
    case Status::kSkip: return "skip";
  }
  return "skip";
}

double relative_residual(Complex lhs, Complex rhs) {
  const double scale = std::abs(lhs);
  const double diff = std::abs(lhs - rhs);
  return scale > 0.0 ? diff / scale : diff;
}

CheckResult check_ybe(RKind kind, SpectralPoint b1, SpectralPoint b2,
                      SpectralPoint b3, const DeformationParams& p,
                      std::optional<Perturbation> perturbation,
                      const specfun::QuadratureSettings& q) {
  p.validate();
  if (p.c != 0.0) {
    throw NotRepresentable(fmt::format(
        "shifted Yang-Baxter equation at c = {} has no evaluated form", p.c));
  }
  CMatrix4 r12 = rmat::r_matrix(kind, b1 - b2, p, true, q);
  const CMatrix4 r13 = rmat::r_matrix(kind, b1 - b3, p, true, q);
  const CMatrix4 r23 = rmat::r_matrix(kind, b2 - b3, p, true, q);
  std::string diag;
  if (perturbation) {
    r12(perturbation->row, perturbation->col) *= 1.0 + perturbation->epsilon;
    diag = fmt::format("R12({},{}) scaled by 1{:+g}", perturbation->row,
                       perturbation->col, perturbation->epsilon);
  }
  const CMatrix8 a12 = rmat::embed12(r12);
  const CMatrix8 a13 = rmat::embed13(r13);
  const CMatrix8 a23 = rmat::embed23(r23);
  const CMatrix8 lhs = a12 * a13 * a23;
  const CMatrix8 rhs = a23 * a13 * a12;
  const std::string id = fmt::format("ybe:{}", rmat::to_string(kind));
  return make_result(id, {{b1.beta(), b2.beta(), b3.beta()}, p.r, {}, {}, {}},
                     relative_residual(lhs, rhs), default_tolerance(id),
                     std::move(diag));
}

CheckResult check_twist_relation(SpectralPoint b1, SpectralPoint b2,
                                 const DeformationParams& p,
                                 const specfun::QuadratureSettings& q) {
  p.validate();
  const SpectralPoint beta = b1 - b2;
  const CMatrix4 lhs = rmat::r_matrix(RKind::kV6, beta, p, true, q);
  const CMatrix4 rdy = rmat::r_matrix(RKind::kDY, beta, p, true, q);
  const CMatrix4 f_minus = rmat::twist_F_closed(-beta, p, q);
  const CMatrix4 f_plus_inv = rmat::twist_F_closed(beta, p, q).inverse();
  const CMatrix4 rhs = flipped(f_minus) * rdy * f_plus_inv;
  const CMatrix4 swapped = f_minus * rdy * f_plus_inv;
  return make_result("twist", {{b1.beta(), b2.beta()}, p.r, {}, {}, {}},
                     relative_residual(lhs, rhs), default_tolerance("twist"),
                     fmt::format("unflipped F12 variant residual {:.3e}",
                                 relative_residual(lhs, swapped)));
}

CheckResult check_difference_equation(SpectralPoint beta, const DeformationParams& p,
                                      const specfun::QuadratureSettings& q) {
  p.validate();
  const SpectralPoint s1 = shifted(beta, p.r, 1);
  const CMatrix4 lhs = rmat::twist_F_closed(s1, p, q);
  const CMatrix4 d = rmat::tau_conjugator();
  const CMatrix4 rhs = d.inverse() * rmat::twist_F_closed(beta, p, q) * d *
                       rmat::r_matrix(RKind::kDY, s1, p, true, q);
  return make_result("difference", {{beta.beta()}, p.r, {}, {}, {}},
                     relative_residual(lhs, rhs), default_tolerance("difference"));
}

CheckResult check_difference_equation_twice(SpectralPoint beta,
                                            const DeformationParams& p,
                                            const specfun::QuadratureSettings& q) {
  p.validate();
  const SpectralPoint s1 = shifted(beta, p.r, 1);
  const SpectralPoint s2 = shifted(beta, p.r, 2);
  const CMatrix4 lhs = rmat::twist_F_closed(s2, p, q);
  const CMatrix4 rhs = rmat::twist_F_closed(beta, p, q) *
                       rmat::tau(rmat::r_matrix(RKind::kDY, s1, p, true, q)) *
                       rmat::r_matrix(RKind::kDY, s2, p, true, q);
  return make_result("difference2", {{beta.beta()}, p.r, 2, {}, {}},
                     relative_residual(lhs, rhs), default_tolerance("difference2"));
}

CheckResult check_gauge_v8(SpectralPoint beta, const DeformationParams& p,
                           bool normalized, const specfun::QuadratureSettings& q) {
  p.validate();
  const CMatrix4 k = rmat::gauge_K();
  const CMatrix4 lhs = rmat::r_matrix(RKind::kV8, beta, p, normalized, q);
  const CMatrix4 rhs =
      flipped(k) * rmat::r_matrix(RKind::kV6, beta, p, normalized, q) * k.inverse();
  return make_result("gauge_v8", {{beta.beta()}, p.r, {}, {}, {}},
                     relative_residual(lhs, rhs), default_tolerance("gauge_v8"),
                     normalized ? "normalized" : "unnormalized");
}

CheckResult check_gauge_f(SpectralPoint b1, SpectralPoint b2,
                          const DeformationParams& p, bool normalized,
                          const specfun::QuadratureSettings& q) {
  p.validate();
  const SpectralPoint beta = b1 - b2;
  const CMatrix4 k12 = rmat::gauge_K6(b1, b2, p);
  // K21(b2, b1) is K12(b1, b2) with its legs exchanged.
  const CMatrix4 k21 = flipped(rmat::gauge_K6(b2, b1, p));
  const CMatrix4 lhs = rmat::r_matrix(RKind::kF, beta, p, normalized, q);
  const CMatrix4 rhs =
      k21 * rmat::r_matrix(RKind::kV6, beta, p, normalized, q) * k12.inverse();
  return make_result("gauge_f", {{b1.beta(), b2.beta()}, p.r, {}, {}, {}},
                     relative_residual(lhs, rhs), default_tolerance("gauge_f"),
                     normalized ? "normalized" : "unnormalized");
}

CheckResult check_unitarity(RKind kind, SpectralPoint beta, const DeformationParams& p,
                            bool normalized, const specfun::QuadratureSettings& q) {
  p.validate();
  const CMatrix4 lhs = rmat::r_matrix(kind, beta, p, normalized, q) *
                       flipped(rmat::r_matrix(kind, -beta, p, normalized, q));
  Complex scalar{1.0, 0.0};
  if (normalized) {
    const Complex c = 1.0 / std::tanh(0.5 * beta.beta());
    scalar = c * c;
  }
  const CMatrix4 rhs = scalar * CMatrix4::Identity();
  const std::string id = fmt::format("{}:{}", normalized ? "unitarity" : "unitarity_m",
                                     rmat::to_string(kind));
  return make_result(id, {{beta.beta()}, p.r, {}, {}, {}},
                     relative_residual(lhs, rhs), default_tolerance(id));
}

CheckResult check_rho_factorization(SpectralPoint beta, const DeformationParams& p,
                                    const specfun::QuadratureSettings& q) {
  p.validate();
  const Complex lhs = specfun::log_rho_r(beta, p.r, q, p.guard);
  const Complex rhs = specfun::log_rho_F(-beta, p.r, q, p.guard) +
                      specfun::log_rho_dy(beta, p.guard) -
                      specfun::log_rho_F(beta, p.r, q, p.guard);
  return make_result("rho_factorization", {{beta.beta()}, p.r, {}, {}, {}},
                     relative_residual(std::exp(lhs), std::exp(rhs)),
                     default_tolerance("rho_factorization"));
}

CheckResult check_gamma1_ladder(Complex x, double omega, double guard) {
  // Gamma_1(x + w) = x Gamma_1(x).
  const Complex ratio = std::exp(specfun::log_gamma1(x + omega, omega, guard) -
                                 specfun::log_gamma1(x, omega, guard));
  return make_result("gamma1_ladder", {{x}, omega, {}, {}, {}},
                     relative_residual(ratio, x), default_tolerance("gamma1_ladder"));
}

CheckResult check_gamma2_ladder(Complex x, const specfun::Periods& w,
                                const specfun::QuadratureSettings& q, double guard) {
  // Gamma_2(x + w1) Gamma_1(x|w2) = Gamma_2(x), taken as a ratio so that
  // neither the additive constant nor the branch of the logs enters.
  const Complex lhs = std::exp(specfun::log_gamma2(x + w.omega1, w, q, guard) +
                               specfun::log_gamma1(x, w.omega2, guard) -
                               specfun::log_gamma2(x, w, q, guard));
  return make_result("gamma2_ladder", specfun_params(x, w),
                     relative_residual(lhs, Complex{1.0, 0.0}),
                     default_tolerance("gamma2_ladder"));
}

CheckResult check_s2_reflection(Complex x, const specfun::Periods& w,
                                const specfun::QuadratureSettings& q, double guard) {
  const Complex total = w.omega1 + w.omega2;
  const Complex prod = std::exp(specfun::log_double_sine(x, w, q, guard) +
                                specfun::log_double_sine(total - x, w, q, guard));
  return make_result("s2_reflection", specfun_params(x, w),
                     relative_residual(prod, Complex{1.0, 0.0}),
                     default_tolerance("s2_reflection"));
}

CheckResult check_s2_shift(Complex x, const specfun::Periods& w, int which,
                           const specfun::QuadratureSettings& q, double guard) {
  if (which != 1 && which != 2) {
    throw InvalidArgument(fmt::format("shift index must be 1 or 2, got {}", which));
  }
  const Complex step = which == 1 ? w.omega1 : w.omega2;
  const Complex other = which == 1 ? w.omega2 : w.omega1;
  const Complex lhs = specfun::double_sine(x + step, w, q, guard);
  const Complex rhs =
      specfun::double_sine(x, w, q, guard) / (2.0 * std::sin(kPi * x / other));
  const std::string id = fmt::format("s2_shift{}", which);
  return make_result(id, specfun_params(x, w), relative_residual(lhs, rhs),
                     default_tolerance(id));
}

CheckResult check_s2_symmetry(Complex x, const specfun::Periods& w,
                              const specfun::QuadratureSettings& q, double guard) {
  const Complex lhs = specfun::double_sine(x, w, q, guard);
  const Complex rhs = specfun::double_sine(x, w.swapped(), q, guard);
  return make_result("s2_symmetry", specfun_params(x, w), relative_residual(lhs, rhs),
                     default_tolerance("s2_symmetry"));
}

}  // namespace dytwist::verify
