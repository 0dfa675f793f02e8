#pragma once

// Identity checkers. Each returns a CheckResult with a relative sup-norm
// residual; pole proximity is raised as an exception by the single checks
// and turned into a skip record by run_suite.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dytwist/rmat.hpp"
#include "dytwist/specfun.hpp"
#include "dytwist/types.hpp"

namespace dytwist::verify {

enum class Status { kPass, kFail, kSkip };

std::string_view to_string(Status s) noexcept;

struct CheckParams {
  std::vector<Complex> betas;
  double r = 0.0;
  std::optional<int> n;
  std::optional<std::uint64_t> seed;
  std::optional<int> index;
};

struct CheckResult {
  std::string identity_id;
  CheckParams params;
  double residual = 0.0;
  double tolerance = 0.0;
  Status status = Status::kSkip;
  std::string diagnostics;

  bool pass() const { return status == Status::kPass; }
};

/// Default tolerance of an identity id; throws InvalidArgument for unknown ids.
double default_tolerance(std::string_view identity_id);

/// Every identity id understood by run_suite, in canonical order.
std::span<const std::string_view> known_identities();

/// The ids behind the suite name "all".
std::span<const std::string_view> all_suite();

/// ||lhs - rhs|| / ||lhs|| in the sup norm (absolute when lhs vanishes).
template <typename A, typename B>
double relative_residual(const Eigen::MatrixBase<A>& lhs,
                         const Eigen::MatrixBase<B>& rhs) {
  const double scale = sup_norm(lhs);
  const double diff = sup_norm(lhs - rhs);
  return scale > 0.0 ? diff / scale : diff;
}

double relative_residual(Complex lhs, Complex rhs);

/// Optional entry perturbation for the YBE sensitivity guard: R12 entry
/// (row, col) is multiplied by (1 + epsilon).
struct Perturbation {
  double epsilon = 0.0;
  int row = 1;
  int col = 1;
};

CheckResult check_ybe(rmat::RKind kind, SpectralPoint b1, SpectralPoint b2,
                      SpectralPoint b3, const DeformationParams& p,
                      std::optional<Perturbation> perturbation = std::nullopt,
                      const specfun::QuadratureSettings& q = {});

/// R_V6(b) = F21(-b) R_DY(b) F12(b)^{-1} at b = b1 - b2. The variant with
/// F12(-b) on the left goes into diagnostics.
CheckResult check_twist_relation(SpectralPoint b1, SpectralPoint b2,
                                 const DeformationParams& p,
                                 const specfun::QuadratureSettings& q = {});

/// F(b - i pi r) = D^{-1} F(b) D R_DY(b - i pi r).
CheckResult check_difference_equation(SpectralPoint beta, const DeformationParams& p,
                                      const specfun::QuadratureSettings& q = {});

/// F(b - 2 i pi r) = F(b) D R_DY(b - i pi r) D^{-1} R_DY(b - 2 i pi r).
CheckResult check_difference_equation_twice(SpectralPoint beta,
                                            const DeformationParams& p,
                                            const specfun::QuadratureSettings& q = {});

/// R_V8 = K21 R_V6 K12^{-1} with K = V (x) V. The scalar prefactor is
/// shared by both sides, so by default the unnormalized matrices are compared.
CheckResult check_gauge_v8(SpectralPoint beta, const DeformationParams& p,
                           bool normalized = false,
                           const specfun::QuadratureSettings& q = {});

/// R_F(b1 - b2) = K6_21(b2, b1) R_V6(b1 - b2) K6_12(b1, b2)^{-1}.
CheckResult check_gauge_f(SpectralPoint b1, SpectralPoint b2,
                          const DeformationParams& p, bool normalized = false,
                          const specfun::QuadratureSettings& q = {});

/// R(b) P R(-b) P = coth^2(b/2) Id for normalized matrices, = Id for the
/// unnormalized M-part.
CheckResult check_unitarity(rmat::RKind kind, SpectralPoint beta,
                            const DeformationParams& p, bool normalized = true,
                            const specfun::QuadratureSettings& q = {});

/// rho_r(b) = rho_F(-b) rho(b) / rho_F(b).
CheckResult check_rho_factorization(SpectralPoint beta, const DeformationParams& p,
                                    const specfun::QuadratureSettings& q = {});

// Special-function functional equations at argument x and periods w.
CheckResult check_gamma1_ladder(Complex x, double omega, double guard = kDefaultPoleGuard);
CheckResult check_gamma2_ladder(Complex x, const specfun::Periods& w,
                                const specfun::QuadratureSettings& q = {},
                                double guard = kDefaultPoleGuard);
CheckResult check_s2_reflection(Complex x, const specfun::Periods& w,
                                const specfun::QuadratureSettings& q = {},
                                double guard = kDefaultPoleGuard);
/// S2(x + w_k) = S2(x) / (2 sin(pi x / w_other)); which = 1 or 2.
CheckResult check_s2_shift(Complex x, const specfun::Periods& w, int which,
                           const specfun::QuadratureSettings& q = {},
                           double guard = kDefaultPoleGuard);
CheckResult check_s2_symmetry(Complex x, const specfun::Periods& w,
                              const specfun::QuadratureSettings& q = {},
                              double guard = kDefaultPoleGuard);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

struct SampleSpec {
  int count = 20;
  Interval beta_re{-4.0, 4.0};
  Interval beta_im{-1.0, 1.0};
  Interval r{3.0, 50.0};
  std::uint64_t seed = 1;
  /// Half-width of the excluded region around each pole point.
  double exclusion = 0.05;

  void validate() const;
};

/// One deterministic draw: three rapidities and a deformation scale.
struct Sample {
  int index = 0;
  SpectralPoint b1, b2, b3;
  double r = 0.0;
};

Sample draw_sample(const SampleSpec& spec, int index);

/// Runs one identity on one sample. Errors become skip records.
CheckResult run_identity(std::string_view identity_id, const Sample& sample,
                         const SampleSpec& spec,
                         const std::map<std::string, double>& tolerances = {},
                         const specfun::QuadratureSettings& q = {},
                         double guard = kDefaultPoleGuard);

struct SuiteOptions {
  std::map<std::string, double> tolerances;
  specfun::QuadratureSettings quadrature;
  double guard = kDefaultPoleGuard;
  /// 0 picks the hardware concurrency.
  unsigned threads = 0;
};

/// Expands "all" and validates ids; throws InvalidArgument on unknown ones.
std::vector<std::string> expand_identities(std::span<const std::string> ids);

/// Results ordered by sample index, then by the given identity order,
/// independent of the thread count.
std::vector<CheckResult> run_suite(const SampleSpec& spec,
                                   std::span<const std::string> identities,
                                   const SuiteOptions& options = {});

}  // namespace dytwist::verify
