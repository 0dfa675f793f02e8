#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <random>
#include <thread>

#include <fmt/core.h>

#include "dytwist/errors.hpp"
#include "dytwist/verify.hpp"

namespace dytwist::verify {
namespace {

struct IdentityInfo {
  std::string_view id;
  double tolerance;
};

constexpr std::array kIdentities{
    IdentityInfo{"ybe:dy", 1e-9},
    IdentityInfo{"ybe:v6", 1e-9},
    IdentityInfo{"ybe:v8", 1e-9},
    IdentityInfo{"ybe:f", 1e-9},
    IdentityInfo{"twist", 1e-7},
    IdentityInfo{"difference", 1e-7},
    IdentityInfo{"gauge_v8", 1e-12},
    IdentityInfo{"gauge_f", 1e-12},
    IdentityInfo{"rho_factorization", 1e-7},
    IdentityInfo{"difference2", 1e-6},
    IdentityInfo{"unitarity:dy", 1e-11},
    IdentityInfo{"unitarity:v6", 1e-7},
    IdentityInfo{"unitarity:v8", 1e-7},
    IdentityInfo{"unitarity:f", 1e-7},
    IdentityInfo{"unitarity_m:dy", 1e-14},
    IdentityInfo{"unitarity_m:v6", 1e-14},
    IdentityInfo{"unitarity_m:v8", 1e-14},
    IdentityInfo{"unitarity_m:f", 1e-14},
    IdentityInfo{"gamma1_ladder", 1e-12},
    IdentityInfo{"gamma2_ladder", 1e-8},
    IdentityInfo{"s2_reflection", 1e-8},
    IdentityInfo{"s2_shift1", 1e-8},
    IdentityInfo{"s2_shift2", 1e-8},
    IdentityInfo{"s2_symmetry", 1e-8},
};

constexpr auto kIdList = [] {
  std::array<std::string_view, kIdentities.size()> ids{};
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = kIdentities[i].id;
  return ids;
}();

// The nine matrix identities make up the suite "all".
constexpr std::span<const std::string_view> kAllSuite{kIdList.data(), 9};

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

double unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double uniform(std::mt19937_64& rng, const Interval& iv) {
  return iv.lo + (iv.hi - iv.lo) * unit(rng);
}

// Distance from beta to the nearest point of i pi Z.
double pole_distance(Complex beta) {
  const double k = std::round(beta.imag() / kPi);
  return std::abs(beta - Complex(0.0, k * kPi));
}

std::optional<rmat::RKind> kind_suffix(std::string_view id, std::string_view prefix) {
  if (!id.starts_with(prefix)) return std::nullopt;
  return rmat::parse_kind(id.substr(prefix.size()));
}

double tolerance_for(std::string_view id, const std::map<std::string, double>& overrides) {
  if (auto it = overrides.find(std::string(id)); it != overrides.end()) return it->second;
  if (const auto colon = id.find(':'); colon != std::string_view::npos) {
    if (auto it = overrides.find(std::string(id.substr(0, colon))); it != overrides.end()) {
      return it->second;
    }
  }
  return default_tolerance(id);
}

// Argument of the special-function identities: the real part sweeps the
// fundamental strip (0, w1 + w2) and the imaginary part reuses Re b2.
Complex strip_argument(const Sample& s, const SampleSpec& spec, Complex width) {
  const double span = spec.beta_re.hi - spec.beta_re.lo;
  const double u =
      span > 0.0 ? (s.b1.beta().real() - spec.beta_re.lo) / span : 0.5;
  return (0.05 + 0.9 * u) * width + kI * s.b2.beta().real();
}

CheckResult dispatch(std::string_view id, const Sample& s, const SampleSpec& spec,
                     const specfun::QuadratureSettings& q, double guard) {
  DeformationParams p;
  p.r = s.r;
  p.guard = guard;
  const specfun::Periods w{2.0, s.r};
  if (auto k = kind_suffix(id, "ybe:")) return check_ybe(*k, s.b1, s.b2, s.b3, p, {}, q);
  if (auto k = kind_suffix(id, "unitarity:")) return check_unitarity(*k, s.b1, p, true, q);
  if (auto k = kind_suffix(id, "unitarity_m:")) return check_unitarity(*k, s.b1, p, false, q);
  if (id == "twist") return check_twist_relation(s.b1, s.b2, p, q);
  if (id == "difference") return check_difference_equation(s.b1, p, q);
  if (id == "difference2") return check_difference_equation_twice(s.b1, p, q);
  if (id == "gauge_v8") return check_gauge_v8(s.b1, p, false, q);
  if (id == "gauge_f") return check_gauge_f(s.b1, s.b2, p, false, q);
  if (id == "rho_factorization") return check_rho_factorization(s.b1, p, q);
  if (id == "gamma1_ladder") {
    return check_gamma1_ladder(strip_argument(s, spec, s.r), s.r, guard);
  }
  const Complex x = strip_argument(s, spec, w.omega1 + w.omega2);
  if (id == "gamma2_ladder") return check_gamma2_ladder(x, w, q, guard);
  if (id == "s2_reflection") return check_s2_reflection(x, w, q, guard);
  if (id == "s2_shift1") return check_s2_shift(x, w, 1, q, guard);
  if (id == "s2_shift2") return check_s2_shift(x, w, 2, q, guard);
  if (id == "s2_symmetry") return check_s2_symmetry(x, w, q, guard);
  throw InvalidArgument(fmt::format("unknown identity '{}'", id));
}

}  // namespace

double default_tolerance(std::string_view identity_id) {
  for (const auto& info : kIdentities) {
    if (info.id == identity_id) return info.tolerance;
  }
  throw InvalidArgument(fmt::format("unknown identity '{}'", identity_id));
}

std::span<const std::string_view> known_identities() { return kIdList; }

std::span<const std::string_view> all_suite() { return kAllSuite; }

void SampleSpec::validate() const {
  if (count < 1) throw InvalidArgument(fmt::format("sample count must be >= 1, got {}", count));
  for (const auto* iv : {&beta_re, &beta_im, &r}) {
    if (!std::isfinite(iv->lo) || !std::isfinite(iv->hi) || iv->lo > iv->hi) {
      throw InvalidArgument(fmt::format("bad interval [{}, {}]", iv->lo, iv->hi));
    }
  }
  if (!(r.lo > 0.0)) throw InvalidArgument("r range must be positive");
  if (!(exclusion >= 0.0)) throw InvalidArgument("exclusion must be >= 0");
}

Sample draw_sample(const SampleSpec& spec, int index) {
  std::mt19937_64 rng(splitmix64(spec.seed ^ splitmix64(static_cast<std::uint64_t>(index))));
  auto draw = [&] { return SpectralPoint(Complex(uniform(rng, spec.beta_re), uniform(rng, spec.beta_im))); };
  constexpr int kMaxAttempts = 10000;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    Sample s{index, draw(), draw(), draw(), uniform(rng, spec.r)};
    const std::array<Complex, 6> probes{s.b1.beta(), s.b2.beta(), s.b3.beta(),
                                        (s.b1 - s.b2).beta(), (s.b1 - s.b3).beta(),
                                        (s.b2 - s.b3).beta()};
    if (std::all_of(probes.begin(), probes.end(),
                    [&](Complex b) { return pole_distance(b) >= spec.exclusion; })) {
      return s;
    }
  }
  throw InvalidArgument("sampling region is covered by the pole exclusion strips");
}

CheckResult run_identity(std::string_view identity_id, const Sample& sample,
                         const SampleSpec& spec,
                         const std::map<std::string, double>& tolerances,
                         const specfun::QuadratureSettings& q, double guard) {
  const double tol = tolerance_for(identity_id, tolerances);
  CheckResult res;
  try {
    res = dispatch(identity_id, sample, spec, q, guard);
    res.tolerance = tol;
    res.status = res.residual <= tol ? Status::kPass : Status::kFail;
  } catch (const Error& e) {
    res.identity_id = std::string(identity_id);
    res.params.betas = {sample.b1.beta(), sample.b2.beta(), sample.b3.beta()};
    res.params.r = sample.r;
    res.residual = 0.0;
    res.tolerance = tol;
    res.status = Status::kSkip;
    res.diagnostics = fmt::format("{}: {}", to_string(e.code()), e.what());
  }
  res.params.seed = spec.seed;
  res.params.index = sample.index;
  if (std::isnan(res.residual)) {
    res.status = Status::kFail;
    res.diagnostics += res.diagnostics.empty() ? "residual is NaN" : "; residual is NaN";
  }
  return res;
}

std::vector<std::string> expand_identities(std::span<const std::string> ids) {
  std::vector<std::string> out;
  auto add = [&](std::string_view id) {
    if (std::find(out.begin(), out.end(), id) == out.end()) out.emplace_back(id);
  };
  for (const auto& id : ids) {
    if (id == "all") {
      for (auto a : kAllSuite) add(a);
    } else {
      (void)default_tolerance(id);  // rejects unknown ids
      add(id);
    }
  }
  if (out.empty()) throw InvalidArgument("no identities requested");
  return out;
}

std::vector<CheckResult> run_suite(const SampleSpec& spec,
                                   std::span<const std::string> identities,
                                   const SuiteOptions& options) {
  spec.validate();
  options.quadrature.validate();
  const auto ids = expand_identities(identities);

  std::vector<Sample> samples;
  samples.reserve(static_cast<std::size_t>(spec.count));
  for (int i = 0; i < spec.count; ++i) samples.push_back(draw_sample(spec, i));

  const std::size_t total = samples.size() * ids.size();
  std::vector<CheckResult> results(total);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t = next++; t < total; t = next++) {
      const auto& sample = samples[t / ids.size()];
      results[t] = run_identity(ids[t % ids.size()], sample, spec, options.tolerances,
                                options.quadrature, options.guard);
    }
  };

  unsigned threads = options.threads != 0 ? options.threads
                                          : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, total));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  return results;
}

}  // namespace dytwist::verify
