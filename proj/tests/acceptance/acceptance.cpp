// Acceptance gate: one PASS/FAIL line per criterion. With no argument all
// criteria run; with a number only that one. Exit status is nonzero if any
// selected criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/core.h>
#include <nlohmann/json.hpp>

#include "canonical_json.hpp"
#include "cli.hpp"
#include "dytwist/products.hpp"
#include "dytwist/verify.hpp"

namespace {

using namespace dytwist;
using Clock = std::chrono::steady_clock;

struct Verdict {
  bool pass;
  std::string detail;
};

struct SuiteStats {
  int total = 0;
  int passed = 0;
  double worst = 0.0;
  std::string worst_id;
};

SuiteStats run_ids(const std::vector<std::string>& ids, int count,
                   const std::map<std::string, double>& tol = {}) {
  verify::SampleSpec spec;
  spec.seed = 1;
  spec.count = count;
  verify::SuiteOptions opts;
  opts.tolerances = tol;
  SuiteStats s;
  for (const auto& r : verify::run_suite(spec, ids, opts)) {
    ++s.total;
    s.passed += r.pass();
    if (r.status == verify::Status::kSkip || r.residual >= s.worst) {
      s.worst = r.status == verify::Status::kSkip ? INFINITY : r.residual;
      s.worst_id = r.identity_id;
    }
  }
  return s;
}

std::string describe(const SuiteStats& s) {
  return fmt::format("{}/{} pass, worst residual {:.2e} ({})", s.passed, s.total, s.worst,
                     s.worst_id);
}

Verdict criterion1() {
  const auto t0 = Clock::now();
  const auto s = run_ids({"ybe:dy", "ybe:v6", "ybe:v8", "ybe:f"}, 50);
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  return {s.passed == s.total && s.total == 200 && secs < 60.0,
          fmt::format("{}, tol 1e-9, {:.2f} s (limit 60 s)", describe(s), secs)};
}

Verdict criterion2() {
  const auto s = run_ids({"twist"}, 20);
  return {s.passed == s.total && s.total == 20, describe(s) + ", tol 1e-7"};
}

Verdict criterion3() {
  const auto a = run_ids({"difference"}, 20);
  const auto b = run_ids({"difference2"}, 20);
  return {a.passed == a.total && b.passed == b.total && a.total == 20 && b.total == 20,
          fmt::format("single step {} (tol 1e-7); double step {} (tol 1e-6)", describe(a),
                      describe(b))};
}

Verdict criterion4() {
  const auto s = run_ids({"gauge_v8", "gauge_f"}, 20);
  return {s.passed == s.total && s.total == 40, describe(s) + ", tol 1e-12"};
}

Verdict criterion5() {
  const auto s = run_ids({"rho_factorization"}, 20);
  return {s.passed == s.total && s.total == 20, describe(s) + ", tol 1e-7"};
}

Verdict criterion6() {
  const auto g1 = run_ids({"gamma1_ladder"}, 20);
  const auto q = run_ids(
      {"gamma2_ladder", "s2_reflection", "s2_shift1", "s2_shift2", "s2_symmetry"}, 20);
  return {g1.passed == g1.total && q.passed == q.total && g1.total == 20 && q.total == 100,
          fmt::format("Gamma1 {} (tol 1e-12); quadrature-based {} (tol 1e-8)", describe(g1),
                      describe(q))};
}

Verdict criterion7() {
  // Independent confirmation of the scalar through the reflection formula:
  // rho(b) rho(-b) = -cot^2(pi x / 2) must equal coth^2(b / 2).
  double scalar_dev = 0.0;
  for (Complex b : {Complex(1.3, 0.2), Complex(-0.7, 0.5), Complex(2.9, -0.9)}) {
    const Complex x = kI * b / kPi;
    const Complex cot = std::cos(0.5 * kPi * x) / std::sin(0.5 * kPi * x);
    const Complex coth = 1.0 / std::tanh(0.5 * b);
    scalar_dev = std::max(scalar_dev, std::abs(-cot * cot - coth * coth) / std::abs(coth * coth));
  }
  const auto m = run_ids({"unitarity_m:dy", "unitarity_m:v6", "unitarity_m:v8", "unitarity_m:f"}, 20);
  const auto dy = run_ids({"unitarity:dy"}, 20);
  const auto rest = run_ids({"unitarity:v6", "unitarity:v8", "unitarity:f"}, 20);
  const bool ok = scalar_dev < 1e-13 && m.passed == m.total && dy.passed == dy.total &&
                  rest.passed == rest.total;
  return {ok, fmt::format("scalar check {:.1e}; M-part {} (tol 1e-14); DY {} (tol 1e-11); "
                          "V6/V8/F {} (tol 1e-7)",
                          scalar_dev, describe(m), describe(dy), describe(rest))};
}

Verdict criterion8() {
  DeformationParams p;
  p.r = 5.0;
  const SpectralPoint b({1.0, 0.3});
  const Complex closed = specfun::log_rho_F(b, p.r);
  const auto s12 = products::rho_F_product(b, p, 1 << 12);
  const auto s13 = products::rho_F_product(b, p, 1 << 13);
  const double e12 = std::abs(s12.extrapolated_log - closed);
  const double e13 = std::abs(s13.extrapolated_log - closed);

  DeformationParams q;
  q.r = 6.0;
  const SpectralPoint c(1.0);
  const auto cd = rmat::twist_F_descriptor(c, q);
  auto derr = [&](const products::TwistProductRun& run) {
    const auto d = run.extrapolated_descriptor();
    return std::max(std::abs(d.b_plus - cd.b_plus), std::abs(d.b_minus - cd.b_minus));
  };
  const auto t12 = products::twist_F_product(c, q, 1 << 12);
  const auto t13 = products::twist_F_product(c, q, 1 << 13);
  const double f12 = derr(t12);
  const double f13 = derr(t13);
  const double slope = std::abs(s12.divergence_slope);
  const double fslope = std::abs(t12.b_plus.divergence_slope);
  const bool ok = e12 < 1e-3 && f12 < 1e-3 && e12 / e13 >= 1.5 && f12 / f13 >= 1.5 &&
                  slope > 1e-3 && fslope > 1e-3;
  return {ok, fmt::format("rho_F: err {:.2e} at N=4096, ratio {:.2f}, slope {:.4f}; "
                          "F: err {:.2e}, ratio {:.2f}, slope {:.4f}",
                          e12, e12 / e13, slope, f12, f12 / f13, fslope)};
}

Verdict criterion9() {
  std::ostringstream out, err;
  const int code = cli::run({"dytwist", "limits", "--ladder", "16:512", "--beta", "1"}, out, err);
  if (code != cli::kExitPass) return {false, "limits command failed: " + err.str()};
  const auto j = nlohmann::json::parse(out.str());
  const double of = j["fit"]["f_minus_identity_order"].get<double>();
  const double ov = j["fit"]["v6_minus_dy_order"].get<double>();
  const bool ok = std::abs(of - 1.0) <= 0.2 && std::abs(ov - 1.0) <= 0.2;
  return {ok, fmt::format("fitted order ||F - Id|| {:.3f}, ||R_V6 - R_DY|| {:.3f} (want 1 +- 0.2)",
                          of, ov)};
}

std::string strip_wall_time(const std::string& s) {
  std::string out;
  std::istringstream in(s);
  std::string line;
  while (std::getline(in, line)) {
    if (line.find("\"wall_time\"") == std::string::npos) out += line + "\n";
  }
  return out;
}

Verdict criterion10() {
  const std::vector<std::string> args{"dytwist", "check", "--suite", "all",
                                      "--seed",  "1",     "--count", "20"};
  std::ostringstream a, b, err;
  const int ca = cli::run(args, a, err);
  const int cb = cli::run(args, b, err);
  const bool same = strip_wall_time(a.str()) == strip_wall_time(b.str());
  const bool round_trip = cli::canonical_dump(nlohmann::json::parse(a.str())) == a.str();
  return {ca == 0 && cb == 0 && same && round_trip,
          fmt::format("{} bytes, identical modulo wall_time: {}, canonical round trip: {}",
                      a.str().size(), same ? "yes" : "no", round_trip ? "yes" : "no")};
}

Verdict criterion11() {
  DeformationParams p;
  p.r = 5.0;
  double weakest = INFINITY;
  for (rmat::RKind k : rmat::kAllKinds) {
    const auto r = verify::check_ybe(k, SpectralPoint({1.2, 0.1}), SpectralPoint(0.4),
                                     SpectralPoint({-0.7, -0.3}), p,
                                     verify::Perturbation{1e-6, 1, 1});
    weakest = std::min(weakest, r.residual);
  }
  return {weakest > 1e-7, fmt::format("smallest perturbed YBE residual {:.2e} (want > 1e-7)", weakest)};
}

const std::vector<std::pair<std::string, std::function<Verdict()>>> kCriteria{
    {"YBE suite, four kinds", criterion1},
    {"twist relation", criterion2},
    {"difference equation", criterion3},
    {"gauge identities", criterion4},
    {"scalar factorization", criterion5},
    {"special-function functional equations", criterion6},
    {"unitarity up to scalar", criterion7},
    {"infinite products", criterion8},
    {"degeneration order", criterion9},
    {"determinism", criterion10},
    {"sensitivity guard", criterion11},
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  if (argc > 1) only = std::atoi(argv[1]);
  if (only < 0 || only > static_cast<int>(kCriteria.size())) {
    std::fprintf(stderr, "usage: %s [criterion 1..%zu]\n", argv[0], kCriteria.size());
    return 2;
  }
  int failures = 0;
  for (std::size_t i = 0; i < kCriteria.size(); ++i) {
    if (only != 0 && static_cast<int>(i + 1) != only) continue;
    Verdict v;
    try {
      v = kCriteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failures += !v.pass;
    std::printf("%s criterion %zu (%s): %s\n", v.pass ? "PASS" : "FAIL", i + 1,
                kCriteria[i].first.c_str(), v.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
