#include <gtest/gtest.h>

#include "dytwist/errors.hpp"
#include "dytwist/verify.hpp"

namespace dytwist::verify {
namespace {

using rmat::RKind;

DeformationParams with_r(double r) {
  DeformationParams p;
  p.r = r;
  return p;
}

TEST(Ybe, KnownTriples) {
  auto r = check_ybe(RKind::kDY, SpectralPoint(1.2), SpectralPoint(0.4), SpectralPoint(-0.7),
                     with_r(5.0));
  EXPECT_LT(r.residual, 1e-10);
  EXPECT_TRUE(r.pass());
  EXPECT_EQ(r.identity_id, "ybe:dy");
  r = check_ybe(RKind::kV8, SpectralPoint(1.0), SpectralPoint(0.2), SpectralPoint(-0.5),
                with_r(7.0));
  EXPECT_LT(r.residual, 1e-9);
}

TEST(Ybe, CoincidentRapiditiesHitThePole) {
  for (RKind k : rmat::kAllKinds) {
    EXPECT_THROW(check_ybe(k, SpectralPoint(0.5), SpectralPoint(0.5), SpectralPoint(-0.3),
                           with_r(5.0)),
                 PoleProximity);
  }
}

TEST(Ybe, CentralChargeIsNotRepresentable) {
  auto p = with_r(5.0);
  p.c = 0.5;
  EXPECT_THROW(check_ybe(RKind::kV6, SpectralPoint(1.2), SpectralPoint(0.4),
                         SpectralPoint(-0.7), p),
               NotRepresentable);
}

TEST(Ybe, PerturbationIsDetected) {
  for (RKind k : rmat::kAllKinds) {
    const auto r = check_ybe(k, SpectralPoint({1.2, 0.1}), SpectralPoint(0.4),
                             SpectralPoint({-0.7, -0.3}), with_r(5.0), Perturbation{1e-6, 1, 1});
    EXPECT_GE(r.residual, 1e-7) << rmat::to_string(k);
    EXPECT_FALSE(r.pass());
  }
}

TEST(Ybe, RerunIsBitwiseIdentical) {
  auto run = [] {
    return check_ybe(RKind::kF, SpectralPoint({0.3, 0.2}), SpectralPoint(-1.0),
                     SpectralPoint(2.0), with_r(9.0))
        .residual;
  };
  EXPECT_EQ(run(), run());
}

TEST(Twist, RelationHolds) {
  const auto r = check_twist_relation(SpectralPoint(1.1), SpectralPoint(0.3), with_r(6.0));
  EXPECT_LT(r.residual, 1e-7);
  EXPECT_NE(r.diagnostics.find("unflipped"), std::string::npos);
}

TEST(Twist, LargeRMakesV6AndDYClose) {
  const auto p = with_r(1e4);
  const SpectralPoint b(0.8);
  const CMatrix4 v6 = rmat::r_matrix(RKind::kV6, b, p, true);
  const CMatrix4 dy = rmat::r_matrix(RKind::kDY, b, p, true);
  EXPECT_LT(relative_residual(dy, v6), 1e-3);
}

TEST(Difference, SingleAndDoubleStep) {
  EXPECT_LT(check_difference_equation(SpectralPoint({1.4, 0.2}), with_r(5.0)).residual, 1e-7);
  EXPECT_LT(check_difference_equation_twice(SpectralPoint({1.4, 0.2}), with_r(5.0)).residual,
            1e-6);
}

TEST(Difference, LargeRBothSidesNearRDY) {
  // F is within a few 1e-3 of Id at r = 1e3 (its distance decays like ln r / r).
  const auto p = with_r(1e3);
  const SpectralPoint b({1.4, 0.2});
  const SpectralPoint s(b.beta() - kI * kPi * p.r);
  const CMatrix4 rdy = rmat::r_matrix(RKind::kDY, s, p, true);
  EXPECT_LT(sup_norm(rmat::twist_F_closed(s, p) - rdy), 5e-3);
  EXPECT_LT(sup_norm(rmat::tau(rmat::twist_F_closed(b, p)) * rdy - rdy), 5e-3);
}

TEST(Gauge, V8) {
  EXPECT_LT(check_gauge_v8(SpectralPoint(0.9), with_r(4.0)).residual, 1e-12);
  EXPECT_LT(check_gauge_v8(SpectralPoint(0.0), with_r(4.0)).residual, 1e-14);
  EXPECT_LT(check_gauge_v8(SpectralPoint(0.9), with_r(4.0), true).residual, 1e-12);
}

TEST(Gauge, F) {
  EXPECT_LT(check_gauge_f(SpectralPoint(1.3), SpectralPoint(0.4), with_r(6.0)).residual, 1e-12);
  EXPECT_LT(check_gauge_f(SpectralPoint(0.4), SpectralPoint(0.4), with_r(6.0)).residual, 1e-14);
  EXPECT_THROW(check_gauge_f(SpectralPoint(0.4), SpectralPoint(0.4), with_r(6.0), true),
               PoleProximity);
  const auto p = with_r(1e3);
  const SpectralPoint b(0.9);
  EXPECT_LT(sup_norm(rmat::r_matrix(RKind::kF, b, p, false) -
                     rmat::r_matrix(RKind::kV6, b, p, false)),
            1e-3);
}

TEST(Unitarity, Scalars) {
  EXPECT_LT(check_unitarity(RKind::kDY, SpectralPoint({1.3, 0.2}), with_r(5.0)).residual, 1e-11);
  EXPECT_LT(check_unitarity(RKind::kV6, SpectralPoint(0.6), with_r(5.0)).residual, 1e-7);
  for (RKind k : rmat::kAllKinds) {
    const auto r = check_unitarity(k, SpectralPoint({0.6, -0.4}), with_r(5.0), false);
    EXPECT_LT(r.residual, 1e-14) << rmat::to_string(k);
    EXPECT_EQ(r.identity_id.rfind("unitarity_m:", 0), 0u);
  }
}

TEST(RhoFactorization, BothSigns) {
  EXPECT_LT(check_rho_factorization(SpectralPoint({0.8, 0.1}), with_r(7.0)).residual, 1e-7);
  EXPECT_LT(check_rho_factorization(SpectralPoint({-0.8, -0.1}), with_r(7.0)).residual, 1e-7);
}

TEST(RhoFactorization, LargeRMagnitudes) {
  const SpectralPoint b({0.8, 0.1});
  EXPECT_LT(std::abs(specfun::rho_r(b, 1e3) - specfun::rho_dy(b)), 1e-5);
  EXPECT_LT(std::abs(specfun::rho_F(b, 1e3) - 1.0), 5e-3);
  EXPECT_LT(std::abs(specfun::rho_F(-b, 1e3) - 1.0), 5e-3);
}

TEST(SpecialFunctions, Identities) {
  const specfun::Periods w{2.0, 7.0};
  const Complex x{1.9, 0.8};
  EXPECT_LT(check_gamma1_ladder(x, 7.0).residual, 1e-12);
  EXPECT_LT(check_gamma2_ladder(x, w).residual, 1e-8);
  EXPECT_LT(check_s2_reflection(x, w).residual, 1e-8);
  EXPECT_LT(check_s2_shift(x, w, 1).residual, 1e-8);
  EXPECT_LT(check_s2_shift(x, w, 2).residual, 1e-8);
  EXPECT_LT(check_s2_symmetry(x, w).residual, 1e-8);
  EXPECT_THROW(check_s2_shift(x, w, 3), InvalidArgument);
}

TEST(Tolerances, Table) {
  EXPECT_EQ(default_tolerance("ybe:v6"), 1e-9);
  EXPECT_EQ(default_tolerance("gauge_f"), 1e-12);
  EXPECT_EQ(default_tolerance("unitarity:dy"), 1e-11);
  EXPECT_EQ(default_tolerance("unitarity_m:f"), 1e-14);
  EXPECT_THROW(default_tolerance("nope"), InvalidArgument);
  EXPECT_EQ(all_suite().size(), 9u);
}

TEST(Suite, FiftyDYSamplesPass) {
  SampleSpec spec;
  spec.seed = 1;
  spec.count = 50;
  const std::vector<std::string> ids{"ybe:dy"};
  const auto res = run_suite(spec, ids);
  ASSERT_EQ(res.size(), 50u);
  for (const auto& r : res) {
    EXPECT_TRUE(r.pass()) << r.residual << " " << r.diagnostics;
    EXPECT_EQ(r.tolerance, 1e-9);
  }
}

TEST(Suite, RejectsBadSpecs) {
  SampleSpec spec;
  spec.count = 0;
  const std::vector<std::string> ids{"ybe:dy"};
  EXPECT_THROW(run_suite(spec, ids), InvalidArgument);
  spec.count = 3;
  const std::vector<std::string> bad{"ybe:xx"};
  EXPECT_THROW(run_suite(spec, bad), InvalidArgument);
  spec.r = {-1.0, 2.0};
  EXPECT_THROW(run_suite(spec, ids), InvalidArgument);
}

TEST(Suite, DeterministicAndThreadIndependent) {
  SampleSpec spec;
  spec.seed = 42;
  spec.count = 6;
  const std::vector<std::string> ids{"all", "unitarity:v8"};
  SuiteOptions one;
  one.threads = 1;
  SuiteOptions four;
  four.threads = 4;
  const auto a = run_suite(spec, ids, one);
  const auto b = run_suite(spec, ids, four);
  const auto c = run_suite(spec, ids, one);
  ASSERT_EQ(a.size(), 6u * 10u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].identity_id, b[i].identity_id);
    EXPECT_EQ(a[i].residual, b[i].residual);
    EXPECT_EQ(a[i].residual, c[i].residual);
    EXPECT_EQ(a[i].params.index, static_cast<int>(i / 10));
  }
}

TEST(Suite, ToleranceOverrides) {
  SampleSpec spec;
  spec.count = 2;
  SuiteOptions opts;
  opts.tolerances["ybe"] = 1e-30;
  opts.tolerances["ybe:dy"] = 1e-3;
  const std::vector<std::string> ids{"ybe:dy", "ybe:v6"};
  const auto res = run_suite(spec, ids, opts);
  EXPECT_EQ(res[0].tolerance, 1e-3);
  EXPECT_EQ(res[1].tolerance, 1e-30);
  EXPECT_EQ(res[1].status, Status::kFail);
}

TEST(Suite, SamplesAvoidPoles) {
  SampleSpec spec;
  spec.seed = 7;
  for (int i = 0; i < 200; ++i) {
    const Sample s = draw_sample(spec, i);
    for (Complex b : {s.b1.beta(), s.b2.beta(), (s.b1 - s.b2).beta(), (s.b1 - s.b3).beta(),
                      (s.b2 - s.b3).beta()}) {
      EXPECT_GE(std::abs(b), 0.05);
    }
    EXPECT_GE(s.r, 3.0);
    EXPECT_LE(s.r, 50.0);
  }
  // The draw for an index does not depend on how many samples are requested.
  EXPECT_EQ(draw_sample(spec, 17).b1, draw_sample(spec, 17).b1);
}

TEST(Suite, PoleBecomesSkip) {
  SampleSpec spec;
  Sample s{0, SpectralPoint(0.3), SpectralPoint(0.3), SpectralPoint(-1.0), 5.0};
  const auto r = run_identity("ybe:v6", s, spec);
  EXPECT_EQ(r.status, Status::kSkip);
  EXPECT_NE(r.diagnostics.find("Pole"), std::string::npos);
}

}  // namespace
}  // namespace dytwist::verify
