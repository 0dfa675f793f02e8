#include <Eigen/LU>
#include <gtest/gtest.h>

#include "dytwist/errors.hpp"
#include "dytwist/rmat.hpp"

namespace dytwist::rmat {
namespace {

DeformationParams with_r(double r) {
  DeformationParams p;
  p.r = r;
  return p;
}

TEST(MCalculus, ProductInverseAndRoundTrip) {
  const MDescriptor a{{1.3, -0.2}, {0.4, 0.9}};
  const MDescriptor b{{-0.7, 0.1}, {2.0, 0.5}};
  EXPECT_LT(sup_norm(build_M(a) * build_M(b) - build_M(a * b)), 1e-15);
  EXPECT_LT(sup_norm(build_M(a) * build_M(b) - build_M(b) * build_M(a)), 1e-15);
  EXPECT_LT(sup_norm(build_M(a).inverse() - build_M(a.inverse())), 1e-14);
  const MDescriptor back = descriptor_of(build_M(a));
  EXPECT_LT(std::abs(back.b_plus - a.b_plus) + std::abs(back.b_minus - a.b_minus), 1e-15);
}

TEST(MCalculus, FlipInvarianceAndTau) {
  const MDescriptor a{{1.3, -0.2}, {0.4, 0.9}};
  const CMatrix4 p = flip();
  EXPECT_LT(sup_norm(p * build_M(a) * p - build_M(a)), 1e-16);
  EXPECT_LT(sup_norm(tau(build_M(a)) - build_M(a.swapped())), 1e-15);
  EXPECT_LT(sup_norm(tau(tau(build_M(a))) - build_M(a)), 1e-15);
}

TEST(Kinds, ParseAndName) {
  for (RKind k : kAllKinds) EXPECT_EQ(parse_kind(to_string(k)), k);
  EXPECT_EQ(parse_kind("V8"), RKind::kV8);
  EXPECT_FALSE(parse_kind("xyz").has_value());
}

TEST(RMatrix, SpecialPoints) {
  const auto p = with_r(5.0);
  // x = 1 kills the (b-) parameter of the DY matrix.
  const CMatrix4 dy = r_matrix(RKind::kDY, SpectralPoint(-kI * kPi), p, false);
  EXPECT_LT(sup_norm(dy - build_M({1.0, 0.0})), 1e-15);
  const CMatrix4 v6 = r_matrix(RKind::kV6, SpectralPoint(0.0), p, false);
  EXPECT_LT(sup_norm(v6 - build_M({1.0, -1.0})), 1e-15);
}

TEST(RMatrix, V6DescriptorFormsAgree) {
  for (double r : {3.0, 7.5, 40.0}) {
    for (Complex b : {Complex(0.9, 0.1), Complex(-2.2, 0.6), Complex(3.1, -0.8)}) {
      const auto t = v6_descriptor_trig(SpectralPoint(b), with_r(r));
      const auto g = v6_descriptor_gamma1(SpectralPoint(b), with_r(r));
      EXPECT_LT(std::abs(t.b_plus - g.b_plus), 1e-13 * std::abs(t.b_plus));
      EXPECT_LT(std::abs(t.b_minus - g.b_minus), 1e-13 * std::abs(t.b_minus));
    }
  }
}

TEST(RMatrix, V8Structure) {
  const CMatrix4 m = r_matrix(RKind::kV8, SpectralPoint(1.0), with_r(5.0), true);
  EXPECT_EQ(m(0, 3), m(3, 0));
  EXPECT_EQ(m(0, 0), m(3, 3));
  const CMatrix4 k = gauge_K();
  EXPECT_LT(sup_norm(k * k.transpose() - CMatrix4::Identity()), 1e-15);
  const CMatrix4 v6 = r_matrix(RKind::kV6, SpectralPoint(1.0), with_r(5.0), true);
  EXPECT_LT(sup_norm(k * v6 * k.transpose() - m), 1e-14);
}

TEST(RMatrix, FIsTheGaugedV6) {
  const auto p = with_r(6.0);
  const SpectralPoint b1(1.3), b2(0.4);
  const CMatrix4 k = gauge_K6(b1, b2, p);
  const CMatrix4 expect = k * r_matrix(RKind::kV6, b1 - b2, p, false) * k.inverse();
  EXPECT_LT(sup_norm(r_matrix(RKind::kF, b1 - b2, p, false) - expect), 1e-14);
}

TEST(RMatrix, NormalizationMatchesPrefactor) {
  const auto p = with_r(5.0);
  const SpectralPoint b({0.6, 0.2});
  for (RKind k : kAllKinds) {
    const CMatrix4 full = r_matrix(k, b, p, true);
    const CMatrix4 bare = r_matrix(k, b, p, false);
    EXPECT_LT(sup_norm(full - normalization(k, b, p) * bare), 1e-14 * sup_norm(full));
  }
}

TEST(RMatrix, PolesAreRefused) {
  const auto p = with_r(5.0);
  // sin((pi + i beta) / r) vanishes at beta = i pi.
  EXPECT_THROW(r_matrix(RKind::kV6, SpectralPoint(kI * kPi), p, false), PoleProximity);
  EXPECT_THROW(r_matrix(RKind::kDY, SpectralPoint(kI * kPi), p, false), PoleProximity);
  EXPECT_THROW(r_matrix(RKind::kDY, SpectralPoint(0.0), p, true), PoleProximity);
}

TEST(Twist, ClosedFormTendsToIdentity) {
  const SpectralPoint b(0.8);
  const double d16 = sup_norm(twist_F_closed(b, with_r(16.0)) - CMatrix4::Identity());
  const double d1e4 = sup_norm(twist_F_closed(b, with_r(1e4)) - CMatrix4::Identity());
  EXPECT_LT(d1e4, 1e-3);
  EXPECT_LT(d1e4, d16 / 20.0);
}

TEST(Twist, ReferenceDistances) {
  // sup ||F - Id|| at beta = 1.
  const std::pair<double, double> ref[] = {
      {16.0, 0.071063}, {32.0, 0.046173}, {64.0, 0.028378}};
  for (auto [r, d] : ref) {
    EXPECT_NEAR(sup_norm(twist_F_closed(SpectralPoint(1.0), with_r(r)) - CMatrix4::Identity()),
                d, 2e-6);
  }
}

TEST(Embeddings, ActOnTheRightLegs) {
  CMatrix2 a, b;
  a << Complex(1, 2), Complex(0.5, 0), Complex(-1, 0), Complex(0, 3);
  b << Complex(2, 0), Complex(0, -1), Complex(0.3, 0.3), Complex(1, 0);
  const CMatrix2 id = CMatrix2::Identity();
  CMatrix8 expect13;
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      const int i1 = i >> 2, i2 = (i >> 1) & 1, i3 = i & 1;
      const int j1 = j >> 2, j2 = (j >> 1) & 1, j3 = j & 1;
      expect13(i, j) = a(i1, j1) * id(i2, j2) * b(i3, j3);
    }
  }
  EXPECT_LT(sup_norm(embed13(kron(a, b)) - expect13), 1e-15);
  EXPECT_LT(sup_norm(embed12(kron(a, b)) * embed23(kron(id, id)) - embed12(kron(a, b))), 1e-15);
}

}  // namespace
}  // namespace dytwist::rmat
