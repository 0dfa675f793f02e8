#include <Eigen/LU>
#include <gtest/gtest.h>

#include "dytwist/errors.hpp"
#include "dytwist/products.hpp"

namespace dytwist::products {
namespace {

DeformationParams with_r(double r) {
  DeformationParams p;
  p.r = r;
  return p;
}

TEST(RhoFProduct, ConvergesToClosedForm) {
  const SpectralPoint b({1.0, 0.3});
  const auto p = with_r(5.0);
  const Complex closed = specfun::log_rho_F(b, 5.0);
  const auto r12 = rho_F_product(b, p, 1 << 12);
  const auto r13 = rho_F_product(b, p, 1 << 13);
  const double e12 = std::abs(r12.extrapolated_log - closed);
  const double e13 = std::abs(r13.extrapolated_log - closed);
  EXPECT_LT(e12, 1e-3);
  EXPECT_GE(e12 / e13, 1.5);
  EXPECT_EQ(r12.n, 4096);
  EXPECT_EQ(r12.partial_log_doubled, r13.partial_log);
}

TEST(RhoFProduct, DivergenceSlope) {
  const auto p = with_r(5.0);
  const auto a = rho_F_product(SpectralPoint({1.0, 0.3}), p, 4096);
  const auto b = rho_F_product(SpectralPoint({-2.0, 0.1}), p, 4096);
  // Leading slope -1/(2r); the rapidity enters at O(1/N).
  EXPECT_NEAR(a.divergence_slope.real(), -0.1, 1e-4);
  EXPECT_GT(std::abs(a.divergence_slope), 0.05);
  EXPECT_GT(std::abs(b.divergence_slope), 0.05);
  EXPECT_NE(a.divergence_slope, b.divergence_slope);
}

TEST(RhoFProduct, RangesCombine) {
  const SpectralPoint b({0.7, -0.2});
  const auto p = with_r(4.0);
  const Complex whole = rho_F_log_partial(b, p, 1, 300);
  const Complex split = rho_F_log_partial(b, p, 1, 117) + rho_F_log_partial(b, p, 118, 300);
  EXPECT_LT(std::abs(whole - split), 1e-13);
  EXPECT_EQ(rho_F_log_partial(b, p, 5, 4), Complex(0.0, 0.0));
  EXPECT_THROW(rho_F_log_partial(b, p, 0, 4), InvalidArgument);
}

TEST(RhoFProduct, RejectsShortTruncation) {
  EXPECT_THROW(rho_F_product(SpectralPoint(1.0), with_r(5.0), 1), InvalidArgument);
}

TEST(TwistProduct, ConvergesToClosedDescriptor) {
  const SpectralPoint b(1.0);
  const auto p = with_r(6.0);
  const auto closed = rmat::twist_F_descriptor(b, p);
  const auto d12 = twist_F_product(b, p, 1 << 12).extrapolated_descriptor();
  const auto d13 = twist_F_product(b, p, 1 << 13).extrapolated_descriptor();
  const double e12 = std::max(std::abs(d12.b_plus - closed.b_plus),
                              std::abs(d12.b_minus - closed.b_minus));
  const double e13 = std::max(std::abs(d13.b_plus - closed.b_plus),
                              std::abs(d13.b_minus - closed.b_minus));
  EXPECT_LT(e12, 1e-3);
  EXPECT_GE(e12 / e13, 1.5);
  const auto run = twist_F_product(b, p, 1 << 12);
  EXPECT_LT(sup_norm(run.extrapolated_matrix - rmat::twist_F_closed(b, p)), 1e-3);
  EXPECT_NEAR(run.b_plus.divergence_slope.real(), 1.0 / 6.0, 1e-6);
}

TEST(TwistProduct, ParityPattern) {
  const SpectralPoint b({0.4, 0.3});
  const auto p = with_r(3.0);
  const CMatrix4 d = rmat::tau_conjugator();
  for (int n = 1; n <= 6; ++n) {
    const auto desc = twist_factor_descriptor(b, p, n);
    if (n % 2 != 0) {
      EXPECT_EQ(desc.b_minus, Complex(1.0, 0.0)) << n;
    } else {
      EXPECT_EQ(desc.b_plus, Complex(1.0, 0.0)) << n;
    }
    // Same factor from the matrix definition D^n R(b - i n pi r)^{-1} D^{-n}.
    CMatrix4 dn = CMatrix4::Identity();
    for (int k = 0; k < n; ++k) dn = dn * d;
    const SpectralPoint s(b.beta() - kI * (n * kPi * p.r));
    const CMatrix4 expect = dn * rmat::r_matrix(rmat::RKind::kDY, s, p, true).inverse() * dn.inverse();
    EXPECT_LT(sup_norm(twist_factor_matrix(b, p, n) - expect), 1e-13 * sup_norm(expect)) << n;
  }
}

TEST(TwistProduct, OrderDoesNotMatter) {
  const SpectralPoint b({1.1, -0.2});
  const auto p = with_r(4.0);
  CMatrix4 forward = CMatrix4::Identity();
  CMatrix4 backward = CMatrix4::Identity();
  for (int n = 1; n <= 40; ++n) forward = forward * twist_factor_matrix(b, p, n);
  for (int n = 40; n >= 1; --n) backward = backward * twist_factor_matrix(b, p, n);
  EXPECT_LT(sup_norm(forward - backward), 1e-13);
}

TEST(TwistProduct, NearIdentityForHugeR) {
  const auto run = twist_F_product(SpectralPoint(1.0), with_r(1e6), 2);
  EXPECT_LT(sup_norm(run.partial_matrix - CMatrix4::Identity()), 1e-4);
}

TEST(TwistProduct, TelescopedDifferenceEquation) {
  const auto p = with_r(5.0);
  const SpectralPoint b({0.9, 0.25});
  const CMatrix4 closed = rmat::twist_F_closed(b, p);
  for (int n = 0; n <= 8; ++n) {
    EXPECT_LT(sup_norm(twist_F_telescoped(b, p, n) - closed), 1e-6 * sup_norm(closed)) << n;
  }
}

TEST(Extrapolate, RemovesAnExactLogarithm) {
  // L(N) = c + a ln(N r) exactly: the extrapolation returns c.
  const Complex a{0.3, -0.1}, c{1.5, 0.2};
  const double r = 7.0;
  const int n = 100;
  const auto run = extrapolate(c + a * std::log(n * r), c + a * std::log(2.0 * n * r), n, r);
  EXPECT_LT(std::abs(run.divergence_slope - a), 1e-14);
  EXPECT_LT(std::abs(run.extrapolated_log - c), 1e-13);
}

}  // namespace
}  // namespace dytwist::products
