#include "dytwist/rmat.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include <fmt/core.h>

#include "dytwist/errors.hpp"

namespace dytwist::rmat {
namespace {

void require_away(Complex value, double guard, std::string_view what,
                  SpectralPoint beta) {
  if (std::abs(value) < guard) {
    throw PoleProximity(fmt::format("{} vanishes at beta = ({}, {})", what,
                                    beta.beta().real(), beta.beta().imag()));
  }
}

CMatrix8 permutation23() {
  CMatrix8 p = CMatrix8::Zero();
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c) p(4 * a + 2 * c + b, 4 * a + 2 * b + c) = 1.0;
  return p;
}

}  // namespace

std::string_view to_string(RKind kind) noexcept {
  switch (kind) {
    case RKind::kDY: return "dy";
    case RKind::kV6: return "v6";
    case RKind::kV8: return "v8";
    case RKind::kF: return "f";
  }
  return "?";
}

std::optional<RKind> parse_kind(std::string_view name) noexcept {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  for (RKind k : kAllKinds) {
    if (lower == to_string(k)) return k;
  }
  return std::nullopt;
}

CMatrix4 build_M(const MDescriptor& d) {
  CMatrix4 m = CMatrix4::Zero();
  const Complex even = 0.5 * (d.b_plus + d.b_minus);
  const Complex odd = 0.5 * (d.b_plus - d.b_minus);
  m(0, 0) = 1.0;
  m(1, 1) = even;
  m(1, 2) = odd;
  m(2, 1) = odd;
  m(2, 2) = even;
  m(3, 3) = 1.0;
  return m;
}

MDescriptor descriptor_of(const CMatrix4& m) {
  return {m(1, 1) + m(1, 2), m(1, 1) - m(1, 2)};
}

CMatrix4 flip() {
  CMatrix4 p = CMatrix4::Zero();
  p(0, 0) = 1.0;
  p(1, 2) = 1.0;
  p(2, 1) = 1.0;
  p(3, 3) = 1.0;
  return p;
}

CMatrix4 tau_conjugator() {
  CMatrix4 d = CMatrix4::Zero();
  d(0, 0) = kI;
  d(1, 1) = kI;
  d(2, 2) = -kI;
  d(3, 3) = -kI;
  return d;
}

CMatrix4 tau(const CMatrix4& m) {
  // D is diagonal with D^{-1} = conj(D), so conjugation scales entries.
  const CMatrix4 d = tau_conjugator();
  CMatrix4 out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out(i, j) = d(i, i) * m(i, j) * std::conj(d(j, j));
  return out;
}

CMatrix4 kron(const CMatrix2& a, const CMatrix2& b) {
  CMatrix4 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

Complex normalization(RKind kind, SpectralPoint beta, const DeformationParams& p,
                      const specfun::QuadratureSettings& q) {
  if (kind == RKind::kDY) return specfun::rho_dy(beta, p.guard);
  return specfun::rho_r(beta, p.r, q, p.guard);
}

MDescriptor dy_descriptor(SpectralPoint beta, const DeformationParams& p) {
  const Complex ib = kI * beta.beta();
  require_away((ib + kPi) / kPi, p.guard, "i beta + pi", beta);
  return {1.0, (ib - kPi) / (ib + kPi)};
}

MDescriptor v6_descriptor_trig(SpectralPoint beta, const DeformationParams& p) {
  const Complex ib = kI * beta.beta();
  const Complex lo = (ib - kPi) / (2.0 * p.r);
  const Complex hi = (ib + kPi) / (2.0 * p.r);
  require_away(std::cos(hi), p.guard, "cos((pi + i beta)/2r)", beta);
  require_away(std::sin(hi), p.guard, "sin((pi + i beta)/2r)", beta);
  return {std::cos(lo) / std::cos(hi), std::sin(lo) / std::sin(hi)};
}

MDescriptor v6_descriptor_gamma1(SpectralPoint beta, const DeformationParams& p) {
  using specfun::gamma1_ratio;
  const Complex x = beta.x();
  const double r = p.r;
  const double w = 2.0 * r;
  const Complex plus = gamma1_ratio(r + x + 1.0, r + x - 1.0, w, p.guard) *
                       gamma1_ratio(r - x - 1.0, r - x + 1.0, w, p.guard);
  const Complex minus = gamma1_ratio(x + 1.0, x - 1.0, w, p.guard) *
                        gamma1_ratio(w - x - 1.0, w - x + 1.0, w, p.guard);
  return {plus, minus};
}

CMatrix4 r_matrix(RKind kind, SpectralPoint beta, const DeformationParams& p,
                  bool normalized, const specfun::QuadratureSettings& q) {
  p.validate();
  const Complex ib = kI * beta.beta();
  const double r = p.r;
  CMatrix4 m = CMatrix4::Zero();
  switch (kind) {
    case RKind::kDY:
      m = build_M(dy_descriptor(beta, p));
      break;
    case RKind::kV6:
    case RKind::kF: {
      const Complex den = std::sin((kPi + ib) / r);
      require_away(den, p.guard, "sin((pi + i beta)/r)", beta);
      const Complex diag = std::sin(ib / r) / den;
      const Complex off = std::sin(kPi / r) / den;
      m(0, 0) = 1.0;
      m(3, 3) = 1.0;
      m(1, 1) = diag;
      m(2, 2) = diag;
      if (kind == RKind::kV6) {
        m(1, 2) = off;
        m(2, 1) = off;
      } else {
        m(1, 2) = std::exp(beta.beta() / r) * off;
        m(2, 1) = std::exp(-beta.beta() / r) * off;
      }
      break;
    }
    case RKind::kV8: {
      const Complex u = ib / (2.0 * r);
      const double e = kPi / (2.0 * r);
      const Complex w = (kPi + ib) / (2.0 * r);
      const Complex cw = std::cos(w);
      const Complex sw = std::sin(w);
      require_away(cw, p.guard, "cos((pi + i beta)/2r)", beta);
      require_away(sw, p.guard, "sin((pi + i beta)/2r)", beta);
      const Complex corner = std::cos(u) * std::cos(e) / cw;
      const Complex anti = -std::sin(u) * std::sin(e) / cw;
      const Complex diag = std::sin(u) * std::cos(e) / sw;
      const Complex off = std::cos(u) * std::sin(e) / sw;
      m(0, 0) = corner;
      m(3, 3) = corner;
      m(0, 3) = anti;
      m(3, 0) = anti;
      m(1, 1) = diag;
      m(2, 2) = diag;
      m(1, 2) = off;
      m(2, 1) = off;
      break;
    }
  }
  if (normalized) m *= normalization(kind, beta, p, q);
  return m;
}

CMatrix2 gauge_V() {
  const double s = 1.0 / std::sqrt(2.0);
  CMatrix2 v;
  v << s, s, -s, s;
  return v;
}

CMatrix4 gauge_K() { return kron(gauge_V(), gauge_V()); }

CMatrix2 gauge_Vprime(SpectralPoint beta, const DeformationParams& p) {
  const Complex e = std::exp(beta.beta() / (2.0 * p.r));
  CMatrix2 v = CMatrix2::Zero();
  v(0, 0) = e;
  v(1, 1) = 1.0 / e;
  return v;
}

CMatrix4 gauge_K6(SpectralPoint beta1, SpectralPoint beta2,
                  const DeformationParams& p) {
  return kron(gauge_Vprime(beta1, p), gauge_Vprime(beta2, p));
}

MDescriptor twist_F_descriptor(SpectralPoint beta, const DeformationParams& p) {
  using specfun::gamma1_ratio;
  const Complex x = beta.x();
  const double r = p.r;
  const double w = 2.0 * r;
  return {gamma1_ratio(x + r - 1.0, x + r + 1.0, w, p.guard),
          gamma1_ratio(x + w - 1.0, x + w + 1.0, w, p.guard)};
}

CMatrix4 twist_F_closed(SpectralPoint beta, const DeformationParams& p,
                        const specfun::QuadratureSettings& q) {
  p.validate();
  return specfun::rho_F(beta, p.r, q, p.guard) *
         build_M(twist_F_descriptor(beta, p));
}

CMatrix8 embed12(const CMatrix4& m) {
  CMatrix8 out = CMatrix8::Zero();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int c = 0; c < 2; ++c) out(2 * i + c, 2 * j + c) = m(i, j);
  return out;
}

CMatrix8 embed23(const CMatrix4& m) {
  CMatrix8 out = CMatrix8::Zero();
  for (int a = 0; a < 2; ++a) out.block<4, 4>(4 * a, 4 * a) = m;
  return out;
}

CMatrix8 embed13(const CMatrix4& m) {
  static const CMatrix8 p23 = permutation23();
  return p23 * embed12(m) * p23;
}

}  // namespace dytwist::rmat
