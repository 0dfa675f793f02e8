#pragma once

// Evaluated R-matrices of the double Yangian family on C^2 (x) C^2, the
// flip-invariant M(b+, b-) calculus, gauge matrices and the closed-form twist.
//
// Basis ordering is |11>, |12>, |21>, |22> (first tensor leg major).

#include <optional>
#include <string_view>

#include "dytwist/specfun.hpp"
#include "dytwist/types.hpp"

namespace dytwist::rmat {

/// Parameters (b+, b-) of the flip-invariant matrix
///
///   M(b+, b-) = [ 1  0          0          0 ]
///               [ 0  (b+ + b-)/2 (b+ - b-)/2 0 ]
///               [ 0  (b+ - b-)/2 (b+ + b-)/2 0 ]
///               [ 0  0          0          1 ]
///
/// Products and inverses act componentwise.
struct MDescriptor {
  Complex b_plus{1.0, 0.0};
  Complex b_minus{1.0, 0.0};

  MDescriptor inverse() const { return {1.0 / b_plus, 1.0 / b_minus}; }
  /// Descriptor of tau(M): the two parameters swap.
  MDescriptor swapped() const { return {b_minus, b_plus}; }

  friend MDescriptor operator*(const MDescriptor& a, const MDescriptor& b) {
    return {a.b_plus * b.b_plus, a.b_minus * b.b_minus};
  }
};

enum class RKind { kDY, kV6, kV8, kF };

inline constexpr RKind kAllKinds[] = {RKind::kDY, RKind::kV6, RKind::kV8,
                                      RKind::kF};

std::string_view to_string(RKind kind) noexcept;
/// Accepts "dy", "v6", "v8", "f" (case-insensitive).
std::optional<RKind> parse_kind(std::string_view name) noexcept;

CMatrix4 build_M(const MDescriptor& d);

/// Reads (b+, b-) back from a flip-invariant matrix.
MDescriptor descriptor_of(const CMatrix4& m);

/// Tensor flip P on C^2 (x) C^2.
CMatrix4 flip();

/// D = diag(i, -i) (x) Id, the fixed square root of (-1)^{h/2} on leg one.
CMatrix4 tau_conjugator();

/// tau(m) = D m D^{-1}; on M-matrices it swaps b+ and b-.
CMatrix4 tau(const CMatrix4& m);

CMatrix4 kron(const CMatrix2& a, const CMatrix2& b);

/// Scalar prefactor of the R-matrix (rho for DY, rho_r otherwise).
Complex normalization(RKind kind, SpectralPoint beta, const DeformationParams& p,
                      const specfun::QuadratureSettings& q = {});

/// R-matrix of the given kind. With `normalized` false the scalar prefactor
/// is omitted. Throws PoleProximity near a matrix or normalization pole.
CMatrix4 r_matrix(RKind kind, SpectralPoint beta, const DeformationParams& p,
                  bool normalized, const specfun::QuadratureSettings& q = {});

/// (b+, b-) of the unnormalized V6 matrix from the trigonometric closed form.
MDescriptor v6_descriptor_trig(SpectralPoint beta, const DeformationParams& p);

/// The same pair from the four-factor Gamma_1 ratios with period 2r.
MDescriptor v6_descriptor_gamma1(SpectralPoint beta, const DeformationParams& p);

/// (1, (i beta - pi) / (i beta + pi)), the unnormalized DY matrix.
MDescriptor dy_descriptor(SpectralPoint beta, const DeformationParams& p);

/// V = (1/sqrt 2) [[1, 1], [-1, 1]].
CMatrix2 gauge_V();
/// K = V (x) V.
CMatrix4 gauge_K();
/// V'(beta) = diag(e^{beta/2r}, e^{-beta/2r}).
CMatrix2 gauge_Vprime(SpectralPoint beta, const DeformationParams& p);
/// K6(b1, b2) = V'(b1) (x) V'(b2).
CMatrix4 gauge_K6(SpectralPoint beta1, SpectralPoint beta2,
                  const DeformationParams& p);

/// The pair of Gamma_1 ratios (period 2r) inside the closed-form twist.
MDescriptor twist_F_descriptor(SpectralPoint beta, const DeformationParams& p);

/// F12(beta) = rho_F(beta) M(Gamma_1(x+r-1)/Gamma_1(x+r+1),
///                           Gamma_1(x+2r-1)/Gamma_1(x+2r+1)).
CMatrix4 twist_F_closed(SpectralPoint beta, const DeformationParams& p,
                        const specfun::QuadratureSettings& q = {});

// Embeddings of two-site operators into C^2 (x) C^2 (x) C^2.
CMatrix8 embed12(const CMatrix4& m);
CMatrix8 embed23(const CMatrix4& m);
CMatrix8 embed13(const CMatrix4& m);

}  // namespace dytwist::rmat
