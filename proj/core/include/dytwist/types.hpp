#pragma once

#include <complex>
#include <numbers>

#include <Eigen/Core>

namespace dytwist {

using Complex = std::complex<double>;

using CMatrix2 = Eigen::Matrix<Complex, 2, 2>;
using CMatrix4 = Eigen::Matrix<Complex, 4, 4>;
using CMatrix8 = Eigen::Matrix<Complex, 8, 8>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};

/// Default distance to a Gamma pole below which evaluation is refused.
inline constexpr double kDefaultPoleGuard = 1e-6;

/// Largest absolute entry.
template <typename Derived>
double sup_norm(const Eigen::MatrixBase<Derived>& m) {
  return m.cwiseAbs().maxCoeff();
}

/// Complex rapidity beta together with its dimensionless form x = i beta / pi.
class SpectralPoint {
 public:
  constexpr SpectralPoint() = default;
  constexpr explicit SpectralPoint(Complex beta) : beta_(beta) {}

  constexpr Complex beta() const { return beta_; }
  Complex x() const { return kI * beta_ / kPi; }

  SpectralPoint operator-() const { return SpectralPoint(-beta_); }
  friend SpectralPoint operator+(SpectralPoint a, SpectralPoint b) {
    return SpectralPoint(a.beta_ + b.beta_);
  }
  friend SpectralPoint operator-(SpectralPoint a, SpectralPoint b) {
    return SpectralPoint(a.beta_ - b.beta_);
  }
  friend bool operator==(SpectralPoint, SpectralPoint) = default;

 private:
  Complex beta_{0.0, 0.0};
};

/// Deformation scale r, central charge c and the pole guard radius.
/// Every evaluated identity runs at c = 0.
struct DeformationParams {
  double r = 5.0;
  double c = 0.0;
  double guard = kDefaultPoleGuard;

  void validate() const;
};

}  // namespace dytwist
