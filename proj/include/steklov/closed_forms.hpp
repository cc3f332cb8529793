#pragma once

// Explicit solutions of the singular half-Laplacian Liouville equation
//   (-Delta)^{1/2} u = |x|^{alpha-1} e^u   on the real line,
// their rho-derivatives and their harmonic extensions to the upper half-plane.

#include "steklov/types.hpp"

namespace steklov {

/// Selects one bubble u_rho of the singular family. alpha lies in (0,1) or (1,2).
class BubbleParams {
public:
  /// Throws AlphaOutOfRange for alpha outside (0,1)u(1,2) and
  /// std::invalid_argument for rho <= 0.
  BubbleParams(double alpha, double rho);

  double alpha() const { return alpha_; }
  double rho() const { return rho_; }
  /// True for alpha in (0,1); the Steklov domain is then an intersection.
  bool sublinear() const { return alpha_ < 1.0; }

  /// pi*alpha/2 + pi, the argument of the pole z0 of the extension.
  double theta0() const;
  /// 2*alpha*rho*sin(pi*alpha/2), the numerator of e^{u_rho}.
  double amplitude() const;

private:
  double alpha_;
  double rho_;
};

/// The alpha = 1 (regular) family ln(2 mu / ((x-xi)^2 + mu^2)).
struct RegularBubbleParams {
  double mu = 1.0;
  double xi = 0.0;

  /// Throws std::invalid_argument for mu <= 0.
  void validate() const;
};

/// Point of the closed upper half-plane (y >= 0).
class HalfPlanePoint {
public:
  /// Throws std::invalid_argument for y < 0.
  HalfPlanePoint(double x, double y);

  double x() const { return x_; }
  double y() const { return y_; }
  double r() const { return std::hypot(x_, y_); }
  /// Polar angle in [0, pi].
  double theta() const { return std::atan2(y_, x_); }
  Point point() const { return {x_, y_}; }

private:
  double x_;
  double y_;
};

/// Throws AlphaOutOfRange unless alpha is in (0,1)u(1,2).
void require_singular_alpha(double alpha);

/// z^alpha on the closed upper half-plane, polar branch with theta in [0, pi].
std::complex<double> half_plane_power(const HalfPlanePoint& q, double alpha);

/// u_rho(x).
double bubble_value(const BubbleParams& p, double x);
/// z_rho(x) = d u_rho / d rho.
double z_rho_value(const BubbleParams& p, double x);
/// Harmonic extension U_rho(x, y).
double extension_value(const BubbleParams& p, const HalfPlanePoint& q);
/// d U_rho / d rho at (x, y).
double dU_drho_value(const BubbleParams& p, const HalfPlanePoint& q);
/// u_rho(x) + 2 alpha ln|x|; tends to ln(2 alpha rho sin(pi alpha / 2)).
double asymptotic_constant(const BubbleParams& p, double x);
/// The limit of asymptotic_constant as |x| grows.
double asymptotic_limit(const BubbleParams& p);

double regular_bubble_value(const RegularBubbleParams& p, double x);
/// d/dmu of the regular bubble.
double regular_z0_value(const RegularBubbleParams& p, double x);
/// d/dxi of the regular bubble.
double regular_z1_value(const RegularBubbleParams& p, double x);
double regular_extension_value(const RegularBubbleParams& p, const HalfPlanePoint& q);
/// u + 2 ln|x| for the regular family; tends to ln(2 mu).
double regular_asymptotic_constant(const RegularBubbleParams& p, double x);

}  // namespace steklov
