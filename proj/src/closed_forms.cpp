#include "steklov/closed_forms.hpp"

#include <stdexcept>
#include <string>

#include "steklov/errors.hpp"

namespace steklov {

namespace {

// |x|^{2a} + 2 rho |x|^a cos(pi a/2) + rho^2 written as a sum of squares so that
// nothing cancels when |x|^a is close to rho.
double bubble_denominator(double xa, double rho, double alpha) {
  const double c = std::cos(pi * alpha / 2.0);
  const double s = std::sin(pi * alpha / 2.0);
  const double shifted = xa + rho * c;
  return shifted * shifted + rho * rho * s * s;
}

}  // namespace

void require_singular_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 2.0) || alpha == 1.0) {
    std::string msg = "alpha = " + std::to_string(alpha) + " is outside (0,1)u(1,2)";
    if (alpha >= 2.0) msg += "; no bubble exists for alpha >= 2";
    if (alpha == 1.0) msg += "; alpha = 1 is the regular (translation invariant) family";
    throw AlphaOutOfRange(msg);
  }
}

BubbleParams::BubbleParams(double alpha, double rho) : alpha_(alpha), rho_(rho) {
  require_singular_alpha(alpha);
  if (!(rho > 0.0) || !std::isfinite(rho)) {
    throw std::invalid_argument("bubble scale rho must be positive");
  }
}

double BubbleParams::theta0() const { return pi * alpha_ / 2.0 + pi; }

double BubbleParams::amplitude() const {
  return 2.0 * alpha_ * rho_ * std::sin(pi * alpha_ / 2.0);
}

void RegularBubbleParams::validate() const {
  if (!(mu > 0.0)) throw std::invalid_argument("regular bubble width mu must be positive");
}

HalfPlanePoint::HalfPlanePoint(double x, double y) : x_(x), y_(y) {
  if (!(y >= 0.0)) throw std::invalid_argument("point is not in the closed upper half-plane");
}

std::complex<double> half_plane_power(const HalfPlanePoint& q, double alpha) {
  const double r = q.r();
  if (r == 0.0) return {0.0, 0.0};
  return std::polar(std::pow(r, alpha), alpha * q.theta());
}

double bubble_value(const BubbleParams& p, double x) {
  const double xa = std::pow(std::abs(x), p.alpha());
  return std::log(p.amplitude() / bubble_denominator(xa, p.rho(), p.alpha()));
}

double z_rho_value(const BubbleParams& p, double x) {
  const double xa = std::pow(std::abs(x), p.alpha());
  const double rho = p.rho();
  return (xa - rho) * (xa + rho) / (rho * bubble_denominator(xa, rho, p.alpha()));
}

double extension_value(const BubbleParams& p, const HalfPlanePoint& q) {
  const std::complex<double> z0 = std::polar(p.rho(), p.theta0());
  const double d2 = std::norm(half_plane_power(q, p.alpha()) - z0);
  return std::log(p.amplitude() / d2);
}

double dU_drho_value(const BubbleParams& p, const HalfPlanePoint& q) {
  const std::complex<double> za = half_plane_power(q, p.alpha());
  const std::complex<double> z0 = std::polar(p.rho(), p.theta0());
  const double ra = std::abs(za);
  const double rho = p.rho();
  return (ra - rho) * (ra + rho) / (rho * std::norm(za - z0));
}

double asymptotic_constant(const BubbleParams& p, double x) {
  if (x == 0.0) throw std::invalid_argument("asymptotic_constant needs x != 0");
  const double t = std::pow(std::abs(x), -p.alpha());
  const double c = std::cos(pi * p.alpha() / 2.0);
  const double rho = p.rho();
  return std::log(p.amplitude()) - std::log1p(2.0 * rho * c * t + rho * rho * t * t);
}

double asymptotic_limit(const BubbleParams& p) { return std::log(p.amplitude()); }

double regular_bubble_value(const RegularBubbleParams& p, double x) {
  const double d = x - p.xi;
  return std::log(2.0 * p.mu / (d * d + p.mu * p.mu));
}

double regular_z0_value(const RegularBubbleParams& p, double x) {
  const double d = x - p.xi;
  return (d - p.mu) * (d + p.mu) / (p.mu * (p.mu * p.mu + d * d));
}

double regular_z1_value(const RegularBubbleParams& p, double x) {
  const double d = x - p.xi;
  return 2.0 * d / (p.mu * p.mu + d * d);
}

double regular_extension_value(const RegularBubbleParams& p, const HalfPlanePoint& q) {
  const double dx = q.x() - p.xi;
  const double dy = q.y() + p.mu;
  return std::log(2.0 * p.mu / (dx * dx + dy * dy));
}

double regular_asymptotic_constant(const RegularBubbleParams& p, double x) {
  if (x == 0.0) throw std::invalid_argument("asymptotic_constant needs x != 0");
  const double t = 1.0 / x;
  // (x - xi)^2 + mu^2 = x^2 (1 - 2 xi t + (xi^2 + mu^2) t^2)
  return std::log(2.0 * p.mu) -
         std::log1p(-2.0 * p.xi * t + (p.xi * p.xi + p.mu * p.mu) * t * t);
}

}  // namespace steklov
