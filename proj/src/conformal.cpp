#include "steklov/conformal.hpp"

#include <algorithm>
#include <stdexcept>

#include "steklov/errors.hpp"

namespace steklov {

namespace {

void require_map_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 2.0)) {
    throw AlphaOutOfRange("power map exponent must lie in (0,2), got " + std::to_string(alpha));
  }
}

}  // namespace

ConformalContext::ConformalContext(double alpha, double rho) : alpha_(alpha), rho_(rho) {
  require_singular_alpha(alpha);
  if (!(rho > 0.0)) throw std::invalid_argument("rho must be positive");
  tau_ = (1.0 + std::cos(alpha * pi)) / std::sin(alpha * pi);
  theta0_ = pi * alpha / 2.0 + pi;
  xi_ = {rho * std::cos(theta0_), rho * std::sin(theta0_)};
  mu_alpha_ = 1.0 / std::sqrt(1.0 + tau_ * tau_);
}

const char* to_string(DomainMode mode) {
  switch (mode) {
    case DomainMode::Intersection: return "intersection";
    case DomainMode::Union: return "union";
    case DomainMode::Disk: return "disk";
  }
  return "?";
}

DomainMode parse_domain_mode(const std::string& text) {
  if (text == "intersection") return DomainMode::Intersection;
  if (text == "union") return DomainMode::Union;
  if (text == "disk") return DomainMode::Disk;
  throw std::invalid_argument("unknown domain mode '" + text + "'");
}

DiskPairDomain DiskPairDomain::make(double ell, DomainMode mode, double scale) {
  if (mode == DomainMode::Disk) return unit_disk(scale);
  if (!(ell > 0.0 && ell < 1.0)) {
    throw std::invalid_argument("center offset ell must lie in (0,1), got " + std::to_string(ell));
  }
  if (!(scale > 0.0)) throw std::invalid_argument("domain scale must be positive");
  return DiskPairDomain(ell, mode, scale);
}

DiskPairDomain DiskPairDomain::unit_disk(double scale) {
  if (!(scale > 0.0)) throw std::invalid_argument("domain scale must be positive");
  return DiskPairDomain(0.0, DomainMode::Disk, scale);
}

std::vector<Point> DiskPairDomain::corners() const {
  if (mode_ == DomainMode::Disk) return {};
  const double cx = std::sqrt(1.0 - ell_ * ell_) * scale_;
  return {{cx, 0.0}, {-cx, 0.0}};
}

std::vector<Arc> DiskPairDomain::arcs() const {
  const double s = scale_;
  const double a = std::asin(ell_);
  switch (mode_) {
    case DomainMode::Intersection:
      return {Arc{{0.0, -ell_ * s}, s, a, pi - a}, Arc{{0.0, ell_ * s}, s, pi + a, 2.0 * pi - a}};
    case DomainMode::Union:
      return {Arc{{0.0, ell_ * s}, s, -a, pi + a}, Arc{{0.0, -ell_ * s}, s, pi - a, 2.0 * pi + a}};
    case DomainMode::Disk:
      return {Arc{{0.0, 0.0}, s, 0.0, pi}, Arc{{0.0, 0.0}, s, pi, 2.0 * pi}};
  }
  return {};
}

double DiskPairDomain::membership_margin(Point p) const {
  const double s = scale_;
  if (mode_ == DomainMode::Disk) return s - p.norm();
  const double upper = s - distance(p, {0.0, ell_ * s});
  const double lower = s - distance(p, {0.0, -ell_ * s});
  return mode_ == DomainMode::Intersection ? std::min(upper, lower) : std::max(upper, lower);
}

bool DiskPairDomain::contains(Point p) const { return membership_margin(p) > 0.0; }

DiskPairDomain DiskPairDomain::scaled(double c) const {
  if (!(c > 0.0)) throw std::invalid_argument("dilation factor must be positive");
  return DiskPairDomain(ell_, mode_, scale_ * c);
}

Point power_map(double alpha, const HalfPlanePoint& q) {
  require_map_alpha(alpha);
  return Point::from(half_plane_power(q, alpha));
}

HalfPlanePoint power_map_inverse(double alpha, Point p) {
  require_map_alpha(alpha);
  const double r = p.norm();
  if (r == 0.0) throw OriginUndefined("the cone vertex has no polar angle");
  double angle = std::atan2(p.y, p.x);
  if (angle < 0.0) angle += 2.0 * pi;
  const double theta = std::min(angle / alpha, pi);
  const double radius = std::pow(r, 1.0 / alpha);
  return {radius * std::cos(theta), std::max(0.0, radius * std::sin(theta))};
}

Point mobius_map(const ConformalContext& ctx, Point q) {
  const Point xi = ctx.xi();
  const double d2 = (q - xi).norm2();
  if (d2 == 0.0) throw PoleAtXi("the Moebius map is singular at xi");
  return {(xi.norm2() - q.norm2()) / d2, 2.0 * (q.y * xi.x - q.x * xi.y) / d2};
}

Point mobius_map_complex(const ConformalContext& ctx, Point q) {
  const std::complex<double> z = q.complex();
  const std::complex<double> xi = ctx.xi().complex();
  if (z == xi) throw PoleAtXi("the Moebius map is singular at xi");
  return Point::from(-(z + xi) / (z - xi));
}

double mobius_jacobian(const ConformalContext& ctx, Point q) {
  const double d2 = (q - ctx.xi()).norm2();
  if (d2 == 0.0) throw PoleAtXi("the Moebius Jacobian is singular at xi");
  return 4.0 * ctx.xi().norm2() / (d2 * d2);
}

double cone_weight(const ConformalContext& ctx, Point q) {
  const double d2 = (q - ctx.xi()).norm2();
  if (d2 == 0.0) throw PoleAtXi("the cone weight is singular at xi");
  return std::log(2.0 * std::abs(ctx.xi().y) / d2);
}

DiskPairDomain normalized_domain(double alpha) {
  require_singular_alpha(alpha);
  const double ell = std::abs(std::cos(alpha * pi / 2.0));
  return DiskPairDomain::make(ell, alpha < 1.0 ? DomainMode::Intersection : DomainMode::Union);
}

DiskPairDomain cone_image_domain(const ConformalContext& ctx) {
  return normalized_domain(ctx.alpha()).scaled(1.0 / ctx.mu_alpha());
}

double perimeter(const DiskPairDomain& d) {
  const double a = std::asin(d.ell());
  switch (d.mode()) {
    case DomainMode::Intersection: return 2.0 * (pi - 2.0 * a) * d.scale();
    case DomainMode::Union: return (2.0 * pi + 4.0 * a) * d.scale();
    case DomainMode::Disk: return 2.0 * pi * d.scale();
  }
  return 0.0;
}

double half_boundary_length(const DiskPairDomain& d) { return perimeter(d) / 2.0; }

double pullback_eigenfunction(const ConformalContext& ctx, const HalfPlanePoint& q) {
  return mobius_map(ctx, power_map(ctx.alpha(), q)).x;
}

}  // namespace steklov
