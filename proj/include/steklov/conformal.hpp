#pragma once

// Conformal reduction of the half-plane problem: the power map onto a cone,
// the Moebius map of the cone onto an intersection/union of two disks, and the
// normalized two-disk domains on which the Steklov problem is solved.

#include <string>
#include <vector>

#include "steklov/closed_forms.hpp"
#include "steklov/types.hpp"

namespace steklov {

/// Constants of the maps attached to one exponent alpha and scale rho.
///
/// The anchor point xi = rho (cos theta0, sin theta0) with theta0 = pi alpha/2 + pi
/// lies in the lower half-plane and satisfies xi1/xi2 = tau.
class ConformalContext {
public:
  explicit ConformalContext(double alpha, double rho = 1.0);

  double alpha() const { return alpha_; }
  double rho() const { return rho_; }
  /// (1 + cos(alpha pi)) / sin(alpha pi).
  double tau() const { return tau_; }
  double theta0() const { return theta0_; }
  Point xi() const { return xi_; }
  /// 1 / sqrt(1 + tau^2): the distinguished Steklov eigenvalue of the
  /// unnormalized domain, and the homothety factor onto unit disks.
  double mu_alpha() const { return mu_alpha_; }

private:
  double alpha_;
  double rho_;
  double tau_;
  double theta0_;
  Point xi_;
  double mu_alpha_;
};

enum class DomainMode { Intersection, Union, Disk };

const char* to_string(DomainMode mode);
/// Parses "intersection", "union" or "disk"; throws std::invalid_argument.
DomainMode parse_domain_mode(const std::string& text);

/// Circular boundary arc, traversed counterclockwise from angle_from to angle_to.
struct Arc {
  Point center;
  double radius = 1.0;
  double angle_from = 0.0;
  double angle_to = 0.0;

  double length() const { return radius * (angle_to - angle_from); }
  Point at(double angle) const {
    return {center.x + radius * std::cos(angle), center.y + radius * std::sin(angle)};
  }
  /// Outward unit normal of the domain (the domain lies inside each circle).
  static Point normal(double angle) { return {std::cos(angle), std::sin(angle)}; }
};

/// Two disks of radius `scale` centered at (0, +-ell*scale), intersected or
/// united; or a single disk of radius `scale` centered at the origin.
class DiskPairDomain {
public:
  /// Throws std::invalid_argument unless 0 < ell < 1 and scale > 0.
  static DiskPairDomain make(double ell, DomainMode mode, double scale = 1.0);
  static DiskPairDomain unit_disk(double scale = 1.0);

  double ell() const { return ell_; }
  DomainMode mode() const { return mode_; }
  double scale() const { return scale_; }

  /// The two corner points (+-sqrt(1-ell^2) scale, 0); empty for the disk.
  std::vector<Point> corners() const;
  /// Upper arc first, then lower arc; together they close the boundary
  /// counterclockwise, starting and ending at the right corner.
  std::vector<Arc> arcs() const;

  bool contains(Point p) const;
  /// Signed distance-like membership margin: positive inside.
  double membership_margin(Point p) const;

  /// The same domain dilated by the factor c about the origin.
  DiskPairDomain scaled(double c) const;

private:
  DiskPairDomain(double ell, DomainMode mode, double scale)
      : ell_(ell), mode_(mode), scale_(scale) {}

  double ell_;
  DomainMode mode_;
  double scale_;
};

/// F_alpha(q) = q^alpha in polar form; maps the upper half-plane onto the cone
/// {theta in [0, pi alpha)}.
Point power_map(double alpha, const HalfPlanePoint& q);
/// Inverse of power_map on the cone; throws OriginUndefined at the origin.
HalfPlanePoint power_map_inverse(double alpha, Point p);

/// G_alpha(q) = -(q + xi)/(q - xi) written in real coordinates.
Point mobius_map(const ConformalContext& ctx, Point q);
/// The same map evaluated in complex arithmetic.
Point mobius_map_complex(const ConformalContext& ctx, Point q);
/// 4|xi|^2 / |q - xi|^4.
double mobius_jacobian(const ConformalContext& ctx, Point q);
/// W_alpha(q) = ln(2|xi2| / |q - xi|^2).
double cone_weight(const ConformalContext& ctx, Point q);

/// Two unit disks with ell = |cos(alpha pi/2)|: intersection for alpha < 1,
/// union for alpha > 1.
DiskPairDomain normalized_domain(double alpha);
/// The image of the cone under G_alpha, of radius sqrt(1 + tau^2).
DiskPairDomain cone_image_domain(const ConformalContext& ctx);

/// Boundary length: 2(pi - 2 asin ell) for the intersection, 2 pi + 4 asin ell
/// for the union (times the scale).
double perimeter(const DiskPairDomain& d);
/// Length of the part of the boundary in the upper half-plane.
double half_boundary_length(const DiskPairDomain& d);

/// First coordinate of G_alpha(F_alpha(q)), i.e. the eigenfunction psi = x
/// pulled back to the half-plane.
double pullback_eigenfunction(const ConformalContext& ctx, const HalfPlanePoint& q);

}  // namespace steklov
