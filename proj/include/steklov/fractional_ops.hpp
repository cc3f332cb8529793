#pragma once

// The half-Laplacian on the real line as the principal-value integral
//   (-Delta)^{1/2} u(x) = (1/pi) p.v. int (u(x) - u(t)) / (x - t)^2 dt,
// and the Poisson extension to the upper half-plane, for functions that grow
// at most logarithmically.

#include <functional>
#include <optional>
#include <vector>

#include "steklov/closed_forms.hpp"

namespace steklov {

/// u(t) ~ c - beta ln|t| for large |t|.
struct TailModel {
  double beta = 0.0;
  double c = 0.0;

  double operator()(double t) const { return c - beta * std::log(std::abs(t)); }
};

struct SampledFunction {
  std::function<double(double)> evaluator;
  std::optional<TailModel> tail_model;
  /// |t| beyond which the tail model is accurate to tail_tolerance.
  double cutoff = 1.0;
  double tail_tolerance = 0.0;
  /// Points where the function is not smooth (|t|^alpha type), kept away from
  /// the near field and used as quadrature breakpoints.
  std::vector<double> breakpoints;

  double operator()(double t) const { return evaluator(t); }
  /// Throws std::invalid_argument when the model misses u(+-cutoff) by more
  /// than tail_tolerance.
  void validate() const;
};

struct QuadratureSpec {
  double near_field_halfwidth = 0.5;
  int panel_order = 8;
  double truncation_radius = 100.0;
  double target_tol = 1e-10;
  /// Gauss panels on the near field; 0 doubles from one panel until the
  /// result settles below target_tol.
  int near_field_panels = 0;

  /// Throws std::invalid_argument unless
  /// truncation_radius > near_field_halfwidth > 0 and panel_order >= 4.
  void validate() const;
};

SampledFunction constant_function(double c);
SampledFunction log_abs_function();
SampledFunction bubble_function(const BubbleParams& p);
SampledFunction z_rho_function(const BubbleParams& p);
SampledFunction regular_bubble_function(const RegularBubbleParams& p);
SampledFunction regular_z0_function(const RegularBubbleParams& p);
SampledFunction regular_z1_function(const RegularBubbleParams& p);
/// a u + b v; the tail models combine linearly and the breakpoints are merged.
SampledFunction linear_combination(double a, const SampledFunction& u, double b,
                                   const SampledFunction& v);

/// (1/pi) int_0^h (2u(x) - u(x+s) - u(x-s)) / s^2 ds by Gauss-Legendre with
/// `order` points on each of `panels` equal panels. The error decays like
/// (h/panels)^(2 order) for smooth u.
double near_field_integral(const SampledFunction& u, double x, double h, int panels, int order);

/// Throws TailModelMissing without a tail model, QuadratureNotConverged when
/// a piece misses target_tol and std::invalid_argument when x sits on a
/// breakpoint.
double half_laplacian(const SampledFunction& u, double x, const QuadratureSpec& q);

/// Poisson integral (1/pi) int y u(t) / ((x - t)^2 + y^2) dt. Requires y > 0.
double poisson_extend(const SampledFunction& u, const HalfPlanePoint& z, const QuadratureSpec& q);

/// max over the grid of |(-Delta)^{1/2} u - |x|^{alpha-1} e^u|.
double verify_bubble_residual(const BubbleParams& p, const std::vector<double>& grid,
                              const QuadratureSpec& q);
/// max over the grid of |(-Delta)^{1/2} u - e^u| for the regular family.
double verify_bubble_residual(const RegularBubbleParams& p, const std::vector<double>& grid,
                              const QuadratureSpec& q);
/// max over the grid of |(-Delta)^{1/2} z_rho - |x|^{alpha-1} e^u z_rho|.
double verify_linearized_residual(const BubbleParams& p, const std::vector<double>& grid,
                                  const QuadratureSpec& q);
/// The same for both kernel elements d/dmu and d/dxi of the regular family.
double verify_linearized_residual(const RegularBubbleParams& p,
                                  const std::vector<double>& grid, const QuadratureSpec& q);

}  // namespace steklov
