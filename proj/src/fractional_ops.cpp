#include "steklov/fractional_ops.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "steklov/errors.hpp"
#include "steklov/quadrature.hpp"

namespace steklov {

namespace {

constexpr int max_near_panels = 4096;
// Beyond this |t| every tail remainder used here is below double resolution
// of the integrals; skipping it avoids overflow inside the closed forms.
constexpr double far_enough = 1e60;

using Integrand = std::function<double(double)>;

double integrate_piece(const Integrand& f, double a, double b, double tol) {
  thread_local boost::math::quadrature::tanh_sinh<double> integrator;
  double error = 0.0;
  double l1 = 0.0;
  const double value = integrator.integrate(f, a, b, tol, &error, &l1);
  if (!std::isfinite(value) || error > 10.0 * tol * std::max(1.0, l1)) {
    throw QuadratureNotConverged("piece [" + std::to_string(a) + ", " + std::to_string(b) +
                                 "] error estimate " + std::to_string(error));
  }
  return value;
}

// Breakpoints of [-r, r] for the far field: the function's kinks, the
// excluded window and a geometric ladder that keeps each piece within one
// decade of |t|.
std::vector<double> far_field_points(const SampledFunction& u, double x, double h, double r,
                                     bool with_origin) {
  std::vector<double> pts{-r, r, x - h, x + h};
  if (with_origin) pts.push_back(0.0);
  for (double b : u.breakpoints) pts.push_back(b);
  for (double a = std::max(1.0, std::abs(x) + h); a < r; a *= 4.0) {
    pts.push_back(a);
    pts.push_back(-a);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::vector<double> inside;
  for (double p : pts) {
    if (p >= -r && p <= r) inside.push_back(p);
  }
  return inside;
}

// int_{|t| > r} f(t) k(t) dt with the maps t = +-r/s, s in (0, 1].
double tail_integral(const std::function<double(double)>& remainder,
                     const std::function<double(double)>& kernel_jacobian, double r, double tol) {
  double total = 0.0;
  for (const double side : {-1.0, 1.0}) {
    auto f = [&](double s) {
      if (s <= 0.0) return 0.0;
      const double t = side * r / s;
      if (std::abs(t) > far_enough) return 0.0;
      return remainder(t) * kernel_jacobian(t) * r / (s * s);
    };
    total += integrate_piece(f, 0.0, 1.0, tol);
  }
  return total;
}

// int_r^inf ln t / (t - x)^2 dt for |x| < r.
double log_tail(double x, double r) {
  if (x == 0.0) return (std::log(r) + 1.0) / r;
  return std::log(r) / (r - x) - std::log1p(-x / r) / x;
}

double near_halfwidth(const SampledFunction& u, double x, const QuadratureSpec& q) {
  double h = q.near_field_halfwidth;
  for (double b : u.breakpoints) {
    const double d = std::abs(x - b);
    if (d == 0.0) {
      throw std::invalid_argument("x = " + std::to_string(x) + " is a breakpoint of u");
    }
    h = std::min(h, 0.5 * d);
  }
  return h;
}

const TailModel& require_tail(const SampledFunction& u) {
  if (!u.tail_model) {
    throw TailModelMissing("the truncated tail cannot be bounded without a model of u at infinity");
  }
  return *u.tail_model;
}

SampledFunction with_tail(std::function<double(double)> f, TailModel model, double cutoff,
                          std::vector<double> breakpoints) {
  SampledFunction u;
  u.evaluator = std::move(f);
  u.tail_model = model;
  u.cutoff = cutoff;
  u.breakpoints = std::move(breakpoints);
  const double miss = std::max(std::abs(u(cutoff) - model(cutoff)),
                               std::abs(u(-cutoff) - model(-cutoff)));
  u.tail_tolerance = 2.0 * miss + 1e-15;
  return u;
}

void check_grid_point(const BubbleParams& p, double x) {
  if (x == 0.0) {
    throw std::invalid_argument("the grid must avoid x = 0 for alpha = " +
                                std::to_string(p.alpha()));
  }
}

}  // namespace

void SampledFunction::validate() const {
  if (!evaluator) throw std::invalid_argument("sampled function without evaluator");
  if (!tail_model) return;
  for (const double t : {cutoff, -cutoff}) {
    if (std::abs(evaluator(t) - (*tail_model)(t)) > tail_tolerance) {
      throw std::invalid_argument("tail model misses u(" + std::to_string(t) + ")");
    }
  }
}

void QuadratureSpec::validate() const {
  if (!(near_field_halfwidth > 0.0) || !(truncation_radius > near_field_halfwidth)) {
    throw std::invalid_argument("need truncation_radius > near_field_halfwidth > 0");
  }
  if (panel_order < 4) throw std::invalid_argument("panel_order must be at least 4");
  if (!(target_tol > 0.0)) throw std::invalid_argument("target_tol must be positive");
  if (near_field_panels < 0) throw std::invalid_argument("near_field_panels must be >= 0");
}

SampledFunction constant_function(double c) {
  return with_tail([c](double) { return c; }, {0.0, c}, 1.0, {});
}

SampledFunction log_abs_function() {
  return with_tail([](double t) { return std::log(std::abs(t)); }, {-1.0, 0.0}, 1.0, {0.0});
}

SampledFunction bubble_function(const BubbleParams& p) {
  const double cutoff = 1e4 * std::max(1.0, std::pow(p.rho(), 1.0 / p.alpha()));
  return with_tail([p](double t) { return bubble_value(p, t); },
                   {2.0 * p.alpha(), asymptotic_limit(p)}, cutoff, {0.0});
}

SampledFunction z_rho_function(const BubbleParams& p) {
  const double cutoff = 1e4 * std::max(1.0, std::pow(p.rho(), 1.0 / p.alpha()));
  return with_tail([p](double t) { return z_rho_value(p, t); }, {0.0, 1.0 / p.rho()}, cutoff,
                   {0.0});
}

SampledFunction regular_bubble_function(const RegularBubbleParams& p) {
  p.validate();
  const double cutoff = 1e4 * (1.0 + std::abs(p.xi) + p.mu);
  return with_tail([p](double t) { return regular_bubble_value(p, t); },
                   {2.0, std::log(2.0 * p.mu)}, cutoff, {});
}

SampledFunction regular_z0_function(const RegularBubbleParams& p) {
  p.validate();
  const double cutoff = 1e4 * (1.0 + std::abs(p.xi) + p.mu);
  return with_tail([p](double t) { return regular_z0_value(p, t); }, {0.0, 1.0 / p.mu}, cutoff,
                   {});
}

SampledFunction regular_z1_function(const RegularBubbleParams& p) {
  p.validate();
  const double cutoff = 1e4 * (1.0 + std::abs(p.xi) + p.mu);
  return with_tail([p](double t) { return regular_z1_value(p, t); }, {0.0, 0.0}, cutoff, {});
}

SampledFunction linear_combination(double a, const SampledFunction& u, double b,
                                   const SampledFunction& v) {
  SampledFunction w;
  w.evaluator = [a, b, u, v](double t) { return a * u(t) + b * v(t); };
  if (u.tail_model && v.tail_model) {
    w.tail_model = TailModel{a * u.tail_model->beta + b * v.tail_model->beta,
                             a * u.tail_model->c + b * v.tail_model->c};
  }
  w.cutoff = std::max(u.cutoff, v.cutoff);
  w.tail_tolerance = std::abs(a) * u.tail_tolerance + std::abs(b) * v.tail_tolerance;
  w.breakpoints = u.breakpoints;
  w.breakpoints.insert(w.breakpoints.end(), v.breakpoints.begin(), v.breakpoints.end());
  std::sort(w.breakpoints.begin(), w.breakpoints.end());
  w.breakpoints.erase(std::unique(w.breakpoints.begin(), w.breakpoints.end()),
                      w.breakpoints.end());
  return w;
}

double near_field_integral(const SampledFunction& u, double x, double h, int panels, int order) {
  const GaussRule& rule = gauss_legendre(order);
  const double ux = u(x);
  const double width = h / panels;
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = (p + 0.5) * width;
    for (int k = 0; k < order; ++k) {
      const double s = mid + 0.5 * width * rule.nodes[k];
      sum += 0.5 * width * rule.weights[k] * (2.0 * ux - u(x + s) - u(x - s)) / (s * s);
    }
  }
  return sum / pi;
}

double half_laplacian(const SampledFunction& u, double x, const QuadratureSpec& q) {
  q.validate();
  const TailModel& model = require_tail(u);
  const double h = near_halfwidth(u, x, q);
  const double r = std::max(q.truncation_radius, 2.0 * (std::abs(x) + h));

  double near = 0.0;
  if (q.near_field_panels > 0) {
    near = near_field_integral(u, x, h, q.near_field_panels, q.panel_order);
  } else {
    double previous = near_field_integral(u, x, h, 1, q.panel_order);
    bool settled = false;
    for (int m = 2; m <= max_near_panels; m *= 2) {
      near = near_field_integral(u, x, h, m, q.panel_order);
      if (std::abs(near - previous) <= q.target_tol) {
        settled = true;
        break;
      }
      previous = near;
    }
    if (!settled) {
      throw QuadratureNotConverged("near field at x = " + std::to_string(x) +
                                   " did not settle below " + std::to_string(q.target_tol));
    }
  }

  // int_{h < |t - x|, |t| < r} u(t) / (x - t)^2 dt
  const std::vector<double> pts = far_field_points(u, x, h, r, false);
  double far = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double a = pts[i];
    const double b = pts[i + 1];
    if (a >= x - h && b <= x + h) continue;
    far += integrate_piece([&](double t) { return u(t) / ((x - t) * (x - t)); }, a, b,
                           q.target_tol);
  }

  // |t| > r: closed form for the model, quadrature for the remainder.
  const double model_tail = model.c * (1.0 / (r - x) + 1.0 / (r + x)) -
                            model.beta * (log_tail(x, r) + log_tail(-x, r));
  const double remainder_tail = tail_integral([&](double t) { return u(t) - model(t); },
                                              [x](double t) { return 1.0 / ((x - t) * (x - t)); },
                                              r, q.target_tol);

  const double window = 2.0 * u(x) / h;  // int_{|t-x|>h} u(x)/(x-t)^2 dt
  return near + (window - far - model_tail - remainder_tail) / pi;
}

double poisson_extend(const SampledFunction& u, const HalfPlanePoint& z, const QuadratureSpec& q) {
  q.validate();
  if (!(z.y() > 0.0)) throw std::invalid_argument("poisson_extend needs y > 0");
  const TailModel& model = require_tail(u);
  const double x = z.x();
  const double y = z.y();
  const double r = std::max(q.truncation_radius, 2.0 * (std::abs(x) + y));
  auto kernel = [x, y](double t) { return y / ((x - t) * (x - t) + y * y) / pi; };
  auto remainder = [&](double t) { return u(t) - model(t); };

  std::vector<double> pts = far_field_points(u, x, 0.0, r, true);
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    sum += integrate_piece([&](double t) { return remainder(t) * kernel(t); }, pts[i], pts[i + 1],
                           q.target_tol);
  }
  sum += tail_integral(remainder, kernel, r, q.target_tol);
  // The extension of c - beta ln|t| is c - beta ln|z|.
  return model.c - model.beta * std::log(z.r()) + sum;
}

double verify_bubble_residual(const BubbleParams& p, const std::vector<double>& grid,
                              const QuadratureSpec& q) {
  const SampledFunction u = bubble_function(p);
  double worst = 0.0;
  for (double x : grid) {
    check_grid_point(p, x);
    const double rhs = std::pow(std::abs(x), p.alpha() - 1.0) * std::exp(bubble_value(p, x));
    worst = std::max(worst, std::abs(half_laplacian(u, x, q) - rhs));
  }
  return worst;
}

double verify_bubble_residual(const RegularBubbleParams& p, const std::vector<double>& grid,
                              const QuadratureSpec& q) {
  const SampledFunction u = regular_bubble_function(p);
  double worst = 0.0;
  for (double x : grid) {
    worst = std::max(worst,
                     std::abs(half_laplacian(u, x, q) - std::exp(regular_bubble_value(p, x))));
  }
  return worst;
}

double verify_linearized_residual(const BubbleParams& p, const std::vector<double>& grid,
                                  const QuadratureSpec& q) {
  const SampledFunction z = z_rho_function(p);
  double worst = 0.0;
  for (double x : grid) {
    check_grid_point(p, x);
    const double weight = std::pow(std::abs(x), p.alpha() - 1.0) * std::exp(bubble_value(p, x));
    worst = std::max(worst, std::abs(half_laplacian(z, x, q) - weight * z_rho_value(p, x)));
  }
  return worst;
}

double verify_linearized_residual(const RegularBubbleParams& p,
                                  const std::vector<double>& grid, const QuadratureSpec& q) {
  const SampledFunction z0 = regular_z0_function(p);
  const SampledFunction z1 = regular_z1_function(p);
  double worst = 0.0;
  for (double x : grid) {
    const double weight = std::exp(regular_bubble_value(p, x));
    worst = std::max(worst, std::abs(half_laplacian(z0, x, q) - weight * regular_z0_value(p, x)));
    worst = std::max(worst, std::abs(half_laplacian(z1, x, q) - weight * regular_z1_value(p, x)));
  }
  return worst;
}

}  // namespace steklov
