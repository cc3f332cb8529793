// Acceptance run: one PASS/FAIL line per criterion, exit 0 only if all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "steklov/closed_forms.hpp"
#include "steklov/conformal.hpp"
#include "steklov/fractional_ops.hpp"
#include "steklov/spectrum.hpp"
#include "steklov/verification.hpp"

using namespace steklov;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) detail = what;
    ok = ok && cond;
  }
};

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

double weighted_norm(const Eigen::VectorXd& v, const BoundaryDiscretization& b) {
  double s = 0;
  for (int i = 0; i < b.size(); ++i) s += b.weights[i] * v[i] * v[i];
  return std::sqrt(s);
}

double measured(const Certificate& c, const std::string& what) {
  for (const Check& k : c.checks) {
    if (k.what == what) return k.measured;
  }
  return std::nan("");
}

const SolverSettings settings;

Outcome disk_spectrum() {
  Outcome o;
  const BoundaryDiscretization b = discretize(DiskPairDomain::unit_disk(), 128);
  const SteklovSpectrum s = compute_spectrum(b, 7, 1e-8);
  const double expected[] = {0, 1, 1, 2, 2, 3, 3};
  double worst = 0;
  for (int i = 0; i < 7; ++i) worst = std::max(worst, std::abs(s.eigenvalues[i] - expected[i]));
  o.require(worst <= 1e-8, fmt("max deviation %.3g", worst));
  o.detail = o.ok ? fmt("max deviation %.3g", worst) : o.detail;
  return o;
}

Outcome intersection_placement() {
  Outcome o;
  double worst = 0, gap = INFINITY;
  for (int j = 1; j <= 9; ++j) {
    const double ell = j / 10.0;
    const SteklovSpectrum s = solve_steklov(DiskPairDomain::make(ell, DomainMode::Intersection), 4, settings);
    worst = std::max(worst, std::abs(s.eigenvalues[1] - 1));
    gap = std::min(gap, s.eigenvalues[2] - s.eigenvalues[1]);
    o.require(std::abs(s.eigenvalues[1] - 1) <= 1e-5, fmt("ell %.1f: |mu2-1| = %.3g", ell, std::abs(s.eigenvalues[1] - 1)));
    o.require(s.eigenvalues[2] - s.eigenvalues[1] >= 1e-3, fmt("ell %.1f: mu3-mu2 = %.3g", ell, s.eigenvalues[2] - s.eigenvalues[1]));
  }
  if (o.ok) o.detail = fmt("max |mu2-1| %.3g, min mu3-mu2 %.4f", worst, gap);
  return o;
}

Outcome union_placement() {
  Outcome o;
  double worst = 0, margin = INFINITY;
  for (int j = 1; j <= 9; ++j) {
    const double ell = j / 10.0;
    const SteklovSpectrum s = solve_steklov(DiskPairDomain::make(ell, DomainMode::Union), 4, settings);
    const double bound = 2 * pi / (2 * pi + 4 * std::asin(ell));
    const double* mu = s.eigenvalues.data();
    o.require(mu[1] <= bound + 1e-6, fmt("ell %.1f: mu2 %.8f above %.8f", ell, mu[1], bound));
    o.require(mu[1] <= 1 - 1e-3, fmt("ell %.1f: mu2 %.8f not below 1", ell, mu[1]));
    o.require(std::abs(mu[2] - 1) <= 1e-5, fmt("ell %.1f: |mu3-1| = %.3g", ell, std::abs(mu[2] - 1)));
    o.require(mu[3] >= 1 + 1e-3, fmt("ell %.1f: mu4 = %.8f", ell, mu[3]));
    worst = std::max(worst, std::abs(mu[2] - 1));
    margin = std::min(margin, bound - mu[1]);
  }
  if (o.ok) o.detail = fmt("max |mu3-1| %.3g, min Weinstock margin %.3g", worst, margin);
  return o;
}

Outcome dtn_x_trace() {
  Outcome o;
  double worst = 0;
  for (DomainMode m : {DomainMode::Intersection, DomainMode::Union}) {
    for (int j = 1; j <= 9; ++j) {
      const BoundaryDiscretization b = discretize(DiskPairDomain::make(j / 10.0, m), settings.n_per_arc,
                                                  settings.grading, settings.panel_order);
      Eigen::VectorXd x(b.size());
      for (int i = 0; i < b.size(); ++i) x[i] = b.nodes[i].x;
      const double r = weighted_norm(dtn_matrix(b) * x - x, b) / weighted_norm(x, b);
      worst = std::max(worst, r);
      o.require(r <= 1e-5, std::string(to_string(m)) + fmt(" ell %.1f: residual %.3g", j / 10.0, r));
    }
  }
  if (o.ok) o.detail = fmt("max relative residual %.3g", worst);
  return o;
}

Outcome morse() {
  Outcome o;
  for (double a : {0.3, 0.5, 0.7, 0.9, 1.1, 1.3, 1.5, 1.7}) {
    const double idx = measured(morse_index(a, settings), "eigenvalues below 1");
    const double want = a < 1 ? 1 : 2;
    o.require(idx == want, fmt("alpha %.1f: index %.0f, expected %.0f", a, idx, want));
  }
  if (o.ok) o.detail = "index 1 below alpha = 1, 2 above";
  return o;
}

Outcome fractional() {
  Outcome o;
  const std::vector<double> grid = residual_grid();
  const QuadratureSpec q;
  double worst = 0;
  for (double a : {0.3, 0.7, 1.3, 1.7}) {
    const BubbleParams p(a, 1.0);
    const double rb = verify_bubble_residual(p, grid, q);
    const double rl = verify_linearized_residual(p, grid, q);
    worst = std::max({worst, rb, rl});
    o.require(rb <= 1e-4, fmt("alpha %.1f: bubble residual %.3g", a, rb));
    o.require(rl <= 1e-4, fmt("alpha %.1f: linearized residual %.3g", a, rl));
  }
  const RegularBubbleParams reg{1.0, 0.0};
  const double cb = verify_bubble_residual(reg, grid, q);
  const double cl = verify_linearized_residual(reg, grid, q);
  o.require(cb <= 1e-6, fmt("control bubble residual %.3g", cb));
  o.require(cl <= 1e-6, fmt("control linearized residual %.3g", cl));
  // Near-field rule order on a smooth window of the bubble.
  const SampledFunction u = bubble_function(BubbleParams(0.7, 1.0));
  const int p = 4;
  const double x = 4.0, h = 2.0;
  const double ref = near_field_integral(u, x, h, 64, p);
  const double e1 = std::abs(near_field_integral(u, x, h, 2, p) - ref);
  const double e2 = std::abs(near_field_integral(u, x, h, 4, p) - ref);
  const double order = std::log2(e1 / e2);
  o.require(order >= 2 * p - 2, fmt("observed order %.2f", order));
  if (o.ok) o.detail = fmt("max residual %.3g, control %.3g, order %.2f", worst, std::max(cb, cl), order);
  return o;
}

Outcome pullback() {
  Outcome o;
  double worst = 0;
  for (double a : {0.5, 1.5}) {
    const ConformalContext ctx(a);
    for (const HalfPlanePoint& q : half_plane_sample(200, 20240611)) {
      const double d = std::abs(pullback_eigenfunction(ctx, q) + dU_drho_value(BubbleParams(a, 1.0), q));
      worst = std::max(worst, d);
    }
  }
  o.require(worst <= 1e-11, fmt("max deviation %.3g", worst));
  if (o.ok) o.detail = fmt("max deviation %.3g over 400 points", worst);
  return o;
}

Outcome geometry() {
  Outcome o;
  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  double worst_len = 0;
  for (DomainMode m : {DomainMode::Intersection, DomainMode::Union}) {
    for (double ell : {0.1, 0.5, 0.9}) {
      const DiskPairDomain d = DiskPairDomain::make(ell, m);
      double len = 0;
      for (const Arc& a : d.arcs()) {
        const auto speed = [&](double t) { return a.radius * std::hypot(std::sin(t), std::cos(t)); };
        len += GK::integrate(speed, a.angle_from, a.angle_to, 0, 1e-15);
      }
      worst_len = std::max(worst_len, std::abs(len - perimeter(d)));
    }
  }
  o.require(worst_len <= 1e-10, fmt("perimeter deviation %.3g", worst_len));
  double worst_jac = 0;
  for (double a : {0.5, 1.5}) {
    const ConformalContext ctx(a);
    for (const HalfPlanePoint& hp : half_plane_sample(50, 7)) {
      const Point q{hp.x(), hp.y()};
      const double h = 1e-6 * std::max(1.0, q.norm());
      const Point fx = (0.5 / h) * (mobius_map(ctx, {q.x + h, q.y}) - mobius_map(ctx, {q.x - h, q.y}));
      const Point fy = (0.5 / h) * (mobius_map(ctx, {q.x, q.y + h}) - mobius_map(ctx, {q.x, q.y - h}));
      const double fd = std::abs(fx.x * fy.y - fx.y * fy.x);
      const double jac = mobius_jacobian(ctx, q);
      worst_jac = std::max(worst_jac, std::abs(fd - jac) / jac);
    }
  }
  o.require(worst_jac <= 1e-6, fmt("Jacobian relative deviation %.3g", worst_jac));
  double worst_mu = 0;
  for (int i = 0; i < 50; ++i) {
    double a = 0.02 + 1.96 * i / 49.0;
    if (std::abs(a - 1) < 1e-12) a += 0.01;
    worst_mu = std::max(worst_mu, std::abs(ConformalContext(a).mu_alpha() - std::sin(a * pi / 2)));
  }
  o.require(worst_mu <= 1e-14, fmt("mu_alpha deviation %.3g", worst_mu));
  if (o.ok) o.detail = fmt("perimeter %.2g, Jacobian %.2g, mu_alpha %.2g", worst_len, worst_jac, worst_mu);
  return o;
}

Outcome eo_sector() {
  Outcome o;
  double margin = INFINITY;
  for (double ell : {0.2, 0.5, 0.8}) {
    const BoundaryDiscretization b = discretize(DiskPairDomain::make(ell, DomainMode::Intersection),
                                                settings.n_per_arc, settings.grading, settings.panel_order);
    const SteklovSpectrum s = compute_sector_spectrum(b, Sector::parse("eo"), 1, settings.tol);
    const double bound = pi / (pi - 2 * std::asin(ell));
    margin = std::min(margin, s.eigenvalues[0] - bound);
    o.require(s.eigenvalues[0] >= bound - 1e-4, fmt("ell %.1f: %.8f below %.8f", ell, s.eigenvalues[0], bound));
  }
  if (o.ok) o.detail = fmt("min margin %.4f", margin);
  return o;
}

Outcome regular_multiplicity() {
  Outcome o;
  const Certificate c = check_regular_control(settings);
  const double mult = measured(c, "multiplicity of eigenvalue 1");
  o.require(mult == 2, fmt("multiplicity %.0f", mult));
  o.require(c.passed(), "control certificate: " + c.first_failure());
  if (o.ok) o.detail = "eigenvalue 1 is double";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
    double budget_s;
  };
  const Criterion criteria[] = {
      {"disk spectrum", disk_spectrum, 10},
      {"intersection: mu2 = 1 and simple", intersection_placement, 120},
      {"union: mu2 < 1 = mu3 < mu4", union_placement, 120},
      {"DtN maps the x trace to itself", dtn_x_trace, 120},
      {"Morse index", morse, 60},
      {"fractional residuals and rule order", fractional, 60},
      {"pullback of the kernel element", pullback, 1},
      {"geometry and mu_alpha", geometry, 5},
      {"intersection eo sector bound", eo_sector, 60},
      {"regular control multiplicity", regular_multiplicity, 60},
  };
  int failures = 0, n = 0;
  for (const Criterion& c : criteria) {
    ++n;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.ok && secs > c.budget_s) {
      o.ok = false;
      o.detail = fmt("took %.2f s, budget %.0f s", secs, c.budget_s);
    }
    failures += !o.ok;
    std::printf("%s %2d %-40s %7.2fs  %s\n", o.ok ? "PASS" : "FAIL", n, c.name, secs, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed\n", n - failures, n);
  return failures == 0 ? 0 : 1;
}
