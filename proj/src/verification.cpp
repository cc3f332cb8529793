#include "steklov/verification.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>

#include "steklov/closed_forms.hpp"

namespace steklov {

namespace {

constexpr int placement_k = 6;
constexpr double pullback_tol = 1e-11;
constexpr double singular_residual_tol = 1e-4;
constexpr double regular_residual_tol = 1e-6;
constexpr double identity_tol = 1e-14;

std::string settings_text(const SolverSettings& s) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "boundary integral DtN, n_per_arc=%d grading=%g panel_order=%d tol=%g",
                s.n_per_arc, s.grading, s.panel_order, s.tol);
  return buf;
}

std::string quadrature_text(const QuadratureSpec& q) {
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "principal-value quadrature, halfwidth=%g panel_order=%d radius=%g target_tol=%g",
                q.near_field_halfwidth, q.panel_order, q.truncation_radius, q.target_tol);
  return buf;
}

Check equal(std::string what, double measured, double reference, double tol) {
  return {std::move(what), measured, reference, Relation::Equal, tol};
}
Check at_most(std::string what, double measured, double bound, double tol) {
  return {std::move(what), measured, bound, Relation::AtMost, tol};
}
Check at_least(std::string what, double measured, double bound, double tol) {
  return {std::move(what), measured, bound, Relation::AtLeast, tol};
}

double flag(bool b) { return b ? 1.0 : 0.0; }

// Smallest distance from eigenvalue i to its neighbours in the spectrum.
double isolation(const SteklovSpectrum& s, int i) {
  double gap = s.next_eigenvalue - s.eigenvalues[i];
  if (i + 1 < s.size()) gap = s.eigenvalues[i + 1] - s.eigenvalues[i];
  if (i > 0) gap = std::min(gap, s.eigenvalues[i] - s.eigenvalues[i - 1]);
  return gap;
}

double nodal_threshold(const SteklovSpectrum& s) { return std::max(10.0 * s.est_error, 1e-10); }

DiskPairDomain two_disk(double ell, DomainMode mode) {
  if (mode == DomainMode::Disk) {
    throw std::invalid_argument("this certificate needs an intersection or a union");
  }
  return DiskPairDomain::make(ell, mode);
}

std::vector<std::pair<std::string, ParamValue>> domain_params(double ell, DomainMode mode) {
  return {{"ell", ell}, {"mode", std::string(to_string(mode))}};
}

}  // namespace

const char* to_string(Relation r) {
  switch (r) {
    case Relation::Equal: return "eq";
    case Relation::AtMost: return "le";
    case Relation::AtLeast: return "ge";
  }
  return "?";
}

bool Check::passed() const {
  switch (relation) {
    case Relation::Equal: return std::abs(measured - reference) <= tolerance;
    case Relation::AtMost: return measured <= reference + tolerance;
    case Relation::AtLeast: return measured >= reference - tolerance;
  }
  return false;
}

bool Certificate::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed(); });
}

std::string Certificate::first_failure() const {
  for (const Check& c : checks) {
    if (!c.passed()) return c.what;
  }
  return {};
}

std::vector<HalfPlanePoint> half_plane_sample(int count, unsigned seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> log_r(std::log(0.05), std::log(20.0));
  std::uniform_real_distribution<double> angle(0.0, pi);
  std::vector<HalfPlanePoint> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    const double r = std::exp(log_r(gen));
    const double t = angle(gen);
    out.emplace_back(r * std::cos(t), r * std::sin(t));
  }
  return out;
}

std::vector<double> residual_grid() { return {-4.0, -1.0, -0.25, 0.25, 1.0, 4.0}; }

Certificate check_mu_alpha_identity(double alpha) {
  const ConformalContext ctx(alpha);
  const double tau = ctx.tau();
  Certificate c;
  c.name = "mu_alpha_identity";
  c.params = {{"alpha", alpha}};
  c.checks.push_back(equal("mu_alpha = sin(alpha pi/2)", 1.0 / std::sqrt(1.0 + tau * tau),
                           std::sin(alpha * pi / 2.0), identity_tol));
  c.checks.push_back(equal("ell = |cos(alpha pi/2)|", std::abs(tau) / std::sqrt(1.0 + tau * tau),
                           std::abs(std::cos(alpha * pi / 2.0)), identity_tol));
  c.checks.push_back(equal("normalized domain ell", normalized_domain(alpha).ell(),
                           std::abs(std::cos(alpha * pi / 2.0)), identity_tol));
  c.provenance = "trigonometric identity; both sides evaluated in double precision";
  return c;
}

Certificate check_eigenvalue_placement(double ell, DomainMode mode, const SolverSettings& s) {
  const DiskPairDomain d = two_disk(ell, mode);
  const BoundaryDiscretization b = discretize(d, s.n_per_arc, s.grading, s.panel_order);
  return placement_from_spectrum(b, compute_spectrum(b, placement_k, s.tol), s);
}

Certificate placement_from_spectrum(const BoundaryDiscretization& b, const SteklovSpectrum& sp,
                                    const SolverSettings& s) {
  const DomainMode mode = b.domain.mode();
  two_disk(b.domain.ell(), mode);
  if (sp.size() < 4) throw std::invalid_argument("placement needs at least 4 eigenvalues");
  const double gap_tol = sp.gap_tol();
  Certificate c;
  c.name = "eigenvalue_placement";
  c.params = domain_params(b.domain.ell(), mode);
  if (mode == DomainMode::Intersection) {
    c.checks.push_back(equal("mu2 = 1", sp.eigenvalues[1], 1.0, s.tol));
    c.checks.push_back(at_least("mu2 isolation", isolation(sp, 1), gap_tol, 0.0));
    c.checks.push_back(equal("mu2 label oe", flag(sp.labels[1] == "oe"), 1.0, 0.0));
    c.checks.push_back(equal("mu2 boundary sign changes",
                             boundary_nodal_count(sp.eigenvectors.col(1), b, nodal_threshold(sp)),
                             2.0, 0.0));
  } else {
    c.checks.push_back(at_most("mu2 below 1", sp.eigenvalues[1], 1.0 - gap_tol, 0.0));
    c.checks.push_back(equal("mu2 label eo", flag(sp.labels[1] == "eo"), 1.0, 0.0));
    c.checks.push_back(equal("mu3 = 1", sp.eigenvalues[2], 1.0, s.tol));
    c.checks.push_back(at_least("mu3 isolation", isolation(sp, 2), gap_tol, 0.0));
    c.checks.push_back(equal("mu3 label oe", flag(sp.labels[2] == "oe"), 1.0, 0.0));
    c.checks.push_back(at_least("mu4 above 1", sp.eigenvalues[3], 1.0 + gap_tol, 0.0));
  }
  for (int i = 0; i < 4; ++i) c.notes.emplace_back("mu" + std::to_string(i + 1), sp.eigenvalues[i]);
  c.notes.emplace_back("est_error", sp.est_error);
  c.notes.emplace_back("gap_tol", gap_tol);
  c.provenance = settings_text(s) + "; reference: exact eigenvalue 1 of the coordinate function";
  return c;
}

double gap_around_one(const SteklovSpectrum& sp) {
  int one = 0;
  for (int i = 1; i < sp.size(); ++i) {
    if (std::abs(sp.eigenvalues[i] - 1.0) < std::abs(sp.eigenvalues[one] - 1.0)) one = i;
  }
  return isolation(sp, one);
}

Certificate check_weinstock(double ell, const SolverSettings& s) {
  const DiskPairDomain d = DiskPairDomain::make(ell, DomainMode::Union);
  const SteklovSpectrum sp = solve_steklov(d, 3, s);
  const double p = perimeter(d);
  Certificate c;
  c.name = "weinstock";
  c.params = domain_params(ell, DomainMode::Union);
  c.checks.push_back(at_most("mu2 <= 2 pi / perimeter", sp.eigenvalues[1], 2.0 * pi / p, s.tol));
  c.checks.push_back(at_least("perimeter >= 2 pi", p, 2.0 * pi, 0.0));
  c.notes.emplace_back("perimeter", p);
  c.notes.emplace_back("est_error", sp.est_error);
  c.provenance = settings_text(s) + "; reference: isoperimetric bound with the closed-form perimeter";
  return c;
}

Certificate check_sector_bounds(double ell, DomainMode mode, const SolverSettings& s) {
  const DiskPairDomain d = two_disk(ell, mode);
  const BoundaryDiscretization b = discretize(d, s.n_per_arc, s.grading, s.panel_order);
  const double gamma = half_boundary_length(d);
  Certificate c;
  c.name = "sector_bounds";
  c.params = domain_params(ell, mode);
  c.notes.emplace_back("half_boundary_length", gamma);
  if (mode == DomainMode::Intersection) {
    const SteklovSpectrum sp = compute_sector_spectrum(b, Sector::parse("eo"), placement_k, s.tol);
    const double lowest = *std::min_element(sp.eigenvalues.begin(), sp.eigenvalues.end());
    c.checks.push_back(at_least("min eo eigenvalue >= pi/|Gamma|", lowest, pi / gamma, s.tol));
    c.notes.emplace_back("est_error", sp.est_error);
  } else {
    const SteklovSpectrum sp = compute_sector_spectrum(b, Sector::parse("ee"), placement_k, s.tol);
    const double lowest = sp.eigenvalues[1];
    c.checks.push_back(at_least("min positive ee eigenvalue >= 2 pi/|Gamma|", lowest,
                                2.0 * pi / gamma, s.tol));
    c.checks.push_back(at_least("min positive ee eigenvalue above 1", lowest,
                                1.0 + sp.gap_tol(), 0.0));
    c.notes.emplace_back("est_error", sp.est_error);
  }
  c.provenance = settings_text(s) + "; reference: first Dirichlet/third Neumann level of an arc of length |Gamma|";
  return c;
}

Certificate morse_index(double alpha, const SolverSettings& s) {
  const DiskPairDomain d = normalized_domain(alpha);
  const SteklovSpectrum sp = solve_steklov(d, placement_k, s);
  const double cut = 1.0 - sp.gap_tol();
  const auto below = std::count_if(sp.eigenvalues.begin(), sp.eigenvalues.end(),
                                   [cut](double mu) { return mu < cut; });
  Certificate c;
  c.name = "morse_index";
  c.params = {{"alpha", alpha}, {"ell", d.ell()}, {"mode", std::string(to_string(d.mode()))}};
  c.checks.push_back(equal("eigenvalues below 1", static_cast<double>(below),
                           alpha < 1.0 ? 1.0 : 2.0, 0.0));
  // The count is complete only if the spectrum computed reaches past 1.
  c.checks.push_back(at_least("largest computed eigenvalue", sp.eigenvalues.back(), 1.0, 0.0));
  c.notes.emplace_back("gap_tol", sp.gap_tol());
  c.provenance = settings_text(s) + "; reference: index 1 below the critical exponent, 2 above";
  return c;
}

Certificate check_nondegeneracy_pipeline(double alpha, const SolverSettings& s, double rho) {
  const BubbleParams p(alpha, rho);
  const DiskPairDomain d = normalized_domain(alpha);
  const BoundaryDiscretization b = discretize(d, s.n_per_arc, s.grading, s.panel_order);
  const SteklovSpectrum sp = compute_spectrum(b, placement_k, s.tol);

  int one = 0;
  for (int i = 1; i < sp.size(); ++i) {
    if (std::abs(sp.eigenvalues[i] - 1.0) < std::abs(sp.eigenvalues[one] - 1.0)) one = i;
  }
  Certificate c;
  c.name = "nondegeneracy_pipeline";
  c.params = {{"alpha", alpha}, {"rho", rho}, {"ell", d.ell()},
              {"mode", std::string(to_string(d.mode()))}};
  c.checks.push_back(equal("eigenvalue 1 present", sp.eigenvalues[one], 1.0, s.tol));
  c.checks.push_back(at_least("eigenvalue 1 isolation", isolation(sp, one), sp.gap_tol(), 0.0));

  // Least-squares fit of the eigenvector against the trace of x.
  const Eigen::VectorXd v = sp.eigenvectors.col(one);
  double vx = 0.0, xx = 0.0, vv = 0.0;
  for (int i = 0; i < b.size(); ++i) {
    const double x = b.nodes[i].x;
    vx += b.weights[i] * v[i] * x;
    xx += b.weights[i] * x * x;
    vv += b.weights[i] * v[i] * v[i];
  }
  const double scale = vx / xx;
  double miss = 0.0;
  for (int i = 0; i < b.size(); ++i) {
    const double r = v[i] - scale * b.nodes[i].x;
    miss += b.weights[i] * r * r;
  }
  c.checks.push_back(at_most("eigenfunction vs x trace", std::sqrt(miss / vv), 0.0, s.tol));

  const Certificate pull = check_pullback_identity(alpha, rho);
  c.checks.insert(c.checks.end(), pull.checks.begin(), pull.checks.end());
  const QuadratureSpec q;
  c.checks.push_back(at_most("linearized residual",
                             verify_linearized_residual(p, residual_grid(), q), 0.0,
                             singular_residual_tol));
  c.provenance = settings_text(s) + "; " + quadrature_text(q) +
                 "; reference: closed-form kernel element d u_rho / d rho";
  return c;
}

Certificate check_regular_control(const SolverSettings& s) {
  const SteklovSpectrum sp = solve_steklov(DiskPairDomain::unit_disk(), placement_k, s);
  Certificate c;
  c.name = "regular_control";
  c.params = {{"alpha", 1.0}, {"mode", std::string("disk")}};
  c.checks.push_back(equal("mu2 = 1", sp.eigenvalues[1], 1.0, s.tol));
  c.checks.push_back(equal("multiplicity of eigenvalue 1", sp.multiplicity[1], 2.0, 0.0));
  const QuadratureSpec q;
  const RegularBubbleParams rp{1.0, 0.0};
  const std::vector<double> grid{-2.0, -1.0, 0.0, 1.0, 2.0};
  c.checks.push_back(at_most("bubble residual", verify_bubble_residual(rp, grid, q), 0.0,
                             regular_residual_tol));
  c.checks.push_back(at_most("linearized residual (both kernel elements)",
                             verify_linearized_residual(rp, grid, q), 0.0, regular_residual_tol));
  c.notes.emplace_back("gap_tol", sp.gap_tol());
  c.provenance = settings_text(s) + "; " + quadrature_text(q) +
                 "; reference: two-dimensional kernel of the regular family";
  return c;
}

Certificate check_fractional_residuals(double alpha, double rho, const QuadratureSpec& q) {
  const BubbleParams p(alpha, rho);
  Certificate c;
  c.name = "fractional_residuals";
  c.params = {{"alpha", alpha}, {"rho", rho}};
  c.checks.push_back(at_most("bubble residual", verify_bubble_residual(p, residual_grid(), q), 0.0,
                             singular_residual_tol));
  c.checks.push_back(at_most("linearized residual",
                             verify_linearized_residual(p, residual_grid(), q), 0.0,
                             singular_residual_tol));
  c.provenance = quadrature_text(q) + "; reference: closed-form right-hand sides";
  return c;
}

Certificate check_pullback_identity(double alpha, double rho) {
  const ConformalContext ctx(alpha, rho);
  const BubbleParams p(alpha, rho);
  double worst = 0.0;
  for (const HalfPlanePoint& q : half_plane_sample(200, 20240611u)) {
    worst = std::max(worst, std::abs(pullback_eigenfunction(ctx, q) + rho * dU_drho_value(p, q)));
  }
  Certificate c;
  c.name = "pullback_identity";
  c.params = {{"alpha", alpha}, {"rho", rho}};
  c.checks.push_back(at_most("max |pullback + rho dU/drho|", worst, 0.0, pullback_tol));
  c.provenance = "200 seeded half-plane points; composition of the power and Moebius maps";
  return c;
}

}  // namespace steklov
