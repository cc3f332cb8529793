#pragma once

// Named pass/fail certificates for the quantitative spectral claims.

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "steklov/conformal.hpp"
#include "steklov/fractional_ops.hpp"
#include "steklov/spectrum.hpp"

namespace steklov {

enum class Relation { Equal, AtMost, AtLeast };

const char* to_string(Relation r);

/// One asserted comparison inside a certificate.
struct Check {
  std::string what;
  double measured = 0.0;
  double reference = 0.0;
  Relation relation = Relation::Equal;
  double tolerance = 0.0;

  /// Equal: |measured - reference| <= tolerance. AtMost / AtLeast: the
  /// inequality holds with margin >= -tolerance.
  bool passed() const;
};

using ParamValue = std::variant<double, std::string>;

struct Certificate {
  std::string name;
  std::vector<std::pair<std::string, ParamValue>> params;
  std::vector<Check> checks;
  /// Reported values that are not asserted.
  std::vector<std::pair<std::string, double>> notes;
  /// How the reference values and measurements were obtained.
  std::string provenance;

  bool passed() const;
  /// Name of the first failing check, empty when all pass.
  std::string first_failure() const;
};

/// The 200-point seeded sample of the upper half-plane used by the pullback
/// checks.
std::vector<HalfPlanePoint> half_plane_sample(int count, unsigned seed);

/// The grid {+-0.25, +-1, +-4} used for the fractional residuals.
std::vector<double> residual_grid();

Certificate check_mu_alpha_identity(double alpha);
/// mode is Intersection or Union.
Certificate check_eigenvalue_placement(double ell, DomainMode mode, const SolverSettings& s);
/// The placement checks on an already computed spectrum of at least 4 eigenvalues.
Certificate placement_from_spectrum(const BoundaryDiscretization& b, const SteklovSpectrum& sp,
                                    const SolverSettings& s);
/// Distance from the eigenvalue nearest to 1 to its closest neighbour.
double gap_around_one(const SteklovSpectrum& sp);
Certificate check_weinstock(double ell, const SolverSettings& s);
Certificate check_sector_bounds(double ell, DomainMode mode, const SolverSettings& s);
Certificate morse_index(double alpha, const SolverSettings& s);
Certificate check_nondegeneracy_pipeline(double alpha, const SolverSettings& s, double rho = 1.0);
/// alpha = 1: eigenvalue 1 of the unit disk is double, and both kernel
/// elements of the regular family solve the linearized equation.
Certificate check_regular_control(const SolverSettings& s);
/// Fractional residuals of the bubble and of z_rho on residual_grid().
Certificate check_fractional_residuals(double alpha, double rho = 1.0,
                                       const QuadratureSpec& q = {});
/// max |pullback_eigenfunction + rho dU/drho| over the seeded sample.
Certificate check_pullback_identity(double alpha, double rho = 1.0);

}  // namespace steklov
