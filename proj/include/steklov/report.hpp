#pragma once

// Parameter sweeps and SVG rendering for the command-line front end.

#include <optional>
#include <string>
#include <vector>

#include "steklov/spectrum.hpp"

namespace steklov {

struct SweepRow {
  /// Set when the row came from an alpha grid.
  std::optional<double> alpha;
  double ell = 0.0;
  DomainMode mode = DomainMode::Intersection;
  /// Empty when the solve failed.
  std::vector<double> eigenvalues;
  double gap_to_1 = 0.0;
  /// "pass", "fail:<check>" or "error:<message>".
  std::string verdict;

  bool ok() const { return verdict == "pass"; }
};

struct SweepRequest {
  DomainMode mode = DomainMode::Intersection;
  /// Exactly one of the grids is non-empty.
  std::vector<double> ells;
  std::vector<double> alphas;
  int k = 4;
  int jobs = 1;
};

/// Throws std::invalid_argument for an empty, unsorted or out-of-range grid,
/// k < 1, jobs < 1, or a disk mode.
void validate(const SweepRequest& r);

/// Rows are solved on a pool of r.jobs threads and returned in grid order.
/// Each row checks the eigenvalue placement on its domain; solver failures are
/// recorded in the row and do not stop the sweep.
std::vector<SweepRow> run_sweep(const SweepRequest& r, const SolverSettings& s);

/// Columns [alpha,] ell, mu_1..mu_k, gap_to_1, verdicts.
std::string sweep_to_csv(const std::vector<SweepRow>& rows, int k);

/// Branch data read back from a sweep CSV.
struct BranchTable {
  std::vector<double> ell;
  /// branches[i][row]
  std::vector<std::vector<double>> branches;
};
/// Throws std::invalid_argument on a malformed file.
BranchTable parse_sweep_csv(const std::string& text);

/// Interpolated boundary points where v changes sign, ignoring nodes with
/// |v| <= threshold.
std::vector<Point> boundary_nodal_points(const Eigen::VectorXd& v, const BoundaryDiscretization& b,
                                         double threshold);

/// Self-contained SVG of the domain outline with markers at `marks`.
std::string domain_svg(const DiskPairDomain& d, const std::vector<Point>& marks,
                       const std::string& title);
/// Self-contained SVG of mu_i(ell) with a dashed reference line at 1.
std::string branches_svg(const BranchTable& t, const std::string& title);

}  // namespace steklov
