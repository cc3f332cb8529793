#pragma once

// Steklov eigenvalues of two-disk domains from the discrete Dirichlet-to-Neumann
// map D = S^{-1}(I/2 + K) (see assembly.hpp). Both reflections x -> -x and
// y -> -y commute with D, so the spectrum is computed sector by sector on the
// nodes of the open first quadrant; this quarters the dense eigensolves and
// yields exact parity labels.

#include <array>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "steklov/discretization.hpp"

namespace steklov {

/// Parity class under x -> -x (first letter) and y -> -y (second letter).
struct Sector {
  bool odd_x = false;
  bool odd_y = false;

  std::string name() const;
  /// Accepts "ee", "eo", "oe", "oo"; throws std::invalid_argument.
  static Sector parse(const std::string& text);
  static std::array<Sector, 4> all();
  bool operator==(const Sector&) const = default;
};

struct SolverSettings {
  int n_per_arc = 32;
  double grading = 3.0;
  int panel_order = default_panel_order;
  double tol = 1e-5;
};

struct SteklovSpectrum {
  /// Ascending.
  std::vector<double> eigenvalues;
  /// Boundary traces at the nodes, one column per eigenvalue, normalized in
  /// the discrete boundary L2 norm.
  Eigen::MatrixXd eigenvectors;
  /// "ee", "eo", "oe", "oo" or "mixed".
  std::vector<std::string> labels;
  /// eigenvalues[i+1] - eigenvalues[i].
  std::vector<double> gaps;
  /// Size of the cluster each eigenvalue belongs to under the gap test.
  std::vector<int> multiplicity;
  /// The eigenvalue following the last reported one, so that the gap test is
  /// two-sided for every entry.
  double next_eigenvalue = 0.0;
  /// Largest change of the reported eigenvalues against a discretization with
  /// half as many panels.
  double est_error = 0.0;

  int size() const { return static_cast<int>(eigenvalues.size()); }
  /// max(1e-3, 50 est_error).
  double gap_tol() const;
  bool is_simple(int i) const { return multiplicity.at(i) == 1; }
};

/// Nodes with x > 0 and y > 0, one per reflection orbit.
std::vector<int> fundamental_nodes(const BoundaryDiscretization& b);

/// Full N x N DtN matrix acting on nodal values.
Eigen::MatrixXd dtn_matrix(const BoundaryDiscretization& b);
/// DtN restricted to one sector, acting on values at fundamental_nodes().
Eigen::MatrixXd sector_dtn_matrix(const BoundaryDiscretization& b, Sector sector);

/// First k eigenpairs. Throws NotConverged when est_error > tol and
/// std::invalid_argument when k is not in [1, N/4].
SteklovSpectrum compute_spectrum(const BoundaryDiscretization& b, int k, double tol);
SteklovSpectrum compute_sector_spectrum(const BoundaryDiscretization& b, Sector sector, int k,
                                        double tol);

/// discretize + compute_spectrum.
SteklovSpectrum solve_steklov(const DiskPairDomain& d, int k, const SolverSettings& settings);

/// Share of the (weighted) norm of v carried by each sector, in Sector::all() order.
std::array<double, 4> sector_shares(const Eigen::VectorXd& v, const BoundaryDiscretization& b);
/// Dominant parity class of every eigenvector, or "mixed" below 99%.
std::vector<std::string> classify_symmetry(const SteklovSpectrum& s,
                                           const BoundaryDiscretization& b);
/// Replaces every gap-test cluster holding a mixed eigenvector by its
/// projections onto the four sectors, so that all labels become pure.
void resplit_clusters(SteklovSpectrum& s, const BoundaryDiscretization& b);

/// Sign changes of the trace along the closed boundary, skipping nodes where
/// |v| <= threshold.
int boundary_nodal_count(const Eigen::VectorXd& v, const BoundaryDiscretization& b,
                         double threshold);

/// Harmonic extension of a boundary trace through u = S(du/dnu) - K u.
class HarmonicExtension {
public:
  HarmonicExtension(const BoundaryDiscretization& b, const Eigen::VectorXd& trace);

  /// Throws TooCloseToBoundary unless q is inside and farther from the
  /// boundary than the length of the nearest panel.
  double operator()(Point q) const;

private:
  BoundaryDiscretization b_;
  Eigen::VectorXd trace_;
  Eigen::VectorXd flux_;
};

double interior_eval(const Eigen::VectorXd& v, const BoundaryDiscretization& b, Point q);

}  // namespace steklov
