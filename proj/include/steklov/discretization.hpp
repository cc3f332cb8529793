#pragma once

#include <vector>

#include "steklov/conformal.hpp"
#include "steklov/types.hpp"

namespace steklov {

/// Default number of Gauss-Legendre nodes per boundary panel.
inline constexpr int default_panel_order = 12;

/// Allowed range of the center offset for two-disk domains.
inline constexpr double min_ell = 0.02;
inline constexpr double max_ell = 0.98;

struct Panel {
  int arc = 0;
  double angle_from = 0.0;
  double angle_to = 0.0;
  /// Index of the first node of the panel; nodes are contiguous.
  int first_node = 0;
};

/// Panel/node/weight layout on the circular arcs of a DiskPairDomain.
///
/// Panels are graded algebraically toward the corners: on each arc the panel
/// breakpoints in the normalized arc parameter are (1/2)(2j/n)^q from either
/// end. Nodes run counterclockwise along the closed boundary.
struct BoundaryDiscretization {
  DiskPairDomain domain = DiskPairDomain::unit_disk();
  int n_per_arc = 0;
  double grading_exponent = 1.0;
  int panel_order = default_panel_order;

  std::vector<Arc> arcs;
  std::vector<Panel> panels;

  std::vector<Point> nodes;
  std::vector<Point> normals;
  /// Arc-length quadrature weights.
  std::vector<double> weights;
  std::vector<double> angles;
  std::vector<int> node_arc;
  std::vector<int> node_panel;

  /// Index of the node reflected through x -> -x and y -> -y.
  std::vector<int> mirror_x;
  std::vector<int> mirror_y;

  int size() const { return static_cast<int>(nodes.size()); }
  double total_weight() const;
  double panel_length(int panel) const;
};

/// Corner-graded discretization. Throws DegenerateDomain when ell is outside
/// [min_ell, max_ell] for two-disk domains, std::invalid_argument when
/// n_per_arc < 8 or odd, grading < 1 or panel_order outside [2, 32].
BoundaryDiscretization discretize(const DiskPairDomain& d, int n_per_arc, double grading = 3.0,
                                  int panel_order = default_panel_order);

}  // namespace steklov
