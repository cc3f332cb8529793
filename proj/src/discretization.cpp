#include "steklov/discretization.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "steklov/errors.hpp"
#include "steklov/quadrature.hpp"

namespace steklov {

namespace {

// Breakpoints of one arc in the normalized parameter u in [0, 1].
std::vector<double> arc_breakpoints(int n, double q, bool graded) {
  std::vector<double> u(n + 1);
  const int half = n / 2;
  for (int j = 0; j <= half; ++j) {
    const double t = static_cast<double>(j) / half;
    u[j] = graded ? 0.5 * std::pow(t, q) : 0.5 * t;
    u[n - j] = 1.0 - u[j];
  }
  u[half] = 0.5;
  return u;
}

int find_mirror(const std::vector<Point>& nodes, Point target, int hint) {
  int best = hint;
  double best_d = distance(nodes[hint], target);
  if (best_d < 1e-12) return best;
  for (int i = 0; i < static_cast<int>(nodes.size()); ++i) {
    const double d = distance(nodes[i], target);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

}  // namespace

double BoundaryDiscretization::total_weight() const {
  return std::accumulate(weights.begin(), weights.end(), 0.0);
}

double BoundaryDiscretization::panel_length(int panel) const {
  const Panel& p = panels[panel];
  return arcs[p.arc].radius * (p.angle_to - p.angle_from);
}

BoundaryDiscretization discretize(const DiskPairDomain& d, int n_per_arc, double grading,
                                  int panel_order) {
  if (d.mode() != DomainMode::Disk && (d.ell() < min_ell || d.ell() > max_ell)) {
    throw DegenerateDomain("ell = " + std::to_string(d.ell()) + " is outside [" +
                           std::to_string(min_ell) + ", " + std::to_string(max_ell) + "]");
  }
  if (n_per_arc < 8 || n_per_arc % 2 != 0) {
    throw std::invalid_argument("n_per_arc must be an even number >= 8");
  }
  if (!(grading >= 1.0)) throw std::invalid_argument("grading exponent must be >= 1");
  if (panel_order < 2 || panel_order > 32) {
    throw std::invalid_argument("panel order must lie in [2, 32]");
  }

  BoundaryDiscretization b;
  b.domain = d;
  b.n_per_arc = n_per_arc;
  b.grading_exponent = d.mode() == DomainMode::Disk ? 1.0 : grading;
  b.panel_order = panel_order;
  b.arcs = d.arcs();

  const bool graded = d.mode() != DomainMode::Disk;
  const std::vector<double> u = arc_breakpoints(n_per_arc, grading, graded);
  const GaussRule& rule = gauss_legendre(panel_order);

  for (int a = 0; a < static_cast<int>(b.arcs.size()); ++a) {
    const Arc& arc = b.arcs[a];
    const double span = arc.angle_to - arc.angle_from;
    for (int j = 0; j < n_per_arc; ++j) {
      Panel panel;
      panel.arc = a;
      panel.angle_from = arc.angle_from + span * u[j];
      panel.angle_to = arc.angle_from + span * u[j + 1];
      panel.first_node = b.size();
      const double half = 0.5 * (panel.angle_to - panel.angle_from);
      const double mid = 0.5 * (panel.angle_to + panel.angle_from);
      for (int k = 0; k < panel_order; ++k) {
        const double angle = mid + half * rule.nodes[k];
        b.nodes.push_back(arc.at(angle));
        b.normals.push_back(Arc::normal(angle));
        b.weights.push_back(arc.radius * half * rule.weights[k]);
        b.angles.push_back(angle);
        b.node_arc.push_back(a);
        b.node_panel.push_back(static_cast<int>(b.panels.size()));
      }
      b.panels.push_back(panel);
    }
  }

  // Reflections. The layout is symmetric by construction: the x-mirror of node
  // k on a panel is node (order-1-k) on the mirrored panel of the same arc, and
  // the y-mirror of arc 0 is arc 1 traversed backwards.
  const int n = b.size();
  const int per_arc = n_per_arc * panel_order;
  b.mirror_x.resize(n);
  b.mirror_y.resize(n);
  for (int i = 0; i < n; ++i) {
    const int a = i / per_arc;
    const int local = i % per_arc;
    const int mx_guess = a * per_arc + (per_arc - 1 - local);
    const int my_guess = (1 - a) * per_arc + (per_arc - 1 - local);
    b.mirror_x[i] = find_mirror(b.nodes, {-b.nodes[i].x, b.nodes[i].y}, mx_guess);
    b.mirror_y[i] = find_mirror(b.nodes, {b.nodes[i].x, -b.nodes[i].y}, my_guess);
  }
  return b;
}

}  // namespace steklov
