#include "steklov/assembly.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "steklov/quadrature.hpp"

namespace steklov {

namespace {

constexpr double inv_two_pi = 1.0 / (2.0 * pi);
// A panel is "near" a target closer than this many panel lengths.
constexpr double near_factor = 1.5;
constexpr int subdivision_order = 16;
constexpr int max_subdivision_levels = 40;

struct Target {
  Point x;
  int arc = -1;  // boundary arc of the target, -1 when off the boundary
  double angle = 0.0;
};

bool same_circle(const Arc& a, const Arc& b) {
  return a.center == b.center && a.radius == b.radius;
}

// Representative of `angle` modulo 2pi closest to `reference`.
double unwrap(double angle, double reference) {
  return angle + 2.0 * pi * std::round((reference - angle) / (2.0 * pi));
}

// Distance between two points of one circle given by their angles.
double chord(double radius, double a, double b) {
  return 2.0 * radius * std::abs(std::sin(0.5 * (a - b)));
}

class RowKernel {
public:
  explicit RowKernel(const BoundaryDiscretization& b)
      : b_(b),
        r0_(reference_length(b)),
        basis_(gauss_legendre(b.panel_order).nodes),
        sub_(gauss_legendre(subdivision_order)) {}

  double r0() const { return r0_; }

  // Fills one row of S and one of K.
  void row(const Target& t, std::span<double> s_row, std::span<double> k_row) const {
    const int order = b_.panel_order;
    for (int p = 0; p < static_cast<int>(b_.panels.size()); ++p) {
      const Panel& panel = b_.panels[p];
      const Arc& arc = b_.arcs[panel.arc];
      const bool on_circle = t.arc >= 0 && same_circle(arc, b_.arcs[t.arc]);
      const double mid = 0.5 * (panel.angle_from + panel.angle_to);
      const double half = 0.5 * (panel.angle_to - panel.angle_from);
      const double length = 2.0 * half * arc.radius;

      // Nearest point of the panel to the target, in the reference coordinate.
      double t_star = 0.0;
      double gap = 0.0;
      {
        double phi = on_circle ? unwrap(t.angle, mid)
                               : unwrap(std::atan2(t.x.y - arc.center.y, t.x.x - arc.center.x), mid);
        const double radial = on_circle ? 0.0 : std::abs(distance(t.x, arc.center) - arc.radius);
        t_star = (phi - mid) / half;
        if (t_star < -1.0 || t_star > 1.0) {
          t_star = std::clamp(t_star, -1.0, 1.0);
          gap = distance(t.x, arc.at(mid + half * t_star));
        } else {
          gap = radial;
        }
      }

      if (gap > near_factor * length) {
        for (int k = 0; k < order; ++k) {
          const int j = panel.first_node + k;
          const double r = on_circle ? chord(arc.radius, t.angle, b_.angles[j])
                                     : distance(t.x, b_.nodes[j]);
          s_row[j] = -inv_two_pi * std::log(r / r0_) * b_.weights[j];
          k_row[j] = on_circle ? -b_.weights[j] / (4.0 * pi * arc.radius)
                               : double_layer_kernel(t.x, b_.nodes[j], b_.normals[j]) * b_.weights[j];
        }
        continue;
      }

      std::array<double, 64> s_acc{};
      std::array<double, 64> k_acc{};
      integrate_near(t, arc, mid, half, t_star, gap, on_circle, s_acc, k_acc);
      for (int k = 0; k < order; ++k) {
        const int j = panel.first_node + k;
        s_row[j] = s_acc[k];
        k_row[j] = on_circle ? -b_.weights[j] / (4.0 * pi * arc.radius) : k_acc[k];
      }
    }
  }

private:
  // d/dnu_y G(x, y)
  static double double_layer_kernel(Point x, Point y, Point normal_y) {
    const Point d = x - y;
    return inv_two_pi * dot(d, normal_y) / d.norm2();
  }

  // Product integration of the kernels against the Lagrange basis of one panel,
  // subdividing geometrically toward the reference coordinate t_star.
  void integrate_near(const Target& t, const Arc& arc, double mid, double half, double t_star,
                      double gap, bool on_circle, std::array<double, 64>& s_acc,
                      std::array<double, 64>& k_acc) const {
    const int order = b_.panel_order;
    std::array<double, 64> lagrange{};
    const double jac = half * arc.radius;
    const bool want_k = !on_circle;
    // Unclamped reference coordinate of the target on its own circle.
    const double t_on_circle = on_circle ? (unwrap(t.angle, mid) - mid) / half : 0.0;

    // Pieces are given as offsets from t_star so that quadrature points never
    // collapse onto the singular point in floating point.
    const double shift = t_star - t_on_circle;
    auto piece = [&](double a, double b) {
      const double c = 0.5 * (a + b);
      const double h = 0.5 * std::abs(b - a);
      for (int q = 0; q < subdivision_order; ++q) {
        const double offset = c + h * sub_.nodes[q];
        const double tau = t_star + offset;
        const double w = h * sub_.weights[q] * jac;
        const double phi = mid + half * tau;
        const Point y = arc.at(phi);
        const double r = on_circle ? chord(arc.radius, half * (offset + shift), 0.0)
                                   : distance(t.x, y);
        const double g = -inv_two_pi * std::log(r / r0_) * w;
        const double kk = want_k ? double_layer_kernel(t.x, y, Arc::normal(phi)) * w : 0.0;
        basis_.evaluate(tau, std::span<double>(lagrange.data(), order));
        for (int k = 0; k < order; ++k) {
          s_acc[k] += g * lagrange[k];
          k_acc[k] += kk * lagrange[k];
        }
      }
    };

    for (const double side : {-1.0, 1.0}) {
      const double extent = side < 0 ? t_star + 1.0 : 1.0 - t_star;
      if (extent <= 0.0) continue;
      double outer = extent;
      int level = 0;
      while (level < max_subdivision_levels && 0.5 * outer * jac > 0.5 * gap) {
        const double inner = 0.5 * outer;
        piece(side * outer, side * inner);
        outer = inner;
        ++level;
      }
      piece(side * outer, 0.0);
    }
  }

  const BoundaryDiscretization& b_;
  double r0_;
  LagrangeBasis basis_;
  const GaussRule& sub_;
};

Target boundary_target(const BoundaryDiscretization& b, int i) {
  return Target{b.nodes[i], b.node_arc[i], b.angles[i]};
}

LayerOperators allocate(const BoundaryDiscretization& b, std::size_t rows) {
  LayerOperators ops;
  ops.single_layer.resize(static_cast<Eigen::Index>(rows), b.size());
  ops.double_layer.resize(static_cast<Eigen::Index>(rows), b.size());
  ops.reference_length = reference_length(b);
  return ops;
}

void fill_row(const RowKernel& kernel, const BoundaryDiscretization& b, int target,
              Eigen::Index r, LayerOperators& ops) {
  std::vector<double> s(b.size());
  std::vector<double> k(b.size());
  kernel.row(boundary_target(b, target), s, k);
  for (int j = 0; j < b.size(); ++j) {
    ops.single_layer(r, j) = s[j];
    ops.double_layer(r, j) = k[j];
  }
}

std::vector<int> all_rows(const BoundaryDiscretization& b) {
  std::vector<int> rows(b.size());
  std::iota(rows.begin(), rows.end(), 0);
  return rows;
}

}  // namespace

double reference_length(const BoundaryDiscretization& b) {
  // Twice the circumradius of the domain bounds its diameter.
  const double reach = b.domain.scale() * (1.0 + b.domain.ell());
  return 4.0 * reach;
}

LayerOperators assemble_layer_rows(const BoundaryDiscretization& b, std::span<const int> rows) {
  LayerOperators ops = allocate(b, rows.size());
  const RowKernel kernel(b);
  const auto count = static_cast<std::ptrdiff_t>(rows.size());
#pragma omp parallel for schedule(dynamic, 8)
  for (std::ptrdiff_t r = 0; r < count; ++r) {
    fill_row(kernel, b, rows[r], static_cast<Eigen::Index>(r), ops);
  }
  return ops;
}

LayerOperators assemble_layer_rows_serial(const BoundaryDiscretization& b,
                                          std::span<const int> rows) {
  LayerOperators ops = allocate(b, rows.size());
  const RowKernel kernel(b);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    fill_row(kernel, b, rows[r], static_cast<Eigen::Index>(r), ops);
  }
  return ops;
}

LayerOperators assemble_layer_operators(const BoundaryDiscretization& b) {
  const std::vector<int> rows = all_rows(b);
  return assemble_layer_rows(b, rows);
}

LayerOperators assemble_layer_operators_serial(const BoundaryDiscretization& b) {
  const std::vector<int> rows = all_rows(b);
  return assemble_layer_rows_serial(b, rows);
}

PotentialRows potential_rows(const BoundaryDiscretization& b, Point x) {
  const RowKernel kernel(b);
  PotentialRows rows;
  rows.single_layer.resize(b.size());
  rows.double_layer.resize(b.size());
  kernel.row(Target{x, -1, 0.0}, rows.single_layer, rows.double_layer);
  return rows;
}

}  // namespace steklov
