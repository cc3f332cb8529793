#pragma once

// Nystroem discretization of the Laplace single-layer operator S and of the
// double-layer operator K on a BoundaryDiscretization.
//
//   (S g)(x) = int G(x, y) g(y) ds_y,   G = -(1/2pi) ln(|x - y| / R0)
//   (K u)(x) = int d/dnu_y G(x, y) u(y) ds_y
//
// A function harmonic inside the domain satisfies u = S(du/dnu) - K u at
// interior points and u/2 = S(du/dnu) - K u on the boundary.
//
// Entries coupling a target to a nearby panel are computed by product
// integration of the kernel against the panel's Lagrange basis, with geometric
// subdivision toward the nearest point of the panel. R0 exceeds the domain
// diameter so that S is invertible (the log capacity never equals R0).
//
// Two implementations share the row kernel: assemble_layer_rows runs rows in
// parallel with OpenMP, assemble_layer_rows_serial is the reference loop.

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "steklov/discretization.hpp"

namespace steklov {

struct LayerOperators {
  /// One row per requested target, one column per node.
  Eigen::MatrixXd single_layer;
  Eigen::MatrixXd double_layer;
  double reference_length = 1.0;
};

/// R0 used in the single-layer kernel.
double reference_length(const BoundaryDiscretization& b);

LayerOperators assemble_layer_rows(const BoundaryDiscretization& b, std::span<const int> rows);
LayerOperators assemble_layer_rows_serial(const BoundaryDiscretization& b,
                                          std::span<const int> rows);

/// All rows (square operators).
LayerOperators assemble_layer_operators(const BoundaryDiscretization& b);
LayerOperators assemble_layer_operators_serial(const BoundaryDiscretization& b);

struct PotentialRows {
  std::vector<double> single_layer;
  std::vector<double> double_layer;
};

/// Rows of S and K for an off-boundary target.
PotentialRows potential_rows(const BoundaryDiscretization& b, Point x);

}  // namespace steklov
