#pragma once

#include <span>
#include <vector>

namespace steklov {

/// Gauss-Legendre rule on [-1, 1]; nodes ascending and exactly antisymmetric.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Cached for each order; throws std::invalid_argument for n < 1.
const GaussRule& gauss_legendre(int n);

/// Lagrange interpolation on a fixed node set via the barycentric formula.
class LagrangeBasis {
public:
  explicit LagrangeBasis(std::span<const double> nodes);

  int size() const { return static_cast<int>(nodes_.size()); }
  /// Values of every basis polynomial at t, written to out (size() entries).
  void evaluate(double t, std::span<double> out) const;

private:
  std::vector<double> nodes_;
  std::vector<double> bary_;
};

}  // namespace steklov
