#pragma once

#include <cmath>
#include <complex>

namespace steklov {

inline constexpr double pi = 3.14159265358979323846;

/// A point of the plane.
struct Point {
  double x = 0.0;
  double y = 0.0;

  friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
  friend bool operator==(const Point&, const Point&) = default;

  double norm() const { return std::hypot(x, y); }
  double norm2() const { return x * x + y * y; }
  std::complex<double> complex() const { return {x, y}; }
  static Point from(std::complex<double> z) { return {z.real(), z.imag()}; }
};

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double distance(Point a, Point b) { return (a - b).norm(); }

}  // namespace steklov
