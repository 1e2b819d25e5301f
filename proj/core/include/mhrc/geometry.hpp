#pragma once

#include <cmath>

namespace mhrc {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

inline double distance(Point a, Point b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

inline double squared_distance(Point a, Point b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

/// Angle in degrees at `at` between the directions toward `a` and toward `b`.
/// Result is in [0, 180].
inline double angle_between_deg(Point at, Point a, Point b) {
  const double ux = a.x - at.x, uy = a.y - at.y;
  const double vx = b.x - at.x, vy = b.y - at.y;
  const double nu = std::hypot(ux, uy);
  const double nv = std::hypot(vx, vy);
  if (nu == 0.0 || nv == 0.0) {
    return 0.0;
  }
  double c = (ux * vx + uy * vy) / (nu * nv);
  c = std::fmax(-1.0, std::fmin(1.0, c));
  return std::acos(c) * 180.0 / M_PI;
}

}  // namespace mhrc
