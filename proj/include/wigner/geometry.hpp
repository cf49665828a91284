#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "wigner/base.hpp"

namespace wigner {

// Billiard region: an interval, an axis-aligned box, or a convex polygon.
// Polygons are 2D with counterclockwise vertex order.
struct BilliardShape {
  enum class Kind { interval, box, polygon };

  Kind kind = Kind::interval;
  Eigen::VectorXd lo, hi;     // interval and box bounds, per axis
  Eigen::Matrix2Xd vertices;  // polygon vertices, one per column

  static BilliardShape make_interval(double a, double b);
  static BilliardShape make_box(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi);
  static BilliardShape make_polygon(const Eigen::Matrix2Xd& vertices);

  int dim() const;
  double diameter() const;  // bounding-box diagonal
};

// Quadrature node on a boundary curve in y space.
struct ContourNode {
  Eigen::VectorXd y;
  Eigen::VectorXd normal;  // unit, pointing into the bounded region
  double weight = 0.0;     // arc-length weight; 1 per endpoint in 1D
};

struct BoundaryContour {
  std::vector<ContourNode> nodes;
};

// 1 iff x lies in the closed region (boundary points count as inside).
int indicator(const BilliardShape& shape, const Eigen::VectorXd& x);

// Indicator of the chord set Omega(x, y): both x - y/2 and x + y/2 inside.
int omega_indicator(const BilliardShape& shape, const Eigen::VectorXd& x,
                    const Eigen::VectorXd& y);

// Omega(x, .) as a convex polygon in y space; empty matrix when degenerate.
// Defined for 2D shapes.
Eigen::Matrix2Xd omega_polygon(const BilliardShape& shape, const Eigen::Vector2d& x);

// Boundary of Omega(x, .) with inward normals, `resolution` midpoint nodes
// per edge.  In 1D the contour is the two interval endpoints.
BoundaryContour omega_contour(const BilliardShape& shape, const Eigen::VectorXd& x,
                              int resolution);

// Boundary of the scaled and shifted region s * B + v.  The billiard's own
// surface is s = 1, v = 0.  Negative s flips orientation; normals stay inward.
BoundaryContour scaled_shape_contour(const BilliardShape& shape, double s,
                                     const Eigen::VectorXd& v, int resolution);

// Sum of weight * integrand(y, normal) over the contour nodes.
template <class F>
complexd surface_integral(const BoundaryContour& contour, F&& integrand) {
  complexd acc = 0.0;
  for (const ContourNode& node : contour.nodes)
    acc += node.weight * integrand(node.y, node.normal);
  return acc;
}

// Action of the surface delta-prime layer on u: minus the closed integral of
// the inward normal derivative of u over the shape's boundary.
double surface_delta_prime_apply(const BilliardShape& shape,
                                 const std::function<double(const Eigen::VectorXd&)>& u,
                                 int resolution);

// Sutherland-Hodgman clip of a convex CCW polygon by a convex CCW polygon.
Eigen::Matrix2Xd clip_convex(const Eigen::Matrix2Xd& subject, const Eigen::Matrix2Xd& clip);

double polygon_area(const Eigen::Matrix2Xd& polygon);

}  // namespace wigner
