#include "wigner/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace wigner {

namespace {

// Left normal of a CCW edge direction points into the enclosed region.
Eigen::Vector2d inward_normal(const Eigen::Vector2d& d) {
  Eigen::Vector2d n(-d.y(), d.x());
  return n / n.norm();
}

double cross2(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  return a.x() * b.y() - a.y() * b.x();
}

double signed_area(const Eigen::Matrix2Xd& poly) {
  double acc = 0.0;
  const int n = static_cast<int>(poly.cols());
  for (int i = 0; i < n; ++i)
    acc += cross2(poly.col(i), poly.col((i + 1) % n));
  return 0.5 * acc;
}

// Midpoint nodes along each polygon edge, inward normals, arc-length weights.
BoundaryContour polygon_contour(const Eigen::Matrix2Xd& poly, int resolution) {
  BoundaryContour contour;
  const int n = static_cast<int>(poly.cols());
  if (n < 3) return contour;
  double scale = 0.0;
  for (int i = 0; i < n; ++i) scale = std::max(scale, poly.col(i).norm());
  for (int i = 0; i < n; ++i) {
    Eigen::Vector2d a = poly.col(i), b = poly.col((i + 1) % n);
    Eigen::Vector2d d = b - a;
    const double len = d.norm();
    if (len < 1e-14 * std::max(scale, 1.0)) continue;
    for (int j = 0; j < resolution; ++j) {
      ContourNode node;
      node.y = a + ((j + 0.5) / resolution) * d;
      node.normal = inward_normal(d);
      node.weight = len / resolution;
      contour.nodes.push_back(std::move(node));
    }
  }
  return contour;
}

BoundaryContour interval_contour(double y_lo, double y_hi) {
  BoundaryContour contour;
  if (y_lo > y_hi) return contour;
  ContourNode lo, hi;
  lo.y = Eigen::VectorXd::Constant(1, y_lo);
  lo.normal = Eigen::VectorXd::Constant(1, 1.0);
  lo.weight = 1.0;
  hi.y = Eigen::VectorXd::Constant(1, y_hi);
  hi.normal = Eigen::VectorXd::Constant(1, -1.0);
  hi.weight = 1.0;
  contour.nodes.push_back(std::move(lo));
  contour.nodes.push_back(std::move(hi));
  return contour;
}

Eigen::Matrix2Xd rect_polygon(const Eigen::Vector2d& lo, const Eigen::Vector2d& hi) {
  Eigen::Matrix2Xd poly(2, 4);
  poly.col(0) = lo;
  poly.col(1) = Eigen::Vector2d(hi.x(), lo.y());
  poly.col(2) = hi;
  poly.col(3) = Eigen::Vector2d(lo.x(), hi.y());
  return poly;
}

}  // namespace

BilliardShape BilliardShape::make_interval(double a, double b) {
  if (!(a < b)) throw std::invalid_argument("interval requires a < b");
  BilliardShape s;
  s.kind = Kind::interval;
  s.lo = Eigen::VectorXd::Constant(1, a);
  s.hi = Eigen::VectorXd::Constant(1, b);
  return s;
}

BilliardShape BilliardShape::make_box(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi) {
  if (lo.size() != hi.size() || lo.size() < 1)
    throw std::invalid_argument("box requires matching lo/hi");
  if (!((hi - lo).array() > 0).all()) throw std::invalid_argument("box requires lo < hi");
  BilliardShape s;
  s.kind = Kind::box;
  s.lo = lo;
  s.hi = hi;
  return s;
}

BilliardShape BilliardShape::make_polygon(const Eigen::Matrix2Xd& vertices) {
  if (vertices.cols() < 3) throw std::invalid_argument("polygon requires 3+ vertices");
  BilliardShape s;
  s.kind = Kind::polygon;
  s.vertices = vertices;
  if (signed_area(vertices) < 0) s.vertices = vertices.rowwise().reverse();
  s.lo = s.vertices.rowwise().minCoeff();
  s.hi = s.vertices.rowwise().maxCoeff();
  return s;
}

int BilliardShape::dim() const { return kind == Kind::polygon ? 2 : static_cast<int>(lo.size()); }

double BilliardShape::diameter() const { return (hi - lo).norm(); }

int indicator(const BilliardShape& shape, const Eigen::VectorXd& x) {
  if (x.size() != shape.dim()) throw std::invalid_argument("indicator: dimension mismatch");
  if (shape.kind != BilliardShape::Kind::polygon)
    return ((x.array() >= shape.lo.array()) && (x.array() <= shape.hi.array())).all() ? 1 : 0;
  const int n = static_cast<int>(shape.vertices.cols());
  const double tol = 1e-12 * shape.diameter() * shape.diameter();
  for (int i = 0; i < n; ++i) {
    Eigen::Vector2d a = shape.vertices.col(i);
    Eigen::Vector2d b = shape.vertices.col((i + 1) % n);
    if (cross2(b - a, Eigen::Vector2d(x) - a) < -tol) return 0;
  }
  return 1;
}

int omega_indicator(const BilliardShape& shape, const Eigen::VectorXd& x,
                    const Eigen::VectorXd& y) {
  return indicator(shape, x - 0.5 * y) * indicator(shape, x + 0.5 * y);
}

Eigen::Matrix2Xd omega_polygon(const BilliardShape& shape, const Eigen::Vector2d& x) {
  if (shape.dim() != 2) throw std::invalid_argument("omega_polygon requires a 2D shape");
  if (shape.kind == BilliardShape::Kind::box) {
    Eigen::Vector2d ylo, yhi;
    for (int i = 0; i < 2; ++i) {
      ylo(i) = 2.0 * std::max(x(i) - shape.hi(i), shape.lo(i) - x(i));
      yhi(i) = 2.0 * std::min(x(i) - shape.lo(i), shape.hi(i) - x(i));
    }
    if (!(ylo.array() < yhi.array()).all()) return Eigen::Matrix2Xd(2, 0);
    return rect_polygon(ylo, yhi);
  }
  // Omega(x,.) = (2x - 2B) clipped by (2B - 2x); scaling by -2 flips the
  // orientation, so the first polygon is re-reversed to CCW.
  const Eigen::Matrix2Xd& v = shape.vertices;
  Eigen::Matrix2Xd p1 = ((-2.0 * v).colwise() + 2.0 * x).rowwise().reverse();
  Eigen::Matrix2Xd p2 = (2.0 * v).colwise() - 2.0 * x;
  return clip_convex(p1, p2);
}

BoundaryContour omega_contour(const BilliardShape& shape, const Eigen::VectorXd& x,
                              int resolution) {
  if (resolution < 1) throw std::invalid_argument("resolution must be positive");
  if (shape.dim() == 1) {
    const double a = shape.lo(0), b = shape.hi(0);
    const double y_lo = 2.0 * std::max(x(0) - b, a - x(0));
    const double y_hi = 2.0 * std::min(x(0) - a, b - x(0));
    return interval_contour(y_lo, y_hi);
  }
  if (shape.dim() != 2)
    throw std::invalid_argument("omega_contour implemented for 1D and 2D shapes");
  return polygon_contour(omega_polygon(shape, Eigen::Vector2d(x)), resolution);
}

BoundaryContour scaled_shape_contour(const BilliardShape& shape, double s,
                                     const Eigen::VectorXd& v, int resolution) {
  if (resolution < 1) throw std::invalid_argument("resolution must be positive");
  if (v.size() != shape.dim()) throw std::invalid_argument("shift dimension mismatch");
  if (shape.dim() == 1) {
    const double p1 = s * shape.lo(0) + v(0), p2 = s * shape.hi(0) + v(0);
    return interval_contour(std::min(p1, p2), std::max(p1, p2));
  }
  if (shape.dim() != 2)
    throw std::invalid_argument("scaled_shape_contour implemented for 1D and 2D shapes");
  if (shape.kind == BilliardShape::Kind::box) {
    Eigen::Vector2d a = s * Eigen::Vector2d(shape.lo) + Eigen::Vector2d(v);
    Eigen::Vector2d b = s * Eigen::Vector2d(shape.hi) + Eigen::Vector2d(v);
    return polygon_contour(rect_polygon(a.cwiseMin(b), a.cwiseMax(b)), resolution);
  }
  Eigen::Matrix2Xd poly = (s * shape.vertices).colwise() + Eigen::Vector2d(v);
  if (s < 0) poly = poly.rowwise().reverse().eval();
  return polygon_contour(poly, resolution);
}

double surface_delta_prime_apply(const BilliardShape& shape,
                                 const std::function<double(const Eigen::VectorXd&)>& u,
                                 int resolution) {
  BoundaryContour contour =
      scaled_shape_contour(shape, 1.0, Eigen::VectorXd::Zero(shape.dim()), resolution);
  const double h = 1e-6 * shape.diameter();
  complexd acc = surface_integral(contour, [&](const Eigen::VectorXd& y, const Eigen::VectorXd& n) {
    return (u(y + h * n) - u(y - h * n)) / (2.0 * h);
  });
  return -acc.real();
}

Eigen::Matrix2Xd clip_convex(const Eigen::Matrix2Xd& subject, const Eigen::Matrix2Xd& clip) {
  std::vector<Eigen::Vector2d> poly;
  for (int i = 0; i < subject.cols(); ++i) poly.push_back(subject.col(i));
  double scale = 1.0;
  for (int i = 0; i < subject.cols(); ++i) scale = std::max(scale, subject.col(i).norm());
  for (int i = 0; i < clip.cols(); ++i) scale = std::max(scale, clip.col(i).norm());
  const double tol = 1e-14 * scale * scale;

  const int nc = static_cast<int>(clip.cols());
  for (int e = 0; e < nc && !poly.empty(); ++e) {
    Eigen::Vector2d a = clip.col(e), b = clip.col((e + 1) % nc);
    Eigen::Vector2d d = b - a;
    std::vector<Eigen::Vector2d> out;
    const int np = static_cast<int>(poly.size());
    for (int i = 0; i < np; ++i) {
      Eigen::Vector2d p = poly[i], q = poly[(i + 1) % np];
      const double sp = cross2(d, p - a), sq = cross2(d, q - a);
      const bool pin = sp >= -tol, qin = sq >= -tol;
      if (pin) out.push_back(p);
      if (pin != qin) out.push_back(p + (sp / (sp - sq)) * (q - p));
    }
    poly = std::move(out);
  }

  // Drop consecutive near-duplicate vertices from edge-crossing roundoff.
  std::vector<Eigen::Vector2d> clean;
  for (const Eigen::Vector2d& p : poly) {
    if (clean.empty() || (p - clean.back()).norm() > 1e-13 * scale) clean.push_back(p);
  }
  while (clean.size() > 1 && (clean.front() - clean.back()).norm() <= 1e-13 * scale)
    clean.pop_back();
  Eigen::Matrix2Xd result(2, clean.size());
  for (size_t i = 0; i < clean.size(); ++i) result.col(i) = clean[i];
  return result;
}

double polygon_area(const Eigen::Matrix2Xd& polygon) {
  if (polygon.cols() < 3) return 0.0;
  return std::abs(signed_area(polygon));
}

}  // namespace wigner
