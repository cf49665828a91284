#include "wigner/current.hpp"

#include <cmath>
#include <limits>
#include <optional>

namespace wigner {

namespace {

double ensure_real(complexd v, double tol, const char* what) {
  if (std::abs(v.imag()) > tol)
    throw std::runtime_error(std::string(what) + ": imaginary residue " +
                             std::to_string(v.imag()));
  return v.real();
}

// Lower chord endpoint and d/dx of the pair density there, for a 1D state at
// a point strictly between the box center and a wall.
std::pair<double, complexd> lower_chord_dxf(const StateExpansion& s, double x, double t) {
  const double lam = s.halfwidth(0);
  const double u = (x - s.center(0)) / lam;
  const double ylo = lam * (2.0 * std::abs(u) - 2.0);
  const Eigen::VectorXd xv = Eigen::VectorXd::Constant(1, x);
  const Eigen::VectorXd yv = Eigen::VectorXd::Constant(1, ylo);
  return {ylo, grad_x_f(s, xv, yv, t)(0)};
}

double jp_from_chord(double ylo, complexd dxf, double p, double mass) {
  return -(std::exp(complexd(0.0, -p * ylo)) * dxf).real() / (pi * mass * ylo);
}

// Wall policy for the closed-form momentum current.  The chord length
// vanishes on the walls, so |u| = 1 is approached from inside; everywhere
// else the formula is direct.  At the box center the chord spans wall to
// wall, both pair-density factors vanish, and the current is exactly zero.
std::optional<double> jp_eval_point(const StateExpansion& s, double x) {
  const double lam = s.halfwidth(0), c = s.center(0);
  const double u = (x - c) / lam;
  if (std::abs(u) > 1.0) return std::nullopt;
  if (std::abs(u) >= 1.0 - 1e-9)
    return c + (u > 0.0 ? 1.0 : -1.0) * (1.0 - 1e-6) * lam;
  return x;
}

}  // namespace

Eigen::VectorXd current_x(double w_value, const Eigen::VectorXd& p, double m) {
  if (!(m > 0)) throw std::invalid_argument("mass must be positive");
  return (p / m) * w_value;
}

double current_p_box(const StateExpansion& s, double x, double p, double t) {
  if (s.dim() != 1) throw std::invalid_argument("current_p_box requires a 1D state");
  const auto point = jp_eval_point(s, x);
  if (!point) return 0.0;
  const auto [ylo, dxf] = lower_chord_dxf(s, *point, t);
  return jp_from_chord(ylo, dxf, p, s.mass);
}

ScalarField current_p_box_field(const StateExpansion& s, const PhaseSpaceGrid& grid,
                                double t) {
  if (s.dim() != 1) throw std::invalid_argument("current_p_box_field requires a 1D state");
  ScalarField field = zero_field(grid);
  for (int i = 0; i < grid.nx(); ++i) {
    const auto point = jp_eval_point(s, grid.x(i));
    if (!point) continue;
    const auto [ylo, dxf] = lower_chord_dxf(s, *point, t);
    for (int j = 0; j < grid.np(); ++j)
      field.values(i, j) = jp_from_chord(ylo, dxf, grid.p(j), s.mass);
  }
  return field;
}

Eigen::VectorXd current_p_surface(const StateExpansion& s, const BilliardShape& shape,
                                  const Eigen::VectorXd& x, const Eigen::VectorXd& p,
                                  double t, int resolution) {
  const int dim = s.dim();
  if (shape.dim() != dim || x.size() != dim || p.size() != dim)
    throw std::invalid_argument("current_p_surface dimension mismatch");

  Eigen::VectorXd x_eval = x;
  BoundaryContour contour = omega_contour(shape, x_eval, resolution);
  if (dim == 1 && !contour.nodes.empty()) {
    // A chord endpoint at y = 0 means x sits on a wall; step inside.
    bool on_axis = false;
    for (const ContourNode& node : contour.nodes)
      if (std::abs(node.y(0)) < 1e-9) on_axis = true;
    if (on_axis) {
      const double c = 0.5 * (shape.lo(0) + shape.hi(0));
      const double step = 1e-6 * 0.5 * (shape.hi(0) - shape.lo(0));
      x_eval(0) += x_eval(0) < c ? step : -step;
      contour = omega_contour(shape, x_eval, resolution);
    }
  }

  // Nodes on the y_k = 0 axis are split into half-weight pairs offset along
  // the edge tangent by a quarter of the node spacing.
  std::vector<ContourNode> nodes;
  for (const ContourNode& node : contour.nodes) {
    bool needs_split = false;
    if (dim == 2) {
      for (int k = 0; k < dim; ++k)
        if (std::abs(node.normal(k)) > 1e-12 && std::abs(node.y(k)) < 1e-9) needs_split = true;
    }
    if (!needs_split) {
      nodes.push_back(node);
      continue;
    }
    const Eigen::Vector2d tangent(-node.normal(1), node.normal(0));
    const double eta = 0.25 * node.weight;
    for (const double side : {1.0, -1.0}) {
      ContourNode half = node;
      half.y = node.y + side * eta * Eigen::VectorXd(tangent);
      half.weight = 0.5 * node.weight;
      nodes.push_back(std::move(half));
    }
  }

  Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(dim);
  for (const ContourNode& node : nodes) {
    Eigen::VectorXcd gxf;
    bool have_gxf = false;
    for (int k = 0; k < dim; ++k) {
      if (std::abs(node.normal(k)) < 1e-12) continue;
      if (std::abs(node.y(k)) < 1e-9) continue;  // edge on the axis, pair density vanishes
      if (!have_gxf) {
        gxf = grad_x_f(s, x_eval, node.y, t);
        have_gxf = true;
      }
      const complexd phase = std::exp(complexd(0.0, -p.dot(node.y)));
      acc(k) += node.weight * node.normal(k) * phase * gxf(k) / node.y(k);
    }
  }

  const double norm = std::pow(2.0 * pi, dim) * s.mass;
  Eigen::VectorXd out(dim);
  for (int k = 0; k < dim; ++k)
    out(k) = -ensure_real(acc(k), 1e-8 * norm, "current_p_surface") / norm;
  return out;
}

double boundary_term(const StateExpansion& s, const BilliardShape& shape,
                     const Eigen::VectorXd& x, const Eigen::VectorXd& p, double t,
                     int resolution) {
  const int dim = s.dim();
  if (shape.dim() != dim || x.size() != dim || p.size() != dim)
    throw std::invalid_argument("boundary_term dimension mismatch");
  const BoundaryContour contour = omega_contour(shape, x, resolution);
  const complexd acc =
      surface_integral(contour, [&](const Eigen::VectorXd& y, const Eigen::VectorXd& n) {
        return std::exp(complexd(0.0, -p.dot(y))) *
               n.cast<complexd>().dot(grad_x_f(s, x, y, t));
      });
  const complexd bt = complexd(0.0, -1.0) * acc / (std::pow(2.0 * pi, dim) * s.mass);
  return ensure_real(bt, 1e-8, "boundary_term");
}

double eom_rhs(const StateExpansion& s, double x, double p, double t) {
  if (s.dim() != 1) throw std::invalid_argument("eom_rhs requires a 1D state");
  const BilliardShape shape = BilliardShape::make_interval(s.center(0) - s.halfwidth(0),
                                                           s.center(0) + s.halfwidth(0));
  const double transport = -(p / s.mass) * wigner_box_analytic_dx(s, x, p, t);
  return transport + boundary_term(s, shape, Eigen::VectorXd::Constant(1, x),
                                   Eigen::VectorXd::Constant(1, p), t, 1);
}

ContinuityReport continuity_residual(const StateExpansion& s, const PhaseSpaceGrid& grid,
                                     double t) {
  if (s.dim() != 1) throw std::invalid_argument("continuity_residual requires a 1D state");
  const int nx = grid.nx(), np = grid.np();
  if (nx < 5 || np < 5) throw std::invalid_argument("continuity needs a 5x5 grid at least");

  const ScalarField w = wigner_box_field(s, grid, t);
  const ScalarField wt = wigner_box_field_dt(s, grid, t);
  const ScalarField jp = current_p_box_field(s, grid, t);
  Eigen::MatrixXd jx(nx, np);
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < np; ++j) jx(i, j) = grid.p(j) * w.values(i, j) / s.mass;

  const double hx = grid.dx(), hp = grid.dp();
  ContinuityReport report;
  report.residual = zero_field(grid);
  report.residual.values.setConstant(std::numeric_limits<double>::quiet_NaN());

  for (int i = 2; i < nx - 2; ++i) {
    // The momentum current has a derivative kink at the box center; skip
    // stencils whose interior straddles it.
    if (std::abs(grid.x(i) - s.center(0)) < 2.0 * hx - 1e-12) continue;
    for (int j = 2; j < np - 2; ++j) {
      const double djx = (-jx(i + 2, j) + 8.0 * jx(i + 1, j) - 8.0 * jx(i - 1, j) +
                          jx(i - 2, j)) /
                         (12.0 * hx);
      const double djp = (-jp.values(i, j + 2) + 8.0 * jp.values(i, j + 1) -
                          8.0 * jp.values(i, j - 1) + jp.values(i, j - 2)) /
                         (12.0 * hp);
      const double res = wt.values(i, j) + djx + djp;
      report.residual.values(i, j) = res;
      report.max_residual = std::max(report.max_residual, std::abs(res));
      report.max_dt = std::max(report.max_dt, std::abs(wt.values(i, j)));
    }
  }
  return report;
}

std::pair<double, double> delta_prime_equivalence(const StateExpansion& s,
                                                  const BilliardShape& shape,
                                                  const Eigen::VectorXd& x,
                                                  const Eigen::VectorXd& p, double t,
                                                  int resolution) {
  const int dim = s.dim();
  if (shape.dim() != dim || x.size() != dim || p.size() != dim)
    throw std::invalid_argument("delta_prime_equivalence dimension mismatch");

  const double rhs = boundary_term(s, shape, x, p, t, resolution);

  // Surfaces of the scaled regions 2x - 2B and 2B - 2x; only arcs bounding
  // the chord set contribute, selected by probing just inside each node.
  const BoundaryContour splus = scaled_shape_contour(shape, -2.0, 2.0 * x, resolution);
  const BoundaryContour sminus = scaled_shape_contour(shape, 2.0, -2.0 * x, resolution);
  const double eps = 2e-8 * shape.diameter();

  const auto gated = [&](const BoundaryContour& contour) {
    complexd acc = 0.0;
    for (const ContourNode& node : contour.nodes) {
      if (omega_indicator(shape, x, node.y + eps * node.normal) != 1) continue;
      const complexd phase = std::exp(complexd(0.0, -p.dot(node.y)));
      const complexd f = eval_f(s, x, node.y, t);
      const complexd dn = node.normal.cast<complexd>().dot(grad_y_f(s, x, node.y, t));
      acc += node.weight * phase * (complexd(0.0, -p.dot(node.normal)) * f + dn);
    }
    return -4.0 * acc / std::pow(2.0 * pi, dim);
  };

  const complexd a = gated(splus), b = gated(sminus);
  const double lhs =
      ensure_real(complexd(0.0, 1.0) / (2.0 * s.mass) * (b - a), 1e-8, "delta_prime lhs");
  return {lhs, rhs};
}

}  // namespace wigner
