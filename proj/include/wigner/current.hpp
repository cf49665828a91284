#pragma once

#include <utility>

#include "wigner/wigner.hpp"

namespace wigner {

// Position current j_x = (p / m) W, one component per momentum axis.
Eigen::VectorXd current_x(double w_value, const Eigen::VectorXd& p, double m);

// Closed-form 1D box momentum current.  The current vanishes identically at
// the box center, where the boundary chord pins both pair-density factors to
// opposite walls; the vanishing chord at the walls is approached from inside.
double current_p_box(const StateExpansion& s, double x, double p, double t);
ScalarField current_p_box_field(const StateExpansion& s, const PhaseSpaceGrid& grid, double t);

// Momentum current from the chord-set boundary integral, one component per
// axis.  Nodes sitting on the y_k = 0 axis are split along the edge tangent.
Eigen::VectorXd current_p_surface(const StateExpansion& s, const BilliardShape& shape,
                                  const Eigen::VectorXd& x, const Eigen::VectorXd& p,
                                  double t, int resolution);

// Boundary source of the evolution equation: the chord-set surface integral
// of the inward normal derivative of the pair density.
double boundary_term(const StateExpansion& s, const BilliardShape& shape,
                     const Eigen::VectorXd& x, const Eigen::VectorXd& p, double t,
                     int resolution);

// dW/dt = -(p/m) dW/dx + boundary term, evaluated analytically for 1D box states.
double eom_rhs(const StateExpansion& s, double x, double p, double t);

struct ContinuityReport {
  ScalarField residual;  // NaN at masked points
  double max_residual = 0.0;
  double max_dt = 0.0;
  double relative() const { return max_dt > 0.0 ? max_residual / max_dt : max_residual; }
};

// Residual of dW/dt + d(j_x)/dx + d(j_p)/dp on the grid interior, using
// 4th-order central stencils.  Two-cell margins and stencils crossing the
// box-center seam of j_p are masked out.
ContinuityReport continuity_residual(const StateExpansion& s, const PhaseSpaceGrid& grid,
                                     double t);

// (left, right) sides of the boundary-layer identity at one phase-space
// point: the scaled-surface delta-prime commutator terms against the
// chord-set boundary source.  Both vanish outside the billiard.
std::pair<double, double> delta_prime_equivalence(const StateExpansion& s,
                                                  const BilliardShape& shape,
                                                  const Eigen::VectorXd& x,
                                                  const Eigen::VectorXd& p, double t,
                                                  int resolution);

}  // namespace wigner
