#pragma once

#include <array>
#include <utility>
#include <vector>

#include "wigner/geometry.hpp"
#include "wigner/spectral.hpp"

namespace wigner {

// Phase-plane grid: uniform x and p axes of a 1D phase space.
struct PhaseSpaceGrid {
  Eigen::VectorXd x, p;

  static PhaseSpaceGrid uniform(double x0, double x1, int nx, double p0, double p1, int np);

  int nx() const { return static_cast<int>(x.size()); }
  int np() const { return static_cast<int>(p.size()); }
  double dx() const { return (x(x.size() - 1) - x(0)) / (x.size() - 1); }
  double dp() const { return (p(p.size() - 1) - p(0)) / (p.size() - 1); }
};

struct ScalarField {
  PhaseSpaceGrid grid;
  Eigen::MatrixXd values;  // nx rows, np columns
};

ScalarField zero_field(const PhaseSpaceGrid& grid);

// One momentum-shifted delta term: coefficient(u) = amplitude e^{i rate (1+u)}
// at momentum shift `shift`, all in reference-box units.
struct DeltaCombTerm {
  double shift = 0.0;
  complexd amplitude;
  double phase_rate = 0.0;

  complexd coeff(double u) const;
};

// Four-term momentum comb of a reference-box mode pair (n, m).
struct DeltaComb {
  std::array<DeltaCombTerm, 4> terms;
};

DeltaComb lambda_nm(int n, int m);

// Boundary kernel on the reference box: sin(2p(1-|x|)) / (pi p), 0 outside.
double g_box(double x, double p);
double g_box_dx(double x, double p);

// f samples on the support of Omega(x,.), converged by node doubling until
// the transform at the probe momenta is stable within tol.  One instance
// serves every p at fixed (x, t).
class WignerQuadrature {
 public:
  WignerQuadrature(const StateExpansion& s, const BilliardShape& shape,
                   const Eigen::VectorXd& x, double t,
                   const std::vector<Eigen::VectorXd>& probe_momenta, double tol = 1e-8,
                   int max_order = 1024);

  // (2 pi)^{-n} integral of e^{-i p.y} f(x, y, t) over Omega(x,.).
  complexd eval(const Eigen::VectorXd& p) const;
  // Transform at many momenta of a 1D quadrature.
  Eigen::VectorXcd eval_many(const Eigen::VectorXd& p) const;
  // Transform on a tensor momentum grid of a separable 2D quadrature.
  Eigen::MatrixXcd eval_grid(const Eigen::VectorXd& p1, const Eigen::VectorXd& p2) const;
  bool empty() const { return empty_; }

 private:
  void sample(const StateExpansion& s, const Eigen::VectorXd& x, double t, int order);

  int dim_ = 1;
  bool empty_ = false;
  bool separable_ = true;
  Eigen::VectorXd shape_lo_, shape_hi_;  // clipping bounds (separable case)
  Eigen::Matrix2Xd poly_cache_;          // clipped chord polygon (polygon case)
  std::vector<Eigen::VectorXd> axis_nodes_;
  Eigen::VectorXcd f1_;          // 1D: f * weight per node
  Eigen::MatrixXcd f2_;          // 2D box: f * weight, node i of axis 1 by node j of axis 2
  Eigen::Matrix2Xd flat_nodes_;  // polygon support: free node list
  Eigen::VectorXcd flat_fw_;
};

// Brute-force transform at one phase-space point; real up to an asserted
// 1e-8 imaginary residue.  Zero outside the billiard.
double wigner_direct(const StateExpansion& s, const BilliardShape& shape,
                     const Eigen::VectorXd& x, const Eigen::VectorXd& p, double t);

// Closed-form box evaluation (1D states) and its x and t derivatives.
double wigner_box_analytic(const StateExpansion& s, double x, double p, double t);
double wigner_box_analytic_dx(const StateExpansion& s, double x, double p, double t);
double wigner_box_analytic_dt(const StateExpansion& s, double x, double p, double t);

ScalarField wigner_box_field(const StateExpansion& s, const PhaseSpaceGrid& grid, double t);
ScalarField wigner_box_field_dt(const StateExpansion& s, const PhaseSpaceGrid& grid, double t);
ScalarField wigner_direct_field(const StateExpansion& s, const BilliardShape& shape,
                                const PhaseSpaceGrid& grid, double t);

// Free-particle shear W(x - p t / m, p) with 4-point cubic interpolation
// along x; points sheared out of the domain are zeroed and counted.
struct ShearResult {
  ScalarField field;
  long out_of_domain = 0;
};
ShearResult free_wigner(const ScalarField& w0, double t, double m);

// Momentum convolution with trapezoidal weights and zero padding.  The
// kernel must decay below window_tol * max|g| at the window edges.
ScalarField convolve_p(const ScalarField& w0, const ScalarField& g, double window_tol = 1e-3);

// Free-streamed delta comb of the state deposited on the grid; each delta is
// split linearly over the two bracketing p nodes.  Convolving against
// g_box_field rebuilds the boxed Wigner function.
ScalarField comb_field(const StateExpansion& s, const PhaseSpaceGrid& grid, double t);
ScalarField g_box_field(const PhaseSpaceGrid& grid, double center, double halfwidth);

// (x density, p density) by trapezoid over the opposite axis.
std::pair<Eigen::VectorXd, Eigen::VectorXd> marginals(const ScalarField& w);
double field_integral(const ScalarField& w);

}  // namespace wigner
