#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "wigner/base.hpp"

namespace wigner {

// Eigenmode expansion of a state in a box billiard.  Geometry is stored per
// axis as (center, halfwidth); mode shapes live on the reference box [-1,1]^n.
struct StateExpansion {
  Eigen::MatrixXi modes;      // dim x count, one mode tuple per column
  Eigen::VectorXcd coeffs;    // unit l2 norm
  Eigen::VectorXd energies;   // physical, sum_i pi^2 n_i^2 / (8 m halfwidth_i^2)
  double mass = 1.0;
  Eigen::VectorXd center;     // per axis
  Eigen::VectorXd halfwidth;  // per axis

  int dim() const { return static_cast<int>(modes.rows()); }
  int mode_count() const { return static_cast<int>(modes.cols()); }
};

// Reference-box mode energy sum_i pi^2 n_i^2 / 8.
double energy(const Eigen::VectorXi& n);

// sin(pi n (u+1)/2) on [-1,1], exactly 0 on and outside the walls.
double mode_sine(int n, double u);

// Derivative of mode_sine; keeps the inside limit at |u| = 1, 0 beyond.
double mode_sine_du(int n, double u);

// Product sine eigenfunction with unit L2 norm on the physical box.
double eigenfunction(const Eigen::VectorXi& n, const Eigen::VectorXd& x,
                     const Eigen::VectorXd& center, const Eigen::VectorXd& halfwidth);

// Coefficients are normalized to unit l2 norm; modes must be distinct.
StateExpansion make_state(const Eigen::MatrixXi& modes, const Eigen::VectorXcd& coeffs,
                          double mass, const Eigen::VectorXd& center,
                          const Eigen::VectorXd& halfwidth);

// 1D reference-box convenience constructor (center 0, halfwidth 1).
StateExpansion make_state(const std::vector<int>& modes, const std::vector<complexd>& coeffs,
                          double mass = 1.0);

// Project the packet (2/pi)^{n/4} exp(-|x|^2/a^2 - i p0.x) onto the listed
// modes by Gauss-Legendre quadrature, then normalize.  Throws DegenerateState
// when every raw overlap is below 1e-14.
StateExpansion project_gaussian(double a, const Eigen::VectorXd& p0,
                                const Eigen::MatrixXi& modes, double mass,
                                const Eigen::VectorXd& center,
                                const Eigen::VectorXd& halfwidth, int quad_order = 200);

complexd eval_psi(const StateExpansion& s, const Eigen::VectorXd& x, double t);
Eigen::VectorXcd grad_psi(const StateExpansion& s, const Eigen::VectorXd& x, double t);

// sum_k E_k c_k e^{-i E_k t} chi_k(x); the time derivative of psi is -i times this.
complexd eval_psi_energy(const StateExpansion& s, const Eigen::VectorXd& x, double t);

// Pair density f(x, y, t) = conj(psi(x - y/2)) psi(x + y/2).
complexd eval_f(const StateExpansion& s, const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                double t);
Eigen::VectorXcd grad_x_f(const StateExpansion& s, const Eigen::VectorXd& x,
                          const Eigen::VectorXd& y, double t);
Eigen::VectorXcd grad_y_f(const StateExpansion& s, const Eigen::VectorXd& x,
                          const Eigen::VectorXd& y, double t);

// Gauss-Legendre nodes and weights on [-1,1], cached per order.
const std::pair<Eigen::VectorXd, Eigen::VectorXd>& gauss_legendre(int order);

}  // namespace wigner
