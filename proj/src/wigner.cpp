#include "wigner/wigner.hpp"

#include <cmath>

namespace wigner {

namespace {

double ensure_real(complexd v, double tol, const char* what) {
  if (std::abs(v.imag()) > tol)
    throw std::runtime_error(std::string(what) + ": imaginary residue " +
                             std::to_string(v.imag()));
  return v.real();
}

void require_1d(const StateExpansion& s, const char* what) {
  if (s.dim() != 1) throw std::invalid_argument(std::string(what) + " requires a 1D state");
}

// Time phase conj(c_k) c_l e^{i (E_k - E_l) t} of the (k, l) mode pair.
complexd pair_weight(const StateExpansion& s, int k, int l, double t) {
  return std::conj(s.coeffs(k)) * s.coeffs(l) *
         std::exp(complexd(0.0, (s.energies(k) - s.energies(l)) * t));
}

complexd comb_eval(const DeltaComb& comb, double u, double ph) {
  complexd acc = 0.0;
  for (const DeltaCombTerm& term : comb.terms)
    acc += term.coeff(u) * g_box(u, ph - term.shift);
  return acc;
}

complexd comb_eval_du(const DeltaComb& comb, double u, double ph) {
  complexd acc = 0.0;
  for (const DeltaCombTerm& term : comb.terms)
    acc += term.coeff(u) * (complexd(0.0, term.phase_rate) * g_box(u, ph - term.shift) +
                            g_box_dx(u, ph - term.shift));
  return acc;
}

Eigen::VectorXd trapezoid_weights(const Eigen::VectorXd& axis) {
  const int n = static_cast<int>(axis.size());
  const double h = (axis(n - 1) - axis(0)) / (n - 1);
  Eigen::VectorXd w = Eigen::VectorXd::Constant(n, h);
  w(0) = w(n - 1) = 0.5 * h;
  return w;
}

}  // namespace

PhaseSpaceGrid PhaseSpaceGrid::uniform(double x0, double x1, int nx, double p0, double p1,
                                       int np) {
  if (nx < 2 || np < 2) throw std::invalid_argument("grid needs at least 2 nodes per axis");
  if (!(x0 < x1) || !(p0 < p1)) throw std::invalid_argument("grid bounds must increase");
  PhaseSpaceGrid g;
  g.x = Eigen::VectorXd::LinSpaced(nx, x0, x1);
  g.p = Eigen::VectorXd::LinSpaced(np, p0, p1);
  return g;
}

ScalarField zero_field(const PhaseSpaceGrid& grid) {
  return {grid, Eigen::MatrixXd::Zero(grid.nx(), grid.np())};
}

complexd DeltaCombTerm::coeff(double u) const {
  return amplitude * std::exp(complexd(0.0, phase_rate * (1.0 + u)));
}

DeltaComb lambda_nm(int n, int m) {
  DeltaComb comb;
  comb.terms[0] = {-pi * (n + m) / 4.0, complexd(0.25, 0.0), pi * (n - m) / 2.0};
  comb.terms[1] = {pi * (n + m) / 4.0, complexd(0.25, 0.0), -pi * (n - m) / 2.0};
  comb.terms[2] = {pi * (m - n) / 4.0, complexd(-0.25, 0.0), pi * (n + m) / 2.0};
  comb.terms[3] = {-pi * (m - n) / 4.0, complexd(-0.25, 0.0), -pi * (n + m) / 2.0};
  return comb;
}

double g_box(double x, double p) {
  const double ax = std::abs(x);
  if (ax >= 1.0) return 0.0;
  const double len = 1.0 - ax;
  const double z = 2.0 * p * len;
  if (std::abs(z) < 1e-8) return (2.0 * len / pi) * (1.0 - z * z / 6.0);
  return std::sin(z) / (pi * p);
}

double g_box_dx(double x, double p) {
  const double ax = std::abs(x);
  if (ax > 1.0) return 0.0;
  const double sgn = x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0);
  return -sgn * (2.0 / pi) * std::cos(2.0 * p * (1.0 - ax));
}

WignerQuadrature::WignerQuadrature(const StateExpansion& s, const BilliardShape& shape,
                                   const Eigen::VectorXd& x, double t,
                                   const std::vector<Eigen::VectorXd>& probe_momenta,
                                   double tol, int max_order) {
  dim_ = s.dim();
  if (shape.dim() != dim_ || x.size() != dim_)
    throw std::invalid_argument("quadrature dimension mismatch");
  separable_ = shape.kind != BilliardShape::Kind::polygon;
  if (!separable_ && dim_ != 2)
    throw std::invalid_argument("polygon support requires a 2D state");
  if (separable_) {
    shape_lo_ = shape.lo;
    shape_hi_ = shape.hi;
  } else {
    poly_cache_ = omega_polygon(shape, Eigen::Vector2d(x));
  }

  std::vector<Eigen::VectorXd> probes = probe_momenta;
  if (probes.empty()) probes.push_back(Eigen::VectorXd::Zero(dim_));

  const int first = separable_ ? 64 : 16;
  const int cap = separable_ ? max_order : std::max(first, max_order / 8);
  sample(s, x, t, first);
  if (empty_) return;
  std::vector<complexd> prev;
  for (const auto& p : probes) prev.push_back(eval(p));
  for (int order = 2 * first; order <= cap; order *= 2) {
    sample(s, x, t, order);
    bool ok = true;
    for (size_t i = 0; i < probes.size(); ++i) {
      const complexd cur = eval(probes[i]);
      if (std::abs(cur - prev[i]) > tol) ok = false;
      prev[i] = cur;
    }
    if (ok) return;
  }
  throw QuadratureNotConverged("transform did not stabilize under node doubling");
}

void WignerQuadrature::sample(const StateExpansion& s, const Eigen::VectorXd& x, double t,
                              int order) {
  const auto& [gl_nodes, gl_weights] = gauss_legendre(order);

  if (separable_) {
    // Per-axis chord support of the box: both x - y/2 and x + y/2 inside.
    std::vector<Eigen::VectorXd> nodes(dim_), weights(dim_);
    Eigen::VectorXd ylo(dim_), yhi(dim_);
    for (int i = 0; i < dim_; ++i) {
      ylo(i) = 2.0 * std::max(x(i) - shape_hi_(i), shape_lo_(i) - x(i));
      yhi(i) = 2.0 * std::min(x(i) - shape_lo_(i), shape_hi_(i) - x(i));
      if (!(ylo(i) < yhi(i))) {
        empty_ = true;
        return;
      }
      const double mid = 0.5 * (ylo(i) + yhi(i)), half = 0.5 * (yhi(i) - ylo(i));
      nodes[i] = (half * gl_nodes).array() + mid;
      weights[i] = half * gl_weights;
    }
    axis_nodes_ = nodes;

    if (dim_ == 1) {
      const int nq = order;
      Eigen::VectorXcd psim = Eigen::VectorXcd::Zero(nq), psip = Eigen::VectorXcd::Zero(nq);
      for (int k = 0; k < s.mode_count(); ++k) {
        const complexd ck =
            s.coeffs(k) * std::exp(complexd(0.0, -s.energies(k) * t));
        const double norm = std::sqrt(s.halfwidth(0));
        for (int q = 0; q < nq; ++q) {
          const double um = (x(0) - 0.5 * nodes[0](q) - s.center(0)) / s.halfwidth(0);
          const double up = (x(0) + 0.5 * nodes[0](q) - s.center(0)) / s.halfwidth(0);
          psim(q) += ck * (mode_sine(s.modes(0, k), um) / norm);
          psip(q) += ck * (mode_sine(s.modes(0, k), up) / norm);
        }
      }
      f1_ = psim.conjugate().cwiseProduct(psip).cwiseProduct(weights[0].cast<complexd>());
      return;
    }

    // 2D box: psi grids assembled as rank-1 mode updates.
    const int n1 = order, n2 = order;
    Eigen::MatrixXcd psim = Eigen::MatrixXcd::Zero(n1, n2),
                     psip = Eigen::MatrixXcd::Zero(n1, n2);
    for (int k = 0; k < s.mode_count(); ++k) {
      const complexd ck = s.coeffs(k) * std::exp(complexd(0.0, -s.energies(k) * t));
      Eigen::VectorXd um(n1), up(n1), vm(n2), vp(n2);
      for (int q = 0; q < n1; ++q) {
        um(q) = mode_sine(s.modes(0, k), (x(0) - 0.5 * nodes[0](q) - s.center(0)) / s.halfwidth(0));
        up(q) = mode_sine(s.modes(0, k), (x(0) + 0.5 * nodes[0](q) - s.center(0)) / s.halfwidth(0));
      }
      for (int q = 0; q < n2; ++q) {
        vm(q) = mode_sine(s.modes(1, k), (x(1) - 0.5 * nodes[1](q) - s.center(1)) / s.halfwidth(1));
        vp(q) = mode_sine(s.modes(1, k), (x(1) + 0.5 * nodes[1](q) - s.center(1)) / s.halfwidth(1));
      }
      const double norm = std::sqrt(s.halfwidth(0) * s.halfwidth(1));
      psim += (ck / norm) * (um * vm.transpose()).cast<complexd>();
      psip += (ck / norm) * (up * vp.transpose()).cast<complexd>();
    }
    f2_ = psim.conjugate().cwiseProduct(psip);
    f2_ = f2_.cwiseProduct((weights[0] * weights[1].transpose()).cast<complexd>());
    return;
  }

  // Polygon support: fan triangulation, tensor Gauss-Legendre per triangle.
  if (poly_cache_.cols() < 3) {
    empty_ = true;
    return;
  }
  const int ntri = static_cast<int>(poly_cache_.cols()) - 2;
  const int nq = order;
  flat_nodes_.resize(2, ntri * nq * nq);
  flat_fw_.resize(ntri * nq * nq);
  int idx = 0;
  for (int tri = 0; tri < ntri; ++tri) {
    const Eigen::Vector2d v0 = poly_cache_.col(0), va = poly_cache_.col(tri + 1),
                          vb = poly_cache_.col(tri + 2);
    const double area2 = std::abs((va.x() - v0.x()) * (vb.y() - v0.y()) -
                                  (va.y() - v0.y()) * (vb.x() - v0.x()));
    for (int i = 0; i < nq; ++i) {
      const double sfrac = 0.5 * (gl_nodes(i) + 1.0);
      for (int j = 0; j < nq; ++j) {
        const double tfrac = 0.5 * (gl_nodes(j) + 1.0);
        const Eigen::Vector2d y = v0 + sfrac * ((va - v0) + tfrac * (vb - va));
        const double w = 0.25 * gl_weights(i) * gl_weights(j) * area2 * sfrac;
        flat_nodes_.col(idx) = y;
        flat_fw_(idx) = w * eval_f(s, x, y, t);
        ++idx;
      }
    }
  }
}

complexd WignerQuadrature::eval(const Eigen::VectorXd& p) const {
  if (empty_) return 0.0;
  if (separable_ && dim_ == 1) {
    complexd acc = 0.0;
    for (int q = 0; q < f1_.size(); ++q)
      acc += std::exp(complexd(0.0, -p(0) * axis_nodes_[0](q))) * f1_(q);
    return acc / (2.0 * pi);
  }
  if (separable_) {
    const int n1 = static_cast<int>(axis_nodes_[0].size()),
              n2 = static_cast<int>(axis_nodes_[1].size());
    Eigen::VectorXcd v1(n1), v2(n2);
    for (int q = 0; q < n1; ++q) v1(q) = std::exp(complexd(0.0, -p(0) * axis_nodes_[0](q)));
    for (int q = 0; q < n2; ++q) v2(q) = std::exp(complexd(0.0, -p(1) * axis_nodes_[1](q)));
    return (v1.transpose() * (f2_ * v2)).value() / (4.0 * pi * pi);
  }
  complexd acc = 0.0;
  for (int q = 0; q < flat_fw_.size(); ++q)
    acc += std::exp(complexd(0.0, -p.dot(flat_nodes_.col(q)))) * flat_fw_(q);
  return acc / (4.0 * pi * pi);
}

Eigen::VectorXcd WignerQuadrature::eval_many(const Eigen::VectorXd& p) const {
  if (dim_ != 1) throw std::logic_error("eval_many is for 1D quadratures");
  if (empty_) return Eigen::VectorXcd::Zero(p.size());
  Eigen::MatrixXcd phases(p.size(), axis_nodes_[0].size());
  for (int i = 0; i < p.size(); ++i)
    for (int q = 0; q < axis_nodes_[0].size(); ++q)
      phases(i, q) = std::exp(complexd(0.0, -p(i) * axis_nodes_[0](q)));
  return (phases * f1_) / (2.0 * pi);
}

Eigen::MatrixXcd WignerQuadrature::eval_grid(const Eigen::VectorXd& p1,
                                             const Eigen::VectorXd& p2) const {
  if (dim_ != 2 || !separable_) throw std::logic_error("eval_grid is for separable 2D");
  if (empty_) return Eigen::MatrixXcd::Zero(p1.size(), p2.size());
  Eigen::MatrixXcd v1(p1.size(), axis_nodes_[0].size()), v2(axis_nodes_[1].size(), p2.size());
  for (int i = 0; i < p1.size(); ++i)
    for (int q = 0; q < axis_nodes_[0].size(); ++q)
      v1(i, q) = std::exp(complexd(0.0, -p1(i) * axis_nodes_[0](q)));
  for (int q = 0; q < axis_nodes_[1].size(); ++q)
    for (int j = 0; j < p2.size(); ++j)
      v2(q, j) = std::exp(complexd(0.0, -p2(j) * axis_nodes_[1](q)));
  return (v1 * f2_ * v2) / (4.0 * pi * pi);
}

double wigner_direct(const StateExpansion& s, const BilliardShape& shape,
                     const Eigen::VectorXd& x, const Eigen::VectorXd& p, double t) {
  WignerQuadrature quad(s, shape, x, t, {p});
  return ensure_real(quad.eval(p), 1e-8, "wigner_direct");
}

double wigner_box_analytic(const StateExpansion& s, double x, double p, double t) {
  require_1d(s, "wigner_box_analytic");
  const double u = (x - s.center(0)) / s.halfwidth(0);
  if (std::abs(u) >= 1.0) return 0.0;
  const double ph = s.halfwidth(0) * p;
  double acc = 0.0;
  for (int k = 0; k < s.mode_count(); ++k) {
    acc += std::norm(s.coeffs(k)) *
           comb_eval(lambda_nm(s.modes(0, k), s.modes(0, k)), u, ph).real();
    for (int l = k + 1; l < s.mode_count(); ++l)
      acc += 2.0 * (pair_weight(s, k, l, t) *
                    comb_eval(lambda_nm(s.modes(0, k), s.modes(0, l)), u, ph))
                       .real();
  }
  return acc;
}

double wigner_box_analytic_dx(const StateExpansion& s, double x, double p, double t) {
  require_1d(s, "wigner_box_analytic_dx");
  const double u = (x - s.center(0)) / s.halfwidth(0);
  if (std::abs(u) >= 1.0) return 0.0;
  const double ph = s.halfwidth(0) * p;
  double acc = 0.0;
  for (int k = 0; k < s.mode_count(); ++k) {
    acc += std::norm(s.coeffs(k)) *
           comb_eval_du(lambda_nm(s.modes(0, k), s.modes(0, k)), u, ph).real();
    for (int l = k + 1; l < s.mode_count(); ++l)
      acc += 2.0 * (pair_weight(s, k, l, t) *
                    comb_eval_du(lambda_nm(s.modes(0, k), s.modes(0, l)), u, ph))
                       .real();
  }
  return acc / s.halfwidth(0);
}

double wigner_box_analytic_dt(const StateExpansion& s, double x, double p, double t) {
  require_1d(s, "wigner_box_analytic_dt");
  const double u = (x - s.center(0)) / s.halfwidth(0);
  if (std::abs(u) >= 1.0) return 0.0;
  const double ph = s.halfwidth(0) * p;
  double acc = 0.0;
  for (int k = 0; k < s.mode_count(); ++k)
    for (int l = k + 1; l < s.mode_count(); ++l) {
      const complexd rate(0.0, s.energies(k) - s.energies(l));
      acc += 2.0 * (rate * pair_weight(s, k, l, t) *
                    comb_eval(lambda_nm(s.modes(0, k), s.modes(0, l)), u, ph))
                       .real();
    }
  return acc;
}

ScalarField wigner_box_field(const StateExpansion& s, const PhaseSpaceGrid& grid, double t) {
  ScalarField field = zero_field(grid);
  for (int i = 0; i < grid.nx(); ++i)
    for (int j = 0; j < grid.np(); ++j)
      field.values(i, j) = wigner_box_analytic(s, grid.x(i), grid.p(j), t);
  return field;
}

ScalarField wigner_box_field_dt(const StateExpansion& s, const PhaseSpaceGrid& grid, double t) {
  ScalarField field = zero_field(grid);
  for (int i = 0; i < grid.nx(); ++i)
    for (int j = 0; j < grid.np(); ++j)
      field.values(i, j) = wigner_box_analytic_dt(s, grid.x(i), grid.p(j), t);
  return field;
}

ScalarField wigner_direct_field(const StateExpansion& s, const BilliardShape& shape,
                                const PhaseSpaceGrid& grid, double t) {
  require_1d(s, "wigner_direct_field");
  ScalarField field = zero_field(grid);
  const double pmax = std::max(std::abs(grid.p(0)), std::abs(grid.p(grid.np() - 1)));
  const std::vector<Eigen::VectorXd> probes = {Eigen::VectorXd::Constant(1, pmax),
                                               Eigen::VectorXd::Zero(1)};
  for (int i = 0; i < grid.nx(); ++i) {
    WignerQuadrature quad(s, shape, Eigen::VectorXd::Constant(1, grid.x(i)), t, probes);
    const Eigen::VectorXcd row = quad.eval_many(grid.p);
    for (int j = 0; j < grid.np(); ++j)
      field.values(i, j) = ensure_real(row(j), 1e-8, "wigner_direct_field");
  }
  return field;
}

ShearResult free_wigner(const ScalarField& w0, double t, double m) {
  const PhaseSpaceGrid& grid = w0.grid;
  if (grid.nx() < 4) throw std::invalid_argument("free_wigner needs at least 4 x nodes");
  if (!(m > 0)) throw std::invalid_argument("mass must be positive");
  ShearResult result{zero_field(grid), 0};
  const double x0 = grid.x(0), x1 = grid.x(grid.nx() - 1), h = grid.dx();
  for (int j = 0; j < grid.np(); ++j) {
    const double shift = grid.p(j) * t / m;
    for (int i = 0; i < grid.nx(); ++i) {
      const double xs = grid.x(i) - shift;
      if (xs < x0 - 1e-12 || xs > x1 + 1e-12) {
        ++result.out_of_domain;
        continue;
      }
      int base = static_cast<int>(std::floor((xs - x0) / h));
      base = std::min(std::max(base, 1), grid.nx() - 3);
      const double u = (xs - grid.x(base)) / h;
      const double lm1 = -u * (u - 1.0) * (u - 2.0) / 6.0;
      const double l0 = (u + 1.0) * (u - 1.0) * (u - 2.0) / 2.0;
      const double l1 = -(u + 1.0) * u * (u - 2.0) / 2.0;
      const double l2 = (u + 1.0) * u * (u - 1.0) / 6.0;
      result.field.values(i, j) = lm1 * w0.values(base - 1, j) + l0 * w0.values(base, j) +
                                  l1 * w0.values(base + 1, j) + l2 * w0.values(base + 2, j);
    }
  }
  return result;
}

ScalarField convolve_p(const ScalarField& w0, const ScalarField& g, double window_tol) {
  const PhaseSpaceGrid& grid = w0.grid;
  if (grid.nx() != g.grid.nx() || grid.np() != g.grid.np() ||
      (grid.x - g.grid.x).cwiseAbs().maxCoeff() > 1e-12 ||
      (grid.p - g.grid.p).cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument("convolve_p requires matching grids");

  const int np = grid.np();
  int zero_index = 0;
  grid.p.cwiseAbs().minCoeff(&zero_index);
  if (std::abs(grid.p(zero_index)) > 1e-12)
    throw std::invalid_argument("momentum grid must contain p = 0");

  const double gmax = g.values.cwiseAbs().maxCoeff();
  const double edge = std::max(g.values.col(0).cwiseAbs().maxCoeff(),
                               g.values.col(np - 1).cwiseAbs().maxCoeff());
  if (gmax > 0 && edge > window_tol * gmax)
    throw WindowTooSmall("kernel edge/max ratio " + std::to_string(edge / gmax) +
                         " exceeds " + std::to_string(window_tol));

  Eigen::VectorXd cw = trapezoid_weights(grid.p);
  ScalarField out = zero_field(grid);
  for (int i = 0; i < grid.nx(); ++i)
    for (int k = 0; k < np; ++k) {
      double acc = 0.0;
      for (int j = 0; j < np; ++j) {
        const int m = k - j + zero_index;
        if (m < 0 || m >= np) continue;
        acc += cw(j) * w0.values(i, j) * g.values(i, m);
      }
      out.values(i, k) = acc;
    }
  return out;
}

ScalarField comb_field(const StateExpansion& s, const PhaseSpaceGrid& grid, double t) {
  require_1d(s, "comb_field");
  const double lam = s.halfwidth(0), c0 = s.center(0);
  const double tau = t / (s.mass * lam * lam);
  const int np = grid.np();
  const double dp = grid.dp();
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(grid.nx(), np);

  for (int k = 0; k < s.mode_count(); ++k)
    for (int l = 0; l < s.mode_count(); ++l) {
      const complexd z = std::conj(s.coeffs(k)) * s.coeffs(l);
      const DeltaComb comb = lambda_nm(s.modes(0, k), s.modes(0, l));
      for (const DeltaCombTerm& term : comb.terms) {
        const double p_phys = term.shift / lam;
        if (p_phys < grid.p(0) - 1e-12 || p_phys > grid.p(np - 1) + 1e-12)
          throw WindowTooSmall("comb node outside the momentum window");
        const double jf = (p_phys - grid.p(0)) / dp;
        int j0 = std::min(std::max(static_cast<int>(std::floor(jf)), 0), np - 2);
        const double frac = jf - j0;
        for (int i = 0; i < grid.nx(); ++i) {
          const double u = (grid.x(i) - c0) / lam - term.shift * tau;
          const complexd mass = z * term.coeff(u) / lam;
          acc(i, j0) += mass * (1.0 - frac) / dp;
          acc(i, j0 + 1) += mass * frac / dp;
        }
      }
    }

  const double imag_max = acc.imag().cwiseAbs().maxCoeff();
  if (imag_max > 1e-10 * std::max(1.0, acc.real().cwiseAbs().maxCoeff()))
    throw std::runtime_error("comb_field: imaginary residue " + std::to_string(imag_max));
  return {grid, acc.real()};
}

ScalarField g_box_field(const PhaseSpaceGrid& grid, double center, double halfwidth) {
  if (!(halfwidth > 0)) throw std::invalid_argument("halfwidth must be positive");
  ScalarField field = zero_field(grid);
  for (int i = 0; i < grid.nx(); ++i) {
    const double u = (grid.x(i) - center) / halfwidth;
    for (int j = 0; j < grid.np(); ++j)
      field.values(i, j) = halfwidth * g_box(u, halfwidth * grid.p(j));
  }
  return field;
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> marginals(const ScalarField& w) {
  const Eigen::VectorXd wx = trapezoid_weights(w.grid.x), wp = trapezoid_weights(w.grid.p);
  return {w.values * wp, w.values.transpose() * wx};
}

double field_integral(const ScalarField& w) {
  const Eigen::VectorXd wx = trapezoid_weights(w.grid.x), wp = trapezoid_weights(w.grid.p);
  return wx.dot(w.values * wp);
}

}  // namespace wigner
