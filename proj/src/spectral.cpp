#include "wigner/spectral.hpp"

#include <cmath>
#include <mutex>
#include <unordered_map>

namespace wigner {

double energy(const Eigen::VectorXi& n) {
  double acc = 0.0;
  for (int i = 0; i < n.size(); ++i) acc += pi * pi * n(i) * n(i) / 8.0;
  return acc;
}

double mode_sine(int n, double u) {
  if (std::abs(u) >= 1.0) return 0.0;
  return std::sin(0.5 * pi * n * (u + 1.0));
}

double mode_sine_du(int n, double u) {
  if (std::abs(u) > 1.0) return 0.0;
  return 0.5 * pi * n * std::cos(0.5 * pi * n * (u + 1.0));
}

double eigenfunction(const Eigen::VectorXi& n, const Eigen::VectorXd& x,
                     const Eigen::VectorXd& center, const Eigen::VectorXd& halfwidth) {
  double acc = 1.0;
  for (int i = 0; i < n.size(); ++i)
    acc *= mode_sine(n(i), (x(i) - center(i)) / halfwidth(i)) / std::sqrt(halfwidth(i));
  return acc;
}

namespace {

void validate_modes(const Eigen::MatrixXi& modes) {
  if (modes.cols() < 1) throw std::invalid_argument("state requires at least one mode");
  if ((modes.array() < 1).any()) throw std::invalid_argument("mode numbers start at 1");
  for (int k = 0; k < modes.cols(); ++k)
    for (int l = k + 1; l < modes.cols(); ++l)
      if (modes.col(k) == modes.col(l)) throw std::invalid_argument("duplicate mode");
}

}  // namespace

StateExpansion make_state(const Eigen::MatrixXi& modes, const Eigen::VectorXcd& coeffs,
                          double mass, const Eigen::VectorXd& center,
                          const Eigen::VectorXd& halfwidth) {
  validate_modes(modes);
  if (coeffs.size() != modes.cols())
    throw std::invalid_argument("one coefficient per mode required");
  if (!(mass > 0)) throw std::invalid_argument("mass must be positive");
  if (center.size() != modes.rows() || halfwidth.size() != modes.rows())
    throw std::invalid_argument("geometry dimension mismatch");
  if (!(halfwidth.array() > 0).all()) throw std::invalid_argument("halfwidth must be positive");
  const double norm = coeffs.norm();
  if (!(norm > 0)) throw DegenerateState("all coefficients vanish");

  StateExpansion s;
  s.modes = modes;
  s.coeffs = coeffs / norm;
  s.mass = mass;
  s.center = center;
  s.halfwidth = halfwidth;
  s.energies.resize(modes.cols());
  for (int k = 0; k < modes.cols(); ++k) {
    double e = 0.0;
    for (int i = 0; i < modes.rows(); ++i) {
      const double w = halfwidth(i);
      e += pi * pi * modes(i, k) * modes(i, k) / (8.0 * mass * w * w);
    }
    s.energies(k) = e;
  }
  return s;
}

StateExpansion make_state(const std::vector<int>& modes, const std::vector<complexd>& coeffs,
                          double mass) {
  Eigen::MatrixXi m(1, modes.size());
  for (size_t k = 0; k < modes.size(); ++k) m(0, k) = modes[k];
  Eigen::VectorXcd c(coeffs.size());
  for (size_t k = 0; k < coeffs.size(); ++k) c(k) = coeffs[k];
  return make_state(m, c, mass, Eigen::VectorXd::Zero(1), Eigen::VectorXd::Ones(1));
}

StateExpansion project_gaussian(double a, const Eigen::VectorXd& p0,
                                const Eigen::MatrixXi& modes, double mass,
                                const Eigen::VectorXd& center,
                                const Eigen::VectorXd& halfwidth, int quad_order) {
  validate_modes(modes);
  const int dim = static_cast<int>(modes.rows());
  if (p0.size() != dim) throw std::invalid_argument("p0 dimension mismatch");
  if (!(a > 0)) throw std::invalid_argument("packet width must be positive");
  const auto& [nodes, weights] = gauss_legendre(quad_order);

  // Per-axis overlaps of each needed mode number with the packet's 1D factor.
  const double packet_norm = std::pow(2.0 / pi, 0.25);
  std::vector<std::unordered_map<int, complexd>> overlaps(dim);
  for (int i = 0; i < dim; ++i) {
    for (int k = 0; k < modes.cols(); ++k) {
      const int n = modes(i, k);
      if (overlaps[i].count(n)) continue;
      complexd acc = 0.0;
      for (int q = 0; q < nodes.size(); ++q) {
        const double x = center(i) + halfwidth(i) * nodes(q);
        const double chi = mode_sine(n, nodes(q)) / std::sqrt(halfwidth(i));
        const complexd packet =
            packet_norm * std::exp(complexd(-x * x / (a * a), -p0(i) * x));
        acc += weights(q) * halfwidth(i) * chi * packet;
      }
      overlaps[i][n] = acc;
    }
  }

  Eigen::VectorXcd raw(modes.cols());
  for (int k = 0; k < modes.cols(); ++k) {
    complexd c = 1.0;
    for (int i = 0; i < dim; ++i) c *= overlaps[i][modes(i, k)];
    raw(k) = c;
  }
  if (raw.cwiseAbs().maxCoeff() < 1e-14)
    throw DegenerateState("packet has no overlap with the listed modes");
  return make_state(modes, raw, mass, center, halfwidth);
}

complexd eval_psi(const StateExpansion& s, const Eigen::VectorXd& x, double t) {
  complexd acc = 0.0;
  for (int k = 0; k < s.mode_count(); ++k) {
    double chi = 1.0;
    for (int i = 0; i < s.dim(); ++i)
      chi *= mode_sine(s.modes(i, k), (x(i) - s.center(i)) / s.halfwidth(i)) /
             std::sqrt(s.halfwidth(i));
    acc += s.coeffs(k) * std::exp(complexd(0.0, -s.energies(k) * t)) * chi;
  }
  return acc;
}

Eigen::VectorXcd grad_psi(const StateExpansion& s, const Eigen::VectorXd& x, double t) {
  const int dim = s.dim();
  Eigen::VectorXcd grad = Eigen::VectorXcd::Zero(dim);
  for (int k = 0; k < s.mode_count(); ++k) {
    Eigen::VectorXd chi(dim), dchi(dim);
    for (int i = 0; i < dim; ++i) {
      const double u = (x(i) - s.center(i)) / s.halfwidth(i);
      const double norm = std::sqrt(s.halfwidth(i));
      chi(i) = mode_sine(s.modes(i, k), u) / norm;
      dchi(i) = mode_sine_du(s.modes(i, k), u) / (norm * s.halfwidth(i));
    }
    const complexd ck = s.coeffs(k) * std::exp(complexd(0.0, -s.energies(k) * t));
    for (int i = 0; i < dim; ++i) {
      double prod = dchi(i);
      for (int j = 0; j < dim; ++j)
        if (j != i) prod *= chi(j);
      grad(i) += ck * prod;
    }
  }
  return grad;
}

complexd eval_psi_energy(const StateExpansion& s, const Eigen::VectorXd& x, double t) {
  complexd acc = 0.0;
  for (int k = 0; k < s.mode_count(); ++k) {
    double chi = 1.0;
    for (int i = 0; i < s.dim(); ++i)
      chi *= mode_sine(s.modes(i, k), (x(i) - s.center(i)) / s.halfwidth(i)) /
             std::sqrt(s.halfwidth(i));
    acc += s.energies(k) * s.coeffs(k) * std::exp(complexd(0.0, -s.energies(k) * t)) * chi;
  }
  return acc;
}

complexd eval_f(const StateExpansion& s, const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                double t) {
  return std::conj(eval_psi(s, x - 0.5 * y, t)) * eval_psi(s, x + 0.5 * y, t);
}

Eigen::VectorXcd grad_x_f(const StateExpansion& s, const Eigen::VectorXd& x,
                          const Eigen::VectorXd& y, double t) {
  const Eigen::VectorXd xm = x - 0.5 * y, xp = x + 0.5 * y;
  return grad_psi(s, xm, t).conjugate() * eval_psi(s, xp, t) +
         std::conj(eval_psi(s, xm, t)) * grad_psi(s, xp, t);
}

Eigen::VectorXcd grad_y_f(const StateExpansion& s, const Eigen::VectorXd& x,
                          const Eigen::VectorXd& y, double t) {
  const Eigen::VectorXd xm = x - 0.5 * y, xp = x + 0.5 * y;
  return -0.5 * grad_psi(s, xm, t).conjugate() * eval_psi(s, xp, t) +
         0.5 * std::conj(eval_psi(s, xm, t)) * grad_psi(s, xp, t);
}

const std::pair<Eigen::VectorXd, Eigen::VectorXd>& gauss_legendre(int order) {
  if (order < 1) throw std::invalid_argument("quadrature order must be positive");
  static std::mutex mutex;
  static std::unordered_map<int, std::pair<Eigen::VectorXd, Eigen::VectorXd>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(order);
  if (it != cache.end()) return it->second;

  Eigen::VectorXd nodes(order), weights(order);
  for (int i = 0; i < order; ++i) {
    // Newton iteration from the Chebyshev estimate of the i-th root.
    double x = std::cos(pi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double step = p1 / dp;
      x -= step;
      if (std::abs(step) < 1e-15) break;
    }
    nodes(i) = x;
    weights(i) = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return cache.emplace(order, std::make_pair(std::move(nodes), std::move(weights)))
      .first->second;
}

}  // namespace wigner
