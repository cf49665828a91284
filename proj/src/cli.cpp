#include "wigner/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <set>

namespace wigner {

using nlohmann::json;

namespace {

double as_number(const json& j, const std::string& what) {
  if (!j.is_number()) throw ConfigError(what + " must be a number");
  return j.get<double>();
}

int as_int(const json& j, const std::string& what) {
  if (!j.is_number_integer()) throw ConfigError(what + " must be an integer");
  return j.get<int>();
}

Eigen::VectorXd as_vector(const json& j, const std::string& what) {
  if (!j.is_array() || j.empty()) throw ConfigError(what + " must be a non-empty array");
  Eigen::VectorXd v(j.size());
  for (size_t i = 0; i < j.size(); ++i) v(i) = as_number(j.at(i), what);
  return v;
}

BilliardShape parse_shape(const json& j) {
  if (!j.is_object()) throw ConfigError("shape must be an object");
  const std::string kind = j.value("kind", "");
  if (kind == "interval")
    return BilliardShape::make_interval(as_number(j.at("a"), "shape.a"),
                                        as_number(j.at("b"), "shape.b"));
  if (kind == "box")
    return BilliardShape::make_box(as_vector(j.at("lo"), "shape.lo"),
                                   as_vector(j.at("hi"), "shape.hi"));
  if (kind == "polygon") {
    const json& jv = j.at("vertices");
    if (!jv.is_array() || jv.size() < 3)
      throw ConfigError("shape.vertices must list at least 3 points");
    Eigen::Matrix2Xd vertices(2, jv.size());
    for (size_t k = 0; k < jv.size(); ++k) {
      if (!jv.at(k).is_array() || jv.at(k).size() != 2)
        throw ConfigError("polygon vertices must be [x, y] pairs");
      vertices(0, k) = as_number(jv.at(k).at(0), "vertex x");
      vertices(1, k) = as_number(jv.at(k).at(1), "vertex y");
    }
    return BilliardShape::make_polygon(vertices);
  }
  throw ConfigError("shape.kind must be interval, box, or polygon");
}

Eigen::MatrixXi parse_modes(const json& jm, int dim) {
  if (!jm.is_array() || jm.empty()) throw ConfigError("modes must be a non-empty array");
  Eigen::MatrixXi modes(dim, jm.size());
  for (size_t k = 0; k < jm.size(); ++k) {
    const json& entry = jm.at(k);
    if (entry.is_array()) {
      if (static_cast<int>(entry.size()) != dim)
        throw ConfigError("mode tuples must match the shape dimension");
      for (int i = 0; i < dim; ++i) modes(i, k) = as_int(entry.at(i), "mode number");
    } else {
      if (dim != 1) throw ConfigError("mode tuples must match the shape dimension");
      modes(0, k) = as_int(entry, "mode number");
    }
  }
  return modes;
}

std::optional<StateExpansion> parse_state(const json& j, const BilliardShape& shape,
                                          double mass) {
  if (!j.contains("state")) return std::nullopt;
  if (shape.kind == BilliardShape::Kind::polygon)
    throw ConfigError("states are defined on interval and box shapes");
  const int dim = shape.dim();
  const Eigen::VectorXd center = 0.5 * (shape.lo + shape.hi);
  const Eigen::VectorXd halfwidth = 0.5 * (shape.hi - shape.lo);
  const json& js = j.at("state");
  if (!js.is_object()) throw ConfigError("state must be an object");

  if (js.contains("gaussian")) {
    const json& g = js.at("gaussian");
    const double a = as_number(g.at("a"), "state.gaussian.a");
    Eigen::VectorXd p0;
    if (g.at("p0").is_array())
      p0 = as_vector(g.at("p0"), "state.gaussian.p0");
    else
      p0 = Eigen::VectorXd::Constant(1, as_number(g.at("p0"), "state.gaussian.p0"));
    if (p0.size() != dim) throw ConfigError("state.gaussian.p0 dimension mismatch");
    const Eigen::MatrixXi modes = parse_modes(g.at("modes"), dim);
    const int order = g.value("quadrature_order", 200);
    if (order < 8) throw ConfigError("quadrature_order too small");
    return project_gaussian(a, p0, modes, mass, center, halfwidth, order);
  }

  if (js.contains("coeffs")) {
    const json& c = js.at("coeffs");
    const Eigen::MatrixXi modes = parse_modes(c.at("modes"), dim);
    const json& jv = c.at("values");
    if (!jv.is_array() || static_cast<int>(jv.size()) != modes.cols())
      throw ConfigError("state.coeffs.values must list one value per mode");
    Eigen::VectorXcd coeffs(modes.cols());
    for (int k = 0; k < modes.cols(); ++k) {
      const json& entry = jv.at(k);
      if (entry.is_array() && entry.size() == 2)
        coeffs(k) = complexd(as_number(entry.at(0), "coefficient"),
                             as_number(entry.at(1), "coefficient"));
      else
        coeffs(k) = complexd(as_number(entry, "coefficient"), 0.0);
    }
    return make_state(modes, coeffs, mass, center, halfwidth);
  }

  throw ConfigError("state requires either gaussian or coeffs");
}

std::optional<PhaseSpaceGrid> parse_grid(const json& j) {
  if (!j.contains("grid")) return std::nullopt;
  const json& jg = j.at("grid");
  const json& jx = jg.at("x");
  const json& jp = jg.at("p");
  if (!jx.is_array() || jx.size() != 3 || !jp.is_array() || jp.size() != 3)
    throw ConfigError("grid.x and grid.p must be [min, max, count]");
  const int nx = as_int(jx.at(2), "grid.x count"), np = as_int(jp.at(2), "grid.p count");
  if (nx < 16 || np < 16) throw ConfigError("grids need at least 16 nodes per axis");
  return PhaseSpaceGrid::uniform(as_number(jx.at(0), "grid.x"), as_number(jx.at(1), "grid.x"),
                                 nx, as_number(jp.at(0), "grid.p"),
                                 as_number(jp.at(1), "grid.p"), np);
}

const StateExpansion& need_state(const RunConfig& cfg) {
  if (!cfg.state) throw ConfigError("config has no state");
  return *cfg.state;
}

const PhaseSpaceGrid& need_grid(const RunConfig& cfg) {
  if (!cfg.grid) throw ConfigError("config has no grid");
  return *cfg.grid;
}

double tolerance_of(const RunConfig& cfg, const std::string& name, double fallback) {
  const auto it = cfg.tolerances.find(name);
  return it == cfg.tolerances.end() ? fallback : it->second;
}

json state_json(const StateExpansion& s) {
  json modes = json::array(), coeffs = json::array(), energies = json::array();
  for (int k = 0; k < s.mode_count(); ++k) {
    json tuple = json::array();
    for (int i = 0; i < s.dim(); ++i) tuple.push_back(s.modes(i, k));
    modes.push_back(tuple);
    coeffs.push_back({s.coeffs(k).real(), s.coeffs(k).imag()});
    energies.push_back(s.energies(k));
  }
  return {{"modes", modes}, {"coeffs", coeffs}, {"energies", energies}, {"mass", s.mass}};
}

json grid_json(const PhaseSpaceGrid& g) {
  return {{"x", {g.x(0), g.x(g.nx() - 1), g.nx()}}, {"p", {g.p(0), g.p(g.np() - 1), g.np()}}};
}

json base_sidecar(const RunConfig& cfg, const std::string& command) {
  json side;
  side["version"] = version_string();
  side["command"] = command;
  side["config"] = cfg.raw;
  side["times"] = cfg.times;
  side["warnings"] = json::array();
  if (cfg.state) side["state"] = state_json(*cfg.state);
  if (cfg.grid) side["grid"] = grid_json(*cfg.grid);
  return side;
}

void write_sidecar(const RunConfig& cfg, const std::string& name, const json& side) {
  atomic_write_text(cfg.out_dir / name, side.dump(2) + "\n");
}

// Momentum wavefunction |phi~(p)|^2 by Gauss-Legendre over the box.
double momentum_density(const StateExpansion& s, double p, double t) {
  const auto& [nodes, weights] = gauss_legendre(200);
  const double lam = s.halfwidth(0), c = s.center(0);
  complexd acc = 0.0;
  for (int q = 0; q < nodes.size(); ++q) {
    const double x = c + lam * nodes(q);
    acc += weights(q) * lam * std::exp(complexd(0.0, -p * x)) *
           eval_psi(s, Eigen::VectorXd::Constant(1, x), t);
  }
  return std::norm(acc / std::sqrt(2.0 * pi));
}

CheckResult check_oracle(const RunConfig& cfg) {
  const StateExpansion& s = need_state(cfg);
  const PhaseSpaceGrid& grid = need_grid(cfg);
  if (s.dim() != 1) throw ConfigError("oracle check requires a 1D state");
  double worst = 0.0;
  for (const double t : cfg.times) {
    const ScalarField direct = wigner_direct_field(s, cfg.shape, grid, t);
    for (int i = 0; i < grid.nx(); ++i)
      for (int j = 0; j < grid.np(); ++j)
        worst = std::max(worst, std::abs(direct.values(i, j) -
                                         wigner_box_analytic(s, grid.x(i), grid.p(j), t)));
  }
  const double tol = tolerance_of(cfg, "oracle", 1e-6);
  return {"oracle", worst <= tol, worst, tol, "max |direct - analytic|"};
}

CheckResult check_marginals(const RunConfig& cfg) {
  const StateExpansion& s = need_state(cfg);
  if (s.dim() != 1) throw ConfigError("marginals check requires a 1D state");
  const double lam = s.halfwidth(0), c = s.center(0);
  double worst = 0.0;
  for (const double t : cfg.times) {
    const PhaseSpaceGrid wide = PhaseSpaceGrid::uniform(c - lam, c + lam, 513,
                                                        -128.0 * pi / lam,
                                                        128.0 * pi / lam, 512);
    const ScalarField field = wigner_box_field(s, wide, t);
    const auto [density_x, unused] = marginals(field);
    double target_max = 0.0, err_x = 0.0;
    for (int i = 0; i < wide.nx(); ++i) {
      const double target = std::norm(eval_psi(s, Eigen::VectorXd::Constant(1, wide.x(i)), t));
      target_max = std::max(target_max, target);
      err_x = std::max(err_x, std::abs(density_x(i) - target));
    }
    const double norm_err = std::abs(field_integral(field) - 1.0);

    const PhaseSpaceGrid narrow = PhaseSpaceGrid::uniform(c - lam, c + lam, 513,
                                                          -4.0 * pi / lam, 4.0 * pi / lam,
                                                          512);
    const ScalarField field_p = wigner_box_field(s, narrow, t);
    const auto [unused2, density_p] = marginals(field_p);
    double ptarget_max = 0.0, err_p = 0.0;
    for (int j = 0; j < narrow.np(); ++j) {
      const double target = momentum_density(s, narrow.p(j), t);
      ptarget_max = std::max(ptarget_max, target);
      err_p = std::max(err_p, std::abs(density_p(j) - target));
    }
    worst = std::max({worst, err_x / target_max, err_p / ptarget_max, norm_err});
  }
  const double tol = tolerance_of(cfg, "marginals", 1e-4);
  return {"marginals", worst <= tol, worst, tol,
          "max of x/p marginal relative error and norm defect"};
}

CheckResult check_continuity(const RunConfig& cfg) {
  const StateExpansion& s = need_state(cfg);
  const PhaseSpaceGrid& grid = need_grid(cfg);
  double worst = 0.0;
  for (const double t : cfg.times)
    worst = std::max(worst, continuity_residual(s, grid, t).relative());
  const double tol = tolerance_of(cfg, "continuity", 1e-3);
  return {"continuity", worst <= tol, worst, tol, "max residual / max |dW/dt|"};
}

CheckResult check_stationary(const RunConfig& cfg) {
  const StateExpansion& s = need_state(cfg);
  const PhaseSpaceGrid& grid = need_grid(cfg);
  if (s.mode_count() != 1) throw ConfigError("stationary check requires a single-mode state");
  double worst = 0.0;
  for (const double t : cfg.times)
    for (int i = 0; i < grid.nx(); ++i)
      for (int j = 0; j < grid.np(); ++j)
        worst = std::max(worst, std::abs(eom_rhs(s, grid.x(i), grid.p(j), t)));
  const double tol = tolerance_of(cfg, "stationary", 1e-6);
  return {"stationary", worst <= tol, worst, tol, "max |dW/dt| of an eigenstate"};
}

CheckResult check_deltaprime(const RunConfig& cfg) {
  const StateExpansion& s = need_state(cfg);
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int dim = s.dim();
  const int count = dim == 1 ? 20 : 5;
  const double span = dim == 1 ? 0.95 : 0.8;
  double worst = 0.0;
  for (int trial = 0; trial < count; ++trial) {
    Eigen::VectorXd x(dim), p(dim);
    for (int i = 0; i < dim; ++i) {
      x(i) = s.center(i) + s.halfwidth(i) * span * (2.0 * unit(rng) - 1.0);
      p(i) = (2.0 * pi) * (2.0 * unit(rng) - 1.0) / s.halfwidth(i);
    }
    const double t = unit(rng);
    const auto [lhs, rhs] = delta_prime_equivalence(s, cfg.shape, x, p, t, cfg.resolution);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  const double tol = tolerance_of(cfg, "deltaprime", dim == 1 ? 1e-8 : 1e-4);
  return {"deltaprime", worst <= tol, worst, tol, "max |lhs - rhs| over random probes"};
}

CheckResult check_separability2d(const RunConfig& cfg) {
  if (cfg.shape.kind != BilliardShape::Kind::box || cfg.shape.dim() != 2)
    throw ConfigError("separability2d check requires a 2D box shape");
  const double mass = cfg.state ? cfg.state->mass : 1.0;
  const Eigen::VectorXd center = 0.5 * (cfg.shape.lo + cfg.shape.hi);
  const Eigen::VectorXd halfwidth = 0.5 * (cfg.shape.hi - cfg.shape.lo);

  // Pinned product state: axis factors {1,2} with (0.8, 0.6i) and {1,3} with (0.6, 0.8).
  Eigen::MatrixXi ma(1, 2), mb(1, 2);
  ma << 1, 2;
  mb << 1, 3;
  Eigen::VectorXcd ca(2), cb(2);
  ca << complexd(0.8, 0.0), complexd(0.0, 0.6);
  cb << complexd(0.6, 0.0), complexd(0.8, 0.0);
  const StateExpansion sa = make_state(ma, ca, mass, center.head(1), halfwidth.head(1));
  const StateExpansion sb = make_state(mb, cb, mass, center.tail(1), halfwidth.tail(1));

  Eigen::MatrixXi modes(2, 4);
  Eigen::VectorXcd coeffs(4);
  int col = 0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      modes(0, col) = ma(0, i);
      modes(1, col) = mb(0, j);
      coeffs(col) = ca(i) * cb(j);
      ++col;
    }
  const StateExpansion product = make_state(modes, coeffs, mass, center, halfwidth);

  const double t = 0.3;
  const int n = 21;
  const Eigen::VectorXd x1 =
      Eigen::VectorXd::LinSpaced(n, center(0) - 0.9 * halfwidth(0), center(0) + 0.9 * halfwidth(0));
  const Eigen::VectorXd x2 =
      Eigen::VectorXd::LinSpaced(n, center(1) - 0.9 * halfwidth(1), center(1) + 0.9 * halfwidth(1));
  const Eigen::VectorXd p1 =
      Eigen::VectorXd::LinSpaced(n, -4.0 / halfwidth(0), 4.0 / halfwidth(0));
  const Eigen::VectorXd p2 =
      Eigen::VectorXd::LinSpaced(n, -4.0 / halfwidth(1), 4.0 / halfwidth(1));

  Eigen::MatrixXd wa(n, n), wb(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      wa(i, j) = wigner_box_analytic(sa, x1(i), p1(j), t);
      wb(i, j) = wigner_box_analytic(sb, x2(i), p2(j), t);
    }

  std::vector<Eigen::VectorXd> probes = {Eigen::Vector2d(p1(n - 1), p2(n - 1)),
                                         Eigen::Vector2d(0.0, 0.0)};
  double worst = 0.0;
  for (int i1 = 0; i1 < n; ++i1)
    for (int i2 = 0; i2 < n; ++i2) {
      const WignerQuadrature quad(product, cfg.shape, Eigen::Vector2d(x1(i1), x2(i2)), t,
                                  probes);
      const Eigen::MatrixXcd w2d = quad.eval_grid(p1, p2);
      for (int j1 = 0; j1 < n; ++j1)
        for (int j2 = 0; j2 < n; ++j2) {
          if (std::abs(w2d(j1, j2).imag()) > 1e-8)
            throw std::runtime_error("separability2d: imaginary residue");
          worst = std::max(worst,
                           std::abs(w2d(j1, j2).real() - wa(i1, j1) * wb(i2, j2)));
        }
    }
  const double tol = tolerance_of(cfg, "separability2d", 1e-8);
  return {"separability2d", worst <= tol, worst, tol,
          "max |W_2D - W_1 W_2| for a product state"};
}

}  // namespace

json load_config_file(const std::filesystem::path& path) {
  std::ifstream stream(path);
  if (!stream) throw ConfigError("cannot open config file " + path.string());
  json j = json::parse(stream, nullptr, false);
  if (j.is_discarded()) throw ConfigError("config file " + path.string() + " is not valid JSON");
  return j;
}

void apply_override(json& config, const std::string& key_equals_value) {
  const size_t eq = key_equals_value.find('=');
  if (eq == std::string::npos || eq == 0)
    throw ConfigError("override must look like key=value: " + key_equals_value);
  const std::string key = key_equals_value.substr(0, eq);
  const std::string value = key_equals_value.substr(eq + 1);

  json* cursor = &config;
  size_t start = 0;
  while (true) {
    const size_t dot = key.find('.', start);
    const std::string part = key.substr(start, dot - start);
    if (part.empty()) throw ConfigError("override has an empty key segment: " + key);
    if (dot == std::string::npos) {
      json parsed = json::parse(value, nullptr, false);
      (*cursor)[part] = parsed.is_discarded() ? json(value) : parsed;
      return;
    }
    cursor = &(*cursor)[part];
    start = dot + 1;
  }
}

RunConfig parse_config(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  static const std::set<std::string> known = {"shape",  "state", "mass",       "grid",
                                              "times",  "out",   "checks",     "resolution",
                                              "tolerances"};
  for (const auto& [key, unused] : j.items())
    if (!known.count(key)) throw ConfigError("unknown config key: " + key);

  RunConfig cfg;
  cfg.raw = j;
  try {
    if (!j.contains("shape")) throw ConfigError("config requires a shape");
    cfg.shape = parse_shape(j.at("shape"));
    const double mass = j.contains("mass") ? as_number(j.at("mass"), "mass") : 1.0;
    if (!(mass > 0)) throw ConfigError("mass must be positive");
    cfg.state = parse_state(j, cfg.shape, mass);
    cfg.grid = parse_grid(j);

    if (j.contains("times")) {
      const json& jt = j.at("times");
      if (!jt.is_array() || jt.empty()) throw ConfigError("times must be a non-empty array");
      cfg.times.clear();
      for (const json& entry : jt) {
        const double t = as_number(entry, "time");
        if (!std::isfinite(t)) throw ConfigError("times must be finite");
        cfg.times.push_back(t);
      }
    }

    if (j.contains("out")) cfg.out_dir = j.at("out").get<std::string>();
    if (j.contains("resolution")) {
      cfg.resolution = as_int(j.at("resolution"), "resolution");
      if (cfg.resolution < 1) throw ConfigError("resolution must be positive");
    }

    static const std::set<std::string> known_checks = {
        "oracle", "marginals", "continuity", "stationary", "deltaprime", "separability2d"};
    if (j.contains("checks")) {
      for (const json& entry : j.at("checks")) {
        const std::string name = entry.get<std::string>();
        if (!known_checks.count(name)) throw ConfigError("unknown check: " + name);
        cfg.checks.push_back(name);
      }
    }

    if (j.contains("tolerances")) {
      for (const auto& [key, value] : j.at("tolerances").items())
        cfg.tolerances[key] = as_number(value, "tolerance " + key);
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config error: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config error: ") + e.what());
  }
  return cfg;
}

std::vector<CheckResult> run_checks(const RunConfig& cfg) {
  std::vector<CheckResult> results;
  for (const std::string& name : cfg.checks) {
    if (name == "oracle") results.push_back(check_oracle(cfg));
    else if (name == "marginals") results.push_back(check_marginals(cfg));
    else if (name == "continuity") results.push_back(check_continuity(cfg));
    else if (name == "stationary") results.push_back(check_stationary(cfg));
    else if (name == "deltaprime") results.push_back(check_deltaprime(cfg));
    else if (name == "separability2d") results.push_back(check_separability2d(cfg));
    else throw ConfigError("unknown check: " + name);
  }
  return results;
}

int cmd_wigner(const RunConfig& cfg) {
  const StateExpansion& s = need_state(cfg);
  const PhaseSpaceGrid& grid = need_grid(cfg);
  if (s.dim() != 1) throw ConfigError("wigner export requires a 1D shape");
  json files = json::array();
  for (size_t ti = 0; ti < cfg.times.size(); ++ti) {
    const ScalarField field = wigner_box_field(s, grid, cfg.times[ti]);
    const std::string name = "wigner_" + std::to_string(ti) + ".csv";
    write_field_csv(cfg.out_dir / name, field);
    files.push_back(name);
  }
  json side = base_sidecar(cfg, "wigner");
  side["files"] = files;
  write_sidecar(cfg, "wigner_run.json", side);
  return 0;
}

int cmd_current(const RunConfig& cfg) {
  const StateExpansion& s = need_state(cfg);
  const PhaseSpaceGrid& grid = need_grid(cfg);
  if (s.dim() != 1) throw ConfigError("current export requires a 1D shape");
  json files = json::array();
  for (size_t ti = 0; ti < cfg.times.size(); ++ti) {
    const double t = cfg.times[ti];
    const ScalarField w = wigner_box_field(s, grid, t);
    const ScalarField jp = current_p_box_field(s, grid, t);
    ScalarField jx = zero_field(grid);
    for (int i = 0; i < grid.nx(); ++i)
      for (int j = 0; j < grid.np(); ++j)
        jx.values(i, j) = grid.p(j) * w.values(i, j) / s.mass;

    const std::string current_name = "current_" + std::to_string(ti) + ".csv";
    const std::string contour_name = "contour_" + std::to_string(ti) + ".csv";
    write_current_csv(cfg.out_dir / current_name, w, jx, jp);
    write_contour_csv(cfg.out_dir / contour_name, marching_squares(jx));
    files.push_back(current_name);
    files.push_back(contour_name);
  }
  json side = base_sidecar(cfg, "current");
  side["files"] = files;
  write_sidecar(cfg, "current_run.json", side);
  return 0;
}

int cmd_check(const RunConfig& cfg) {
  if (cfg.checks.empty()) throw ConfigError("config lists no checks");
  const std::vector<CheckResult> results = run_checks(cfg);
  bool all_pass = true;
  json report = json::array();
  for (const CheckResult& r : results) {
    all_pass = all_pass && r.pass;
    std::printf("[check] %-16s %s  measured=%.6g threshold=%.6g  (%s)\n", r.name.c_str(),
                r.pass ? "PASS" : "FAIL", r.measured, r.threshold, r.detail.c_str());
    report.push_back({{"name", r.name},
                      {"pass", r.pass},
                      {"measured", r.measured},
                      {"threshold", r.threshold},
                      {"detail", r.detail}});
  }
  json side = base_sidecar(cfg, "check");
  side["results"] = report;
  write_sidecar(cfg, "check_report.json", side);
  return all_pass ? 0 : 1;
}

int cmd_project(const RunConfig& cfg) {
  const StateExpansion& s = need_state(cfg);
  std::printf("mode%*s  %22s  %22s  %12s  %14s\n", std::max(0, 4 * s.dim() - 4), "",
              "Re c", "Im c", "|c|^2", "energy");
  for (int k = 0; k < s.mode_count(); ++k) {
    std::string tuple;
    for (int i = 0; i < s.dim(); ++i)
      tuple += (i ? "," : "") + std::to_string(s.modes(i, k));
    std::printf("%-8s  %22.15g  %22.15g  %12.6g  %14.8g\n", tuple.c_str(),
                s.coeffs(k).real(), s.coeffs(k).imag(), std::norm(s.coeffs(k)),
                s.energies(k));
  }
  json side = base_sidecar(cfg, "project");
  write_sidecar(cfg, "projection.json", side);
  return 0;
}

std::string version_string() { return "wigner-billiard 0.1.0"; }

}  // namespace wigner
