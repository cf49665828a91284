#include "wigner/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace wigner {

namespace {

double edge_zero(double xa, double xb, double va, double vb) {
  return xa + (0.0 - va) / (vb - va) * (xb - xa);
}

void require_finite(const Eigen::MatrixXd& m, const char* what) {
  if (!m.allFinite()) throw std::runtime_error(std::string(what) + ": non-finite value");
}

}  // namespace

std::vector<ContourSegment> marching_squares(const ScalarField& field) {
  std::vector<ContourSegment> segments;
  const Eigen::MatrixXd& v = field.values;
  const Eigen::VectorXd& xs = field.grid.x;
  const Eigen::VectorXd& ps = field.grid.p;
  require_finite(v, "marching_squares");

  for (int i = 0; i + 1 < xs.size(); ++i) {
    for (int j = 0; j + 1 < ps.size(); ++j) {
      const double a = v(i, j), b = v(i + 1, j), c = v(i + 1, j + 1), d = v(i, j + 1);
      const int code = (a > 0) | (b > 0) << 1 | (c > 0) << 2 | (d > 0) << 3;
      if (code == 0 || code == 15) continue;

      Eigen::Vector2d bottom(edge_zero(xs(i), xs(i + 1), a, b), ps(j));
      Eigen::Vector2d right(xs(i + 1), edge_zero(ps(j), ps(j + 1), b, c));
      Eigen::Vector2d top(edge_zero(xs(i), xs(i + 1), d, c), ps(j + 1));
      Eigen::Vector2d left(xs(i), edge_zero(ps(j), ps(j + 1), a, d));

      if (code == 5 || code == 10) {
        // Saddle: the center average decides which diagonal is connected.
        const bool center_pos = (a + b + c + d) > 0.0;
        const bool a_pos = a > 0;
        if (center_pos == a_pos) {
          segments.push_back({bottom, right});
          segments.push_back({top, left});
        } else {
          segments.push_back({bottom, left});
          segments.push_back({top, right});
        }
        continue;
      }

      std::vector<Eigen::Vector2d> pts;
      if ((a > 0) != (b > 0)) pts.push_back(bottom);
      if ((b > 0) != (c > 0)) pts.push_back(right);
      if ((d > 0) != (c > 0)) pts.push_back(top);
      if ((a > 0) != (d > 0)) pts.push_back(left);
      if (pts.size() == 2) segments.push_back({pts[0], pts[1]});
    }
  }
  return segments;
}

std::string format_g17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_field_csv(const std::filesystem::path& path, const ScalarField& w) {
  require_finite(w.values, "write_field_csv");
  std::string out = "x,p,W\n";
  for (int i = 0; i < w.grid.nx(); ++i)
    for (int j = 0; j < w.grid.np(); ++j)
      out += format_g17(w.grid.x(i)) + "," + format_g17(w.grid.p(j)) + "," +
             format_g17(w.values(i, j)) + "\n";
  atomic_write_text(path, out);
}

void write_current_csv(const std::filesystem::path& path, const ScalarField& w,
                       const ScalarField& jx, const ScalarField& jp) {
  require_finite(w.values, "write_current_csv");
  require_finite(jx.values, "write_current_csv");
  require_finite(jp.values, "write_current_csv");
  std::string out = "x,p,W,jx,jp\n";
  for (int i = 0; i < w.grid.nx(); ++i)
    for (int j = 0; j < w.grid.np(); ++j)
      out += format_g17(w.grid.x(i)) + "," + format_g17(w.grid.p(j)) + "," +
             format_g17(w.values(i, j)) + "," + format_g17(jx.values(i, j)) + "," +
             format_g17(jp.values(i, j)) + "\n";
  atomic_write_text(path, out);
}

void write_contour_csv(const std::filesystem::path& path,
                       const std::vector<ContourSegment>& segments) {
  std::string out = "segment,x,p\n";
  for (size_t k = 0; k < segments.size(); ++k) {
    for (const Eigen::Vector2d* pt : {&segments[k].a, &segments[k].b}) {
      if (!std::isfinite(pt->x()) || !std::isfinite(pt->y()))
        throw std::runtime_error("write_contour_csv: non-finite value");
      out += std::to_string(k) + "," + format_g17(pt->x()) + "," + format_g17(pt->y()) + "\n";
    }
  }
  atomic_write_text(path, out);
}

void atomic_write_text(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream stream(tmp, std::ios::binary | std::ios::trunc);
    if (!stream) throw std::runtime_error("cannot open " + tmp.string());
    stream << content;
    if (!stream.flush()) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace wigner
