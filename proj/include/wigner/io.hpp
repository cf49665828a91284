#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "wigner/wigner.hpp"

namespace wigner {

// One zero-crossing segment of a gridded field, in (x, p) coordinates.
struct ContourSegment {
  Eigen::Vector2d a, b;
};

// Zero contours by marching squares with linear edge interpolation; saddle
// cells are disambiguated by the cell-center average.
std::vector<ContourSegment> marching_squares(const ScalarField& field);

// %.17g value formatting; round-trips doubles exactly.
std::string format_g17(double v);

// Writers refuse non-finite values and replace the target atomically.
void write_field_csv(const std::filesystem::path& path, const ScalarField& w);
void write_current_csv(const std::filesystem::path& path, const ScalarField& w,
                       const ScalarField& jx, const ScalarField& jp);
void write_contour_csv(const std::filesystem::path& path,
                       const std::vector<ContourSegment>& segments);

void atomic_write_text(const std::filesystem::path& path, const std::string& content);

}  // namespace wigner
