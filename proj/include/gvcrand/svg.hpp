#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <utility>

namespace gvcrand {

struct SvgScatterOptions {
    std::string title;
    std::string x_label = "x";
    std::string y_label = "y";
    bool slope_one_line = true;  // reference line y = x
    int width = 640;
    int height = 640;
};

// Minimal static scatter plot with axes, tick labels and an optional
// slope-1 reference line.
void write_scatter_svg(const std::filesystem::path& path,
                       std::span<const std::pair<double, double>> points,
                       const SvgScatterOptions& options);

} // namespace gvcrand
