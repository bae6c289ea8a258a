#include "gvcrand/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gvcrand/csv.hpp"

namespace gvcrand {

namespace {

std::string xml_escape(const std::string& text) {
    std::string out;
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string short_number(double value) {
    std::ostringstream ss;
    ss.precision(4);
    ss << value;
    return ss.str();
}

} // namespace

void write_scatter_svg(const std::filesystem::path& path,
                       std::span<const std::pair<double, double>> points,
                       const SvgScatterOptions& options) {
    constexpr double margin = 56.0;
    const double w = options.width;
    const double h = options.height;

    double lo = 0.0, hi = 1.0;
    if (!points.empty()) {
        lo = points[0].first;
        hi = points[0].first;
        for (const auto& [x, y] : points) {
            lo = std::min({lo, x, y});
            hi = std::max({hi, x, y});
        }
    }
    if (!(hi > lo)) hi = lo + 1.0;
    const double pad = 0.05 * (hi - lo);
    lo -= pad;
    hi += pad;

    // shared scale on both axes keeps the slope-1 line at 45 degrees
    auto sx = [&](double v) { return margin + (v - lo) / (hi - lo) * (w - 2 * margin); };
    auto sy = [&](double v) { return h - margin - (v - lo) / (hi - lo) * (h - 2 * margin); };

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
        << "\" viewBox=\"0 0 " << w << " " << h << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    if (!options.title.empty()) {
        svg << "<text x=\"" << w / 2 << "\" y=\"24\" text-anchor=\"middle\" "
            << "font-family=\"sans-serif\" font-size=\"15\">" << xml_escape(options.title)
            << "</text>\n";
    }

    // axes
    svg << "<line x1=\"" << margin << "\" y1=\"" << h - margin << "\" x2=\"" << w - margin
        << "\" y2=\"" << h - margin << "\" stroke=\"black\"/>\n"
        << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin << "\" y2=\""
        << h - margin << "\" stroke=\"black\"/>\n";

    // ticks
    constexpr int n_ticks = 5;
    for (int t = 0; t <= n_ticks; ++t) {
        const double v = lo + (hi - lo) * t / n_ticks;
        const double px = sx(v);
        const double py = sy(v);
        svg << "<line x1=\"" << px << "\" y1=\"" << h - margin << "\" x2=\"" << px << "\" y2=\""
            << h - margin + 5 << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << px << "\" y=\"" << h - margin + 18
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << short_number(v) << "</text>\n"
            << "<line x1=\"" << margin - 5 << "\" y1=\"" << py << "\" x2=\"" << margin
            << "\" y2=\"" << py << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << margin - 8 << "\" y=\"" << py + 4
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
            << short_number(v) << "</text>\n";
    }

    // axis labels
    svg << "<text x=\"" << w / 2 << "\" y=\"" << h - 12
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
        << xml_escape(options.x_label) << "</text>\n"
        << "<text x=\"16\" y=\"" << h / 2 << "\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"13\" transform=\"rotate(-90 16 " << h / 2
        << ")\">" << xml_escape(options.y_label) << "</text>\n";

    if (options.slope_one_line) {
        svg << "<line x1=\"" << sx(lo) << "\" y1=\"" << sy(lo) << "\" x2=\"" << sx(hi)
            << "\" y2=\"" << sy(hi) << "\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
    }

    for (const auto& [x, y] : points) {
        svg << "<circle cx=\"" << sx(x) << "\" cy=\"" << sy(y)
            << "\" r=\"2.4\" fill=\"#1f77b4\" fill-opacity=\"0.55\"/>\n";
    }

    svg << "</svg>\n";
    write_text_file(path, svg.str());
}

} // namespace gvcrand
