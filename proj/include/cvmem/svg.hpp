#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "cvmem/csv.hpp"
#include "cvmem/errors.hpp"

namespace cvmem {

/// One named curve.
struct Series {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
};

/// One set of axes with its curves; figures may hold several panels side by
/// side.
struct Panel {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<Series> series;
};

namespace detail {

inline std::string xml_escape(const std::string& text) {
    std::string out;
    for (char ch : text) {
        switch (ch) {
        case '&':
            out += "&amp;";
            break;
        case '<':
            out += "&lt;";
            break;
        case '>':
            out += "&gt;";
            break;
        case '"':
            out += "&quot;";
            break;
        default:
            out += ch;
        }
    }
    return out;
}

inline std::string tick_label(double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.4g", value);
    return buffer;
}

// Two-decimal pixel coordinates keep the files small and byte-stable.
inline std::string pixel(double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.2f", value);
    return buffer;
}

} // namespace detail

/// Renders panels as a standalone SVG document: axes, ticks, one polyline
/// per series, and a legend. No external plotting toolchain.
inline std::string render_svg(const std::vector<Panel>& panels, int panel_width = 640,
                              int panel_height = 440) {
    if (panels.empty()) {
        throw ValidationError("an SVG figure needs at least one panel");
    }
    static constexpr std::array<const char*, 6> kPalette = {
        "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
    const double margin_left = 64.0;
    const double margin_right = 18.0;
    const double margin_top = 34.0;
    const double margin_bottom = 46.0;
    const int total_width = panel_width * static_cast<int>(panels.size());

    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(total_width) +
           "\" height=\"" + std::to_string(panel_height) + "\" viewBox=\"0 0 " +
           std::to_string(total_width) + " " + std::to_string(panel_height) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    for (std::size_t p = 0; p < panels.size(); ++p) {
        const Panel& panel = panels[p];
        const double x0 = static_cast<double>(p) * panel_width + margin_left;
        const double x1 = static_cast<double>(p + 1) * panel_width - margin_right;
        const double y0 = static_cast<double>(panel_height) - margin_bottom;
        const double y1 = margin_top;

        double min_x = 0.0;
        double max_x = 1.0;
        double min_y = 0.0;
        double max_y = 1.0;
        bool first = true;
        for (const Series& s : panel.series) {
            for (std::size_t i = 0; i < s.x.size(); ++i) {
                if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) {
                    throw ValidationError("series '" + s.name + "' has non-finite points");
                }
                if (first) {
                    min_x = max_x = s.x[i];
                    min_y = max_y = s.y[i];
                    first = false;
                } else {
                    min_x = std::min(min_x, s.x[i]);
                    max_x = std::max(max_x, s.x[i]);
                    min_y = std::min(min_y, s.y[i]);
                    max_y = std::max(max_y, s.y[i]);
                }
            }
        }
        if (max_x == min_x) {
            max_x = min_x + 1.0;
        }
        if (max_y == min_y) {
            max_y = min_y + 1.0;
        }
        const auto to_px_x = [&](double v) {
            return x0 + (v - min_x) / (max_x - min_x) * (x1 - x0);
        };
        const auto to_px_y = [&](double v) {
            return y0 - (v - min_y) / (max_y - min_y) * (y0 - y1);
        };

        svg += "<g font-family=\"sans-serif\" font-size=\"12\">\n";
        svg += "<text x=\"" + detail::pixel((x0 + x1) / 2.0) + "\" y=\"20\" "
               "text-anchor=\"middle\" font-size=\"14\">" +
               detail::xml_escape(panel.title) + "</text>\n";
        // frame
        svg += "<rect x=\"" + detail::pixel(x0) + "\" y=\"" + detail::pixel(y1) + "\" width=\"" +
               detail::pixel(x1 - x0) + "\" height=\"" + detail::pixel(y0 - y1) +
               "\" fill=\"none\" stroke=\"black\"/>\n";
        // ticks
        for (int t = 0; t <= 4; ++t) {
            const double fx = min_x + (max_x - min_x) * t / 4.0;
            const double fy = min_y + (max_y - min_y) * t / 4.0;
            const double px = to_px_x(fx);
            const double py = to_px_y(fy);
            svg += "<line x1=\"" + detail::pixel(px) + "\" y1=\"" + detail::pixel(y0) +
                   "\" x2=\"" + detail::pixel(px) + "\" y2=\"" + detail::pixel(y0 + 5.0) +
                   "\" stroke=\"black\"/>\n";
            svg += "<text x=\"" + detail::pixel(px) + "\" y=\"" + detail::pixel(y0 + 18.0) +
                   "\" text-anchor=\"middle\">" + detail::tick_label(fx) + "</text>\n";
            svg += "<line x1=\"" + detail::pixel(x0 - 5.0) + "\" y1=\"" + detail::pixel(py) +
                   "\" x2=\"" + detail::pixel(x0) + "\" y2=\"" + detail::pixel(py) +
                   "\" stroke=\"black\"/>\n";
            svg += "<text x=\"" + detail::pixel(x0 - 8.0) + "\" y=\"" + detail::pixel(py + 4.0) +
                   "\" text-anchor=\"end\">" + detail::tick_label(fy) + "</text>\n";
        }
        svg += "<text x=\"" + detail::pixel((x0 + x1) / 2.0) + "\" y=\"" +
               detail::pixel(y0 + 36.0) + "\" text-anchor=\"middle\">" +
               detail::xml_escape(panel.x_label) + "</text>\n";
        svg += "<text x=\"" + detail::pixel(x0 - 48.0) + "\" y=\"" +
               detail::pixel((y0 + y1) / 2.0) + "\" text-anchor=\"middle\" transform=\"rotate(-90 " +
               detail::pixel(x0 - 48.0) + " " + detail::pixel((y0 + y1) / 2.0) + ")\">" +
               detail::xml_escape(panel.y_label) + "</text>\n";

        for (std::size_t s = 0; s < panel.series.size(); ++s) {
            const Series& series = panel.series[s];
            const char* color = kPalette[s % kPalette.size()];
            std::string points;
            for (std::size_t i = 0; i < series.x.size(); ++i) {
                points += detail::pixel(to_px_x(series.x[i])) + "," +
                          detail::pixel(to_px_y(series.y[i])) + " ";
            }
            svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
                   "\" stroke-width=\"1.5\" points=\"" + points + "\"/>\n";
            const double ly = y1 + 14.0 + 16.0 * static_cast<double>(s);
            svg += "<line x1=\"" + detail::pixel(x1 - 120.0) + "\" y1=\"" + detail::pixel(ly) +
                   "\" x2=\"" + detail::pixel(x1 - 98.0) + "\" y2=\"" + detail::pixel(ly) +
                   "\" stroke=\"" + color + "\" stroke-width=\"1.5\"/>\n";
            svg += "<text x=\"" + detail::pixel(x1 - 92.0) + "\" y=\"" + detail::pixel(ly + 4.0) +
                   "\">" + detail::xml_escape(series.name) + "</text>\n";
        }
        svg += "</g>\n";
    }
    svg += "</svg>\n";
    return svg;
}

inline void write_svg(const std::string& path, const std::vector<Panel>& panels,
                      int panel_width = 640, int panel_height = 440) {
    write_text_file(path, render_svg(panels, panel_width, panel_height));
}

} // namespace cvmem
