#pragma once

// Minimal deterministic SVG line charts: fixed 800x500 viewBox, fixed-format
// coordinates, no timestamps or randomness, so a rerun with the same inputs
// emits byte-identical output.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

namespace calabi {

struct PlotSeries {
    std::string label;
    std::string color;
    std::vector<std::pair<double, double>> points;
};

namespace detail {

inline std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

inline std::string fmt_tick(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

}  // namespace detail

inline std::string svg_line_chart(const std::string& title,
                                  const std::string& x_label, const std::string& y_label,
                                  const std::vector<PlotSeries>& series) {
    constexpr double W = 800, H = 500;
    constexpr double ml = 70, mr = 20, mt = 40, mb = 50;  // margins
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& s : series)
        for (const auto& [x, y] : s.points) {
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    if (xmin > xmax) { xmin = 0; xmax = 1; }
    if (ymin > ymax) { ymin = 0; ymax = 1; }
    if (xmax == xmin) xmax = xmin + 1;
    if (ymax == ymin) ymax = ymin + 1;
    double ypad = 0.05 * (ymax - ymin);
    ymin -= ypad;
    ymax += ypad;

    auto X = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (W - ml - mr); };
    auto Y = [&](double y) { return H - mb - (y - ymin) / (ymax - ymin) * (H - mt - mb); };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 500\" "
           "width=\"800\" height=\"500\">\n";
    out += "<rect x=\"0\" y=\"0\" width=\"800\" height=\"500\" fill=\"white\"/>\n";
    out += "<text x=\"400\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"16\">" + title + "</text>\n";

    // axes
    out += "<line x1=\"" + detail::fmt(ml) + "\" y1=\"" + detail::fmt(H - mb) + "\" x2=\"" +
           detail::fmt(W - mr) + "\" y2=\"" + detail::fmt(H - mb) +
           "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    out += "<line x1=\"" + detail::fmt(ml) + "\" y1=\"" + detail::fmt(mt) + "\" x2=\"" +
           detail::fmt(ml) + "\" y2=\"" + detail::fmt(H - mb) +
           "\" stroke=\"black\" stroke-width=\"1\"/>\n";

    for (int i = 0; i <= 5; ++i) {
        double xv = xmin + (xmax - xmin) * i / 5;
        double yv = ymin + (ymax - ymin) * i / 5;
        out += "<line x1=\"" + detail::fmt(X(xv)) + "\" y1=\"" + detail::fmt(H - mb) +
               "\" x2=\"" + detail::fmt(X(xv)) + "\" y2=\"" + detail::fmt(H - mb + 5) +
               "\" stroke=\"black\"/>\n";
        out += "<text x=\"" + detail::fmt(X(xv)) + "\" y=\"" + detail::fmt(H - mb + 18) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" +
               detail::fmt_tick(xv) + "</text>\n";
        out += "<line x1=\"" + detail::fmt(ml - 5) + "\" y1=\"" + detail::fmt(Y(yv)) +
               "\" x2=\"" + detail::fmt(ml) + "\" y2=\"" + detail::fmt(Y(yv)) +
               "\" stroke=\"black\"/>\n";
        out += "<text x=\"" + detail::fmt(ml - 8) + "\" y=\"" + detail::fmt(Y(yv) + 4) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
               detail::fmt_tick(yv) + "</text>\n";
    }
    out += "<text x=\"" + detail::fmt((ml + W - mr) / 2) + "\" y=\"" + detail::fmt(H - 12) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" + x_label +
           "</text>\n";
    out += "<text x=\"18\" y=\"" + detail::fmt((mt + H - mb) / 2) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
           "transform=\"rotate(-90 18 " + detail::fmt((mt + H - mb) / 2) + ")\">" + y_label +
           "</text>\n";

    double ly = mt + 10;
    for (const auto& s : series) {
        out += "<polyline fill=\"none\" stroke=\"" + s.color + "\" stroke-width=\"1.5\" points=\"";
        for (const auto& [x, y] : s.points)
            out += detail::fmt(X(x)) + "," + detail::fmt(Y(y)) + " ";
        out += "\"/>\n";
        out += "<line x1=\"" + detail::fmt(W - mr - 150) + "\" y1=\"" + detail::fmt(ly) +
               "\" x2=\"" + detail::fmt(W - mr - 125) + "\" y2=\"" + detail::fmt(ly) +
               "\" stroke=\"" + s.color + "\" stroke-width=\"1.5\"/>\n";
        out += "<text x=\"" + detail::fmt(W - mr - 118) + "\" y=\"" + detail::fmt(ly + 4) +
               "\" font-family=\"sans-serif\" font-size=\"12\">" + s.label + "</text>\n";
        ly += 18;
    }
    out += "</svg>\n";
    return out;
}

}  // namespace calabi
