#include "steklov/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace steklov {

namespace {

constexpr double kWidth = 900, kHeight = 560;
constexpr double kLeft = 72, kRight = 24, kTop = 48, kBottom = 56;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
constexpr int kPaletteSize = 8;

std::string fmt(const char* pattern, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), pattern, v);
    return buf;
}

std::string escape_xml(const std::string& s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += ch;
        }
    }
    return out;
}

// Rounds a span to a pleasant tick spacing (1-2-5 ladder).
double nice_step(double span, int target_ticks) {
    const double raw = span / std::max(1, target_ticks);
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double norm = raw / mag;
    double step;
    if (norm <= 1.5) step = 1;
    else if (norm <= 3.5) step = 2;
    else if (norm <= 7.5) step = 5;
    else step = 10;
    return step * mag;
}

}  // namespace

std::string render_line_chart(const std::vector<Series>& series, const AxesSpec& axes) {
    // Data ranges over finite (and, for log scale, positive) points.
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    const auto usable = [&](double x, double y) {
        return std::isfinite(x) && std::isfinite(y) && (!axes.logy || y > 0);
    };
    for (const Series& s : series) {
        const std::size_t npts = std::min(s.x.size(), s.y.size());
        for (std::size_t i = 0; i < npts; ++i) {
            if (!usable(s.x[i], s.y[i])) continue;
            const double yv = axes.logy ? std::log10(s.y[i]) : s.y[i];
            xmin = std::min(xmin, s.x[i]);
            xmax = std::max(xmax, s.x[i]);
            ymin = std::min(ymin, yv);
            ymax = std::max(ymax, yv);
        }
    }
    const bool has_data = xmin <= xmax;
    if (!has_data) {
        xmin = 0; xmax = 1; ymin = 0; ymax = 1;
    }
    if (xmax - xmin <= 0) { xmin -= 0.5; xmax += 0.5; }
    if (ymax - ymin <= 0) { ymin -= 0.5; ymax += 0.5; }

    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    const auto px = [&](double x) { return kLeft + (x - xmin) / (xmax - xmin) * plot_w; };
    const auto py = [&](double yv) { return kTop + (ymax - yv) / (ymax - ymin) * plot_h; };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"900\" height=\"560\" "
           "viewBox=\"0 0 900 560\">\n";
    out += "<rect width=\"900\" height=\"560\" fill=\"#ffffff\"/>\n";
    out += "<text x=\"450\" y=\"26\" font-family=\"sans-serif\" font-size=\"17\" "
           "text-anchor=\"middle\">" + escape_xml(axes.title) + "</text>\n";

    // Gridlines and tick labels.
    out += "<g font-family=\"sans-serif\" font-size=\"12\" fill=\"#333333\">\n";
    const double xstep = nice_step(xmax - xmin, 6);
    for (double t = std::ceil(xmin / xstep) * xstep; t <= xmax + xstep * 1e-9; t += xstep) {
        const double gx = px(t);
        out += "<line x1=\"" + fmt("%.2f", gx) + "\" y1=\"" + fmt("%.2f", kTop) +
               "\" x2=\"" + fmt("%.2f", gx) + "\" y2=\"" + fmt("%.2f", kTop + plot_h) +
               "\" stroke=\"#e0e0e0\"/>\n";
        out += "<text x=\"" + fmt("%.2f", gx) + "\" y=\"" + fmt("%.2f", kTop + plot_h + 18) +
               "\" text-anchor=\"middle\">" + fmt("%g", t + 0.0) + "</text>\n";
    }
    if (axes.logy) {
        const int d_lo = static_cast<int>(std::ceil(ymin - 1e-9));
        const int d_hi = static_cast<int>(std::floor(ymax + 1e-9));
        const int span = std::max(1, d_hi - d_lo);
        const int stride = (span + 9) / 10 > 0 ? std::max(1, (span + 9) / 10) : 1;
        for (int d = d_lo; d <= d_hi; d += stride) {
            const double gy = py(d);
            out += "<line x1=\"" + fmt("%.2f", kLeft) + "\" y1=\"" + fmt("%.2f", gy) +
                   "\" x2=\"" + fmt("%.2f", kLeft + plot_w) + "\" y2=\"" + fmt("%.2f", gy) +
                   "\" stroke=\"#e0e0e0\"/>\n";
            out += "<text x=\"" + fmt("%.2f", kLeft - 6) + "\" y=\"" + fmt("%.2f", gy + 4) +
                   "\" text-anchor=\"end\">" + fmt("%g", std::pow(10.0, d)) + "</text>\n";
        }
    } else {
        const double ystep = nice_step(ymax - ymin, 6);
        for (double t = std::ceil(ymin / ystep) * ystep; t <= ymax + ystep * 1e-9; t += ystep) {
            const double gy = py(t);
            out += "<line x1=\"" + fmt("%.2f", kLeft) + "\" y1=\"" + fmt("%.2f", gy) +
                   "\" x2=\"" + fmt("%.2f", kLeft + plot_w) + "\" y2=\"" + fmt("%.2f", gy) +
                   "\" stroke=\"#e0e0e0\"/>\n";
            out += "<text x=\"" + fmt("%.2f", kLeft - 6) + "\" y=\"" + fmt("%.2f", gy + 4) +
                   "\" text-anchor=\"end\">" + fmt("%g", t + 0.0) + "</text>\n";
        }
    }
    out += "</g>\n";

    // Axes frame and labels.
    out += "<rect x=\"" + fmt("%.2f", kLeft) + "\" y=\"" + fmt("%.2f", kTop) + "\" width=\"" +
           fmt("%.2f", plot_w) + "\" height=\"" + fmt("%.2f", plot_h) +
           "\" fill=\"none\" stroke=\"#333333\"/>\n";
    out += "<text x=\"" + fmt("%.2f", kLeft + plot_w / 2) + "\" y=\"" + fmt("%.2f", kHeight - 12) +
           "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">" +
           escape_xml(axes.xlabel) + "</text>\n";
    out += "<text x=\"18\" y=\"" + fmt("%.2f", kTop + plot_h / 2) +
           "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\" "
           "transform=\"rotate(-90 18 " + fmt("%.2f", kTop + plot_h / 2) + ")\">" +
           escape_xml(axes.ylabel) + "</text>\n";

    // Series polylines (segments broken at unusable points) and markers.
    for (std::size_t si = 0; si < series.size(); ++si) {
        const Series& s = series[si];
        const char* color = kPalette[si % kPaletteSize];
        const std::size_t npts = std::min(s.x.size(), s.y.size());
        std::string points;
        const auto flush = [&]() {
            if (points.empty()) return;
            out += "<polyline fill=\"none\" stroke=\"";
            out += color;
            out += "\" stroke-width=\"1.8\" points=\"" + points + "\"/>\n";
            points.clear();
        };
        for (std::size_t i = 0; i < npts; ++i) {
            if (!usable(s.x[i], s.y[i])) {
                flush();
                continue;
            }
            const double yv = axes.logy ? std::log10(s.y[i]) : s.y[i];
            if (!points.empty()) points += ' ';
            points += fmt("%.2f", px(s.x[i])) + "," + fmt("%.2f", py(yv));
        }
        flush();
        if (npts <= 80) {
            for (std::size_t i = 0; i < npts; ++i) {
                if (!usable(s.x[i], s.y[i])) continue;
                const double yv = axes.logy ? std::log10(s.y[i]) : s.y[i];
                out += "<circle cx=\"" + fmt("%.2f", px(s.x[i])) + "\" cy=\"" +
                       fmt("%.2f", py(yv)) + "\" r=\"2.5\" fill=\"";
                out += color;
                out += "\"/>\n";
            }
        }
    }

    // Legend.
    if (!series.empty()) {
        const double lx = kLeft + plot_w - 170, ly = kTop + 10;
        out += "<g font-family=\"sans-serif\" font-size=\"12\">\n";
        for (std::size_t si = 0; si < series.size(); ++si) {
            const double row_y = ly + 16 * static_cast<double>(si);
            out += "<line x1=\"" + fmt("%.2f", lx) + "\" y1=\"" + fmt("%.2f", row_y) +
                   "\" x2=\"" + fmt("%.2f", lx + 22) + "\" y2=\"" + fmt("%.2f", row_y) +
                   "\" stroke=\"";
            out += kPalette[si % kPaletteSize];
            out += "\" stroke-width=\"2.5\"/>\n";
            out += "<text x=\"" + fmt("%.2f", lx + 28) + "\" y=\"" + fmt("%.2f", row_y + 4) +
                   "\">" + escape_xml(series[si].label) + "</text>\n";
        }
        out += "</g>\n";
    }
    out += "</svg>\n";
    return out;
}

}  // namespace steklov
