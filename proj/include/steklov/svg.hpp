#pragma once

// Minimal self-contained SVG line charts (no external plotting dependency):
// enough to render eigenvalue-versus-offset curves and log-scale convergence
// plots straight from the command line.

#include <string>
#include <vector>

namespace steklov {

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

struct AxesSpec {
    std::string title;
    std::string xlabel;
    std::string ylabel;
    bool logy = false;  // decade-scaled y axis; non-positive points are dropped
};

// Renders series as colored polylines with axes, tick labels, and a legend.
// Output is a complete standalone SVG document; rendering is deterministic.
std::string render_line_chart(const std::vector<Series>& series, const AxesSpec& axes);

}  // namespace steklov
