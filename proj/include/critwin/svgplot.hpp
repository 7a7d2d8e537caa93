#pragma once

// Optional plot emission: self-contained SVG line/band charts built straight
// from result rows. Pure plumbing; CSV stays the primary output.

#include <iosfwd>
#include <string>
#include <vector>

#include "critwin/output.hpp"

namespace critwin {

struct PlotSeries {
    std::string label;
    // points sorted by x; band drawn when lo/hi differ from y
    std::vector<double> x, y, lo, hi;
};

struct PlotSpec {
    std::string title;
    std::string x_label, y_label;
    bool log_x = false;
    bool log_y = false;
    std::vector<PlotSeries> series;
};

void write_svg_plot(std::ostream& os, const PlotSpec& spec);

// Builds the per-experiment default chart from rows; returns false when the
// experiment has no plottable statistic.
bool plot_rows(const std::string& experiment, const std::vector<ResultRow>& rows, PlotSpec& out);

}  // namespace critwin
