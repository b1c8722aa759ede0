#pragma once

// Minimal static SVG line/scatter plots: axes, ticks, legend, fixed palette.
// Plots are derived artifacts; they never feed back into CSV content.

#include <ostream>
#include <string>
#include <vector>

namespace chaoticlms {

struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    bool scatter = false;
};

void write_svg_plot(std::ostream& os, const std::string& title, const std::string& xlabel,
                    const std::string& ylabel, const std::vector<PlotSeries>& series);

} // namespace chaoticlms
