#include "chaoticlms/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace chaoticlms {

namespace {

constexpr double kWidth = 960, kHeight = 560;
constexpr double kLeft = 72, kRight = 24, kTop = 40, kBottom = 56;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    void include(double v) {
        if (!std::isfinite(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void finalize() {
        if (!(lo <= hi)) {
            lo = 0.0;
            hi = 1.0;
        }
        if (lo == hi) {
            lo -= 0.5;
            hi += 0.5;
        }
    }
};

// round tick step to 1/2/5 * 10^k
double tick_step(double span, int target) {
    const double raw = span / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double r = raw / mag;
    if (r < 1.5) return mag;
    if (r < 3.5) return 2.0 * mag;
    if (r < 7.5) return 5.0 * mag;
    return 10.0 * mag;
}

} // namespace

void write_svg_plot(std::ostream& os, const std::string& title, const std::string& xlabel,
                    const std::string& ylabel, const std::vector<PlotSeries>& series) {
    Range rx, ry;
    for (const auto& s : series) {
        for (double v : s.x) rx.include(v);
        for (double v : s.y) ry.include(v);
    }
    rx.finalize();
    ry.finalize();

    const double pw = kWidth - kLeft - kRight;
    const double ph = kHeight - kTop - kBottom;
    auto sx = [&](double v) { return kLeft + pw * (v - rx.lo) / (rx.hi - rx.lo); };
    auto sy = [&](double v) { return kTop + ph * (1.0 - (v - ry.lo) / (ry.hi - ry.lo)); };

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
       << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" "
          "font-family=\"sans-serif\" font-size=\"15\">"
       << title << "</text>\n";

    // axes
    os << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\""
       << ph << "\" fill=\"none\" stroke=\"#333\"/>\n";

    const double xstep = tick_step(rx.hi - rx.lo, 8);
    for (double t = std::ceil(rx.lo / xstep) * xstep; t <= rx.hi + 1e-9 * xstep; t += xstep) {
        const double px = sx(t);
        os << "<line x1=\"" << px << "\" y1=\"" << kTop + ph << "\" x2=\"" << px << "\" y2=\""
           << kTop + ph + 5 << "\" stroke=\"#333\"/>\n";
        os << "<line x1=\"" << px << "\" y1=\"" << kTop << "\" x2=\"" << px << "\" y2=\""
           << kTop + ph << "\" stroke=\"#eee\"/>\n";
        os << "<text x=\"" << px << "\" y=\"" << kTop + ph + 18
           << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << num(t)
           << "</text>\n";
    }
    const double ystep = tick_step(ry.hi - ry.lo, 7);
    for (double t = std::ceil(ry.lo / ystep) * ystep; t <= ry.hi + 1e-9 * ystep; t += ystep) {
        const double py = sy(t);
        os << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << py << "\" x2=\"" << kLeft
           << "\" y2=\"" << py << "\" stroke=\"#333\"/>\n";
        os << "<line x1=\"" << kLeft << "\" y1=\"" << py << "\" x2=\"" << kLeft + pw
           << "\" y2=\"" << py << "\" stroke=\"#eee\"/>\n";
        os << "<text x=\"" << kLeft - 8 << "\" y=\"" << py + 4
           << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << num(t)
           << "</text>\n";
    }
    os << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 12
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << xlabel
       << "</text>\n";
    os << "<text x=\"18\" y=\"" << kTop + ph / 2
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
          "transform=\"rotate(-90 18 "
       << kTop + ph / 2 << ")\">" << ylabel << "</text>\n";

    // data
    for (std::size_t si = 0; si < series.size(); ++si) {
        const auto& s = series[si];
        const char* color = kPalette[si % (sizeof kPalette / sizeof *kPalette)];
        const std::size_t n = std::min(s.x.size(), s.y.size());
        if (s.scatter) {
            for (std::size_t i = 0; i < n; ++i) {
                if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
                os << "<circle cx=\"" << num(sx(s.x[i])) << "\" cy=\"" << num(sy(s.y[i]))
                   << "\" r=\"1\" fill=\"" << color << "\" fill-opacity=\"0.55\"/>\n";
            }
        } else {
            os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.4\" points=\"";
            for (std::size_t i = 0; i < n; ++i) {
                if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
                os << num(sx(s.x[i])) << ',' << num(sy(s.y[i])) << ' ';
            }
            os << "\"/>\n";
        }
    }

    // legend
    double ly = kTop + 14;
    for (std::size_t si = 0; si < series.size(); ++si) {
        if (series[si].label.empty()) continue;
        const char* color = kPalette[si % (sizeof kPalette / sizeof *kPalette)];
        const double lx = kLeft + pw - 200;
        os << "<line x1=\"" << lx << "\" y1=\"" << ly - 4 << "\" x2=\"" << lx + 24 << "\" y2=\""
           << ly - 4 << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        os << "<text x=\"" << lx + 30 << "\" y=\"" << ly
           << "\" font-family=\"sans-serif\" font-size=\"12\">" << series[si].label
           << "</text>\n";
        ly += 17;
    }

    os << "</svg>\n";
}

} // namespace chaoticlms
