#include "critwin/svgplot.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <ostream>
#include <sstream>

namespace critwin {

namespace {

constexpr int kW = 720, kH = 440;
constexpr int kMarginL = 70, kMarginR = 20, kMarginT = 40, kMarginB = 50;

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                         "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

struct Axis {
    double lo = 0.0, hi = 1.0;
    bool log = false;
    double map(double v, double pix_lo, double pix_hi) const {
        const double a = log ? std::log10(lo) : lo;
        const double b = log ? std::log10(hi) : hi;
        const double t = log ? std::log10(v) : v;
        const double f = b > a ? (t - a) / (b - a) : 0.5;
        return pix_lo + f * (pix_hi - pix_lo);
    }
};

std::string num(double v) {
    std::ostringstream os;
    os.precision(4);
    os << v;
    return os.str();
}

}  // namespace

void write_svg_plot(std::ostream& os, const PlotSpec& spec) {
    Axis xa, ya;
    xa.log = spec.log_x;
    ya.log = spec.log_y;
    bool first = true;
    for (const auto& s : spec.series)
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            const double ylo = std::min(s.lo[i], s.y[i]);
            const double yhi = std::max(s.hi[i], s.y[i]);
            if (spec.log_x && !(s.x[i] > 0.0)) continue;
            if (spec.log_y && !(ylo > 0.0)) continue;
            if (first) {
                xa.lo = xa.hi = s.x[i];
                ya.lo = ylo;
                ya.hi = yhi;
                first = false;
            }
            xa.lo = std::min(xa.lo, s.x[i]);
            xa.hi = std::max(xa.hi, s.x[i]);
            ya.lo = std::min(ya.lo, ylo);
            ya.hi = std::max(ya.hi, yhi);
        }
    if (first) {  // nothing plottable
        os << "<svg xmlns='http://www.w3.org/2000/svg' width='10' height='10'/>\n";
        return;
    }
    if (xa.lo == xa.hi) {
        xa.lo -= 1.0;
        xa.hi += 1.0;
    }
    if (ya.lo == ya.hi) {
        ya.lo -= 1.0;
        ya.hi += 1.0;
    }
    const auto X = [&](double v) { return xa.map(v, kMarginL, kW - kMarginR); };
    const auto Y = [&](double v) { return ya.map(v, kH - kMarginB, kMarginT); };

    os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kW << "' height='" << kH
       << "' font-family='sans-serif' font-size='12'>\n";
    os << "<rect width='100%' height='100%' fill='white'/>\n";
    os << "<text x='" << kW / 2 << "' y='20' text-anchor='middle' font-size='15'>" << spec.title
       << "</text>\n";
    // frame and axis labels
    os << "<rect x='" << kMarginL << "' y='" << kMarginT << "' width='"
       << kW - kMarginL - kMarginR << "' height='" << kH - kMarginT - kMarginB
       << "' fill='none' stroke='#333'/>\n";
    os << "<text x='" << kW / 2 << "' y='" << kH - 12 << "' text-anchor='middle'>" << spec.x_label
       << "</text>\n";
    os << "<text x='16' y='" << kH / 2 << "' text-anchor='middle' transform='rotate(-90 16 "
       << kH / 2 << ")'>" << spec.y_label << "</text>\n";
    // corner ticks
    os << "<text x='" << kMarginL << "' y='" << kH - kMarginB + 16 << "'>" << num(xa.lo)
       << "</text>\n";
    os << "<text x='" << kW - kMarginR << "' y='" << kH - kMarginB + 16
       << "' text-anchor='end'>" << num(xa.hi) << "</text>\n";
    os << "<text x='" << kMarginL - 4 << "' y='" << kH - kMarginB << "' text-anchor='end'>"
       << num(ya.lo) << "</text>\n";
    os << "<text x='" << kMarginL - 4 << "' y='" << kMarginT + 10 << "' text-anchor='end'>"
       << num(ya.hi) << "</text>\n";

    int ci = 0;
    for (const auto& s : spec.series) {
        const char* color = kColors[ci % 8];
        // confidence band
        bool has_band = false;
        for (std::size_t i = 0; i < s.x.size(); ++i)
            if (s.lo[i] != s.y[i] || s.hi[i] != s.y[i]) has_band = true;
        if (has_band && s.x.size() > 1) {
            os << "<path d='M";
            for (std::size_t i = 0; i < s.x.size(); ++i)
                os << X(s.x[i]) << "," << Y(std::max(s.hi[i], ya.lo)) << " ";
            for (std::size_t i = s.x.size(); i-- > 0;)
                os << X(s.x[i]) << "," << Y(std::max(s.lo[i], ya.lo)) << " ";
            os << "Z' fill='" << color << "' opacity='0.15' stroke='none'/>\n";
        }
        os << "<polyline fill='none' stroke='" << color << "' stroke-width='1.5' points='";
        for (std::size_t i = 0; i < s.x.size(); ++i) os << X(s.x[i]) << "," << Y(s.y[i]) << " ";
        os << "'/>\n";
        for (std::size_t i = 0; i < s.x.size(); ++i)
            os << "<circle cx='" << X(s.x[i]) << "' cy='" << Y(s.y[i]) << "' r='2.5' fill='"
               << color << "'/>\n";
        os << "<text x='" << kW - kMarginR - 6 << "' y='" << kMarginT + 16 + 16 * ci
           << "' text-anchor='end' fill='" << color << "'>" << s.label << "</text>\n";
        ++ci;
    }
    os << "</svg>\n";
}

bool plot_rows(const std::string& experiment, const std::vector<ResultRow>& rows, PlotSpec& out) {
    // rows arrive sorted by write_csv order only inside files; sort keys here
    std::map<std::string, PlotSeries> series;
    const auto add = [&](const std::string& key, double x, double y, double lo, double hi) {
        auto& s = series[key];
        s.label = key;
        s.x.push_back(x);
        s.y.push_back(y);
        s.lo.push_back(lo);
        s.hi.push_back(hi);
    };
    std::ostringstream key;
    if (experiment == "tail") {
        for (const auto& r : rows) {
            if (r.statistic != "compensated_tail" || r.seed >= 0) continue;
            std::ostringstream k;
            k << "g=" << r.gamma << " b=" << num(r.beta);
            add(k.str(), static_cast<double>(r.k), r.estimate, r.estimate - r.half_width,
                r.estimate + r.half_width);
        }
        out.title = "compensated component-size tail";
        out.x_label = "k";
        out.y_label = "k log^2(k) P(|C| >= k)";
        out.log_x = true;
    } else if (experiment == "susceptibility") {
        for (const auto& r : rows) {
            if (r.statistic != "susceptibility" || r.seed >= 0) continue;
            std::ostringstream k;
            k << "g=" << r.gamma << " n=" << r.n;
            add(k.str(), r.alpha, r.estimate, r.estimate - r.half_width,
                r.estimate + r.half_width);
        }
        out.title = "susceptibility across the window";
        out.x_label = "alpha";
        out.y_label = "mean |C(O)|";
    } else if (experiment == "window_scan") {
        std::map<std::string, std::map<double, std::array<double, 3>>> cells;
        for (const auto& r : rows) {
            if (r.seed >= 0 || r.k >= 0) continue;
            std::ostringstream k;
            k << "g=" << r.gamma << " a=" << num(r.alpha);
            if (r.statistic == "normalized_largest_median")
                cells[k.str()][static_cast<double>(r.n)][0] = r.estimate;
            if (r.statistic == "normalized_largest_q25")
                cells[k.str()][static_cast<double>(r.n)][1] = r.estimate;
            if (r.statistic == "normalized_largest_q75")
                cells[k.str()][static_cast<double>(r.n)][2] = r.estimate;
        }
        for (const auto& [k, pts] : cells)
            for (const auto& [n, v] : pts) add(k, n, v[0], v[1], v[2]);
        out.title = "normalized largest component |L| log(n) Si(alpha) / sqrt(n)";
        out.x_label = "n";
        out.y_label = "median (IQR band)";
        out.log_x = true;
    } else {
        return false;
    }
    for (auto& [k, s] : series) {
        (void)k;
        // sort each series by x
        std::vector<std::size_t> idx(s.x.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(),
                  [&](std::size_t a, std::size_t b) { return s.x[a] < s.x[b]; });
        PlotSeries sorted;
        sorted.label = s.label;
        for (const std::size_t i : idx) {
            sorted.x.push_back(s.x[i]);
            sorted.y.push_back(s.y[i]);
            sorted.lo.push_back(s.lo[i]);
            sorted.hi.push_back(s.hi[i]);
        }
        out.series.push_back(std::move(sorted));
    }
    return !out.series.empty();
}

}  // namespace critwin
