#include "qubofold/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qubofold {

namespace {

// Fixed palette: truth blue, measured orange, then one color per series.
constexpr const char* kTruthColor = "#1f77b4";
constexpr const char* kMeasuredColor = "#ff7f0e";
constexpr const char* kSeriesColors[] = {"#2ca02c", "#d62728", "#9467bd",
                                         "#8c564b", "#e377c2", "#7f7f7f"};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string fmt_tick(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

struct Panel {
    double x0, y0, x1, y1;  // pixel box, y grows downward
    double xmin, xmax, ymin, ymax;

    double px(double x) const {
        return x0 + (x - xmin) / (xmax - xmin) * (x1 - x0);
    }
    double py(double y) const {
        return y1 - (y - ymin) / (ymax - ymin) * (y1 - y0);
    }
};

void draw_axes(std::ostringstream& svg, const Panel& p, int n_yticks) {
    svg << "<rect x=\"" << fmt(p.x0) << "\" y=\"" << fmt(p.y0) << "\" width=\""
        << fmt(p.x1 - p.x0) << "\" height=\"" << fmt(p.y1 - p.y0)
        << "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
    for (int t = 0; t <= 4; ++t) {
        const double x = p.xmin + (p.xmax - p.xmin) * t / 4.0;
        svg << "<line x1=\"" << fmt(p.px(x)) << "\" y1=\"" << fmt(p.y1)
            << "\" x2=\"" << fmt(p.px(x)) << "\" y2=\"" << fmt(p.y1 + 4)
            << "\" stroke=\"#333333\"/>\n";
        svg << "<text x=\"" << fmt(p.px(x)) << "\" y=\"" << fmt(p.y1 + 16)
            << "\" font-size=\"10\" text-anchor=\"middle\">" << fmt_tick(x)
            << "</text>\n";
    }
    for (int t = 0; t <= n_yticks; ++t) {
        const double y = p.ymin + (p.ymax - p.ymin) * t / n_yticks;
        svg << "<line x1=\"" << fmt(p.x0 - 4) << "\" y1=\"" << fmt(p.py(y))
            << "\" x2=\"" << fmt(p.x0) << "\" y2=\"" << fmt(p.py(y))
            << "\" stroke=\"#333333\"/>\n";
        svg << "<text x=\"" << fmt(p.x0 - 7) << "\" y=\"" << fmt(p.py(y) + 3)
            << "\" font-size=\"10\" text-anchor=\"end\">" << fmt_tick(y)
            << "</text>\n";
    }
}

void draw_steps(std::ostringstream& svg, const Panel& p,
                const std::vector<double>& edges, const std::vector<double>& counts,
                const char* color) {
    std::ostringstream pts;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        pts << fmt(p.px(edges[i])) << "," << fmt(p.py(counts[i])) << " "
            << fmt(p.px(edges[i + 1])) << "," << fmt(p.py(counts[i])) << " ";
    }
    svg << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\" points=\"" << pts.str() << "\"/>\n";
}

}  // namespace

PlotInput plot_input_from_records(const std::vector<BenchmarkRecord>& records,
                                  const std::vector<double>& edges) {
    if (records.empty()) {
        throw std::invalid_argument("plot: no records");
    }
    PlotInput input;
    input.edges = edges;
    input.title = records.front().distribution;
    input.truth = records.front().truth;
    input.measured = records.front().measured;
    for (const auto& rec : records) {
        if (rec.distribution != input.title || rec.truth.size() + 1 != edges.size()) {
            throw std::invalid_argument("plot: records do not share a binning");
        }
        if (rec.failed) continue;
        char label[64];
        std::snprintf(label, sizeof(label), "%s (chi2=%.1f)", rec.method.c_str(),
                      rec.chi2);
        input.series.push_back({label, rec.estimate, rec.errors, rec.ratio});
    }
    return input;
}

void emit_plot(const PlotInput& input, const std::string& path) {
    const std::size_t m = input.truth.size();
    if (input.edges.size() != m + 1 || input.measured.size() != m) {
        throw std::invalid_argument("plot: inconsistent binning");
    }

    double ymax = 1.0;
    for (double v : input.truth) ymax = std::max(ymax, v);
    for (double v : input.measured) ymax = std::max(ymax, v);
    for (const auto& s : input.series) {
        for (std::size_t i = 0; i < s.estimate.size(); ++i) {
            const double e = i < s.errors.size() ? s.errors[i] : 0.0;
            if (std::isfinite(s.estimate[i])) ymax = std::max(ymax, s.estimate[i] + e);
        }
    }

    double rmin = 0.5;
    double rmax = 1.5;
    for (const auto& s : input.series) {
        for (double r : s.ratio) {
            if (!std::isfinite(r)) continue;
            rmin = std::min(rmin, r);
            rmax = std::max(rmax, r);
        }
    }
    rmin = std::max(rmin - 0.1, -1.0);
    rmax = std::min(rmax + 0.1, 4.0);

    Panel top{70, 34, 830, 400, input.edges.front(), input.edges.back(), 0.0,
              1.12 * ymax};
    Panel bottom{70, 430, 830, 580, input.edges.front(), input.edges.back(), rmin,
                 rmax};

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"880\" height=\"620\" "
           "viewBox=\"0 0 880 620\">\n";
    svg << "<rect x=\"0\" y=\"0\" width=\"880\" height=\"620\" fill=\"#ffffff\"/>\n";
    svg << "<text x=\"440\" y=\"20\" font-size=\"14\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\">"
        << input.title << "</text>\n";

    draw_axes(svg, top, 5);
    draw_axes(svg, bottom, 3);
    svg << "<text x=\"16\" y=\"217\" font-size=\"11\" text-anchor=\"middle\" "
           "transform=\"rotate(-90 16 217)\">events per bin</text>\n";
    svg << "<text x=\"16\" y=\"505\" font-size=\"11\" text-anchor=\"middle\" "
           "transform=\"rotate(-90 16 505)\">ratio to truth</text>\n";

    draw_steps(svg, top, input.edges, input.truth, kTruthColor);
    draw_steps(svg, top, input.edges, input.measured, kMeasuredColor);

    // Unity reference in the ratio panel.
    svg << "<line x1=\"" << fmt(bottom.px(bottom.xmin)) << "\" y1=\""
        << fmt(bottom.py(1.0)) << "\" x2=\"" << fmt(bottom.px(bottom.xmax))
        << "\" y2=\"" << fmt(bottom.py(1.0))
        << "\" stroke=\"#888888\" stroke-dasharray=\"4 3\"/>\n";

    const std::size_t ns = input.series.size();
    for (std::size_t s = 0; s < ns; ++s) {
        const auto& series = input.series[s];
        const char* color = kSeriesColors[s % 6];
        // Spread markers inside each bin so overlapping methods stay visible.
        const double shift =
            ns > 1 ? (static_cast<double>(s) / (ns - 1) - 0.5) * 0.5 : 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            const double w = input.edges[i + 1] - input.edges[i];
            const double xc = 0.5 * (input.edges[i] + input.edges[i + 1]) + shift * w;
            const double v = series.estimate[i];
            if (std::isfinite(v)) {
                const double err = i < series.errors.size() ? series.errors[i] : 0.0;
                if (err > 0.0) {
                    svg << "<line x1=\"" << fmt(top.px(xc)) << "\" y1=\""
                        << fmt(top.py(std::max(v - err, top.ymin))) << "\" x2=\""
                        << fmt(top.px(xc)) << "\" y2=\""
                        << fmt(top.py(std::min(v + err, top.ymax))) << "\" stroke=\""
                        << color << "\"/>\n";
                }
                svg << "<circle cx=\"" << fmt(top.px(xc)) << "\" cy=\""
                    << fmt(top.py(std::clamp(v, top.ymin, top.ymax)))
                    << "\" r=\"3\" fill=\"" << color << "\"/>\n";
            }
            const double r = i < series.ratio.size()
                                 ? series.ratio[i]
                                 : std::numeric_limits<double>::quiet_NaN();
            if (std::isfinite(r)) {
                svg << "<circle cx=\"" << fmt(bottom.px(xc)) << "\" cy=\""
                    << fmt(bottom.py(std::clamp(r, bottom.ymin, bottom.ymax)))
                    << "\" r=\"2.5\" fill=\"" << color << "\"/>\n";
            }
        }
    }

    // Legend, top right.
    double ly = 46;
    auto legend_entry = [&](const std::string& label, const char* color) {
        svg << "<rect x=\"700\" y=\"" << fmt(ly - 8)
            << "\" width=\"10\" height=\"10\" fill=\"" << color << "\"/>\n";
        svg << "<text x=\"714\" y=\"" << fmt(ly)
            << "\" font-size=\"10\" font-family=\"sans-serif\">" << label
            << "</text>\n";
        ly += 14;
    };
    legend_entry("truth", kTruthColor);
    legend_entry("measured", kMeasuredColor);
    for (std::size_t s = 0; s < ns; ++s) {
        legend_entry(input.series[s].label, kSeriesColors[s % 6]);
    }

    svg << "</svg>\n";

    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open for writing: " + path);
    }
    out << svg.str();
    if (!out) {
        throw std::runtime_error("write failed: " + path);
    }
}

}  // namespace qubofold
