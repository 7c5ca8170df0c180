#include "diatopics/chart.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "diatopics/errors.hpp"

namespace diatopics {

namespace {

constexpr double kMarginLeft = 72.0;
constexpr double kMarginRight = 24.0;
constexpr double kMarginTop = 44.0;
constexpr double kMarginBottom = 64.0;
constexpr int kYTicks = 5;

const char* const kPalette[] = {
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
    "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f",
};
constexpr size_t kPaletteSize = sizeof(kPalette) / sizeof(kPalette[0]);

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string tick_text(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

}  // namespace

std::string xml_escape(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string render_svg(const ChartSpec& spec) {
    if (spec.x_labels.empty()) throw ConfigError("chart has no x positions");
    if (spec.width < 200 || spec.height < 150) {
        throw ConfigError("chart dimensions too small");
    }
    const size_t n = spec.x_labels.size();

    // Resolve the plotted value for each point (log transform + gap rules),
    // then find the y range.
    std::vector<std::vector<std::optional<double>>> plotted(spec.series.size());
    double y_min = 0.0, y_max = 0.0;
    bool any = false;
    for (size_t s = 0; s < spec.series.size(); ++s) {
        if (spec.series[s].values.size() != n) {
            throw DataError("series '" + spec.series[s].name + "' has " +
                            std::to_string(spec.series[s].values.size()) +
                            " values for " + std::to_string(n) + " x positions");
        }
        plotted[s].resize(n);
        for (size_t i = 0; i < n; ++i) {
            const auto& v = spec.series[s].values[i];
            if (!v || !std::isfinite(*v)) continue;
            double y = *v;
            if (spec.log_y) {
                if (!(y > 0.0)) continue;
                y = std::log10(y);
            }
            plotted[s][i] = y;
            if (!any) {
                y_min = y_max = y;
                any = true;
            } else {
                y_min = std::min(y_min, y);
                y_max = std::max(y_max, y);
            }
        }
    }
    if (!any) {
        y_min = 0.0;
        y_max = 1.0;
    }
    if (spec.y_max) {
        y_max = *spec.y_max;
        y_min = std::min(y_min, y_max);
    }
    if (y_max - y_min < 1e-12) {
        y_min -= 0.5;
        y_max += 0.5;
    }

    const double plot_x = kMarginLeft;
    const double plot_y = kMarginTop;
    const double plot_w = spec.width - kMarginLeft - kMarginRight;
    const double plot_h = spec.height - kMarginTop - kMarginBottom;
    auto x_of = [&](size_t i) {
        return plot_x + (static_cast<double>(i) + 0.5) * plot_w /
                            static_cast<double>(n);
    };
    auto y_of = [&](double v) {
        return plot_y + plot_h * (1.0 - (v - y_min) / (y_max - y_min));
    };

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width
        << "\" height=\"" << spec.height << "\" viewBox=\"0 0 " << spec.width
        << " " << spec.height << "\">\n";
    svg << "<rect x=\"0\" y=\"0\" width=\"" << spec.width << "\" height=\""
        << spec.height << "\" fill=\"#ffffff\"/>\n";
    svg << "<text x=\"" << num(spec.width / 2.0)
        << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"16\">"
        << xml_escape(spec.title) << "</text>\n";

    // Gridlines and y tick labels.
    for (int t = 0; t < kYTicks; ++t) {
        const double v =
            y_min + (y_max - y_min) * static_cast<double>(t) / (kYTicks - 1);
        const double y = y_of(v);
        svg << "<line x1=\"" << num(plot_x) << "\" y1=\"" << num(y)
            << "\" x2=\"" << num(plot_x + plot_w) << "\" y2=\"" << num(y)
            << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        svg << "<text x=\"" << num(plot_x - 8.0) << "\" y=\"" << num(y + 4.0)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
               "font-size=\"11\">"
            << xml_escape(tick_text(v)) << "</text>\n";
    }

    // Axes.
    svg << "<line x1=\"" << num(plot_x) << "\" y1=\"" << num(plot_y)
        << "\" x2=\"" << num(plot_x) << "\" y2=\"" << num(plot_y + plot_h)
        << "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
    svg << "<line x1=\"" << num(plot_x) << "\" y1=\"" << num(plot_y + plot_h)
        << "\" x2=\"" << num(plot_x + plot_w) << "\" y2=\""
        << num(plot_y + plot_h) << "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";

    // X tick labels.
    for (size_t i = 0; i < n; ++i) {
        svg << "<text x=\"" << num(x_of(i)) << "\" y=\""
            << num(plot_y + plot_h + 18.0)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
               "font-size=\"11\">"
            << xml_escape(spec.x_labels[i]) << "</text>\n";
    }
    if (!spec.y_label.empty()) {
        const double cx = 18.0;
        const double cy = plot_y + plot_h / 2.0;
        svg << "<text x=\"" << num(cx) << "\" y=\"" << num(cy)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
               "font-size=\"12\" transform=\"rotate(-90 "
            << num(cx) << " " << num(cy) << ")\">" << xml_escape(spec.y_label)
            << "</text>\n";
    }

    // Series: one group per series, split into polylines at gaps.
    for (size_t s = 0; s < spec.series.size(); ++s) {
        const char* color = kPalette[s % kPaletteSize];
        svg << "<g fill=\"none\" stroke=\"" << color
            << "\" stroke-width=\"2\" data-series=\""
            << xml_escape(spec.series[s].name) << "\">\n";
        std::vector<std::pair<double, double>> run;
        auto flush_run = [&]() {
            if (run.size() == 1) {
                svg << "<circle cx=\"" << num(run[0].first) << "\" cy=\""
                    << num(run[0].second) << "\" r=\"3\" fill=\"" << color
                    << "\" stroke=\"none\"/>\n";
            } else if (run.size() > 1) {
                svg << "<polyline points=\"";
                for (size_t p = 0; p < run.size(); ++p) {
                    if (p > 0) svg << ' ';
                    svg << num(run[p].first) << ',' << num(run[p].second);
                }
                svg << "\"/>\n";
            }
            run.clear();
        };
        for (size_t i = 0; i < n; ++i) {
            if (plotted[s][i]) {
                run.emplace_back(x_of(i), y_of(*plotted[s][i]));
            } else {
                flush_run();
            }
        }
        flush_run();
        svg << "</g>\n";
    }

    // Legend in the top-right corner of the plot area.
    double legend_y = plot_y + 14.0;
    for (size_t s = 0; s < spec.series.size(); ++s) {
        const double lx = plot_x + plot_w - 150.0;
        svg << "<rect x=\"" << num(lx) << "\" y=\"" << num(legend_y - 9.0)
            << "\" width=\"12\" height=\"12\" fill=\"" << kPalette[s % kPaletteSize]
            << "\"/>\n";
        svg << "<text x=\"" << num(lx + 18.0) << "\" y=\"" << num(legend_y + 1.0)
            << "\" font-family=\"sans-serif\" font-size=\"11\">"
            << xml_escape(spec.series[s].name) << "</text>\n";
        legend_y += 16.0;
    }

    svg << "</svg>\n";
    return svg.str();
}

void write_svg(const ChartSpec& spec, const std::string& path) {
    const std::string doc = render_svg(spec);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write file: " + path);
    out << doc;
    if (!out) throw IoError("write failed: " + path);
}

}  // namespace diatopics
