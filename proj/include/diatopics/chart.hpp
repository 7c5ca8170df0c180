#pragma once

#include <optional>
#include <string>
#include <vector>

namespace diatopics {

// One plotted line. Values run parallel to the chart's x_labels; a nullopt
// (or non-finite) value breaks the line into separate segments.
struct ChartSeries {
    std::string name;
    std::vector<std::optional<double>> values;
};

struct ChartSpec {
    std::string title;
    std::string y_label;
    std::vector<std::string> x_labels;
    std::vector<ChartSeries> series;
    bool log_y = false;  // plot log10(value); zeros/negatives become gaps
    std::optional<double> y_max;  // fixed upper bound (after any log10)
    int width = 900;
    int height = 540;
};

// Renders the chart as a standalone SVG document (one <g> per series, with
// one <polyline> per unbroken run of values).
std::string render_svg(const ChartSpec& spec);

void write_svg(const ChartSpec& spec, const std::string& path);

std::string xml_escape(const std::string& text);

}  // namespace diatopics
