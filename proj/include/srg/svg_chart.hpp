#ifndef SRG_SVG_CHART_HPP
#define SRG_SVG_CHART_HPP

#include <string>
#include <vector>

#include "srg/trajectory.hpp"

namespace srg {

/// One plotted trajectory; every group draws all six series with a shared
/// name suffix (e.g. "sim" vs "ode", the latter dashed).
struct chart_group {
    std::string suffix;
    bool dashed = false;
    std::vector<trajectory_row> rows;
};

/// Fixed-axis line chart: tau on [0, 2], fractions on [0, 1]. Series colors
/// follow the usual scheme for this plot: p red, v1 green, v2 blue, s1
/// yellow, s2 turquoise, s3 magenta.
struct chart_spec {
    int width = 860;
    int height = 540;
    double tau_min = 0.0;
    double tau_max = 2.0;
    double y_min = 0.0;
    double y_max = 1.0;
    std::string title;
};

/// Renders a standalone SVG 1.1 document. Output bytes are a pure function
/// of the inputs.
std::string render_chart(const std::vector<chart_group>& groups, const chart_spec& spec);

void emit_chart(const std::vector<chart_group>& groups, const chart_spec& spec,
                const std::string& path);

} // namespace srg

#endif
