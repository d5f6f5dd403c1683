#include "srg/svg_chart.hpp"

#include <cstdarg>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace srg {

namespace {

constexpr int k_margin_left = 56;
constexpr int k_margin_right = 150;
constexpr int k_margin_top = 34;
constexpr int k_margin_bottom = 44;
constexpr std::size_t k_max_points = 2000;

struct series_def {
    const char* name;
    const char* color;
    double trajectory_row::*field;
};

constexpr series_def k_series[6] = {
    {"p", "red", &trajectory_row::p},       {"v1", "green", &trajectory_row::v1},
    {"v2", "blue", &trajectory_row::v2},    {"s1", "yellow", &trajectory_row::s1},
    {"s2", "turquoise", &trajectory_row::s2}, {"s3", "magenta", &trajectory_row::s3},
};

void appendf(std::string& out, const char* fmt, ...) {
    char buf[512];
    va_list args;
    va_start(args, fmt);
    std::vsnprintf(buf, sizeof(buf), fmt, args);
    va_end(args);
    out += buf;
}

} // namespace

std::string render_chart(const std::vector<chart_group>& groups, const chart_spec& spec) {
    if (groups.empty()) throw std::invalid_argument("chart needs at least one group");
    for (const auto& g : groups) {
        if (g.rows.empty()) throw std::invalid_argument("chart group has no rows");
        for (std::size_t i = 1; i < g.rows.size(); ++i)
            if (g.rows[i].tau < g.rows[i - 1].tau)
                throw std::invalid_argument("chart rows must have nondecreasing tau");
    }

    const double plot_w = spec.width - k_margin_left - k_margin_right;
    const double plot_h = spec.height - k_margin_top - k_margin_bottom;
    const auto sx = [&](double tau) {
        return k_margin_left + plot_w * (tau - spec.tau_min) / (spec.tau_max - spec.tau_min);
    };
    const auto sy = [&](double y) {
        return k_margin_top + plot_h * (1.0 - (y - spec.y_min) / (spec.y_max - spec.y_min));
    };

    std::string out;
    out.reserve(1 << 16);
    appendf(out,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
            "width=\"%d\" height=\"%d\" viewBox=\"0 0 %d %d\">\n",
            spec.width, spec.height, spec.width, spec.height);
    appendf(out, "<rect width=\"%d\" height=\"%d\" fill=\"white\"/>\n", spec.width, spec.height);
    if (!spec.title.empty())
        appendf(out,
                "<text x=\"%.2f\" y=\"20\" font-family=\"sans-serif\" font-size=\"14\" "
                "text-anchor=\"middle\">%s</text>\n",
                k_margin_left + plot_w / 2.0, spec.title.c_str());

    // frame and gridlines
    appendf(out,
            "<rect x=\"%d\" y=\"%d\" width=\"%.2f\" height=\"%.2f\" fill=\"none\" "
            "stroke=\"black\" stroke-width=\"1\"/>\n",
            k_margin_left, k_margin_top, plot_w, plot_h);
    for (int i = 0; i <= 4; ++i) {
        const double tau = spec.tau_min + (spec.tau_max - spec.tau_min) * i / 4.0;
        const double x = sx(tau);
        appendf(out,
                "<line x1=\"%.2f\" y1=\"%d\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"#cccccc\" "
                "stroke-width=\"0.5\"/>\n",
                x, k_margin_top, x, k_margin_top + plot_h);
        appendf(out,
                "<text x=\"%.2f\" y=\"%.2f\" font-family=\"sans-serif\" font-size=\"11\" "
                "text-anchor=\"middle\">%.2f</text>\n",
                x, k_margin_top + plot_h + 16.0, tau);
    }
    for (int i = 0; i <= 4; ++i) {
        const double yv = spec.y_min + (spec.y_max - spec.y_min) * i / 4.0;
        const double y = sy(yv);
        appendf(out,
                "<line x1=\"%d\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"#cccccc\" "
                "stroke-width=\"0.5\"/>\n",
                k_margin_left, y, k_margin_left + plot_w, y);
        appendf(out,
                "<text x=\"%.2f\" y=\"%.2f\" font-family=\"sans-serif\" font-size=\"11\" "
                "text-anchor=\"end\">%.2f</text>\n",
                k_margin_left - 6.0, y + 4.0, yv);
    }
    appendf(out,
            "<text x=\"%.2f\" y=\"%.2f\" font-family=\"sans-serif\" font-size=\"12\" "
            "text-anchor=\"middle\">rounds / n</text>\n",
            k_margin_left + plot_w / 2.0, k_margin_top + plot_h + 36.0);

    // series polylines, decimated to a bounded point count
    int legend_slot = 0;
    for (const auto& g : groups) {
        const std::size_t stride = g.rows.size() > k_max_points
                                       ? (g.rows.size() + k_max_points - 1) / k_max_points
                                       : 1;
        for (const auto& sd : k_series) {
            out += "<polyline fill=\"none\" stroke=\"";
            out += sd.color;
            out += "\" stroke-width=\"1.5\"";
            if (g.dashed) out += " stroke-dasharray=\"6 4\"";
            out += " points=\"";
            for (std::size_t i = 0; i < g.rows.size(); i += stride) {
                const auto& r = g.rows[i];
                appendf(out, "%.2f,%.2f ", sx(r.tau), sy(r.*(sd.field)));
            }
            const auto& last = g.rows.back();
            appendf(out, "%.2f,%.2f", sx(last.tau), sy(last.*(sd.field)));
            out += "\"/>\n";
        }
        // legend column
        for (const auto& sd : k_series) {
            const double lx = spec.width - k_margin_right + 14.0;
            const double ly = k_margin_top + 8.0 + 18.0 * legend_slot;
            appendf(out,
                    "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"%s\" "
                    "stroke-width=\"2\"%s/>\n",
                    lx, ly, lx + 22.0, ly, sd.color,
                    g.dashed ? " stroke-dasharray=\"6 4\"" : "");
            appendf(out,
                    "<text x=\"%.2f\" y=\"%.2f\" font-family=\"sans-serif\" "
                    "font-size=\"11\">%s%s%s</text>\n",
                    lx + 28.0, ly + 4.0, sd.name, g.suffix.empty() ? "" : " ",
                    g.suffix.c_str());
            legend_slot += 1;
        }
    }
    out += "</svg>\n";
    return out;
}

void emit_chart(const std::vector<chart_group>& groups, const chart_spec& spec,
                const std::string& path) {
    const std::string svg = render_chart(groups, spec);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << svg;
}

} // namespace srg
