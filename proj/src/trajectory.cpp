#include "srg/trajectory.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace srg {

namespace {

void append_row(std::string& buf, const trajectory_row& r) {
    char line[160];
    std::snprintf(line, sizeof(line), "%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g\n", r.tau, r.p,
                  r.v1, r.v2, r.s1, r.s2, r.s3);
    buf += line;
}

} // namespace

void write_trajectory_csv(std::ostream& out, const std::vector<trajectory_row>& rows) {
    std::string buf;
    buf.reserve(rows.size() * 64 + 32);
    buf += k_trajectory_csv_header;
    buf += '\n';
    for (const auto& r : rows) append_row(buf, r);
    out << buf;
}

void write_trajectory_csv(const std::string& path, const std::vector<trajectory_row>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    write_trajectory_csv(out, rows);
}

std::vector<trajectory_row> read_trajectory_csv(std::istream& in) {
    std::vector<trajectory_row> rows;
    std::string line;
    if (!std::getline(in, line)) return rows;
    if (line != k_trajectory_csv_header)
        throw std::runtime_error("unexpected trajectory header: " + line);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        trajectory_row r;
        std::istringstream ls(line);
        char comma;
        if (!(ls >> r.tau >> comma >> r.p >> comma >> r.v1 >> comma >> r.v2 >> comma >> r.s1 >>
              comma >> r.s2 >> comma >> r.s3))
            throw std::runtime_error("bad trajectory row: " + line);
        rows.push_back(r);
    }
    return rows;
}

std::vector<trajectory_row> mean_trajectory(const std::vector<std::vector<trajectory_row>>& runs) {
    if (runs.empty()) return {};
    std::size_t len = runs.front().size();
    for (const auto& r : runs) len = std::min(len, r.size());
    std::vector<trajectory_row> mean(len);
    const double inv = 1.0 / static_cast<double>(runs.size());
    for (std::size_t i = 0; i < len; ++i) {
        trajectory_row acc;
        for (const auto& r : runs) {
            acc.tau += r[i].tau;
            acc.p += r[i].p;
            acc.v1 += r[i].v1;
            acc.v2 += r[i].v2;
            acc.s1 += r[i].s1;
            acc.s2 += r[i].s2;
            acc.s3 += r[i].s3;
        }
        mean[i] = {acc.tau * inv, acc.p * inv,  acc.v1 * inv, acc.v2 * inv,
                   acc.s1 * inv,  acc.s2 * inv, acc.s3 * inv};
    }
    return mean;
}

trajectory_row interpolate_row(const std::vector<trajectory_row>& rows, double tau) {
    if (rows.empty()) throw std::invalid_argument("interpolate_row: empty trajectory");
    if (tau <= rows.front().tau) return rows.front();
    if (tau >= rows.back().tau) return rows.back();
    std::size_t lo = 0, hi = rows.size() - 1;
    while (hi - lo > 1) {
        const std::size_t mid = (lo + hi) / 2;
        if (rows[mid].tau <= tau) lo = mid;
        else hi = mid;
    }
    const auto& a = rows[lo];
    const auto& b = rows[hi];
    const double span = b.tau - a.tau;
    const double f = span > 0.0 ? (tau - a.tau) / span : 0.0;
    const auto lerp = [f](double x, double y) { return x + f * (y - x); };
    return {tau,
            lerp(a.p, b.p),
            lerp(a.v1, b.v1),
            lerp(a.v2, b.v2),
            lerp(a.s1, b.s1),
            lerp(a.s2, b.s2),
            lerp(a.s3, b.s3)};
}

} // namespace srg
