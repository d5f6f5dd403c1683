#include "srg/ode.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace srg {

void integration_config::validate() const {
    if (!(step > 0.0)) throw std::invalid_argument("integration step must be positive");
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
    if (!(tau_max > 0.0)) throw std::invalid_argument("tau_max must be positive");
    if (!(v_floor > 0.0)) throw std::invalid_argument("v_floor must be positive");
}

fluid_rates derivatives(const fluid_state& fs, const model_variant& variant, double v_floor) {
    const double v = fs.v1 + fs.v2;
    if (v < v_floor) throw std::runtime_error("fluid state exhausted: v below floor");
    const bool cap3 = variant.stub_cap >= 3;
    const double s = cap3 ? fs.s1 + fs.s2 + fs.s3 : fs.s1 + fs.s2;
    const double mix = (fs.v1 + 2.0 * fs.v2) / v;
    const double bracket = 2.0 * s * mix / v + 2.0 * fs.v2 / v;

    fluid_rates r;
    r.p = 2.0 * fs.v2 + 2.0 * s * mix;
    r.v1 = -2.0 * fs.v1 - 2.0 * s * fs.v1 / v;
    r.v2 = -2.0 * fs.v2 + 2.0 * fs.v1 - 4.0 * s * fs.v2 / v;
    r.s1 = fs.p - 5.0 * s - 3.0 * fs.s1 + 2.0 * fs.s2 + bracket * (2.0 * fs.s2 - fs.s1);
    if (cap3) {
        r.s2 = fs.s1 - 3.0 * fs.s2 + 2.0 * fs.s3 + bracket * (3.0 * fs.s3 - 2.0 * fs.s2);
        r.s3 = fs.s2 - 2.0 * fs.s3 - bracket * 3.0 * fs.s3;
    } else {
        r.s2 = fs.s1 - 2.0 * fs.s2 - bracket * 2.0 * fs.s2;
        r.s3 = 0.0;
    }
    return r;
}

namespace {

fluid_state advance(const fluid_state& y, const fluid_rates& k, double h, double tau) {
    fluid_state out;
    out.tau = tau;
    out.p = y.p + h * k.p;
    out.v1 = y.v1 + h * k.v1;
    out.v2 = y.v2 + h * k.v2;
    out.s1 = y.s1 + h * k.s1;
    out.s2 = y.s2 + h * k.s2;
    out.s3 = y.s3 + h * k.s3;
    return out;
}

fluid_rates combine(const fluid_rates& k1, const fluid_rates& k2, const fluid_rates& k3,
                    const fluid_rates& k4) {
    fluid_rates r;
    r.p = (k1.p + 2.0 * (k2.p + k3.p) + k4.p) / 6.0;
    r.v1 = (k1.v1 + 2.0 * (k2.v1 + k3.v1) + k4.v1) / 6.0;
    r.v2 = (k1.v2 + 2.0 * (k2.v2 + k3.v2) + k4.v2) / 6.0;
    r.s1 = (k1.s1 + 2.0 * (k2.s1 + k3.s1) + k4.s1) / 6.0;
    r.s2 = (k1.s2 + 2.0 * (k2.s2 + k3.s2) + k4.s2) / 6.0;
    r.s3 = (k1.s3 + 2.0 * (k2.s3 + k3.s3) + k4.s3) / 6.0;
    return r;
}

bool finite(const fluid_state& y) {
    return std::isfinite(y.p) && std::isfinite(y.v1) && std::isfinite(y.v2) &&
           std::isfinite(y.s1) && std::isfinite(y.s2) && std::isfinite(y.s3);
}

} // namespace

std::vector<fluid_state> integrate(const model_variant& variant, const integration_config& cfg) {
    cfg.validate();
    fluid_state y;
    y.v1 = 1.0; // all vertices start isolated
    std::vector<fluid_state> traj;
    traj.reserve(static_cast<std::size_t>(2.0 / cfg.step) + 16);
    traj.push_back(y);

    const double h = cfg.step;
    while (y.p < 1.0 - cfg.delta && y.v1 + y.v2 > cfg.delta && y.tau < cfg.tau_max) {
        const fluid_rates k1 = derivatives(y, variant, cfg.v_floor);
        const fluid_rates k2 = derivatives(advance(y, k1, 0.5 * h, y.tau), variant, cfg.v_floor);
        const fluid_rates k3 = derivatives(advance(y, k2, 0.5 * h, y.tau), variant, cfg.v_floor);
        const fluid_rates k4 = derivatives(advance(y, k3, h, y.tau), variant, cfg.v_floor);
        y = advance(y, combine(k1, k2, k3, k4), h, y.tau + h);
        if (!finite(y))
            throw std::runtime_error("integration produced a non-finite state at tau = " +
                                     std::to_string(y.tau));
        traj.push_back(y);
    }
    return traj;
}

double tau_star(const std::vector<fluid_state>& trajectory, double delta) {
    const double level = 1.0 - delta;
    for (std::size_t i = 1; i < trajectory.size(); ++i) {
        const auto& a = trajectory[i - 1];
        const auto& b = trajectory[i];
        if (a.p < level && b.p >= level) {
            const double f = (level - a.p) / (b.p - a.p);
            return a.tau + f * (b.tau - a.tau);
        }
    }
    throw std::runtime_error("fluid trajectory did not complete: p never reached 1 - delta");
}

std::vector<trajectory_row> to_rows(const std::vector<fluid_state>& trajectory) {
    std::vector<trajectory_row> rows;
    rows.reserve(trajectory.size());
    for (const auto& fs : trajectory) rows.push_back(fs.as_row());
    return rows;
}

} // namespace srg
