#ifndef SRG_ODE_HPP
#define SRG_ODE_HPP

#include <vector>

#include "srg/trajectory.hpp"

namespace srg {

/// Scaled state of the fluid limit at time tau = t/n; all components are
/// fractions of n.
struct fluid_state {
    double tau = 0.0;
    double p = 0.0;
    double v1 = 0.0;
    double v2 = 0.0;
    double s1 = 0.0;
    double s2 = 0.0;
    double s3 = 0.0;

    trajectory_row as_row() const { return {tau, p, v1, v2, s1, s2, s3}; }
};

/// Rate of change of the six scaled counts.
struct fluid_rates {
    double p = 0.0;
    double v1 = 0.0;
    double v2 = 0.0;
    double s1 = 0.0;
    double s2 = 0.0;
    double s3 = 0.0;
};

struct model_variant {
    int stub_cap = 3; // 2 or 3
};

struct integration_config {
    double step = 1e-4;       // fixed step in tau
    double delta = 1e-6;      // stop at p >= 1 - delta (equivalently v <= delta)
    double tau_max = 3.0;     // runaway guard
    double v_floor = 1e-9;    // below this the s/v terms are meaningless
    void validate() const;
};

/// Right-hand side of the fluid system. The cap-2 variant drops the
/// 2-stub -> 3-stub flow and keeps s3 identically zero. Throws when
/// v1 + v2 < v_floor (integration must already have stopped).
fluid_rates derivatives(const fluid_state& fs, const model_variant& variant,
                        double v_floor = 1e-9);

/// Classical fixed-step 4th-order integration from the all-isolated start
/// (v1 = 1). Stops at the first of: p >= 1 - delta, v <= delta,
/// tau >= tau_max. Records every step.
std::vector<fluid_state> integrate(const model_variant& variant, const integration_config& cfg);

/// First crossing of p = 1 - delta, linearly interpolated between the
/// bracketing steps. Throws if the trajectory never crossed.
double tau_star(const std::vector<fluid_state>& trajectory, double delta);

std::vector<trajectory_row> to_rows(const std::vector<fluid_state>& trajectory);

} // namespace srg

#endif
