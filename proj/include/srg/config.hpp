#ifndef SRG_CONFIG_HPP
#define SRG_CONFIG_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace srg {

enum class stop_mode {
    main_phase, // run until P >= (1 - epsilon) * n
    full_cycle  // run until the Hamilton path is complete (P == n)
};

/// Immutable parameters of one simulation trial.
struct config {
    std::int64_t n = 0;
    int stub_cap = 3; // 2 or 3
    bool pairing_enabled = true;
    stop_mode mode = stop_mode::full_cycle;
    double epsilon = 0.01; // main_phase stop margin
    std::uint64_t seed = 0;

    void validate() const {
        if (n < 1) throw std::invalid_argument("config: n must be positive");
        if (stub_cap != 2 && stub_cap != 3)
            throw std::invalid_argument("config: stub cap must be 2 or 3");
        if (mode == stop_mode::main_phase && !(epsilon > 0.0 && epsilon < 1.0))
            throw std::invalid_argument("config: epsilon must lie in (0, 1)");
        if (mode == stop_mode::full_cycle && n < 3)
            throw std::invalid_argument("config: full-cycle mode needs n >= 3");
    }
};

} // namespace srg

#endif
