#ifndef SRG_CYCLE_CLOSER_HPP
#define SRG_CYCLE_CLOSER_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "srg/event.hpp"
#include "srg/process.hpp"
#include "srg/rng.hpp"

namespace srg {

/// Direction of an endpoint stub held by a path vertex.
enum class end_target : std::uint8_t { to_head = 1, to_tail = 2 };

/// Turns a complete Hamilton path into a Hamilton cycle: each round the
/// presented vertex either closes the cycle (it is an endpoint, or a
/// neighbor's endpoint stub lines up) or commits an edge to a uniformly
/// chosen endpoint. Main-phase stub bookkeeping plays no part here.
class cycle_closer {
  public:
    /// `path` is the Hamilton path order; created edges are recorded into
    /// `edges`. Requires n >= 3.
    cycle_closer(std::vector<vertex_id> path, edge_set& edges);

    /// One round with the given presented vertex. The endpoint direction is
    /// drawn from `rng` only when the round stores a new endpoint stub.
    /// Returns true once the cycle is closed.
    bool present(vertex_id v, rng_engine& rng);

    /// Deterministic variant for tests: `forced` is used instead of a draw.
    bool present(vertex_id v, std::optional<end_target> forced);

    bool closed() const { return closed_; }
    std::int64_t rounds_used() const { return rounds_; }

    /// The cyclic vertex order; valid once closed.
    const std::vector<vertex_id>& cycle() const { return cycle_; }

    bool has_endstub(vertex_id v, end_target dir) const {
        return (endstubs_[static_cast<std::size_t>(v)] & static_cast<std::uint8_t>(dir)) != 0;
    }

  private:
    bool present_impl(vertex_id v, std::optional<end_target> forced, rng_engine* rng);
    void close_with_pred_stub(vertex_id v);
    void close_with_succ_stub(vertex_id v);

    std::vector<vertex_id> order_;       // path positions head..tail
    std::vector<std::int32_t> pos_;      // vertex -> index in order_
    std::vector<std::uint8_t> endstubs_; // bitmask of end_target
    edge_set* edges_;
    std::int64_t rounds_ = 0;
    bool closed_ = false;
    std::vector<vertex_id> cycle_;
};

struct closure_result {
    std::vector<vertex_id> cycle;
    std::int64_t rounds_used = 0;
};

/// Runs the closer to completion with uniform presentations.
closure_result close_cycle(const std::vector<vertex_id>& path, rng_engine& rng, edge_set& edges);

} // namespace srg

#endif
