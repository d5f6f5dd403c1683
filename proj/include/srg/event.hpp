#ifndef SRG_EVENT_HPP
#define SRG_EVENT_HPP

#include <array>
#include <cstdint>
#include <optional>

namespace srg {

using vertex_id = std::int32_t;
inline constexpr vertex_id k_no_vertex = -1;

/// Action classes of one round. c1..c6 follow the strategy's case split;
/// fallback is the append-to-tail rule used when pairing is off or only one
/// isolated vertex remains.
enum class event_class : std::uint8_t { c1, c2, c3, c4, c5, c6, fallback };

const char* to_string(event_class c);

/// Which stubend-hit statistic an event contributes to.
enum class lemma_class : std::uint8_t { none, c6, c3_isolated, c3_paired };

/// Everything one round did to the state, for logging and oracle tests.
struct event_record {
    std::int64_t t = 0;                    // round index, 0-based
    vertex_id presented = k_no_vertex;
    event_class cls = event_class::c4;
    std::array<std::int64_t, 6> delta{};   // dP, dV1, dV2, dS1, dS2, dS3
    vertex_id stub_end = k_no_vertex;      // w: drawn (c1/c2) or chosen (c3)
    vertex_id partner = k_no_vertex;       // v' (c5/c6) or w' (c3, paired)
    std::int32_t edges_deleted = 0;        // cascade deletions this round

    // stubend-hit sample, captured before the round mutates the state
    lemma_class lemma = lemma_class::none;
    std::int64_t lemma_v = 0;              // non-path count V at decision time
    std::int64_t lemma_edges = 0;          // indicator count
    std::int64_t lemma_hits = 0;
};

/// Injected internal choices for one round; unset fields fall back to the
/// trial rng. Lets an enumeration oracle drive the real transition function.
struct step_choices {
    std::optional<vertex_id> stub_end;      // c1/c2 target
    std::optional<std::int32_t> edge_index; // c3: which of the root's edges
    std::optional<vertex_id> pair_partner;  // c5
};

} // namespace srg

#endif
