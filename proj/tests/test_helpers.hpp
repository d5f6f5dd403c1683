#ifndef SRG_TEST_HELPERS_HPP
#define SRG_TEST_HELPERS_HPP

#include "srg/process.hpp"

namespace srg::test {

inline config make_config(std::int64_t n, std::uint64_t seed = 1, int cap = 3,
                          bool pairing = true, stop_mode mode = stop_mode::full_cycle,
                          double epsilon = 0.01) {
    config cfg;
    cfg.n = n;
    cfg.seed = seed;
    cfg.stub_cap = cap;
    cfg.pairing_enabled = pairing;
    cfg.mode = mode;
    cfg.epsilon = epsilon;
    return cfg;
}

inline step_choices with_end(vertex_id w) {
    step_choices c;
    c.stub_end = w;
    return c;
}

inline step_choices with_partner(vertex_id p) {
    step_choices c;
    c.pair_partner = p;
    return c;
}

inline step_choices with_edge(std::int32_t idx) {
    step_choices c;
    c.edge_index = idx;
    return c;
}

/// C5 with a forced partner: pairs {a, b}.
inline void pair_vertices(process_state& st, vertex_id a, vertex_id b) {
    st.apply_presented(a, with_partner(b));
}

/// Pair {a, b} and immediately append the pair, extending the path by a, b.
inline void append_pair(process_state& st, vertex_id a, vertex_id b) {
    pair_vertices(st, a, b);
    st.apply_presented(a);
}

/// Builds the path 0, 1, ..., k-1 (k even) with no stubs.
inline void build_path(process_state& st, vertex_id k) {
    for (vertex_id i = 0; i < k; i += 2) append_pair(st, i, static_cast<vertex_id>(i + 1));
}

/// C1 with a forced stubend: makes `v` (currently clear) a 1-stub to `w`.
inline void make_stub(process_state& st, vertex_id v, vertex_id w) {
    st.apply_presented(v, with_end(w));
}

} // namespace srg::test

#endif
