#ifndef SRG_PROCESS_HPP
#define SRG_PROCESS_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <set>
#include <unordered_set>
#include <vector>

#include "srg/config.hpp"
#include "srg/event.hpp"
#include "srg/rng.hpp"
#include "srg/trajectory.hpp"

namespace srg {

/// Where a vertex currently stands. The first two are off-path states, the
/// rest are path-vertex types.
enum class vertex_state : std::uint8_t {
    isolated,
    paired,
    clear,
    stub,
    stub_neighbor,
    blocked_structural, // within path-distance 2 of a stub
    blocked_artificial  // padding that keeps #clear == max(0, P - 5S)
};

const char* to_string(vertex_state s);

struct counter_set {
    std::int64_t path = 0;     // P
    std::int64_t isolated = 0; // V1
    std::int64_t paired = 0;   // V2
    std::int64_t s1 = 0;
    std::int64_t s2 = 0;
    std::int64_t s3 = 0;

    std::int64_t stubs() const { return s1 + s2 + s3; }
    std::int64_t non_path() const { return isolated + paired; }
    std::array<std::int64_t, 6> as_array() const {
        return {path, isolated, paired, s1, s2, s3};
    }
};

/// Read-only export of the full process state, for the invariant auditor
/// and for fault-injection tests.
struct state_snapshot {
    std::int64_t n = 0;
    int stub_cap = 3;
    std::int64_t t = 0;
    counter_set counters;
    vertex_id head = k_no_vertex;
    vertex_id tail = k_no_vertex;
    std::vector<vertex_state> role;
    std::vector<vertex_id> partner;
    std::vector<vertex_id> prev;
    std::vector<vertex_id> next;
    std::vector<int> stub_degree;
    std::vector<std::uint32_t> stamp; // path-join order, 1-based; 0 = off path
    std::vector<std::pair<vertex_id, vertex_id>> edges_by_root;
    std::vector<std::pair<vertex_id, vertex_id>> edges_by_end;
};

/// Set of undirected edges committed to the graph so far, keyed by packed
/// endpoint pair.
class edge_set {
  public:
    static std::uint64_t pack(vertex_id a, vertex_id b) {
        if (a > b) std::swap(a, b);
        return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
               static_cast<std::uint32_t>(b);
    }
    void add(vertex_id a, vertex_id b) { edges_.insert(pack(a, b)); }
    bool has(vertex_id a, vertex_id b) const { return edges_.count(pack(a, b)) != 0; }
    std::size_t size() const { return edges_.size(); }

  private:
    std::unordered_set<std::uint64_t> edges_;
};

/// Exact mutable state of one semi-random run under the paired-stub
/// strategy. One round per presented vertex; every operation leaves all
/// structural invariants intact (the verifier audits them).
///
/// Not safe for concurrent mutation; independent trials run in parallel
/// with distinct instances.
class process_state {
  public:
    explicit process_state(const config& cfg);

    const config& cfg() const { return cfg_; }
    std::int64_t n() const { return cfg_.n; }
    std::int64_t round() const { return t_; }
    const counter_set& counters() const { return counters_; }
    std::int64_t non_path_count() const { return counters_.non_path(); }
    bool hamilton_path_complete() const { return counters_.path == cfg_.n; }
    bool finished() const;

    /// Case the strategy would take if v were presented now.
    event_class classify(vertex_id v) const;

    /// One full round: present a uniform vertex, act, advance the clock.
    /// Throws std::logic_error when the process is already finished.
    event_record step();

    /// One round with a fixed presented vertex (clock still advances).
    event_record apply_presented(vertex_id v);
    event_record apply_presented(vertex_id v, const step_choices& forced);

    /// Remove every stubedge ending in `targets`; decrement the affected
    /// roots' degrees, retiring stubs that reach zero. Returns the affected
    /// roots (duplicated per lost edge). Leaves labels rebalanced.
    std::vector<vertex_id> delete_stubedges_into(const std::vector<vertex_id>& targets);

    /// Run until the configured stop condition, sampling normalized counts
    /// every `sample_every` rounds (the t = 0 row and the final row are
    /// always included).
    std::vector<trajectory_row> run_main_phase(std::int64_t sample_every);
    std::vector<trajectory_row> run_main_phase(
        std::int64_t sample_every, const std::function<void(const event_record&)>& on_event);

    trajectory_row sample_row() const;

    // inspection
    vertex_state state_of(vertex_id v) const { return role_[static_cast<std::size_t>(v)]; }
    bool on_path(vertex_id v) const { return role_[static_cast<std::size_t>(v)] >= vertex_state::clear; }
    vertex_id partner_of(vertex_id v) const { return partner_[static_cast<std::size_t>(v)]; }
    int stub_degree(vertex_id v) const { return static_cast<int>(root_edges_[static_cast<std::size_t>(v)].size()); }
    vertex_id path_prev(vertex_id v) const { return prev_[static_cast<std::size_t>(v)]; }
    vertex_id path_next(vertex_id v) const { return next_[static_cast<std::size_t>(v)]; }
    vertex_id path_head() const { return head_; }
    vertex_id path_tail() const { return tail_; }
    std::uint32_t join_stamp(vertex_id v) const { return stamp_[static_cast<std::size_t>(v)]; }
    std::int64_t total_stub_edges() const { return live_edges_; }
    std::vector<vertex_id> stub_ends_of(vertex_id root) const;
    std::int64_t stub_edges_into(vertex_id end) const {
        return static_cast<std::int64_t>(end_edges_[static_cast<std::size_t>(end)].size());
    }
    std::vector<vertex_id> path_order() const;
    const edge_set& graph_edges() const { return graph_edges_; }
    std::int64_t clear_count() const { return static_cast<std::int64_t>(clear_stamps_.size()); }
    std::int64_t artificial_count() const { return static_cast<std::int64_t>(artificial_stamps_.size()); }

    rng_engine& rng() { return rng_; }

    state_snapshot snapshot() const;

  private:
    struct stub_edge_rec {
        vertex_id root = k_no_vertex;
        vertex_id end = k_no_vertex;
        bool live = false;
    };

    // round actions; preconditions guaranteed by classify-based dispatch
    void apply_c1(vertex_id v, const step_choices& forced, event_record& rec);
    void apply_c2(vertex_id v, const step_choices& forced, event_record& rec);
    void apply_c3(vertex_id v, const step_choices& forced, event_record& rec);
    void apply_c5(vertex_id v, const step_choices& forced, event_record& rec);
    void apply_c6(vertex_id v, event_record& rec);
    void apply_fallback(vertex_id v, event_record& rec);

    vertex_id draw_non_path();
    void add_stub_edge(vertex_id root, vertex_id end);
    void remove_edge_slot(std::int32_t slot, std::vector<vertex_id>& dead_roots);
    void cascade_delete_into(vertex_id target, std::vector<vertex_id>& dead_roots,
                             std::int32_t& deleted);
    void on_degree_drop(vertex_id root, int old_degree, std::vector<vertex_id>& dead_roots);

    void join_path_append(vertex_id v);
    void join_path_insert_after(vertex_id pred, vertex_id v);
    void leave_non_path_lists(vertex_id v);
    void remove_from_non_path(vertex_id v);
    void remove_from_isolated(vertex_id v);

    bool is_stub(vertex_id v) const { return !root_edges_[static_cast<std::size_t>(v)].empty(); }
    int min_stub_distance(vertex_id v) const; // 1, 2, or 3 meaning ">2"
    void recompute_role(vertex_id v);
    void relabel_window(vertex_id anchor);
    void make_free(vertex_id v);
    void drop_free(vertex_id v);
    void rebalance();

    config cfg_;
    rng_engine rng_;
    std::int64_t t_ = 0;
    counter_set counters_;

    std::vector<vertex_state> role_;
    std::vector<vertex_id> partner_;
    std::vector<vertex_id> prev_;
    std::vector<vertex_id> next_;
    vertex_id head_ = k_no_vertex;
    vertex_id tail_ = k_no_vertex;

    std::vector<std::uint32_t> stamp_;
    std::uint32_t stamp_counter_ = 0;
    std::vector<vertex_id> vertex_of_stamp_; // stamp -> vertex (index 0 unused)

    // free path vertices split by join recency: the oldest max(0, P - 5S)
    // are clear, the rest artificially blocked
    std::set<std::uint32_t> clear_stamps_;
    std::set<std::uint32_t> artificial_stamps_;

    // stubedges in a slot store indexed from both endpoints
    std::vector<stub_edge_rec> edges_;
    std::vector<std::int32_t> free_slots_;
    std::vector<std::vector<std::int32_t>> root_edges_;
    std::vector<std::vector<std::int32_t>> end_edges_;
    std::int64_t live_edges_ = 0;

    // sampling pools with O(1) removal
    std::vector<vertex_id> non_path_list_;
    std::vector<std::int32_t> pos_in_non_path_;
    std::vector<vertex_id> isolated_list_;
    std::vector<std::int32_t> pos_in_isolated_;

    edge_set graph_edges_;
};

} // namespace srg

#endif
