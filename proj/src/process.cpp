#include "srg/process.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace srg {

const char* to_string(event_class c) {
    switch (c) {
        case event_class::c1: return "C1";
        case event_class::c2: return "C2";
        case event_class::c3: return "C3";
        case event_class::c4: return "C4";
        case event_class::c5: return "C5";
        case event_class::c6: return "C6";
        case event_class::fallback: return "Fallback";
    }
    return "?";
}

const char* to_string(vertex_state s) {
    switch (s) {
        case vertex_state::isolated: return "isolated";
        case vertex_state::paired: return "paired";
        case vertex_state::clear: return "clear";
        case vertex_state::stub: return "stub";
        case vertex_state::stub_neighbor: return "stub_neighbor";
        case vertex_state::blocked_structural: return "blocked_structural";
        case vertex_state::blocked_artificial: return "blocked_artificial";
    }
    return "?";
}

process_state::process_state(const config& cfg) : cfg_(cfg), rng_(cfg.seed) {
    cfg_.validate();
    const auto n = static_cast<std::size_t>(cfg_.n);
    role_.assign(n, vertex_state::isolated);
    partner_.assign(n, k_no_vertex);
    prev_.assign(n, k_no_vertex);
    next_.assign(n, k_no_vertex);
    stamp_.assign(n, 0);
    vertex_of_stamp_.assign(n + 1, k_no_vertex);
    root_edges_.assign(n, {});
    end_edges_.assign(n, {});
    non_path_list_.resize(n);
    pos_in_non_path_.resize(n);
    isolated_list_.resize(n);
    pos_in_isolated_.resize(n);
    for (std::size_t v = 0; v < n; ++v) {
        non_path_list_[v] = static_cast<vertex_id>(v);
        pos_in_non_path_[v] = static_cast<std::int32_t>(v);
        isolated_list_[v] = static_cast<vertex_id>(v);
        pos_in_isolated_[v] = static_cast<std::int32_t>(v);
    }
    counters_.isolated = cfg_.n;
}

bool process_state::finished() const {
    if (cfg_.mode == stop_mode::full_cycle) return counters_.path == cfg_.n;
    return static_cast<double>(counters_.path) >=
           (1.0 - cfg_.epsilon) * static_cast<double>(cfg_.n);
}

event_class process_state::classify(vertex_id v) const {
    assert(v >= 0 && v < cfg_.n);
    switch (role_[static_cast<std::size_t>(v)]) {
        case vertex_state::isolated:
            return (cfg_.pairing_enabled && counters_.isolated >= 2) ? event_class::c5
                                                                     : event_class::fallback;
        case vertex_state::paired: return event_class::c6;
        case vertex_state::clear: return event_class::c1;
        case vertex_state::stub:
            return stub_degree(v) < cfg_.stub_cap ? event_class::c2 : event_class::c4;
        case vertex_state::stub_neighbor: return event_class::c3;
        case vertex_state::blocked_structural:
        case vertex_state::blocked_artificial: return event_class::c4;
    }
    return event_class::c4;
}

event_record process_state::step() {
    const auto v = static_cast<vertex_id>(rng_.below(static_cast<std::uint64_t>(cfg_.n)));
    return apply_presented(v, step_choices{});
}

event_record process_state::apply_presented(vertex_id v) {
    return apply_presented(v, step_choices{});
}

event_record process_state::apply_presented(vertex_id v, const step_choices& forced) {
    if (finished()) throw std::logic_error("process is finished");
    assert(v >= 0 && v < cfg_.n);

    event_record rec;
    rec.t = t_;
    rec.presented = v;
    rec.cls = classify(v);
    const auto before = counters_.as_array();

    switch (rec.cls) {
        case event_class::c1: apply_c1(v, forced, rec); break;
        case event_class::c2: apply_c2(v, forced, rec); break;
        case event_class::c3: apply_c3(v, forced, rec); break;
        case event_class::c4: break;
        case event_class::c5: apply_c5(v, forced, rec); break;
        case event_class::c6: apply_c6(v, rec); break;
        case event_class::fallback: apply_fallback(v, rec); break;
    }

    t_ += 1;
    const auto after = counters_.as_array();
    for (std::size_t i = 0; i < 6; ++i) rec.delta[i] = after[i] - before[i];
    return rec;
}

// ---------------------------------------------------------------- rounds

void process_state::apply_c1(vertex_id v, const step_choices& forced, event_record& rec) {
    assert(role_[static_cast<std::size_t>(v)] == vertex_state::clear);
    if (non_path_list_.empty()) { // unreachable before path completion
        rec.cls = event_class::c4;
        return;
    }
    const vertex_id w = forced.stub_end ? *forced.stub_end : draw_non_path();
    rec.stub_end = w;
    add_stub_edge(v, w);
    relabel_window(v);
    rebalance();
}

void process_state::apply_c2(vertex_id v, const step_choices& forced, event_record& rec) {
    assert(role_[static_cast<std::size_t>(v)] == vertex_state::stub &&
           stub_degree(v) < cfg_.stub_cap);
    if (non_path_list_.empty()) {
        rec.cls = event_class::c4;
        return;
    }
    const vertex_id w = forced.stub_end ? *forced.stub_end : draw_non_path();
    rec.stub_end = w;
    add_stub_edge(v, w); // degree and S_i counters shift; labels stay put
}

void process_state::apply_c3(vertex_id v, const step_choices& forced, event_record& rec) {
    // the root is the unique stub among v's path neighbors
    const vertex_id a = prev_[static_cast<std::size_t>(v)];
    const vertex_id b = next_[static_cast<std::size_t>(v)];
    const vertex_id u = (a != k_no_vertex && is_stub(a)) ? a : b;
    assert(u != k_no_vertex && is_stub(u));

    auto& u_edges = root_edges_[static_cast<std::size_t>(u)];
    const auto deg = static_cast<std::int32_t>(u_edges.size());
    const std::int32_t idx = forced.edge_index
                                 ? *forced.edge_index
                                 : static_cast<std::int32_t>(rng_.below(static_cast<std::uint64_t>(deg)));
    assert(idx >= 0 && idx < deg);
    const std::int32_t chosen = u_edges[static_cast<std::size_t>(idx)];
    const vertex_id w = edges_[static_cast<std::size_t>(chosen)].end;
    const vertex_id wp = role_[static_cast<std::size_t>(w)] == vertex_state::paired
                             ? partner_[static_cast<std::size_t>(w)]
                             : k_no_vertex;
    rec.stub_end = w;
    rec.partner = wp;

    // stubend-hit statistics over all other live stubedges, sampled now
    rec.lemma = wp == k_no_vertex ? lemma_class::c3_isolated : lemma_class::c3_paired;
    rec.lemma_v = counters_.non_path();
    rec.lemma_edges = live_edges_ - 1;
    rec.lemma_hits = static_cast<std::int64_t>(end_edges_[static_cast<std::size_t>(w)].size()) - 1;
    if (wp != k_no_vertex)
        rec.lemma_hits += static_cast<std::int64_t>(end_edges_[static_cast<std::size_t>(wp)].size());

    std::vector<vertex_id> dead;
    remove_edge_slot(chosen, dead); // consumed: it becomes a path edge
    std::int32_t deleted = 0;
    cascade_delete_into(w, dead, deleted);
    if (wp != k_no_vertex) cascade_delete_into(wp, dead, deleted);
    rec.edges_deleted = deleted;

    // replace path edge {u, v} by u-w-v or u-w-w'-v
    if (wp == k_no_vertex) {
        counters_.isolated -= 1;
    } else {
        counters_.paired -= 2;
        partner_[static_cast<std::size_t>(w)] = k_no_vertex;
        partner_[static_cast<std::size_t>(wp)] = k_no_vertex;
    }
    if (next_[static_cast<std::size_t>(u)] == v) {
        join_path_insert_after(u, w);
        if (wp != k_no_vertex) join_path_insert_after(w, wp);
    } else {
        assert(next_[static_cast<std::size_t>(v)] == u);
        if (wp != k_no_vertex) {
            join_path_insert_after(v, wp);
            join_path_insert_after(wp, w);
        } else {
            join_path_insert_after(v, w);
        }
    }
    graph_edges_.add(v, wp == k_no_vertex ? w : wp); // the round's one new edge

    relabel_window(u);
    relabel_window(v);
    relabel_window(w);
    if (wp != k_no_vertex) relabel_window(wp);
    for (const vertex_id r : dead) relabel_window(r);
    rebalance();
}

void process_state::apply_c5(vertex_id v, const step_choices& forced, event_record& rec) {
    assert(role_[static_cast<std::size_t>(v)] == vertex_state::isolated &&
           counters_.isolated >= 2 && cfg_.pairing_enabled);
    vertex_id p;
    if (forced.pair_partner) {
        p = *forced.pair_partner;
    } else {
        // uniform over isolated vertices other than v
        const auto k = rng_.below(static_cast<std::uint64_t>(counters_.isolated - 1));
        p = isolated_list_[static_cast<std::size_t>(k)];
        if (p == v) p = isolated_list_.back();
    }
    assert(p != v && role_[static_cast<std::size_t>(p)] == vertex_state::isolated);
    rec.partner = p;

    remove_from_isolated(v);
    remove_from_isolated(p);
    partner_[static_cast<std::size_t>(v)] = p;
    partner_[static_cast<std::size_t>(p)] = v;
    role_[static_cast<std::size_t>(v)] = vertex_state::paired;
    role_[static_cast<std::size_t>(p)] = vertex_state::paired;
    counters_.isolated -= 2;
    counters_.paired += 2;
    graph_edges_.add(v, p);
}

void process_state::apply_c6(vertex_id v, event_record& rec) {
    const vertex_id p = partner_[static_cast<std::size_t>(v)];
    assert(p != k_no_vertex && partner_[static_cast<std::size_t>(p)] == v);
    rec.partner = p;

    rec.lemma = lemma_class::c6;
    rec.lemma_v = counters_.non_path();
    rec.lemma_edges = live_edges_;
    rec.lemma_hits = static_cast<std::int64_t>(end_edges_[static_cast<std::size_t>(v)].size()) +
                     static_cast<std::int64_t>(end_edges_[static_cast<std::size_t>(p)].size());

    std::vector<vertex_id> dead;
    std::int32_t deleted = 0;
    cascade_delete_into(v, dead, deleted);
    cascade_delete_into(p, dead, deleted);
    rec.edges_deleted = deleted;

    if (tail_ != k_no_vertex) graph_edges_.add(tail_, v); // pair edge {v, p} already exists
    partner_[static_cast<std::size_t>(v)] = k_no_vertex;
    partner_[static_cast<std::size_t>(p)] = k_no_vertex;
    join_path_append(v);
    join_path_append(p);
    counters_.paired -= 2;

    relabel_window(v);
    relabel_window(p);
    for (const vertex_id r : dead) relabel_window(r);
    rebalance();
}

void process_state::apply_fallback(vertex_id v, event_record& rec) {
    assert(role_[static_cast<std::size_t>(v)] == vertex_state::isolated);
    (void)rec;
    if (tail_ != k_no_vertex) graph_edges_.add(tail_, v);
    join_path_append(v);
    counters_.isolated -= 1;
    relabel_window(v);
    rebalance();
}

// ---------------------------------------------------------- stub edges

vertex_id process_state::draw_non_path() {
    const auto k = rng_.below(non_path_list_.size());
    return non_path_list_[static_cast<std::size_t>(k)];
}

void process_state::add_stub_edge(vertex_id root, vertex_id end) {
    const auto old_deg = static_cast<int>(root_edges_[static_cast<std::size_t>(root)].size());
    std::int32_t slot;
    if (!free_slots_.empty()) {
        slot = free_slots_.back();
        free_slots_.pop_back();
        edges_[static_cast<std::size_t>(slot)] = {root, end, true};
    } else {
        slot = static_cast<std::int32_t>(edges_.size());
        edges_.push_back({root, end, true});
    }
    root_edges_[static_cast<std::size_t>(root)].push_back(slot);
    end_edges_[static_cast<std::size_t>(end)].push_back(slot);
    live_edges_ += 1;
    graph_edges_.add(root, end);
    if (old_deg == 0) counters_.s1 += 1;
    else if (old_deg == 1) { counters_.s1 -= 1; counters_.s2 += 1; }
    else { counters_.s2 -= 1; counters_.s3 += 1; }
}

void process_state::on_degree_drop(vertex_id root, int old_degree,
                                   std::vector<vertex_id>& dead_roots) {
    if (old_degree == 1) {
        counters_.s1 -= 1;
        dead_roots.push_back(root);
    } else if (old_degree == 2) {
        counters_.s2 -= 1;
        counters_.s1 += 1;
    } else {
        counters_.s3 -= 1;
        counters_.s2 += 1;
    }
}

void process_state::remove_edge_slot(std::int32_t slot, std::vector<vertex_id>& dead_roots) {
    auto& rec = edges_[static_cast<std::size_t>(slot)];
    assert(rec.live);
    auto& re = root_edges_[static_cast<std::size_t>(rec.root)];
    auto& ee = end_edges_[static_cast<std::size_t>(rec.end)];
    const auto old_degree = static_cast<int>(re.size());

    const auto rit = std::find(re.begin(), re.end(), slot);
    assert(rit != re.end());
    *rit = re.back();
    re.pop_back();
    const auto eit = std::find(ee.begin(), ee.end(), slot);
    assert(eit != ee.end());
    *eit = ee.back();
    ee.pop_back();

    rec.live = false;
    free_slots_.push_back(slot);
    live_edges_ -= 1;
    on_degree_drop(rec.root, old_degree, dead_roots);
}

void process_state::cascade_delete_into(vertex_id target, std::vector<vertex_id>& dead_roots,
                                        std::int32_t& deleted) {
    auto& ee = end_edges_[static_cast<std::size_t>(target)];
    while (!ee.empty()) {
        remove_edge_slot(ee.back(), dead_roots);
        deleted += 1;
    }
}

std::vector<vertex_id> process_state::delete_stubedges_into(const std::vector<vertex_id>& targets) {
    std::vector<vertex_id> affected;
    std::vector<vertex_id> dead;
    for (const vertex_id target : targets) {
        auto& ee = end_edges_[static_cast<std::size_t>(target)];
        while (!ee.empty()) {
            const std::int32_t slot = ee.back();
            affected.push_back(edges_[static_cast<std::size_t>(slot)].root);
            remove_edge_slot(slot, dead);
        }
    }
    for (const vertex_id r : dead) relabel_window(r);
    rebalance();
    return affected;
}

// ------------------------------------------------------------- the path

void process_state::remove_from_non_path(vertex_id v) {
    const auto pos = pos_in_non_path_[static_cast<std::size_t>(v)];
    const vertex_id moved = non_path_list_.back();
    non_path_list_[static_cast<std::size_t>(pos)] = moved;
    pos_in_non_path_[static_cast<std::size_t>(moved)] = pos;
    non_path_list_.pop_back();
}

void process_state::remove_from_isolated(vertex_id v) {
    const auto pos = pos_in_isolated_[static_cast<std::size_t>(v)];
    const vertex_id moved = isolated_list_.back();
    isolated_list_[static_cast<std::size_t>(pos)] = moved;
    pos_in_isolated_[static_cast<std::size_t>(moved)] = pos;
    isolated_list_.pop_back();
}

void process_state::leave_non_path_lists(vertex_id v) {
    if (role_[static_cast<std::size_t>(v)] == vertex_state::isolated) remove_from_isolated(v);
    remove_from_non_path(v);
}

void process_state::join_path_append(vertex_id v) {
    leave_non_path_lists(v);
    stamp_counter_ += 1;
    stamp_[static_cast<std::size_t>(v)] = stamp_counter_;
    vertex_of_stamp_[stamp_counter_] = v;
    prev_[static_cast<std::size_t>(v)] = tail_;
    next_[static_cast<std::size_t>(v)] = k_no_vertex;
    if (tail_ != k_no_vertex) next_[static_cast<std::size_t>(tail_)] = v;
    else head_ = v;
    tail_ = v;
    counters_.path += 1;
}

void process_state::join_path_insert_after(vertex_id pred, vertex_id v) {
    leave_non_path_lists(v);
    stamp_counter_ += 1;
    stamp_[static_cast<std::size_t>(v)] = stamp_counter_;
    vertex_of_stamp_[stamp_counter_] = v;
    const vertex_id succ = next_[static_cast<std::size_t>(pred)];
    next_[static_cast<std::size_t>(pred)] = v;
    prev_[static_cast<std::size_t>(v)] = pred;
    next_[static_cast<std::size_t>(v)] = succ;
    if (succ != k_no_vertex) prev_[static_cast<std::size_t>(succ)] = v;
    else tail_ = v;
    counters_.path += 1;
}

// ---------------------------------------------------------------- labels

int process_state::min_stub_distance(vertex_id v) const {
    const vertex_id a = prev_[static_cast<std::size_t>(v)];
    const vertex_id b = next_[static_cast<std::size_t>(v)];
    if ((a != k_no_vertex && is_stub(a)) || (b != k_no_vertex && is_stub(b))) return 1;
    if (a != k_no_vertex) {
        const vertex_id aa = prev_[static_cast<std::size_t>(a)];
        if (aa != k_no_vertex && is_stub(aa)) return 2;
    }
    if (b != k_no_vertex) {
        const vertex_id bb = next_[static_cast<std::size_t>(b)];
        if (bb != k_no_vertex && is_stub(bb)) return 2;
    }
    return 3;
}

void process_state::make_free(vertex_id v) {
    const std::uint32_t s = stamp_[static_cast<std::size_t>(v)];
    if (artificial_stamps_.empty() || s < *artificial_stamps_.begin()) {
        clear_stamps_.insert(s);
        role_[static_cast<std::size_t>(v)] = vertex_state::clear;
    } else {
        artificial_stamps_.insert(s);
        role_[static_cast<std::size_t>(v)] = vertex_state::blocked_artificial;
    }
}

void process_state::drop_free(vertex_id v) {
    const std::uint32_t s = stamp_[static_cast<std::size_t>(v)];
    if (role_[static_cast<std::size_t>(v)] == vertex_state::clear) clear_stamps_.erase(s);
    else artificial_stamps_.erase(s);
}

void process_state::recompute_role(vertex_id v) {
    const auto old = role_[static_cast<std::size_t>(v)];
    const bool was_free = old == vertex_state::clear || old == vertex_state::blocked_artificial;
    if (is_stub(v)) {
        if (was_free) drop_free(v);
        role_[static_cast<std::size_t>(v)] = vertex_state::stub;
        return;
    }
    const int d = min_stub_distance(v);
    if (d <= 2) {
        if (was_free) drop_free(v);
        role_[static_cast<std::size_t>(v)] =
            d == 1 ? vertex_state::stub_neighbor : vertex_state::blocked_structural;
    } else if (!was_free) {
        make_free(v);
    }
}

void process_state::relabel_window(vertex_id anchor) {
    vertex_id window[5];
    int count = 0;
    window[count++] = anchor;
    const vertex_id a = prev_[static_cast<std::size_t>(anchor)];
    if (a != k_no_vertex) {
        window[count++] = a;
        const vertex_id aa = prev_[static_cast<std::size_t>(a)];
        if (aa != k_no_vertex) window[count++] = aa;
    }
    const vertex_id b = next_[static_cast<std::size_t>(anchor)];
    if (b != k_no_vertex) {
        window[count++] = b;
        const vertex_id bb = next_[static_cast<std::size_t>(b)];
        if (bb != k_no_vertex) window[count++] = bb;
    }
    for (int i = 0; i < count; ++i) recompute_role(window[i]);
}

void process_state::rebalance() {
    const std::int64_t target =
        std::max<std::int64_t>(0, counters_.path - 5 * counters_.stubs());
    while (static_cast<std::int64_t>(clear_stamps_.size()) > target) {
        const auto it = std::prev(clear_stamps_.end());
        const std::uint32_t s = *it;
        clear_stamps_.erase(it);
        artificial_stamps_.insert(s);
        role_[static_cast<std::size_t>(vertex_of_stamp_[s])] = vertex_state::blocked_artificial;
    }
    while (static_cast<std::int64_t>(clear_stamps_.size()) < target && !artificial_stamps_.empty()) {
        const auto it = artificial_stamps_.begin();
        const std::uint32_t s = *it;
        artificial_stamps_.erase(it);
        clear_stamps_.insert(s);
        role_[static_cast<std::size_t>(vertex_of_stamp_[s])] = vertex_state::clear;
    }
}

// ------------------------------------------------------------ reporting

trajectory_row process_state::sample_row() const {
    const auto n = static_cast<double>(cfg_.n);
    trajectory_row r;
    r.tau = static_cast<double>(t_) / n;
    r.p = static_cast<double>(counters_.path) / n;
    r.v1 = static_cast<double>(counters_.isolated) / n;
    r.v2 = static_cast<double>(counters_.paired) / n;
    r.s1 = static_cast<double>(counters_.s1) / n;
    r.s2 = static_cast<double>(counters_.s2) / n;
    r.s3 = static_cast<double>(counters_.s3) / n;
    return r;
}

std::vector<trajectory_row> process_state::run_main_phase(std::int64_t sample_every) {
    return run_main_phase(sample_every, nullptr);
}

std::vector<trajectory_row> process_state::run_main_phase(
    std::int64_t sample_every, const std::function<void(const event_record&)>& on_event) {
    if (sample_every < 1) throw std::invalid_argument("sample_every must be >= 1");
    std::vector<trajectory_row> rows;
    rows.push_back(sample_row());
    while (!finished()) {
        const event_record rec = step();
        if (on_event) on_event(rec);
        if (t_ % sample_every == 0) rows.push_back(sample_row());
    }
    if (t_ % sample_every != 0) rows.push_back(sample_row());
    return rows;
}

std::vector<vertex_id> process_state::stub_ends_of(vertex_id root) const {
    std::vector<vertex_id> ends;
    for (const std::int32_t slot : root_edges_[static_cast<std::size_t>(root)])
        ends.push_back(edges_[static_cast<std::size_t>(slot)].end);
    return ends;
}

std::vector<vertex_id> process_state::path_order() const {
    std::vector<vertex_id> order;
    order.reserve(static_cast<std::size_t>(counters_.path));
    for (vertex_id v = head_; v != k_no_vertex; v = next_[static_cast<std::size_t>(v)])
        order.push_back(v);
    return order;
}

state_snapshot process_state::snapshot() const {
    state_snapshot s;
    s.n = cfg_.n;
    s.stub_cap = cfg_.stub_cap;
    s.t = t_;
    s.counters = counters_;
    s.head = head_;
    s.tail = tail_;
    s.role = role_;
    s.partner = partner_;
    s.prev = prev_;
    s.next = next_;
    s.stamp = stamp_;
    s.stub_degree.resize(role_.size());
    for (std::size_t v = 0; v < role_.size(); ++v)
        s.stub_degree[v] = static_cast<int>(root_edges_[v].size());
    for (std::size_t v = 0; v < role_.size(); ++v)
        for (const std::int32_t slot : root_edges_[v])
            s.edges_by_root.emplace_back(edges_[static_cast<std::size_t>(slot)].root,
                                         edges_[static_cast<std::size_t>(slot)].end);
    for (std::size_t v = 0; v < role_.size(); ++v)
        for (const std::int32_t slot : end_edges_[v])
            s.edges_by_end.emplace_back(edges_[static_cast<std::size_t>(slot)].root,
                                        edges_[static_cast<std::size_t>(slot)].end);
    return s;
}

} // namespace srg
