#include "srg/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace srg {

namespace {

bool on_path_role(vertex_state s) { return s >= vertex_state::clear; }

template <typename... Args>
void report(std::vector<violation>& out, std::int64_t t, const char* name, Args&&... parts) {
    std::ostringstream os;
    (os << ... << parts);
    out.push_back({name, t, os.str()});
}

} // namespace

std::vector<violation> check_invariants(const state_snapshot& s) {
    std::vector<violation> out;
    const auto n = static_cast<std::size_t>(s.n);
    const auto& c = s.counters;

    // conservation and census
    if (c.path + c.isolated + c.paired != s.n)
        report(out, s.t, "conservation", "P+V1+V2=", c.path + c.isolated + c.paired, " != n=", s.n);
    std::int64_t census[7] = {0, 0, 0, 0, 0, 0, 0};
    for (std::size_t v = 0; v < n; ++v) census[static_cast<int>(s.role[v])] += 1;
    if (census[static_cast<int>(vertex_state::isolated)] != c.isolated)
        report(out, s.t, "role_census", "isolated count ", census[0], " != V1=", c.isolated);
    if (census[static_cast<int>(vertex_state::paired)] != c.paired)
        report(out, s.t, "role_census", "paired count ", census[1], " != V2=", c.paired);
    std::int64_t on_path_total = 0;
    for (int r = static_cast<int>(vertex_state::clear); r <= static_cast<int>(vertex_state::blocked_artificial); ++r)
        on_path_total += census[r];
    if (on_path_total != c.path)
        report(out, s.t, "role_census", "path-role count ", on_path_total, " != P=", c.path);
    if (c.paired % 2 != 0) report(out, s.t, "pairing", "V2=", c.paired, " is odd");

    // path links
    if (c.path == 0) {
        if (s.head != k_no_vertex || s.tail != k_no_vertex)
            report(out, s.t, "path_links", "empty path with head/tail set");
    } else if (s.head == k_no_vertex || s.tail == k_no_vertex) {
        report(out, s.t, "path_links", "nonempty path missing head or tail");
    } else if (s.prev[static_cast<std::size_t>(s.head)] != k_no_vertex) {
        report(out, s.t, "path_links", "head has a predecessor");
    } else {
        std::vector<bool> visited(n, false);
        std::int64_t count = 0;
        vertex_id v = s.head;
        vertex_id last = k_no_vertex;
        while (v != k_no_vertex && count <= s.n) {
            if (visited[static_cast<std::size_t>(v)]) {
                report(out, s.t, "path_links", "cycle in path links at vertex ", v);
                break;
            }
            visited[static_cast<std::size_t>(v)] = true;
            if (s.prev[static_cast<std::size_t>(v)] != last)
                report(out, s.t, "path_links", "prev/next disagree at vertex ", v);
            last = v;
            count += 1;
            v = s.next[static_cast<std::size_t>(v)];
        }
        if (last != s.tail) report(out, s.t, "path_links", "walk ends at ", last, " != tail ", s.tail);
        if (count != c.path)
            report(out, s.t, "path_links", "walk length ", count, " != P=", c.path);
        for (std::size_t x = 0; x < n; ++x) {
            const bool should = on_path_role(s.role[x]);
            if (should != visited[x])
                report(out, s.t, "path_links", "vertex ", x, " role ", to_string(s.role[x]),
                       visited[x] ? " but on walk" : " but not on walk");
            if (should && s.stamp[x] == 0)
                report(out, s.t, "stamp", "path vertex ", x, " has no join stamp");
            if (!should && s.stamp[x] != 0)
                report(out, s.t, "stamp", "off-path vertex ", x, " has a join stamp");
        }
    }

    // stub census and degrees
    std::int64_t deg_count[4] = {0, 0, 0, 0};
    for (std::size_t v = 0; v < n; ++v) {
        const int d = s.stub_degree[v];
        if (d < 0 || d > s.stub_cap) {
            report(out, s.t, "stub_census", "vertex ", v, " has stub degree ", d);
            continue;
        }
        deg_count[d] += 1;
        const bool is_stub_role = s.role[v] == vertex_state::stub;
        if ((d > 0) != is_stub_role)
            report(out, s.t, "stub_census", "vertex ", v, " degree ", d, " but role ",
                   to_string(s.role[v]));
    }
    if (deg_count[1] != c.s1) report(out, s.t, "stub_census", "S1=", c.s1, " actual ", deg_count[1]);
    if (deg_count[2] != c.s2) report(out, s.t, "stub_census", "S2=", c.s2, " actual ", deg_count[2]);
    if (deg_count[3] != c.s3) report(out, s.t, "stub_census", "S3=", c.s3, " actual ", deg_count[3]);

    // stubedge indexes agree and ends are off path
    {
        auto by_root = s.edges_by_root;
        auto by_end = s.edges_by_end;
        std::sort(by_root.begin(), by_root.end());
        std::sort(by_end.begin(), by_end.end());
        if (by_root != by_end)
            report(out, s.t, "edge_indexes", "by-root and by-end edge sets differ (",
                   by_root.size(), " vs ", by_end.size(), ")");
        std::vector<std::int64_t> root_count(n, 0);
        for (const auto& [root, end] : s.edges_by_root) {
            root_count[static_cast<std::size_t>(root)] += 1;
            if (!on_path_role(s.role[static_cast<std::size_t>(root)]))
                report(out, s.t, "edge_endpoints", "stubroot ", root, " is off path");
            if (on_path_role(s.role[static_cast<std::size_t>(end)]))
                report(out, s.t, "edge_endpoints", "stubend ", end, " is on path");
        }
        for (std::size_t v = 0; v < n; ++v)
            if (root_count[v] != s.stub_degree[v])
                report(out, s.t, "stub_census", "vertex ", v, " degree ", s.stub_degree[v],
                       " but ", root_count[v], " rooted edges");
    }

    // Property 3.1: separation, forced labels, clear count
    const auto hop = [&](vertex_id v, const std::vector<vertex_id>& dir) {
        return v == k_no_vertex ? k_no_vertex : dir[static_cast<std::size_t>(v)];
    };
    for (std::size_t x = 0; x < n; ++x) {
        if (!on_path_role(s.role[x])) continue;
        const auto v = static_cast<vertex_id>(x);
        const bool stub_here = s.stub_degree[x] > 0;
        int min_dist = 3;
        for (const auto* dir : {&s.prev, &s.next}) {
            const vertex_id d1 = hop(v, *dir);
            if (d1 != k_no_vertex && s.stub_degree[static_cast<std::size_t>(d1)] > 0)
                min_dist = std::min(min_dist, 1);
            const vertex_id d2 = hop(d1, *dir);
            if (d2 != k_no_vertex && s.stub_degree[static_cast<std::size_t>(d2)] > 0)
                min_dist = std::min(min_dist, 2);
        }
        if (stub_here) {
            if (min_dist <= 2)
                report(out, s.t, "stub_separation", "stubs within path distance ", min_dist,
                       " at vertex ", v);
            continue;
        }
        const vertex_state expect = min_dist == 1   ? vertex_state::stub_neighbor
                                    : min_dist == 2 ? vertex_state::blocked_structural
                                                    : s.role[x]; // free: clear or artificial
        if (min_dist <= 2 && s.role[x] != expect)
            report(out, s.t, "structural_labels", "vertex ", v, " at stub distance ", min_dist,
                   " labeled ", to_string(s.role[x]));
        if (min_dist > 2 && s.role[x] != vertex_state::clear &&
            s.role[x] != vertex_state::blocked_artificial)
            report(out, s.t, "structural_labels", "vertex ", v, " far from stubs labeled ",
                   to_string(s.role[x]));
    }
    const std::int64_t stubs = c.stubs();
    const std::int64_t want_clear = std::max<std::int64_t>(0, c.path - 5 * stubs);
    if (census[static_cast<int>(vertex_state::clear)] != want_clear)
        report(out, s.t, "clear_count", "clear=", census[static_cast<int>(vertex_state::clear)],
               " != max(0, P-5S)=", want_clear);

    // artificial blocks are the most recently appended free vertices
    {
        std::uint32_t max_clear = 0, min_art = UINT32_MAX;
        for (std::size_t v = 0; v < n; ++v) {
            if (s.role[v] == vertex_state::clear) max_clear = std::max(max_clear, s.stamp[v]);
            if (s.role[v] == vertex_state::blocked_artificial)
                min_art = std::min(min_art, s.stamp[v]);
        }
        if (max_clear > min_art)
            report(out, s.t, "artificial_stack", "clear stamp ", max_clear,
                   " newer than artificial stamp ", min_art);
    }

    // pairing is a perfect matching on the paired vertices
    for (std::size_t x = 0; x < n; ++x) {
        const auto v = static_cast<vertex_id>(x);
        const vertex_id p = s.partner[x];
        if (s.role[x] == vertex_state::paired) {
            if (p == k_no_vertex || p == v || s.role[static_cast<std::size_t>(p)] != vertex_state::paired ||
                s.partner[static_cast<std::size_t>(p)] != v)
                report(out, s.t, "pairing", "vertex ", v, " has broken partner link");
        } else if (p != k_no_vertex) {
            report(out, s.t, "pairing", "non-paired vertex ", v, " has partner ", p);
        }
    }

    return out;
}

std::vector<violation> check_invariants(const process_state& state) {
    return check_invariants(state.snapshot());
}

exact_expectation expected_step_exact(const process_state& state) {
    const std::int64_t n = state.n();
    if (state.non_path_count() < 2)
        throw std::invalid_argument("expected_step_exact: needs V >= 2");

    // representative forced choices; the resulting deltas do not depend on
    // which non-path vertex (c1/c2) or which partner (c5) is picked
    vertex_id some_non_path = k_no_vertex;
    vertex_id iso_a = k_no_vertex, iso_b = k_no_vertex;
    for (vertex_id v = 0; v < n; ++v) {
        if (state.on_path(v)) continue;
        if (some_non_path == k_no_vertex) some_non_path = v;
        if (state.state_of(v) == vertex_state::isolated) {
            if (iso_a == k_no_vertex) iso_a = v;
            else if (iso_b == k_no_vertex) iso_b = v;
        }
    }

    exact_expectation result;
    result.denom = 6 * n;
    for (vertex_id v = 0; v < n; ++v) {
        const event_class cls = state.classify(v);
        if (cls == event_class::c4) continue;
        if (cls == event_class::c3) {
            const vertex_id a = state.path_prev(v);
            const vertex_id root = (a != k_no_vertex && state.stub_degree(a) > 0)
                                       ? a
                                       : state.path_next(v);
            const int deg = state.stub_degree(root);
            for (int idx = 0; idx < deg; ++idx) {
                process_state copy = state;
                step_choices forced;
                forced.edge_index = idx;
                const event_record rec = copy.apply_presented(v, forced);
                for (std::size_t i = 0; i < 6; ++i)
                    result.numer[i] += rec.delta[i] * (6 / deg);
            }
        } else {
            process_state copy = state;
            step_choices forced;
            if (cls == event_class::c1 || cls == event_class::c2)
                forced.stub_end = some_non_path;
            if (cls == event_class::c5) forced.pair_partner = (iso_a == v) ? iso_b : iso_a;
            const event_record rec = copy.apply_presented(v, forced);
            for (std::size_t i = 0; i < 6; ++i) result.numer[i] += rec.delta[i] * 6;
        }
    }
    return result;
}

expectation_vector expectation_formulas(std::int64_t n, const counter_set& c, int stub_cap) {
    const auto nn = static_cast<double>(n);
    const auto p = static_cast<double>(c.path);
    const auto v1 = static_cast<double>(c.isolated);
    const auto v2 = static_cast<double>(c.paired);
    const auto s1 = static_cast<double>(c.s1);
    const auto s2 = static_cast<double>(c.s2);
    const auto s3 = static_cast<double>(c.s3);
    const double v = v1 + v2;
    const double s = s1 + s2 + s3;

    expectation_vector e;
    e.d[0] = 2.0 * v2 / nn + (2.0 * s / nn) * (v1 + 2.0 * v2) / v;
    e.d[1] = -2.0 * v1 / nn - (2.0 * s / nn) * v1 / v;
    e.d[2] = -2.0 * v2 / nn + 2.0 * v1 / nn - (2.0 * s / nn) * 2.0 * v2 / v;
    const double bracket = (2.0 * s / nn) * (v1 + 2.0 * v2) / (v * v) + (v2 / nn) * 2.0 / v;
    e.d[3] = (p - 5.0 * s) / nn - 3.0 * s1 / nn + 2.0 * s2 / nn + bracket * (2.0 * s2 - s1);
    if (stub_cap >= 3) {
        e.d[4] = s1 / nn - 3.0 * s2 / nn + 2.0 * s3 / nn + bracket * (3.0 * s3 - 2.0 * s2);
        e.d[5] = s2 / nn - 2.0 * s3 / nn - bracket * 3.0 * s3;
    } else {
        e.d[4] = s1 / nn - 2.0 * s2 / nn - bracket * 2.0 * s2;
        e.d[5] = 0.0;
    }
    return e;
}

expectation_vector expectation_formulas(const process_state& state) {
    return expectation_formulas(state.n(), state.counters(), state.cfg().stub_cap);
}

bool verify_hamilton_cycle(std::span<const vertex_id> order, const edge_set& edges,
                           std::int64_t n) {
    if (static_cast<std::int64_t>(order.size()) != n || n < 3) return false;
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (const vertex_id v : order) {
        if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)]) return false;
        seen[static_cast<std::size_t>(v)] = true;
    }
    for (std::size_t i = 0; i < order.size(); ++i) {
        const vertex_id a = order[i];
        const vertex_id b = order[(i + 1) % order.size()];
        if (!edges.has(a, b)) return false;
    }
    return true;
}

void lemma_accumulator::add(const event_record& rec) {
    if (rec.lemma != cls_) return;
    const double rate = cls_ == lemma_class::c3_isolated ? 1.0 : 2.0;
    const double p = rate / static_cast<double>(rec.lemma_v);
    events_ += 1;
    edges_ += rec.lemma_edges;
    hits_ += rec.lemma_hits;
    sum_p_ += static_cast<double>(rec.lemma_edges) * p;
    sum_pq_ += static_cast<double>(rec.lemma_edges) * p * (1.0 - p);
}

void lemma_accumulator::merge(const lemma_accumulator& other) {
    events_ += other.events_;
    edges_ += other.edges_;
    hits_ += other.hits_;
    sum_p_ += other.sum_p_;
    sum_pq_ += other.sum_pq_;
}

lemma_statistic lemma_accumulator::statistic(std::int64_t min_events) const {
    if (events_ < min_events)
        throw std::runtime_error("lemma statistic: insufficient events (" +
                                 std::to_string(events_) + " < " + std::to_string(min_events) + ")");
    lemma_statistic st;
    st.events = events_;
    st.edges = edges_;
    st.hits = hits_;
    st.empirical = edges_ > 0 ? static_cast<double>(hits_) / static_cast<double>(edges_) : 0.0;
    st.expected = edges_ > 0 ? sum_p_ / static_cast<double>(edges_) : 0.0;
    st.z = sum_pq_ > 0.0 ? (static_cast<double>(hits_) - sum_p_) / std::sqrt(sum_pq_) : 0.0;
    return st;
}

lemma_statistic lemma32_statistic(std::span<const event_record> log, lemma_class cls,
                                  std::int64_t min_events) {
    lemma_accumulator acc(cls);
    for (const event_record& rec : log) acc.add(rec);
    return acc.statistic(min_events);
}

std::array<double, 6> fluid_rates_from_cases(const std::array<double, 6>& y, int stub_cap) {
    const double p = y[0], v1 = y[1], v2 = y[2], s1 = y[3], s2 = y[4], s3 = y[5];
    const double v = v1 + v2;
    const double s = stub_cap >= 3 ? s1 + s2 + s3 : s1 + s2;
    const double frac_iso = v1 / v;
    const double frac_pair = v2 / v;

    // event rates per scaled round
    const double rate_c6 = v2;      // a paired vertex is presented
    const double rate_c3 = 2.0 * s; // a stubneighbor is presented
    // per-stubedge deletion rate from C3 and C6 cascades
    const double edge_del = rate_c3 * (frac_iso * 1.0 + frac_pair * 2.0) / v + rate_c6 * 2.0 / v;

    std::array<double, 6> r{};
    r[0] = 2.0 * v2 + rate_c3 * (frac_iso + 2.0 * frac_pair);
    r[1] = -2.0 * v1 - rate_c3 * frac_iso;
    r[2] = -2.0 * v2 + 2.0 * v1 - rate_c3 * 2.0 * frac_pair;
    r[3] = (p - 5.0 * s) - s1 - 2.0 * s1 + 2.0 * s2 + edge_del * (2.0 * s2 - s1);
    if (stub_cap >= 3) {
        r[4] = s1 - s2 - 2.0 * s2 + 2.0 * s3 + edge_del * (3.0 * s3 - 2.0 * s2);
        r[5] = s2 - 2.0 * s3 - edge_del * 3.0 * s3;
    } else {
        r[4] = s1 - 2.0 * s2 - edge_del * 2.0 * s2;
        r[5] = 0.0;
    }
    return r;
}

} // namespace srg
