#include "srg/run_harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "srg/cycle_closer.hpp"
#include "srg/process.hpp"

namespace srg {

std::int64_t auto_sample_every(std::int64_t n) {
    // a full run lasts about 1.85n rounds; aim for ~1000 rows
    return std::max<std::int64_t>(1, 2 * n / 1000);
}

namespace {

trial_result run_one(const run_request& req, int trial_index, std::int64_t sample_every,
                     lemma_accumulator& c6, lemma_accumulator& c3i, lemma_accumulator& c3p,
                     std::vector<violation>& violations) {
    config cfg = req.base;
    cfg.seed = req.base.seed + static_cast<std::uint64_t>(trial_index);

    trial_result res;
    res.seed = cfg.seed;
    process_state state(cfg);

    const auto on_event = [&](const event_record& rec) {
        c6.add(rec);
        c3i.add(rec);
        c3p.add(rec);
        if (req.keep_events) res.events.push_back(rec);
    };

    if (req.audit_every_round) {
        res.trajectory.push_back(state.sample_row());
        while (!state.finished()) {
            const event_record rec = state.step();
            on_event(rec);
            auto bad = check_invariants(state);
            violations.insert(violations.end(), bad.begin(), bad.end());
            if (state.round() % sample_every == 0) res.trajectory.push_back(state.sample_row());
        }
        if (state.round() % sample_every != 0) res.trajectory.push_back(state.sample_row());
    } else {
        res.trajectory = state.run_main_phase(sample_every, on_event);
    }
    res.main_rounds = state.round();
    res.total_rounds = res.main_rounds;

    if (cfg.mode == stop_mode::full_cycle) {
        edge_set edges = state.graph_edges();
        const closure_result closure = close_cycle(state.path_order(), state.rng(), edges);
        res.closing_rounds = closure.rounds_used;
        res.total_rounds += closure.rounds_used;
        res.cycle_verified = verify_hamilton_cycle(closure.cycle, edges, cfg.n);
        res.cycle = closure.cycle;
    }
    return res;
}

double median_of(std::vector<double> xs) {
    std::sort(xs.begin(), xs.end());
    const std::size_t m = xs.size() / 2;
    return xs.size() % 2 == 1 ? xs[m] : 0.5 * (xs[m - 1] + xs[m]);
}

} // namespace

run_output run_trials(const run_request& req) {
    if (req.trials < 1) throw std::invalid_argument("trials must be >= 1");
    req.base.validate();
    const std::int64_t sample_every =
        req.sample_every > 0 ? req.sample_every : auto_sample_every(req.base.n);

    run_output out;
    out.sample_every = sample_every;
    out.trials.resize(static_cast<std::size_t>(req.trials));

    // per-trial accumulators, merged in seed order afterwards
    std::vector<lemma_accumulator> acc_c6(static_cast<std::size_t>(req.trials),
                                          lemma_accumulator(lemma_class::c6));
    std::vector<lemma_accumulator> acc_c3i(static_cast<std::size_t>(req.trials),
                                           lemma_accumulator(lemma_class::c3_isolated));
    std::vector<lemma_accumulator> acc_c3p(static_cast<std::size_t>(req.trials),
                                           lemma_accumulator(lemma_class::c3_paired));
    std::vector<std::vector<violation>> trial_violations(static_cast<std::size_t>(req.trials));

    const int hw = static_cast<int>(std::thread::hardware_concurrency());
    const int threads = std::min(req.trials, req.threads > 0 ? req.threads : std::max(1, hw));

    std::atomic<int> next{0};
    const auto worker = [&]() {
        for (;;) {
            const int k = next.fetch_add(1);
            if (k >= req.trials) return;
            const auto i = static_cast<std::size_t>(k);
            out.trials[i] = run_one(req, k, sample_every, acc_c6[i], acc_c3i[i], acc_c3p[i],
                                    trial_violations[i]);
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    for (int k = 0; k < req.trials; ++k) {
        const auto i = static_cast<std::size_t>(k);
        out.lemma_c6.merge(acc_c6[i]);
        out.lemma_c3_isolated.merge(acc_c3i[i]);
        out.lemma_c3_paired.merge(acc_c3p[i]);
        out.violations.insert(out.violations.end(), trial_violations[i].begin(),
                              trial_violations[i].end());
    }

    const auto n = static_cast<double>(req.base.n);
    std::vector<double> total_over_n, main_over_n;
    for (const auto& tr : out.trials) {
        total_over_n.push_back(static_cast<double>(tr.total_rounds) / n);
        main_over_n.push_back(static_cast<double>(tr.main_rounds) / n);
    }
    double sum = 0.0;
    for (const double x : total_over_n) sum += x;
    out.mean_total_over_n = sum / static_cast<double>(total_over_n.size());
    double var = 0.0;
    for (const double x : total_over_n) var += (x - out.mean_total_over_n) * (x - out.mean_total_over_n);
    out.stddev_total_over_n =
        total_over_n.size() > 1 ? std::sqrt(var / static_cast<double>(total_over_n.size() - 1)) : 0.0;
    out.median_total_over_n = median_of(total_over_n);
    out.median_main_over_n = median_of(main_over_n);
    return out;
}

std::vector<trajectory_row> mean_trial_trajectory(const run_output& out) {
    std::vector<std::vector<trajectory_row>> runs;
    runs.reserve(out.trials.size());
    for (const auto& tr : out.trials) runs.push_back(tr.trajectory);
    return mean_trajectory(runs);
}

} // namespace srg
