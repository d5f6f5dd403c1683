#ifndef SRG_RUN_HARNESS_HPP
#define SRG_RUN_HARNESS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "srg/config.hpp"
#include "srg/event.hpp"
#include "srg/trajectory.hpp"
#include "srg/verifier.hpp"

namespace srg {

/// A batch of independent trials of one configuration. Trial k runs with
/// seed base.seed + k.
struct run_request {
    config base;
    int trials = 1;
    std::int64_t sample_every = 0; // 0: pick ~1000 rows per trajectory
    int threads = 0;               // 0: hardware concurrency
    bool audit_every_round = false;
    bool keep_events = false;
};

struct trial_result {
    std::uint64_t seed = 0;
    std::int64_t main_rounds = 0;    // rounds until the stop condition
    std::int64_t closing_rounds = 0; // 0 unless full-cycle mode
    std::int64_t total_rounds = 0;
    bool cycle_verified = false;     // meaningful in full-cycle mode
    std::vector<trajectory_row> trajectory;
    std::vector<vertex_id> cycle;
    std::vector<event_record> events; // only when keep_events
};

struct run_output {
    std::vector<trial_result> trials;
    std::int64_t sample_every = 1;
    double mean_total_over_n = 0.0;
    double median_total_over_n = 0.0;
    double stddev_total_over_n = 0.0;
    double median_main_over_n = 0.0;
    lemma_accumulator lemma_c6{lemma_class::c6};
    lemma_accumulator lemma_c3_isolated{lemma_class::c3_isolated};
    lemma_accumulator lemma_c3_paired{lemma_class::c3_paired};
    std::vector<violation> violations; // only when auditing
};

/// Runs the batch, trials in parallel, and aggregates in seed order so the
/// result is independent of the parallelism degree.
run_output run_trials(const run_request& req);

std::int64_t auto_sample_every(std::int64_t n);

/// Element-wise mean of the trial trajectories (aligned sample grid).
std::vector<trajectory_row> mean_trial_trajectory(const run_output& out);

} // namespace srg

#endif
