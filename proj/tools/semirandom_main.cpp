// Command-line harness: seeded multi-trial simulation, fluid-limit
// integration, side-by-side comparison, and full-audit replay.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "srg/cycle_closer.hpp"
#include "srg/ode.hpp"
#include "srg/process.hpp"
#include "srg/run_harness.hpp"
#include "srg/svg_chart.hpp"
#include "srg/trajectory.hpp"
#include "srg/verifier.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

struct sim_options {
    std::int64_t n = 10000;
    int trials = 1;
    std::uint64_t seed = 1;
    int cap = 3;
    std::string pairing = "on";
    std::string mode = "full-cycle";
    double epsilon = 0.01;
    std::int64_t sample_every = 0;
    int threads = 0;
    bool event_log = false;
    std::string out_dir = "out";
};

struct ode_options {
    int cap = 3;
    double step = 1e-4;
    double delta = 1e-6;
    double tau_max = 3.0;
    std::string out_dir = "out";
};

srg::run_request to_request(const sim_options& o) {
    srg::run_request req;
    req.base.n = o.n;
    req.base.stub_cap = o.cap;
    req.base.pairing_enabled = o.pairing == "on";
    req.base.mode = o.mode == "full-cycle" ? srg::stop_mode::full_cycle : srg::stop_mode::main_phase;
    req.base.epsilon = o.epsilon;
    req.base.seed = o.seed;
    req.trials = o.trials;
    req.sample_every = o.sample_every;
    req.threads = o.threads;
    req.keep_events = o.event_log;
    return req;
}

json config_json(const sim_options& o, std::int64_t sample_every) {
    json cfg;
    cfg["n"] = o.n;
    cfg["cap"] = o.cap;
    cfg["pairing"] = o.pairing;
    cfg["mode"] = o.mode;
    if (o.mode == "main-phase") cfg["epsilon"] = o.epsilon;
    cfg["seed"] = o.seed;
    cfg["trials"] = o.trials;
    cfg["sample_every"] = sample_every;
    return cfg;
}

json lemma_json(const srg::lemma_accumulator& acc) {
    const srg::lemma_statistic st = acc.statistic(1);
    json j;
    j["events"] = st.events;
    j["edges"] = st.edges;
    j["hits"] = st.hits;
    j["empirical"] = st.empirical;
    j["expected"] = st.expected;
    j["z"] = st.z;
    return j;
}

json summary_json(const sim_options& o, const srg::run_output& out) {
    json s;
    s["config"] = config_json(o, out.sample_every);
    s["trials"] = json::array();
    const auto n = static_cast<double>(o.n);
    for (const auto& tr : out.trials) {
        json t;
        t["seed"] = tr.seed;
        t["main_rounds"] = tr.main_rounds;
        t["closing_rounds"] = tr.closing_rounds;
        t["total_rounds"] = tr.total_rounds;
        t["total_over_n"] = static_cast<double>(tr.total_rounds) / n;
        if (o.mode == "full-cycle") t["cycle_verified"] = tr.cycle_verified;
        s["trials"].push_back(t);
    }
    s["mean_total_over_n"] = out.mean_total_over_n;
    s["median_total_over_n"] = out.median_total_over_n;
    s["stddev_total_over_n"] = out.stddev_total_over_n;
    s["median_main_over_n"] = out.median_main_over_n;
    json lemma;
    if (out.lemma_c6.events() > 0) lemma["c6"] = lemma_json(out.lemma_c6);
    if (out.lemma_c3_isolated.events() > 0)
        lemma["c3_isolated"] = lemma_json(out.lemma_c3_isolated);
    if (out.lemma_c3_paired.events() > 0) lemma["c3_paired"] = lemma_json(out.lemma_c3_paired);
    if (!lemma.empty()) s["lemma_stats"] = lemma;
    return s;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

void write_event_log(const fs::path& path, const std::vector<srg::event_record>& events) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    for (const auto& e : events) {
        json j;
        j["t"] = e.t;
        j["v"] = e.presented;
        j["case"] = srg::to_string(e.cls);
        j["dP"] = e.delta[0];
        j["dV1"] = e.delta[1];
        j["dV2"] = e.delta[2];
        j["dS1"] = e.delta[3];
        j["dS2"] = e.delta[4];
        j["dS3"] = e.delta[5];
        out << j.dump() << '\n';
    }
}

std::string violation_line(const srg::violation& v) {
    json j;
    j["invariant"] = v.invariant;
    j["t"] = v.t;
    j["detail"] = v.detail;
    return j.dump();
}

int run_simulate(const sim_options& opts) {
    const srg::run_request req = to_request(opts);
    const srg::run_output out = srg::run_trials(req);

    fs::create_directories(opts.out_dir);
    const fs::path dir(opts.out_dir);
    for (std::size_t k = 0; k < out.trials.size(); ++k) {
        srg::write_trajectory_csv((dir / ("sim_trial" + std::to_string(k) + ".csv")).string(),
                                  out.trials[k].trajectory);
        if (opts.event_log)
            write_event_log(dir / ("events_trial" + std::to_string(k) + ".jsonl"),
                            out.trials[k].events);
    }
    const auto mean_rows = srg::mean_trial_trajectory(out);
    srg::write_trajectory_csv((dir / "sim_mean.csv").string(), mean_rows);

    srg::chart_spec spec;
    spec.title = "semi-random process, n=" + std::to_string(opts.n) + ", cap=" +
                 std::to_string(opts.cap) + ", " + std::to_string(opts.trials) + "-trial mean";
    srg::emit_chart({{"", false, mean_rows}}, spec, (dir / "sim.svg").string());

    const json summary = summary_json(opts, out);
    write_text(dir / "summary.json", summary.dump(2) + "\n");
    std::cout << summary.dump(2) << std::endl;

    if (opts.mode == "full-cycle") {
        for (const auto& tr : out.trials) {
            if (!tr.cycle_verified) {
                std::cerr << "trial with seed " << tr.seed
                          << " did not produce a verified Hamilton cycle\n";
                return 2;
            }
        }
    }
    return 0;
}

int run_ode(const ode_options& opts) {
    srg::model_variant variant{opts.cap};
    srg::integration_config icfg;
    icfg.step = opts.step;
    icfg.delta = opts.delta;
    icfg.tau_max = opts.tau_max;
    const auto traj = srg::integrate(variant, icfg);
    const double ts = srg::tau_star(traj, opts.delta);
    const auto rows = srg::to_rows(traj);

    double max_s3 = 0.0;
    for (const auto& fs_row : traj) max_s3 = std::max(max_s3, fs_row.s3);

    fs::create_directories(opts.out_dir);
    const fs::path dir(opts.out_dir);
    srg::write_trajectory_csv((dir / "ode.csv").string(), rows);

    srg::chart_spec spec;
    spec.title = "fluid limit, cap=" + std::to_string(opts.cap);
    srg::emit_chart({{"", false, rows}}, spec, (dir / "ode.svg").string());

    json summary;
    summary["config"] = {{"cap", opts.cap},
                         {"step", opts.step},
                         {"delta", opts.delta},
                         {"tau_max", opts.tau_max}};
    summary["tau_star"] = ts;
    summary["max_s3"] = max_s3;
    summary["steps"] = traj.size() - 1;
    const auto& last = traj.back();
    summary["final"] = {{"tau", last.tau}, {"p", last.p},   {"v1", last.v1},
                        {"v2", last.v2},   {"s1", last.s1}, {"s2", last.s2},
                        {"s3", last.s3}};
    write_text(dir / "summary.json", summary.dump(2) + "\n");
    std::cout << summary.dump(2) << std::endl;
    return 0;
}

int run_compare(const sim_options& sim_opts, const ode_options& ode_opts) {
    const srg::run_request req = to_request(sim_opts);
    const srg::run_output out = srg::run_trials(req);
    const auto mean_rows = srg::mean_trial_trajectory(out);

    srg::model_variant variant{ode_opts.cap};
    srg::integration_config icfg;
    icfg.step = ode_opts.step;
    icfg.delta = ode_opts.delta;
    icfg.tau_max = ode_opts.tau_max;
    const auto traj = srg::integrate(variant, icfg);
    const double ts = srg::tau_star(traj, ode_opts.delta);
    const auto ode_rows = srg::to_rows(traj);

    fs::create_directories(sim_opts.out_dir);
    const fs::path dir(sim_opts.out_dir);

    // joined CSV on the simulation grid
    std::string csv = "tau,p_sim,p_ode,v1_sim,v1_ode,v2_sim,v2_ode,"
                      "s1_sim,s1_ode,s2_sim,s2_ode,s3_sim,s3_ode\n";
    double dev_p = 0.0, dev_v1 = 0.0, dev_v2 = 0.0;
    const double tau_cap = 1.8;
    for (const auto& r : mean_rows) {
        const srg::trajectory_row o = srg::interpolate_row(ode_rows, r.tau);
        char line[320];
        std::snprintf(line, sizeof(line),
                      "%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,"
                      "%.10g\n",
                      r.tau, r.p, o.p, r.v1, o.v1, r.v2, o.v2, r.s1, o.s1, r.s2, o.s2, r.s3, o.s3);
        csv += line;
        if (r.tau <= tau_cap) {
            dev_p = std::max(dev_p, std::abs(r.p - o.p));
            dev_v1 = std::max(dev_v1, std::abs(r.v1 - o.v1));
            dev_v2 = std::max(dev_v2, std::abs(r.v2 - o.v2));
        }
    }
    write_text(dir / "compare.csv", csv);

    srg::chart_spec spec;
    spec.title = "simulation mean vs fluid limit, n=" + std::to_string(sim_opts.n);
    srg::emit_chart({{"sim", false, mean_rows}, {"ode", true, ode_rows}}, spec,
                    (dir / "compare.svg").string());

    json summary = summary_json(sim_opts, out);
    summary["tau_star"] = ts;
    summary["max_deviation"] = {{"tau_cap", tau_cap}, {"p", dev_p}, {"v1", dev_v1}, {"v2", dev_v2}};
    write_text(dir / "compare.json", summary.dump(2) + "\n");
    std::cout << summary.dump(2) << std::endl;
    return 0;
}

int run_verify(const sim_options& opts) {
    srg::run_request req = to_request(opts);
    req.trials = 1;
    req.audit_every_round = true;
    const srg::run_output out = srg::run_trials(req);

    for (const auto& v : out.violations) std::cout << violation_line(v) << '\n';

    bool cycle_ok = true;
    if (opts.mode == "full-cycle") cycle_ok = out.trials[0].cycle_verified;

    json summary;
    summary["config"] = config_json(opts, out.sample_every);
    summary["rounds_audited"] = out.trials[0].main_rounds;
    summary["violations"] = out.violations.size();
    if (opts.mode == "full-cycle") {
        summary["closing_rounds"] = out.trials[0].closing_rounds;
        summary["cycle_verified"] = cycle_ok;
    }
    std::cout << summary.dump(2) << std::endl;
    return (out.violations.empty() && cycle_ok) ? 0 : 2;
}

void add_sim_flags(CLI::App* cmd, sim_options& o, bool with_mode) {
    cmd->add_option("--n", o.n, "number of vertices")->check(CLI::PositiveNumber);
    cmd->add_option("--trials", o.trials, "independent trials")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", o.seed, "base seed; trial k uses seed + k");
    cmd->add_option("--cap", o.cap, "stub degree cap")->check(CLI::IsMember({2, 3}));
    cmd->add_option("--pairing", o.pairing, "pair isolated vertices")
        ->check(CLI::IsMember({"on", "off"}));
    if (with_mode) {
        cmd->add_option("--mode", o.mode, "stop condition")
            ->check(CLI::IsMember({"main-phase", "full-cycle"}));
        cmd->add_option("--epsilon", o.epsilon, "main-phase stop margin")
            ->check(CLI::Range(1e-9, 0.999999));
    }
    cmd->add_option("--sample-every", o.sample_every, "rounds between trajectory samples")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--threads", o.threads, "worker threads (0 = hardware)")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--out-dir", o.out_dir, "output directory");
}

void add_ode_flags(CLI::App* cmd, ode_options& o, bool with_cap_and_dir) {
    if (with_cap_and_dir) {
        cmd->add_option("--cap", o.cap, "stub degree cap")->check(CLI::IsMember({2, 3}));
        cmd->add_option("--out-dir", o.out_dir, "output directory");
    }
    cmd->add_option("--step", o.step, "integration step in tau")
        ->check(CLI::Range(1e-9, 0.1));
    cmd->add_option("--delta", o.delta, "completion threshold on 1 - p")
        ->check(CLI::Range(1e-12, 0.5));
    cmd->add_option("--tau-max", o.tau_max, "integration guard")->check(CLI::PositiveNumber);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"semi-random Hamilton cycle builder: simulator and fluid-limit analyzer"};
    app.require_subcommand(1);

    sim_options sim_opts;
    ode_options ode_opts;
    sim_options cmp_sim_opts;
    ode_options cmp_ode_opts;
    sim_options ver_opts;

    CLI::App* sim = app.add_subcommand("simulate", "run seeded trials of the discrete process");
    add_sim_flags(sim, sim_opts, true);
    sim->add_flag("--event-log", sim_opts.event_log, "write per-round event JSON lines");

    CLI::App* ode = app.add_subcommand("ode", "integrate the fluid-limit system");
    add_ode_flags(ode, ode_opts, true);

    CLI::App* cmp = app.add_subcommand("compare", "run both and report trajectory deviations");
    add_sim_flags(cmp, cmp_sim_opts, false);
    add_ode_flags(cmp, cmp_ode_opts, false);

    CLI::App* ver = app.add_subcommand("verify", "replay one trial with per-round audits");
    add_sim_flags(ver, ver_opts, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (sim->parsed()) return run_simulate(sim_opts);
        if (ode->parsed()) return run_ode(ode_opts);
        if (cmp->parsed()) {
            cmp_ode_opts.cap = cmp_sim_opts.cap; // one cap governs both sides
            return run_compare(cmp_sim_opts, cmp_ode_opts);
        }
        if (ver->parsed()) return run_verify(ver_opts);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
