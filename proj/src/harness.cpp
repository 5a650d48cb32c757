#include "secswipt/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <thread>

#include "secswipt/json_io.hpp"
#include "secswipt/sca.hpp"

namespace secswipt {

using nlohmann::json;

namespace {

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

double elapsed_s(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Stats {
    double mean = 0.0;
    double stderr_ = 0.0;
    int n = 0;
};

Stats stats_of(const std::vector<double>& xs) {
    Stats s;
    s.n = static_cast<int>(xs.size());
    if (s.n == 0) return s;
    double sum = 0.0;
    for (double x : xs) sum += x;
    s.mean = sum / s.n;
    if (s.n > 1) {
        double ss = 0.0;
        for (double x : xs) ss += (x - s.mean) * (x - s.mean);
        s.stderr_ = std::sqrt(ss / (s.n - 1)) / std::sqrt(static_cast<double>(s.n));
    }
    return s;
}

double median_of(std::vector<double> xs) {
    if (xs.empty()) return 0.0;
    std::sort(xs.begin(), xs.end());
    const std::size_t h = xs.size() / 2;
    return xs.size() % 2 ? xs[h] : 0.5 * (xs[h - 1] + xs[h]);
}

std::vector<Scheme> configured_schemes(const ExperimentConfig& exp) {
    std::vector<Scheme> out;
    out.reserve(exp.schemes.size());
    for (const auto& name : exp.schemes) out.push_back(scheme_from_string(name));
    return out;
}

json config_echo(const KeyValueConfig& kv) {
    json out = json::object();
    for (const auto& [key, value] : kv.entries()) out[key] = value;
    return out;
}

// One unit of work: every configured scheme on one channel realization.
struct Job {
    KeyValueConfig kv;  // sweep-point overrides already applied
    std::string experiment;
    std::string sweep_key;
    double sweep_value = 0.0;
    std::uint64_t seed = 0;
    bool want_traces = false;
    std::string trace_stem; // e.g. "trace_power_40_s7"
};

struct JobOutput {
    std::vector<TrialRow> rows;
    std::vector<std::pair<std::string, json>> traces;
};

JobOutput run_job(const Job& job) {
    const NetworkConfig cfg = job.kv.network();
    const ScaConfig scfg = job.kv.sca();
    const SolverSettings solver = job.kv.solver();
    const ExperimentConfig exp = job.kv.experiment();
    const ChannelSet ch = generate_channel_set(cfg, job.seed);

    JobOutput out;
    for (const Scheme scheme : configured_schemes(exp)) {
        const auto t0 = std::chrono::steady_clock::now();
        const SchemeOutcome oc = run_scheme(scheme, ch, cfg, scfg, solver);
        TrialRow row;
        row.experiment = job.experiment;
        row.sweep_key = job.sweep_key;
        row.sweep_value = job.sweep_value;
        row.seed = job.seed;
        row.scheme = scheme;
        row.feasible = oc.feasible;
        row.secrecy_rate = oc.feasible ? oc.secrecy_rate : 0.0;
        row.iterations = oc.iterations;
        row.worst_violation = oc.worst_violation;
        row.wall_time_s = elapsed_s(t0);
        out.rows.push_back(std::move(row));
        if (job.want_traces)
            out.traces.emplace_back(job.trace_stem + "_" + to_string(scheme), outcome_to_json(oc));
    }
    return out;
}

// Runs all jobs on a small pool; slot-indexed outputs keep the final order
// independent of scheduling.
std::vector<JobOutput> run_jobs(const std::vector<Job>& jobs, int threads) {
    std::vector<JobOutput> slots(jobs.size());
    int n = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    n = std::max(1, std::min<int>(n, static_cast<int>(jobs.size())));
    if (n <= 1) {
        for (std::size_t i = 0; i < jobs.size(); ++i) slots[i] = run_job(jobs[i]);
        return slots;
    }
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= jobs.size()) return;
            slots[i] = run_job(jobs[i]);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n));
    for (int t = 0; t < n; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
    return slots;
}

ExperimentResult collect(const std::vector<Job>& jobs, std::vector<JobOutput> slots) {
    ExperimentResult r;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        for (auto& row : slots[i].rows) r.rows.push_back(std::move(row));
        for (auto& tr : slots[i].traces) r.traces.push_back(std::move(tr));
    }
    return r;
}

// Statistics for one scheme across the seeds of one sweep point. Zero-filled
// means count an infeasible instance as zero rate (no secure transmission);
// feasible-only means restrict to the audited successes.
json scheme_point_stats(const std::vector<const TrialRow*>& rows) {
    std::vector<double> zerofill, feas_only, walls, walls_feasible;
    int n_feasible = 0;
    for (const TrialRow* r : rows) {
        zerofill.push_back(r->feasible ? r->secrecy_rate : 0.0);
        walls.push_back(r->wall_time_s);
        if (r->feasible) {
            feas_only.push_back(r->secrecy_rate);
            walls_feasible.push_back(r->wall_time_s);
            ++n_feasible;
        }
    }
    const Stats z = stats_of(zerofill);
    const Stats f = stats_of(feas_only);
    return json{{"n_total", static_cast<int>(rows.size())},
                {"n_feasible", n_feasible},
                {"mean_zerofill", z.mean},
                {"stderr_zerofill", z.stderr_},
                {"mean_feasible", f.mean},
                {"stderr_feasible", f.stderr_},
                {"median_wall_s", median_of(walls)},
                {"median_wall_feasible_s", median_of(walls_feasible)}};
}

// summary["points"][i]["schemes"][name] = stats at sweep point i.
json sweep_summary(const std::vector<TrialRow>& rows, const std::vector<double>& points,
                   const std::vector<Scheme>& schemes) {
    json out = json::array();
    for (const double p : points) {
        json entry{{"value", p}, {"schemes", json::object()}};
        for (const Scheme s : schemes) {
            std::vector<const TrialRow*> sel;
            for (const TrialRow& r : rows)
                if (r.scheme == s && r.sweep_value == p) sel.push_back(&r);
            entry["schemes"][to_string(s)] = scheme_point_stats(sel);
        }
        out.push_back(std::move(entry));
    }
    return out;
}

// Deterministic expansion point used only to measure subproblem dimensions:
// matched-filter beams on an equal power split.
ExpansionPoint synthetic_point(const ChannelSet& ch, const NetworkConfig& cfg) {
    ExpansionPoint pt;
    const double share = cfg.p_th / (cfg.m + 2.0);
    pt.w_mu.resize(cfg.m);
    for (int m = 0; m < cfg.m; ++m) pt.w_mu[m] = std::sqrt(share) * ch.h_mu[m].normalized();
    pt.w_ir = std::sqrt(share) * ch.h_ir.normalized();
    pt.v_an = std::sqrt(share) *
              (cfg.k > 0 ? ch.g_er[0].normalized().eval() : ch.h_ir.normalized().eval());
    pt.mu_ir = std::abs(ch.h_ir.dot(pt.w_ir));
    double eta = cfg.sigma2_ir + std::norm(ch.h_ir.dot(pt.v_an));
    for (int m = 0; m < cfg.m; ++m) eta += std::norm(ch.h_ir0.dot(pt.w_mu[m]));
    pt.eta_ir = eta;
    BeamformingSolution s;
    s.w_mu = pt.w_mu;
    s.w_ir = pt.w_ir;
    s.v_an = pt.v_an;
    double ge = 0.0;
    for (int k = 0; k < cfg.k; ++k) ge = std::max(ge, sinr_er(s, ch, cfg, k));
    pt.gamma_er = ge;
    return pt;
}

int scheme_rank(Scheme s) { return static_cast<int>(s); }

void sort_rows(std::vector<TrialRow>& rows) {
    std::sort(rows.begin(), rows.end(), [](const TrialRow& a, const TrialRow& b) {
        if (a.experiment != b.experiment) return a.experiment < b.experiment;
        if (a.sweep_value != b.sweep_value) return a.sweep_value < b.sweep_value;
        if (a.seed != b.seed) return a.seed < b.seed;
        return scheme_rank(a.scheme) < scheme_rank(b.scheme);
    });
}

std::string csv_row(const TrialRow& r, bool with_timing) {
    std::string line = r.experiment + "," + r.sweep_key + "," + fmt("%.10g", r.sweep_value) +
                       "," + std::to_string(r.seed) + "," + to_string(r.scheme) + "," +
                       (r.feasible ? "1" : "0") + "," + fmt("%.12g", r.secrecy_rate) + "," +
                       std::to_string(r.iterations) + "," + fmt("%.6e", r.worst_violation);
    if (with_timing) line += "," + fmt("%.6f", r.wall_time_s);
    return line + "\n";
}

} // namespace

ExperimentResult run_single(const KeyValueConfig& kv, std::uint64_t seed) {
    Job job;
    job.kv = kv;
    job.experiment = "single";
    job.sweep_key = "";
    job.sweep_value = 0.0;
    job.seed = seed;
    job.want_traces = true;
    job.trace_stem = "trace_s" + std::to_string(seed);
    ExperimentResult r = collect({job}, run_jobs({job}, 1));
    sort_rows(r.rows);
    r.summary = json{{"experiment", "single"},
                     {"config", config_echo(kv)},
                     {"seed", seed},
                     {"schemes", json::object()}};
    for (const TrialRow& row : r.rows) {
        r.summary["schemes"][to_string(row.scheme)] =
            json{{"feasible", row.feasible},
                 {"secrecy_rate", row.secrecy_rate},
                 {"iterations", row.iterations},
                 {"worst_violation", row.worst_violation},
                 {"wall_time_s", row.wall_time_s}};
    }
    return r;
}

ExperimentResult run_power_sweep(const KeyValueConfig& kv) {
    const ExperimentConfig exp = kv.experiment();
    exp.validate();
    std::vector<Job> jobs;
    for (const double dbm : exp.p_th_sweep_dbm) {
        KeyValueConfig point = kv;
        point.set("network.p_th_dbm", fmt("%.10g", dbm));
        for (int t = 0; t < exp.trials; ++t) {
            Job job;
            job.kv = point;
            job.experiment = "power_sweep";
            job.sweep_key = "p_th_dbm";
            job.sweep_value = dbm;
            job.seed = exp.base_seed + static_cast<std::uint64_t>(t);
            job.want_traces = exp.write_traces;
            job.trace_stem =
                "trace_power_" + fmt("%.10g", dbm) + "_s" + std::to_string(job.seed);
            jobs.push_back(std::move(job));
        }
    }
    ExperimentResult r = collect(jobs, run_jobs(jobs, exp.threads));
    sort_rows(r.rows);
    r.summary = json{{"experiment", "power_sweep"},
                     {"config", config_echo(kv)},
                     {"points", sweep_summary(r.rows, exp.p_th_sweep_dbm,
                                              configured_schemes(exp))}};
    return r;
}

ExperimentResult run_k_sweep(const KeyValueConfig& kv) {
    const ExperimentConfig exp = kv.experiment();
    exp.validate();
    std::vector<Job> jobs;
    for (const int k : exp.k_sweep) {
        KeyValueConfig point = kv;
        point.set("network.k", std::to_string(k));
        for (int t = 0; t < exp.trials; ++t) {
            Job job;
            job.kv = point;
            job.experiment = "k_sweep";
            job.sweep_key = "k";
            job.sweep_value = k;
            job.seed = exp.base_seed + static_cast<std::uint64_t>(t);
            job.want_traces = exp.write_traces;
            job.trace_stem = "trace_k_" + std::to_string(k) + "_s" + std::to_string(job.seed);
            jobs.push_back(std::move(job));
        }
    }
    ExperimentResult r = collect(jobs, run_jobs(jobs, exp.threads));
    sort_rows(r.rows);

    // Subproblem dimensions per eavesdropper count: the layout arithmetic and
    // an actually assembled program must agree.
    json sizes = json::array();
    for (const int k : exp.k_sweep) {
        KeyValueConfig point = kv;
        point.set("network.k", std::to_string(k));
        const NetworkConfig cfg = point.network();
        const ScaConfig scfg = point.sca();
        const ChannelSet ch = generate_channel_set(cfg, exp.base_seed);
        const Subproblem sp =
            build_subproblem(ch, cfg, synthetic_point(ch, cfg), scfg, /*include_an=*/true);
        sizes.push_back(json{{"k", k},
                             {"vars_predicted", SubproblemLayout::predict_total(
                                                    cfg.m, k, cfg.n_m, cfg.n_f, scfg.q, true)},
                             {"vars_built", sp.prog.num_vars},
                             {"rows_built", static_cast<int>(sp.prog.a.rows())}});
    }

    std::vector<double> points(exp.k_sweep.begin(), exp.k_sweep.end());
    r.summary = json{{"experiment", "k_sweep"},
                     {"config", config_echo(kv)},
                     {"points", sweep_summary(r.rows, points, configured_schemes(exp))},
                     {"subproblem_sizes", std::move(sizes)}};
    return r;
}

std::string results_csv(const std::vector<TrialRow>& rows) {
    std::string out =
        "experiment,sweep_key,sweep_value,seed,scheme,feasible,secrecy_rate,iterations,"
        "worst_violation\n";
    for (const TrialRow& r : rows) out += csv_row(r, /*with_timing=*/false);
    return out;
}

std::string timings_csv(const std::vector<TrialRow>& rows) {
    std::string out =
        "experiment,sweep_key,sweep_value,seed,scheme,feasible,secrecy_rate,iterations,"
        "worst_violation,wall_time_s\n";
    for (const TrialRow& r : rows) out += csv_row(r, /*with_timing=*/true);
    return out;
}

void write_outputs(const std::string& out_dir, const ExperimentResult& result) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    auto write_file = [&](const std::string& name, const std::string& body) {
        std::ofstream f(fs::path(out_dir) / name, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + name + " in " + out_dir);
        f << body;
    };
    write_file("results.csv", results_csv(result.rows));
    write_file("timings.csv", timings_csv(result.rows));
    write_file("summary.json", result.summary.dump(2) + "\n");
    for (const auto& [stem, doc] : result.traces) write_file(stem + ".json", doc.dump(2) + "\n");
}

} // namespace secswipt
