#ifndef SECSWIPT_HARNESS_HPP
#define SECSWIPT_HARNESS_HPP

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "secswipt/baselines.hpp"
#include "secswipt/config.hpp"

namespace secswipt {

// One scheme evaluated on one channel realization at one sweep point.
struct TrialRow {
    std::string experiment;  // "single" | "power_sweep" | "k_sweep"
    std::string sweep_key;   // "" | "p_th_dbm" | "k"
    double sweep_value = 0.0;
    std::uint64_t seed = 0;
    Scheme scheme = Scheme::proposed;
    bool feasible = false;
    double secrecy_rate = 0.0; // 0 when infeasible (zero-filled statistics)
    int iterations = 0;
    double worst_violation = 0.0;
    double wall_time_s = 0.0;  // written only to timings.csv
};

struct ExperimentResult {
    std::vector<TrialRow> rows; // deterministic order
    nlohmann::json summary;     // config echo + per-sweep-point statistics
    // Per-run iteration traces (filename stem -> document), kept optional
    // because a full sweep can produce hundreds of them.
    std::vector<std::pair<std::string, nlohmann::json>> traces;
};

// All configured schemes on the one channel realization drawn from `seed`.
// Always collects traces.
ExperimentResult run_single(const KeyValueConfig& kv, std::uint64_t seed);

// experiment.trials paired seeds per transmit-power point; every scheme sees
// the same channel set at the same seed.
ExperimentResult run_power_sweep(const KeyValueConfig& kv);

// experiment.trials seeds per eavesdropper count, timing every scheme run and
// recording the subproblem size implied by each count.
ExperimentResult run_k_sweep(const KeyValueConfig& kv);

// CSV renderings. results_csv holds no timing data, so identical configs and
// seeds reproduce it byte for byte; wall-clock noise lives in timings_csv.
std::string results_csv(const std::vector<TrialRow>& rows);
std::string timings_csv(const std::vector<TrialRow>& rows);

// Writes results.csv, timings.csv, summary.json and any traces into out_dir
// (created if missing).
void write_outputs(const std::string& out_dir, const ExperimentResult& result);

} // namespace secswipt

#endif
