#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

#include "secswipt/harness.hpp"
#include "secswipt/sca.hpp"

using namespace secswipt;
using nlohmann::json;

namespace {

KeyValueConfig small_sweep_config() {
    KeyValueConfig kv = KeyValueConfig::defaults();
    kv.set("experiment.trials", "3");
    kv.set("experiment.p_th_sweep_dbm", "35,40");
    kv.set("experiment.base_seed", "1");
    return kv;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

TEST_CASE("power sweep rows are complete, ordered, and thread-count independent") {
    KeyValueConfig kv = small_sweep_config();
    kv.set("experiment.threads", "1");
    const ExperimentResult a = run_power_sweep(kv);
    kv.set("experiment.threads", "2");
    const ExperimentResult b = run_power_sweep(kv);

    // 3 seeds x 2 power points x 3 schemes.
    REQUIRE(a.rows.size() == 18);
    CHECK(results_csv(a.rows) == results_csv(b.rows)); // byte-identical

    const auto lines = lines_of(results_csv(a.rows));
    REQUIRE(lines.size() == 19);
    CHECK(lines[0] ==
          "experiment,sweep_key,sweep_value,seed,scheme,feasible,secrecy_rate,"
          "iterations,worst_violation");
    const auto tlines = lines_of(timings_csv(a.rows));
    CHECK(tlines[0] ==
          "experiment,sweep_key,sweep_value,seed,scheme,feasible,secrecy_rate,"
          "iterations,worst_violation,wall_time_s");

    const int max_iters = kv.sca().max_iters;
    std::map<std::uint64_t, int> rows_per_seed;
    for (const TrialRow& r : a.rows) {
        CHECK(r.experiment == "power_sweep");
        CHECK(r.sweep_key == "p_th_dbm");
        CHECK((r.sweep_value == 35.0 || r.sweep_value == 40.0));
        CHECK(r.iterations <= max_iters);
        if (!r.feasible) CHECK(r.secrecy_rate == 0.0);
        ++rows_per_seed[r.seed];
    }
    REQUIRE(rows_per_seed.size() == 3);
    for (const auto& [seed, n] : rows_per_seed) {
        CHECK(seed >= 1);
        CHECK(seed <= 3);
        CHECK(n == 6);
    }
}

TEST_CASE("sweep summary statistics re-derive from the rows") {
    const KeyValueConfig kv = small_sweep_config();
    const ExperimentResult r = run_power_sweep(kv);
    REQUIRE(r.summary.contains("points"));
    for (const json& point : r.summary["points"]) {
        const double value = point["value"].get<double>();
        for (const auto& [name, stats] : point["schemes"].items()) {
            const Scheme scheme = scheme_from_string(name);
            std::vector<double> zerofill;
            int n_feasible = 0;
            double feas_sum = 0.0;
            for (const TrialRow& row : r.rows) {
                if (row.scheme != scheme || row.sweep_value != value) continue;
                zerofill.push_back(row.feasible ? row.secrecy_rate : 0.0);
                if (row.feasible) {
                    ++n_feasible;
                    feas_sum += row.secrecy_rate;
                }
            }
            REQUIRE(zerofill.size() == 3);
            CHECK(stats["n_total"].get<int>() == 3);
            CHECK(stats["n_feasible"].get<int>() == n_feasible);
            double mean = 0.0;
            for (const double v : zerofill) mean += v;
            mean /= static_cast<double>(zerofill.size());
            CHECK(stats["mean_zerofill"].get<double>() == doctest::Approx(mean).epsilon(1e-12));
            double var = 0.0;
            for (const double v : zerofill) var += (v - mean) * (v - mean);
            const double se = std::sqrt(var / 2.0) / std::sqrt(3.0); // sample sd / sqrt(n)
            CHECK(stats["stderr_zerofill"].get<double>() == doctest::Approx(se).epsilon(1e-12));
            if (n_feasible > 0)
                CHECK(stats["mean_feasible"].get<double>() ==
                      doctest::Approx(feas_sum / n_feasible).epsilon(1e-12));
        }
    }
}

TEST_CASE("k sweep reports subproblem sizes that match the layout arithmetic") {
    KeyValueConfig kv = KeyValueConfig::defaults();
    kv.set("experiment.trials", "2");
    kv.set("experiment.k_sweep", "1,2,3");
    kv.set("experiment.schemes", "proposed");
    const ExperimentResult r = run_k_sweep(kv);
    CHECK(r.rows.size() == 6); // 2 seeds x 3 counts x 1 scheme
    REQUIRE(r.summary.contains("subproblem_sizes"));
    const json& sizes = r.summary["subproblem_sizes"];
    REQUIRE(sizes.size() == 3);
    int prev_vars = 0;
    int prev_rows = 0;
    for (const json& entry : sizes) {
        const int k = entry["k"].get<int>();
        const int predicted = SubproblemLayout::predict_total(2, k, 10, 4, 6, true);
        CHECK(entry["vars_predicted"].get<int>() == predicted);
        CHECK(entry["vars_built"].get<int>() == predicted);
        CHECK(entry["vars_built"].get<int>() > prev_vars);
        CHECK(entry["rows_built"].get<int>() > prev_rows);
        prev_vars = entry["vars_built"].get<int>();
        prev_rows = entry["rows_built"].get<int>();
    }
}

TEST_CASE("write_outputs persists exactly what the run returned") {
    const KeyValueConfig kv = KeyValueConfig::defaults();
    const ExperimentResult r = run_single(kv, 4);
    REQUIRE_FALSE(r.rows.empty());
    REQUIRE_FALSE(r.traces.empty());

    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "secswipt_harness_test";
    fs::remove_all(dir);
    write_outputs(dir.string(), r);

    CHECK(slurp(dir / "results.csv") == results_csv(r.rows));
    CHECK(slurp(dir / "timings.csv") == timings_csv(r.rows));
    CHECK(json::parse(slurp(dir / "summary.json")) == r.summary);
    for (const auto& [stem, doc] : r.traces)
        CHECK(json::parse(slurp(dir / (stem + ".json"))) == doc);
    fs::remove_all(dir);
}

TEST_CASE("single runs tabulate one row per configured scheme") {
    KeyValueConfig kv = KeyValueConfig::defaults();
    kv.set("experiment.schemes", "proposed,no_an");
    const ExperimentResult r = run_single(kv, 4);
    REQUIRE(r.rows.size() == 2);
    CHECK(r.rows[0].scheme == Scheme::proposed);
    CHECK(r.rows[1].scheme == Scheme::no_an);
    for (const TrialRow& row : r.rows) {
        CHECK(row.experiment == "single");
        CHECK(row.seed == 4);
        CHECK(row.feasible);
        CHECK(row.secrecy_rate > 0.0);
    }
    // On this draw noise injection strictly helps.
    CHECK(r.rows[0].secrecy_rate > r.rows[1].secrecy_rate);
    CHECK(r.summary["schemes"].contains("proposed"));
    CHECK(r.summary["schemes"].contains("no_an"));
    CHECK(r.traces.size() == 2);
}
