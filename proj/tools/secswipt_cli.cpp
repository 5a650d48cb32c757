// Command-line front end. Talks to the library exclusively through the C API.
#include <cstdint>
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "secswipt/secswipt.h"

namespace {

struct ConfigDeleter {
    void operator()(ssb_config* c) const { ssb_config_destroy(c); }
};
struct ChannelDeleter {
    void operator()(ssb_channel* c) const { ssb_channel_destroy(c); }
};
struct ResultDeleter {
    void operator()(ssb_result* r) const { ssb_result_destroy(r); }
};
using ConfigPtr = std::unique_ptr<ssb_config, ConfigDeleter>;
using ChannelPtr = std::unique_ptr<ssb_channel, ChannelDeleter>;
using ResultPtr = std::unique_ptr<ssb_result, ResultDeleter>;

struct FreedString {
    char* s = nullptr;
    ~FreedString() { ssb_string_free(s); }
};

[[noreturn]] void die(const char* where) {
    std::fprintf(stderr, "error: %s: %s\n", where, ssb_last_error());
    std::exit(1);
}

// Common options shared by every subcommand; applied to the config in a fixed
// order: file, then named flags, then raw --set overrides.
struct CommonOpts {
    std::string config_path;
    std::string out_dir;
    std::string schemes;
    std::string eh_mode;
    std::string objective_mode;
    int trials = -1;
    int q = -1;
    std::vector<std::string> sets;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--config", o.config_path, "configuration file (dotted key = value lines)");
    cmd->add_option("--out", o.out_dir, "output directory");
    cmd->add_option("--scheme", o.schemes, "comma-separated schemes: proposed,no_an,zf");
    cmd->add_option("--eh-mode", o.eh_mode, "harvesting convexification: separated|as_printed");
    cmd->add_option("--objective-mode", o.objective_mode, "surrogate objective: gamma|gamma_diff");
    cmd->add_option("--trials", o.trials, "Monte-Carlo trials per sweep point");
    cmd->add_option("--q", o.q, "exponential-block depth");
    cmd->add_option("--set", o.sets, "extra key=value override (repeatable)")
        ->take_all();
}

ConfigPtr make_config(const CommonOpts& o) {
    ssb_config* raw = nullptr;
    if (!o.config_path.empty()) {
        if (ssb_config_load(o.config_path.c_str(), &raw) != SSB_OK) die("loading config");
    } else {
        if (ssb_config_create_default(&raw) != SSB_OK) die("creating config");
    }
    ConfigPtr cfg(raw);
    auto set = [&](const char* key, const std::string& value) {
        if (ssb_config_set(cfg.get(), key, value.c_str()) != SSB_OK) die("setting option");
    };
    if (!o.out_dir.empty()) set("experiment.out_dir", o.out_dir);
    if (!o.schemes.empty()) set("experiment.schemes", o.schemes);
    if (!o.eh_mode.empty()) set("sca.eh_mode", o.eh_mode);
    if (!o.objective_mode.empty()) set("sca.objective_mode", o.objective_mode);
    if (o.trials >= 0) set("experiment.trials", std::to_string(o.trials));
    if (o.q >= 0) set("sca.q", std::to_string(o.q));
    for (const std::string& kv : o.sets) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) {
            std::fprintf(stderr, "error: --set expects key=value, got '%s'\n", kv.c_str());
            std::exit(1);
        }
        if (ssb_config_set(cfg.get(), kv.substr(0, eq).c_str(), kv.substr(eq + 1).c_str()) !=
            SSB_OK)
            die("applying --set");
    }
    return cfg;
}

std::string out_dir_of(const ConfigPtr& cfg) {
    FreedString dir;
    if (ssb_config_get(cfg.get(), "experiment.out_dir", &dir.s) != SSB_OK)
        die("reading experiment.out_dir");
    return dir.s;
}

int run_experiment(const ConfigPtr& cfg, const char* which, std::uint64_t seed) {
    FreedString summary;
    if (ssb_run_experiment(cfg.get(), which, seed, out_dir_of(cfg).c_str(), &summary.s) != SSB_OK)
        die("running experiment");
    std::printf("%s\n", summary.s);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Artificial-noise-aided secure SWIPT beamforming experiments"};
    app.require_subcommand(1);

    CommonOpts run_opts, sweep_opts, k_opts, audit_opts;
    std::uint64_t run_seed = 1, audit_seed = 1;
    std::string audit_scheme = "proposed";

    CLI::App* cmd_run = app.add_subcommand("run", "all schemes on one channel realization");
    add_common(cmd_run, run_opts);
    cmd_run->add_option("--seed", run_seed, "channel realization seed");

    CLI::App* cmd_sweep =
        app.add_subcommand("sweep-power", "secrecy rate vs. transmit power budget");
    add_common(cmd_sweep, sweep_opts);

    CLI::App* cmd_k =
        app.add_subcommand("runtime-vs-k", "wall time and problem size vs. eavesdropper count");
    add_common(cmd_k, k_opts);

    CLI::App* cmd_audit =
        app.add_subcommand("audit", "run one scheme on one seed and print the full document");
    add_common(cmd_audit, audit_opts);
    cmd_audit->add_option("--seed", audit_seed, "channel realization seed");
    cmd_audit->add_option("--run-scheme", audit_scheme, "scheme to audit: proposed|no_an|zf");

    CLI11_PARSE(app, argc, argv);

    if (cmd_run->parsed()) return run_experiment(make_config(run_opts), "single", run_seed);
    if (cmd_sweep->parsed()) return run_experiment(make_config(sweep_opts), "sweep-power", 0);
    if (cmd_k->parsed()) return run_experiment(make_config(k_opts), "runtime-vs-k", 0);

    // audit: one scheme, one realization, full JSON to stdout, no files.
    const ConfigPtr cfg = make_config(audit_opts);
    ssb_channel* ch_raw = nullptr;
    if (ssb_channel_generate(cfg.get(), audit_seed, &ch_raw) != SSB_OK) die("generating channels");
    ChannelPtr ch(ch_raw);
    ssb_result* res_raw = nullptr;
    if (ssb_run_scheme(cfg.get(), ch.get(), audit_scheme.c_str(), &res_raw) != SSB_OK)
        die("running scheme");
    ResultPtr res(res_raw);
    FreedString doc;
    if (ssb_result_to_json(res.get(), &doc.s) != SSB_OK) die("serializing result");
    std::printf("%s\n", doc.s);
    int feasible = 0;
    ssb_result_feasible(res.get(), &feasible);
    return feasible ? 0 : 2;
}
