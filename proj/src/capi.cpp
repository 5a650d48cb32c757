#include "secswipt/secswipt.h"

#include <cstring>
#include <exception>
#include <string>

#include "secswipt/baselines.hpp"
#include "secswipt/channel.hpp"
#include "secswipt/config.hpp"
#include "secswipt/harness.hpp"
#include "secswipt/json_io.hpp"

using namespace secswipt;

struct ssb_config {
    KeyValueConfig kv;
};
struct ssb_channel {
    ChannelSet ch;
};
struct ssb_result {
    SchemeOutcome outcome;
};

namespace {

thread_local std::string g_last_error;

char* copy_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

ssb_status fail(ssb_status code, const std::string& what) {
    g_last_error = what;
    return code;
}

// Runs the body, translating exceptions into status codes.
template <typename Fn>
ssb_status guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const ConfigError& e) {
        return fail(SSB_ERR_CONFIG, e.what());
    } catch (const std::exception& e) {
        return fail(SSB_ERR_RUNTIME, e.what());
    } catch (...) {
        return fail(SSB_ERR_RUNTIME, "unknown error");
    }
}

} // namespace

extern "C" {

const char* ssb_version(void) { return "1.0.0"; }

const char* ssb_last_error(void) { return g_last_error.c_str(); }

void ssb_string_free(char* s) { delete[] s; }

ssb_status ssb_config_create_default(ssb_config** out) {
    if (!out) return fail(SSB_ERR_INVALID_ARG, "out is null");
    return guarded([&] {
        *out = new ssb_config{KeyValueConfig::defaults()};
        return SSB_OK;
    });
}

ssb_status ssb_config_load(const char* path, ssb_config** out) {
    if (!path || !out) return fail(SSB_ERR_INVALID_ARG, "path or out is null");
    return guarded([&] {
        *out = new ssb_config{KeyValueConfig::from_file(path)};
        return SSB_OK;
    });
}

ssb_status ssb_config_set(ssb_config* cfg, const char* key, const char* value) {
    if (!cfg || !key || !value) return fail(SSB_ERR_INVALID_ARG, "cfg, key or value is null");
    return guarded([&] {
        cfg->kv.set(key, value);
        return SSB_OK;
    });
}

ssb_status ssb_config_get(const ssb_config* cfg, const char* key, char** out_value) {
    if (!cfg || !key || !out_value)
        return fail(SSB_ERR_INVALID_ARG, "cfg, key or out_value is null");
    return guarded([&] {
        *out_value = copy_string(cfg->kv.get(key));
        return SSB_OK;
    });
}

void ssb_config_destroy(ssb_config* cfg) { delete cfg; }

ssb_status ssb_channel_generate(const ssb_config* cfg, uint64_t seed, ssb_channel** out) {
    if (!cfg || !out) return fail(SSB_ERR_INVALID_ARG, "cfg or out is null");
    return guarded([&] {
        *out = new ssb_channel{generate_channel_set(cfg->kv.network(), seed)};
        return SSB_OK;
    });
}

ssb_status ssb_channel_to_json(const ssb_channel* ch, char** out_json) {
    if (!ch || !out_json) return fail(SSB_ERR_INVALID_ARG, "ch or out_json is null");
    return guarded([&] {
        *out_json = copy_string(channel_set_to_json(ch->ch).dump(2));
        return SSB_OK;
    });
}

void ssb_channel_destroy(ssb_channel* ch) { delete ch; }

ssb_status ssb_run_scheme(const ssb_config* cfg, const ssb_channel* ch, const char* scheme,
                          ssb_result** out) {
    if (!cfg || !ch || !scheme || !out)
        return fail(SSB_ERR_INVALID_ARG, "cfg, ch, scheme or out is null");
    return guarded([&] {
        const Scheme s = scheme_from_string(scheme);
        SchemeOutcome oc =
            run_scheme(s, ch->ch, cfg->kv.network(), cfg->kv.sca(), cfg->kv.solver());
        *out = new ssb_result{std::move(oc)};
        return SSB_OK;
    });
}

ssb_status ssb_result_feasible(const ssb_result* r, int* out) {
    if (!r || !out) return fail(SSB_ERR_INVALID_ARG, "r or out is null");
    *out = r->outcome.feasible ? 1 : 0;
    return SSB_OK;
}

ssb_status ssb_result_secrecy_rate(const ssb_result* r, double* out) {
    if (!r || !out) return fail(SSB_ERR_INVALID_ARG, "r or out is null");
    *out = r->outcome.secrecy_rate;
    return SSB_OK;
}

ssb_status ssb_result_iterations(const ssb_result* r, int* out) {
    if (!r || !out) return fail(SSB_ERR_INVALID_ARG, "r or out is null");
    *out = r->outcome.iterations;
    return SSB_OK;
}

ssb_status ssb_result_worst_violation(const ssb_result* r, double* out) {
    if (!r || !out) return fail(SSB_ERR_INVALID_ARG, "r or out is null");
    *out = r->outcome.worst_violation;
    return SSB_OK;
}

ssb_status ssb_result_message(const ssb_result* r, char** out_message) {
    if (!r || !out_message) return fail(SSB_ERR_INVALID_ARG, "r or out_message is null");
    return guarded([&] {
        *out_message = copy_string(r->outcome.message);
        return SSB_OK;
    });
}

ssb_status ssb_result_to_json(const ssb_result* r, char** out_json) {
    if (!r || !out_json) return fail(SSB_ERR_INVALID_ARG, "r or out_json is null");
    return guarded([&] {
        *out_json = copy_string(outcome_to_json(r->outcome).dump(2));
        return SSB_OK;
    });
}

void ssb_result_destroy(ssb_result* r) { delete r; }

ssb_status ssb_run_experiment(const ssb_config* cfg, const char* which, uint64_t seed,
                              const char* out_dir, char** out_summary_json) {
    if (!cfg || !which || !out_dir)
        return fail(SSB_ERR_INVALID_ARG, "cfg, which or out_dir is null");
    return guarded([&] {
        const std::string name = which;
        ExperimentResult result;
        if (name == "single") {
            result = run_single(cfg->kv, seed);
        } else if (name == "sweep-power") {
            result = run_power_sweep(cfg->kv);
        } else if (name == "runtime-vs-k") {
            result = run_k_sweep(cfg->kv);
        } else {
            return fail(SSB_ERR_INVALID_ARG, "unknown experiment '" + name +
                                                 "' (expected single|sweep-power|runtime-vs-k)");
        }
        write_outputs(out_dir, result);
        if (out_summary_json) *out_summary_json = copy_string(result.summary.dump(2));
        return SSB_OK;
    });
}

} // extern "C"
