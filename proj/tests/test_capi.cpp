// Exercises the shared-library C interface end to end: handle lifecycles,
// error codes, thread-local error detail, and the experiment driver.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <string>

#include "secswipt/secswipt.h"

namespace {

// Takes ownership of a char* produced by the API and frees it on scope exit.
struct OwnedString {
    char* s = nullptr;
    ~OwnedString() { ssb_string_free(s); }
    std::string str() const { return s ? std::string(s) : std::string(); }
};

} // namespace

TEST_CASE("version string is present") {
    const char* v = ssb_version();
    REQUIRE(v != nullptr);
    CHECK(std::strlen(v) > 0);
}

TEST_CASE("config handles create, mutate, and report errors") {
    ssb_config* cfg = nullptr;
    REQUIRE(ssb_config_create_default(&cfg) == SSB_OK);
    REQUIRE(cfg != nullptr);

    OwnedString got;
    REQUIRE(ssb_config_get(cfg, "network.k", &got.s) == SSB_OK);
    CHECK(got.str() == "2");

    REQUIRE(ssb_config_set(cfg, "network.k", "3") == SSB_OK);
    OwnedString after;
    REQUIRE(ssb_config_get(cfg, "network.k", &after.s) == SSB_OK);
    CHECK(after.str() == "3");

    // Unknown keys are rejected and leave a readable message behind.
    CHECK(ssb_config_set(cfg, "network.bogus", "1") == SSB_ERR_CONFIG);
    CHECK(std::strlen(ssb_last_error()) > 0);
    // Malformed values are stored but rejected the moment they are used.
    REQUIRE(ssb_config_set(cfg, "network.m", "not_a_number") == SSB_OK);
    ssb_channel* ch = nullptr;
    CHECK(ssb_channel_generate(cfg, 1, &ch) == SSB_ERR_CONFIG);
    CHECK(ch == nullptr);

    ssb_config_destroy(cfg);
}

TEST_CASE("null arguments are rejected with SSB_ERR_INVALID_ARG") {
    CHECK(ssb_config_create_default(nullptr) == SSB_ERR_INVALID_ARG);
    CHECK(ssb_config_set(nullptr, "network.k", "1") == SSB_ERR_INVALID_ARG);
    ssb_config* cfg = nullptr;
    REQUIRE(ssb_config_create_default(&cfg) == SSB_OK);
    CHECK(ssb_config_set(cfg, nullptr, "1") == SSB_ERR_INVALID_ARG);
    CHECK(ssb_channel_generate(nullptr, 1, nullptr) == SSB_ERR_INVALID_ARG);
    ssb_channel* ch = nullptr;
    REQUIRE(ssb_channel_generate(cfg, 1, &ch) == SSB_OK);
    CHECK(ssb_run_scheme(cfg, ch, "proposed", nullptr) == SSB_ERR_INVALID_ARG);
    ssb_result* r = nullptr;
    CHECK(ssb_run_scheme(cfg, ch, "not_a_scheme", &r) == SSB_ERR_CONFIG);
    CHECK(r == nullptr);
    ssb_channel_destroy(ch);
    ssb_config_destroy(cfg);
    // Destroy tolerates nulls.
    ssb_config_destroy(nullptr);
    ssb_channel_destroy(nullptr);
    ssb_result_destroy(nullptr);
}

TEST_CASE("channel generation is deterministic and serializes") {
    ssb_config* cfg = nullptr;
    REQUIRE(ssb_config_create_default(&cfg) == SSB_OK);
    ssb_channel* a = nullptr;
    ssb_channel* b = nullptr;
    REQUIRE(ssb_channel_generate(cfg, 7, &a) == SSB_OK);
    REQUIRE(ssb_channel_generate(cfg, 7, &b) == SSB_OK);
    OwnedString ja, jb;
    REQUIRE(ssb_channel_to_json(a, &ja.s) == SSB_OK);
    REQUIRE(ssb_channel_to_json(b, &jb.s) == SSB_OK);
    CHECK(ja.str() == jb.str());
    CHECK(ja.str().find("h_mu") != std::string::npos);
    CHECK(ja.str().find("g_er") != std::string::npos);
    ssb_channel_destroy(a);
    ssb_channel_destroy(b);
    ssb_config_destroy(cfg);
}

TEST_CASE("schemes run through the C interface") {
    ssb_config* cfg = nullptr;
    REQUIRE(ssb_config_create_default(&cfg) == SSB_OK);
    ssb_channel* ch = nullptr;
    REQUIRE(ssb_channel_generate(cfg, 4, &ch) == SSB_OK);

    ssb_result* prop = nullptr;
    REQUIRE(ssb_run_scheme(cfg, ch, "proposed", &prop) == SSB_OK);
    int feasible = 0;
    REQUIRE(ssb_result_feasible(prop, &feasible) == SSB_OK);
    CHECK(feasible == 1);
    double rate = 0.0;
    REQUIRE(ssb_result_secrecy_rate(prop, &rate) == SSB_OK);
    CHECK(rate > 0.0);
    int iters = 0;
    REQUIRE(ssb_result_iterations(prop, &iters) == SSB_OK);
    CHECK(iters >= 1);
    CHECK(iters <= 30);
    double viol = -1.0;
    REQUIRE(ssb_result_worst_violation(prop, &viol) == SSB_OK);
    CHECK(viol <= 1e-6);
    OwnedString doc;
    REQUIRE(ssb_result_to_json(prop, &doc.s) == SSB_OK);
    CHECK(doc.str().find("\"trace\"") != std::string::npos);
    ssb_result_destroy(prop);

    // Zero-forcing cannot null k+m directions with the default antenna count;
    // the failure comes back as an infeasible result, not an error code.
    ssb_result* zf = nullptr;
    REQUIRE(ssb_run_scheme(cfg, ch, "zf", &zf) == SSB_OK);
    REQUIRE(ssb_result_feasible(zf, &feasible) == SSB_OK);
    CHECK(feasible == 0);
    REQUIRE(ssb_result_secrecy_rate(zf, &rate) == SSB_OK);
    CHECK(rate == 0.0);
    OwnedString msg;
    REQUIRE(ssb_result_message(zf, &msg.s) == SSB_OK);
    CHECK_FALSE(msg.str().empty());
    ssb_result_destroy(zf);

    ssb_channel_destroy(ch);
    ssb_config_destroy(cfg);
}

TEST_CASE("the experiment driver writes its output files") {
    namespace fs = std::filesystem;
    ssb_config* cfg = nullptr;
    REQUIRE(ssb_config_create_default(&cfg) == SSB_OK);

    const fs::path dir = fs::temp_directory_path() / "secswipt_capi_test";
    fs::remove_all(dir);
    OwnedString summary;
    REQUIRE(ssb_run_experiment(cfg, "single", 4, dir.string().c_str(), &summary.s) == SSB_OK);
    CHECK(fs::exists(dir / "results.csv"));
    CHECK(fs::exists(dir / "timings.csv"));
    CHECK(fs::exists(dir / "summary.json"));
    CHECK(summary.str().find("\"experiment\"") != std::string::npos);

    CHECK(ssb_run_experiment(cfg, "not_an_experiment", 0, dir.string().c_str(), nullptr) ==
          SSB_ERR_INVALID_ARG);

    fs::remove_all(dir);
    ssb_config_destroy(cfg);
}
