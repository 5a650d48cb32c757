#include <cmath>

#include <doctest.h>

#include "secswipt/config.hpp"
#include "secswipt/socp_solver.hpp"

using namespace secswipt;

TEST_CASE("defaults expose the documented scenario") {
    const KeyValueConfig kv = KeyValueConfig::defaults();
    const NetworkConfig cfg = kv.network();
    CHECK(cfg.n_m == 10);
    CHECK(cfg.n_f == 4);
    CHECK(cfg.m == 2);
    CHECK(cfg.k == 2);
    REQUIRE(cfg.gamma_mu.size() == 2);
    CHECK(cfg.gamma_mu(0) == doctest::Approx(0.1).epsilon(1e-12));       // -10 dB
    CHECK(cfg.p_th == doctest::Approx(10.0).epsilon(1e-12));             // 40 dBm
    REQUIRE(cfg.q_eh.size() == 2);
    CHECK(cfg.q_eh(1) == doctest::Approx(std::pow(10.0, -1.5)).epsilon(1e-12)); // 15 dBm
    CHECK(cfg.xi == doctest::Approx(0.6));
    CHECK(cfg.sigma2_ir == doctest::Approx(1e-13).epsilon(1e-12));       // -100 dBm
    CHECK(cfg.sigma2_mu(0) == doctest::Approx(1e-13).epsilon(1e-12));
    CHECK(cfg.d_mbs_m == doctest::Approx(60.0));
    CHECK(cfg.d_fbs_er_m == doctest::Approx(5.0));
    CHECK(cfg.prop.pathloss_intercept_db == doctest::Approx(128.1));
    CHECK(cfg.prop.antenna_gain_db == doctest::Approx(15.0));
    cfg.validate(); // must not throw
}

TEST_CASE("dB helpers convert exactly") {
    CHECK(db_to_linear(-10.0) == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(dbm_to_watts(40.0) == doctest::Approx(10.0).epsilon(1e-14));
    CHECK(dbm_to_watts(-100.0) == doctest::Approx(1e-13).epsilon(1e-14));
    CHECK(watts_to_dbm(dbm_to_watts(17.5)) == doctest::Approx(17.5).epsilon(1e-12));
}

TEST_CASE("file-format parsing: comments, blanks, whitespace") {
    const KeyValueConfig kv = KeyValueConfig::from_string(
        "# comment line\n"
        "network.k = 3\n"
        "\n"
        "   sca.q=7   \n"
        "experiment.schemes = proposed,zf\n");
    CHECK(kv.get_int("network.k") == 3);
    CHECK(kv.get_int("sca.q") == 7);
    const auto schemes = kv.get_string_list("experiment.schemes");
    REQUIRE(schemes.size() == 2);
    CHECK(schemes[0] == "proposed");
    CHECK(schemes[1] == "zf");
    // Unset keys fall back to defaults.
    CHECK(kv.get_int("network.n_m") == 10);
}

TEST_CASE("unknown keys and malformed values are rejected") {
    KeyValueConfig kv = KeyValueConfig::defaults();
    CHECK_THROWS_AS(kv.set("network.bogus", "1"), ConfigError);
    CHECK_THROWS_AS((void)KeyValueConfig::from_string("typo.key = 1\n"), ConfigError);
    kv.set("network.k", "oops");
    CHECK_THROWS_AS((void)kv.get_int("network.k"), ConfigError);
    kv.set("network.k", "2");
    CHECK(kv.get_int("network.k") == 2);
}

TEST_CASE("typed views validate their ranges") {
    KeyValueConfig kv = KeyValueConfig::defaults();
    kv.set("network.m", "0");
    CHECK_THROWS_AS((void)kv.network().validate(), ConfigError);
    kv.set("network.m", "2");
    kv.set("sca.q", "0");
    CHECK_THROWS_AS((void)kv.sca().validate(), ConfigError);
    kv.set("sca.q", "6");
    kv.set("sca.eh_mode", "nonsense");
    CHECK_THROWS_AS((void)kv.sca(), ConfigError);
}

TEST_CASE("per-user vectors broadcast from the scalar dB keys") {
    KeyValueConfig kv = KeyValueConfig::defaults();
    kv.set("network.k", "4");
    const NetworkConfig cfg = kv.network();
    REQUIRE(cfg.q_eh.size() == 4);
    for (int k = 0; k < 4; ++k) CHECK(cfg.q_eh(k) == doctest::Approx(cfg.q_eh(0)));
    REQUIRE(cfg.sigma2_er.size() == 4);
}

TEST_CASE("echo round-trips through the parser") {
    KeyValueConfig kv = KeyValueConfig::defaults();
    kv.set("network.k", "3");
    kv.set("sca.eps", "5e-5");
    const KeyValueConfig back = KeyValueConfig::from_string(kv.to_string());
    CHECK(back.get("network.k") == "3");
    CHECK(back.get_double("sca.eps") == doctest::Approx(5e-5));
    CHECK(back.to_string() == kv.to_string());
}

TEST_CASE("solver settings come from the solver.* keys") {
    KeyValueConfig kv = KeyValueConfig::defaults();
    kv.set("solver.feas_tol", "1e-7");
    kv.set("solver.max_iters", "123");
    const SolverSettings st = kv.solver();
    CHECK(st.feas_tol == doctest::Approx(1e-7));
    CHECK(st.max_iters == 123);
    st.validate();
}
