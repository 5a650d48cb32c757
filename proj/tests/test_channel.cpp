#include <cmath>

#include <doctest.h>

#include "secswipt/channel.hpp"

using namespace secswipt;

namespace {

NetworkConfig defaults_with_k(int k) {
    KeyValueConfig kv = KeyValueConfig::defaults();
    kv.set("network.k", std::to_string(k));
    return kv.network();
}

} // namespace

TEST_CASE("path loss follows the log-distance law") {
    const PropagationParams prop; // 128.1 + 37.6 log10(d_km)
    CHECK(path_loss_linear(1.0, prop) ==
          doctest::Approx(std::pow(10.0, -12.81)).epsilon(1e-12));
    const double d = 0.02; // 20 m
    const double expect_db = 128.1 + 37.6 * std::log10(d);
    CHECK(path_loss_linear(d, prop) ==
          doctest::Approx(std::pow(10.0, -expect_db / 10.0)).epsilon(1e-12));
    // Monotone: farther is weaker.
    CHECK(path_loss_linear(0.060, prop) < path_loss_linear(0.005, prop));
}

TEST_CASE("channel sets have the configured shapes") {
    const NetworkConfig cfg = defaults_with_k(2);
    const ChannelSet ch = generate_channel_set(cfg, 1);
    REQUIRE(static_cast<int>(ch.h_mu.size()) == cfg.m);
    REQUIRE(static_cast<int>(ch.g_er0.size()) == cfg.k);
    REQUIRE(static_cast<int>(ch.g_er.size()) == cfg.k);
    REQUIRE(static_cast<int>(ch.l_mu.size()) == cfg.m);
    CHECK(ch.h_mu[0].size() == cfg.n_m);
    CHECK(ch.h_ir0.size() == cfg.n_m);
    CHECK(ch.g_er0[0].size() == cfg.n_m);
    CHECK(ch.h_ir.size() == cfg.n_f);
    CHECK(ch.g_er[0].size() == cfg.n_f);
    CHECK(ch.l_mu[0].size() == cfg.n_f);
    for (int m = 0; m < cfg.m; ++m) CHECK(ch.h_mu[m].norm() > 0.0);
}

TEST_CASE("same seed reproduces the same draw; different seeds differ") {
    const NetworkConfig cfg = defaults_with_k(2);
    const ChannelSet a = generate_channel_set(cfg, 7);
    const ChannelSet b = generate_channel_set(cfg, 7);
    CHECK((a.h_ir - b.h_ir).norm() == 0.0);
    CHECK((a.h_mu[1] - b.h_mu[1]).norm() == 0.0);
    CHECK((a.g_er[0] - b.g_er[0]).norm() == 0.0);

    const ChannelSet c = generate_channel_set(cfg, 8);
    CHECK((a.h_ir - c.h_ir).norm() > 0.0);
}

TEST_CASE("growing the eavesdropper population preserves existing draws") {
    const ChannelSet small = generate_channel_set(defaults_with_k(2), 3);
    const ChannelSet big = generate_channel_set(defaults_with_k(4), 3);
    for (int m = 0; m < 2; ++m) {
        CHECK((small.h_mu[m] - big.h_mu[m]).norm() == 0.0);
        CHECK((small.l_mu[m] - big.l_mu[m]).norm() == 0.0);
    }
    CHECK((small.h_ir - big.h_ir).norm() == 0.0);
    CHECK((small.h_ir0 - big.h_ir0).norm() == 0.0);
    for (int k = 0; k < 2; ++k) {
        CHECK((small.g_er[k] - big.g_er[k]).norm() == 0.0);
        CHECK((small.g_er0[k] - big.g_er0[k]).norm() == 0.0);
    }
}

TEST_CASE("link scale tracks distance on average") {
    // FBS->ER sits at 5 m, FBS->IR at 20 m: over many seeds the closer link
    // must carry more average power (same fading and shadowing statistics).
    const NetworkConfig cfg = defaults_with_k(1);
    double p_er = 0.0, p_ir = 0.0;
    const int n = 400;
    for (int seed = 1; seed <= n; ++seed) {
        const ChannelSet ch = generate_channel_set(cfg, static_cast<std::uint64_t>(seed));
        p_er += ch.g_er[0].squaredNorm();
        p_ir += ch.h_ir.squaredNorm();
    }
    CHECK(p_er / n > p_ir / n);
    // And the ratio should be in the ballpark of the path-loss ratio
    // (log-normal shadowing keeps this loose).
    const double expect = path_loss_linear(0.005, cfg.prop) / path_loss_linear(0.020, cfg.prop);
    CHECK(p_er / p_ir == doctest::Approx(expect).epsilon(0.5));
}

TEST_CASE("rayleigh entries are unit-variance complex normals") {
    RngStream r(17);
    const int n = 20000;
    const Eigen::VectorXcd v = sample_rayleigh_vector(r, n);
    const double var = v.squaredNorm() / n;
    CHECK(var == doctest::Approx(1.0).epsilon(0.05));
    double mean_re = 0.0;
    for (int i = 0; i < n; ++i) mean_re += v(i).real();
    CHECK(std::abs(mean_re / n) < 0.02);
}
