#include "secswipt/channel.hpp"

#include <cmath>

namespace secswipt {

double path_loss_linear(double d_km, const PropagationParams& prop)
{
    const double loss_db = prop.pathloss_intercept_db + prop.pathloss_slope_db * std::log10(d_km);
    return std::pow(10.0, -loss_db / 10.0);
}

Eigen::VectorXcd sample_rayleigh_vector(RngStream& stream, int n)
{
    Eigen::VectorXcd v(n);
    const double scale = 1.0 / std::sqrt(2.0); // CN(0,1): each part has variance 1/2
    for (int i = 0; i < n; ++i) {
        const double re = stream.next_gaussian() * scale;
        const double im = stream.next_gaussian() * scale;
        v(i) = std::complex<double>(re, im);
    }
    return v;
}

Eigen::VectorXcd sample_link(RngStream& stream, int n, double d_m, const PropagationParams& prop)
{
    const double beta = path_loss_linear(d_m / 1000.0, prop);
    const double shadow_db = prop.shadow_sigma_db * stream.next_gaussian();
    const double shadow_amp = std::pow(10.0, shadow_db / 20.0);
    const double gain_amp = std::pow(10.0, prop.antenna_gain_db / 20.0);
    return std::sqrt(beta) * shadow_amp * gain_amp * sample_rayleigh_vector(stream, n);
}

ChannelSet generate_channel_set(const NetworkConfig& cfg, std::uint64_t seed)
{
    RngStream root(seed);
    ChannelSet ch;

    RngStream s_hmu = root.split("mbs_to_mu");
    ch.h_mu.reserve(cfg.m);
    for (int m = 0; m < cfg.m; ++m) {
        RngStream s = s_hmu.split(static_cast<std::uint64_t>(m));
        ch.h_mu.push_back(sample_link(s, cfg.n_m, cfg.d_mbs_m, cfg.prop));
    }

    {
        RngStream s = root.split("mbs_to_ir");
        ch.h_ir0 = sample_link(s, cfg.n_m, cfg.d_mbs_m, cfg.prop);
    }

    RngStream s_ger0 = root.split("mbs_to_er");
    ch.g_er0.reserve(cfg.k);
    for (int k = 0; k < cfg.k; ++k) {
        RngStream s = s_ger0.split(static_cast<std::uint64_t>(k));
        ch.g_er0.push_back(sample_link(s, cfg.n_m, cfg.d_mbs_m, cfg.prop));
    }

    {
        RngStream s = root.split("fbs_to_ir");
        ch.h_ir = sample_link(s, cfg.n_f, cfg.d_fbs_ir_m, cfg.prop);
    }

    RngStream s_ger = root.split("fbs_to_er");
    ch.g_er.reserve(cfg.k);
    for (int k = 0; k < cfg.k; ++k) {
        RngStream s = s_ger.split(static_cast<std::uint64_t>(k));
        ch.g_er.push_back(sample_link(s, cfg.n_f, cfg.d_fbs_er_m, cfg.prop));
    }

    RngStream s_lmu = root.split("fbs_to_mu");
    ch.l_mu.reserve(cfg.m);
    for (int m = 0; m < cfg.m; ++m) {
        RngStream s = s_lmu.split(static_cast<std::uint64_t>(m));
        ch.l_mu.push_back(sample_link(s, cfg.n_f, cfg.d_fbs_mu_m, cfg.prop));
    }

    return ch;
}

} // namespace secswipt
