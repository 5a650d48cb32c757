#ifndef SECSWIPT_CHANNEL_HPP
#define SECSWIPT_CHANNEL_HPP

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "secswipt/config.hpp"
#include "secswipt/rng.hpp"

namespace secswipt {

// One fading realization of every link in the scenario.
// Naming follows the network roles:
//   h_mu[m]   MBS -> macro user m          (C^{n_m})
//   h_ir0     MBS -> information receiver  (C^{n_m})
//   g_er0[k]  MBS -> energy receiver k     (C^{n_m})
//   h_ir      FBS -> information receiver  (C^{n_f})
//   g_er[k]   FBS -> energy receiver k     (C^{n_f})
//   l_mu[m]   FBS -> macro user m          (C^{n_f})
struct ChannelSet {
    std::vector<Eigen::VectorXcd> h_mu;
    Eigen::VectorXcd h_ir0;
    std::vector<Eigen::VectorXcd> g_er0;
    Eigen::VectorXcd h_ir;
    std::vector<Eigen::VectorXcd> g_er;
    std::vector<Eigen::VectorXcd> l_mu;
};

// Distance-based power attenuation, d in km.
double path_loss_linear(double d_km, const PropagationParams& prop);

// i.i.d. CN(0,1) entries (unit-variance Rayleigh fading).
Eigen::VectorXcd sample_rayleigh_vector(RngStream& stream, int n);

// Full small+large scale draw for one link: sqrt(beta(d)) * shadowing * gain * rayleigh.
// Shadowing is a single log-normal amplitude scalar per link.
Eigen::VectorXcd sample_link(RngStream& stream, int n, double d_m, const PropagationParams& prop);

// All links for one seed. Each link group gets its own split stream, so e.g.
// changing k leaves the macro-user draws untouched.
ChannelSet generate_channel_set(const NetworkConfig& cfg, std::uint64_t seed);

} // namespace secswipt

#endif
