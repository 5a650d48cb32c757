#ifndef SECSWIPT_METRICS_HPP
#define SECSWIPT_METRICS_HPP

#include <vector>

#include <Eigen/Dense>

#include "secswipt/channel.hpp"
#include "secswipt/config.hpp"

namespace secswipt {

// Candidate transmit strategy: macro beams w_mu[m], femto information beam
// w_ir, femto artificial-noise vector v_an (zero-length or zero vector = no AN).
struct BeamformingSolution {
    std::vector<Eigen::VectorXcd> w_mu;
    Eigen::VectorXcd w_ir;
    Eigen::VectorXcd v_an;
};

// Exact single-point evaluations of the scenario physics. These are the ground
// truth that every convexified subproblem is audited against.
double sinr_mu(const BeamformingSolution& s, const ChannelSet& ch, const NetworkConfig& cfg, int m);
double sinr_ir(const BeamformingSolution& s, const ChannelSet& ch, const NetworkConfig& cfg);
double sinr_er(const BeamformingSolution& s, const ChannelSet& ch, const NetworkConfig& cfg, int k);
double total_power(const BeamformingSolution& s);
double harvested_energy(const BeamformingSolution& s, const ChannelSet& ch, const NetworkConfig& cfg, int k);

// [log2(1 + SINR_ir) - max_k log2(1 + SINR_er,k)]^+ ; the clamp flag reports
// whether the unclamped difference was negative.
double secrecy_rate(const BeamformingSolution& s, const ChannelSet& ch, const NetworkConfig& cfg,
                    bool* clamped = nullptr);

struct ConstraintAudit {
    Eigen::VectorXd sinr_slack;    // SINR_m - Gamma_m, per MU
    double power_slack = 0.0;      // P_th - P_total
    Eigen::VectorXd eh_slack;      // E_k - Q_k, per ER
    double worst_rel_violation = 0.0;
    bool feasible = false;
};

// Checks the original design constraints (MU SINR floors, power budget, EH
// floors). Violations are normalized by the respective threshold.
ConstraintAudit audit_solution(const BeamformingSolution& s, const ChannelSet& ch,
                               const NetworkConfig& cfg, double rel_tol = 1e-6);

} // namespace secswipt

#endif
