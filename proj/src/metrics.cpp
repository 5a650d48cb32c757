#include "secswipt/metrics.hpp"

#include <cmath>

namespace secswipt {
namespace {

double abs2(const std::complex<double>& z) { return std::norm(z); }

// |a^H w|^2, with an all-zero result when w is absent (e.g. no AN).
double gain2(const Eigen::VectorXcd& a, const Eigen::VectorXcd& w)
{
    if (w.size() == 0) return 0.0;
    return abs2(a.dot(w)); // Eigen's dot conjugates the first argument
}

} // namespace

double sinr_mu(const BeamformingSolution& s, const ChannelSet& ch, const NetworkConfig& cfg, int m)
{
    const double sig = gain2(ch.h_mu[m], s.w_mu[m]);
    double den = cfg.sigma2_mu(m);
    for (int i = 0; i < cfg.m; ++i)
        if (i != m) den += gain2(ch.h_mu[m], s.w_mu[i]);
    den += gain2(ch.l_mu[m], s.w_ir);
    den += gain2(ch.l_mu[m], s.v_an);
    return sig / den;
}

double sinr_ir(const BeamformingSolution& s, const ChannelSet& ch, const NetworkConfig& cfg)
{
    const double sig = gain2(ch.h_ir, s.w_ir);
    double den = cfg.sigma2_ir;
    for (int i = 0; i < cfg.m; ++i) den += gain2(ch.h_ir0, s.w_mu[i]);
    den += gain2(ch.h_ir, s.v_an);
    return sig / den;
}

double sinr_er(const BeamformingSolution& s, const ChannelSet& ch, const NetworkConfig& cfg, int k)
{
    const double sig = gain2(ch.g_er[k], s.w_ir);
    double den = cfg.sigma2_er(k);
    for (int i = 0; i < cfg.m; ++i) den += gain2(ch.g_er0[k], s.w_mu[i]);
    den += gain2(ch.g_er[k], s.v_an);
    return sig / den;
}

double total_power(const BeamformingSolution& s)
{
    double p = 0.0;
    for (const auto& w : s.w_mu) p += w.squaredNorm();
    p += s.w_ir.squaredNorm();
    if (s.v_an.size() > 0) p += s.v_an.squaredNorm();
    return p;
}

double harvested_energy(const BeamformingSolution& s, const ChannelSet& ch,
                        const NetworkConfig& cfg, int k)
{
    // Only the femtocell signals are credited to the harvester; the macro-tier
    // contribution is excluded by design.
    return cfg.xi * (gain2(ch.g_er[k], s.w_ir) + gain2(ch.g_er[k], s.v_an) + cfg.sigma2_er(k));
}

double secrecy_rate(const BeamformingSolution& s, const ChannelSet& ch, const NetworkConfig& cfg,
                    bool* clamped)
{
    const double rate_ir = std::log2(1.0 + sinr_ir(s, ch, cfg));
    double rate_ev = 0.0;
    for (int k = 0; k < cfg.k; ++k)
        rate_ev = std::max(rate_ev, std::log2(1.0 + sinr_er(s, ch, cfg, k)));
    const double diff = rate_ir - rate_ev;
    if (clamped) *clamped = diff < 0.0;
    return std::max(0.0, diff);
}

ConstraintAudit audit_solution(const BeamformingSolution& s, const ChannelSet& ch,
                               const NetworkConfig& cfg, double rel_tol)
{
    ConstraintAudit a;
    a.sinr_slack.resize(cfg.m);
    a.eh_slack.resize(cfg.k);

    double worst = 0.0;
    for (int m = 0; m < cfg.m; ++m) {
        a.sinr_slack(m) = sinr_mu(s, ch, cfg, m) - cfg.gamma_mu(m);
        worst = std::max(worst, -a.sinr_slack(m) / cfg.gamma_mu(m));
    }
    a.power_slack = cfg.p_th - total_power(s);
    worst = std::max(worst, -a.power_slack / cfg.p_th);
    for (int k = 0; k < cfg.k; ++k) {
        a.eh_slack(k) = harvested_energy(s, ch, cfg, k) - cfg.q_eh(k);
        worst = std::max(worst, -a.eh_slack(k) / cfg.q_eh(k));
    }
    a.worst_rel_violation = worst;
    a.feasible = worst <= rel_tol;
    return a;
}

} // namespace secswipt
