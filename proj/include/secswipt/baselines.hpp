#ifndef SECSWIPT_BASELINES_HPP
#define SECSWIPT_BASELINES_HPP

#include <string>

#include "secswipt/channel.hpp"
#include "secswipt/config.hpp"
#include "secswipt/metrics.hpp"
#include "secswipt/sca.hpp"
#include "secswipt/socp_solver.hpp"

namespace secswipt {

// The transmit strategies compared by the experiment harness.
//   proposed : AN-aided secrecy optimization (iterative convexification)
//   no_an    : same optimization with the artificial-noise vector removed
//   zf       : closed-form zero-forcing split (no optimization)
enum class Scheme { proposed, no_an, zf };

const char* to_string(Scheme s);
Scheme scheme_from_string(const std::string& name); // throws ConfigError

// Uniform outcome shape so experiments can tabulate every scheme identically.
struct SchemeOutcome {
    Scheme scheme = Scheme::proposed;
    bool feasible = false;      // design produced and audited against all floors
    double secrecy_rate = 0.0;  // exact clamped rate; 0 when infeasible
    int iterations = 0;         // outer refinement iterations (0 for closed form)
    double worst_violation = 0.0;
    BeamformingSolution solution;
    ConstraintAudit audit;
    std::string message;        // failure reason when infeasible
    ScaResult sca;              // full trace, populated for the iterative schemes
};

// Zero-forcing baseline. Each macro beam lives in the null space of the other
// macro users and of the cross link into the femto receiver, so macro-tier
// interference vanishes and each beam is powered exactly to its SINR floor.
// The femto information beam is the receiver channel projected into the null
// space of every eavesdropper and macro user (requires n_f > k + m), so the
// eavesdroppers intercept nothing; the AN vector is confined to the null space
// of the receiver and macro users and sized so the worst harvester still meets
// its floor. The information beam takes whatever budget remains.
SchemeOutcome zf_scheme(const ChannelSet& ch, const NetworkConfig& cfg);

// Runs one scheme end to end on a fixed channel realization.
SchemeOutcome run_scheme(Scheme scheme, const ChannelSet& ch, const NetworkConfig& cfg,
                         const ScaConfig& scfg, const SolverSettings& solver);

} // namespace secswipt

#endif
