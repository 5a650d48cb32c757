#ifndef SECSWIPT_SCA_HPP
#define SECSWIPT_SCA_HPP

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "secswipt/channel.hpp"
#include "secswipt/cone_program.hpp"
#include "secswipt/config.hpp"
#include "secswipt/metrics.hpp"
#include "secswipt/socp_solver.hpp"

namespace secswipt {

// Point the nonconvex terms are linearized around. The vectors are the
// previous iterate's beams; mu/eta are the information-link amplitude and
// interference-plus-noise power; gamma_er_tilde the worst eavesdropper SINR.
struct ExpansionPoint {
    std::vector<Eigen::VectorXcd> w_mu;
    Eigen::VectorXcd w_ir;
    Eigen::VectorXcd v_an; // size 0 when AN is disabled
    double mu_ir = 0.0;
    double eta_ir = 0.0;   // must stay > 0
    double gamma_er = 0.0;
};

// Index map of the real-valued subproblem variables. Complex vectors are
// lifted as [all real parts | all imaginary parts] at the given offset.
struct SubproblemLayout {
    int m = 0, k = 0, n_m = 0, n_f = 0, q = 0;
    bool include_an = true;

    std::vector<int> w_mu; // per-MU lift offsets, each 2*n_m wide
    int w_ir = -1;         // 2*n_f wide
    int v_an = -1;         // 2*n_f wide, -1 when AN disabled
    int gamma = -1;
    int gamma_ir = -1;
    int gamma_er = -1;
    int s_ir = -1;
    int mu_ir = -1;
    int eta_ir = -1;
    int c = -1;
    int s_mu = -1;  // m consecutive
    int s_an = -1;  // -1 when AN disabled
    int t_er = -1;  // k consecutive
    int t_er0 = -1; // k*m consecutive, index k*m_count + m
    int t_an = -1;  // k consecutive, -1 when AN disabled
    int tau = -1;   // q+4 consecutive
    int total = 0;

    static SubproblemLayout make(int m, int k, int n_m, int n_f, int q, bool include_an);
    static int predict_total(int m, int k, int n_m, int n_f, int q, bool include_an);
    std::string describe() const; // human-readable variable map
};

// --- Real-lift plumbing -----------------------------------------------------

// Re(a^H w) / Im(a^H w) as linear forms over the lift of w at `offset`.
LinExpr re_inner(const Eigen::VectorXcd& a, int offset);
LinExpr im_inner(const Eigen::VectorXcd& a, int offset);

// --- Linearization building blocks ------------------------------------------

// Affine global lower bound of |a^H w|^2, tight at w_tilde:
//   2 Re{w_tilde^H A w} - w_tilde^H A w_tilde,  A = a a^H.
LinExpr taylor_quadratic_minorant(const Eigen::VectorXcd& a, const Eigen::VectorXcd& w_tilde,
                                  int offset);

// Affine global lower bound of mu^2/eta on eta > 0, tight at (mu_t, eta_t):
//   2 (mu_t/eta_t) mu - (mu_t/eta_t)^2 eta.
LinExpr quad_over_lin_minorant(double mu_t, double eta_t, int mu_index, int eta_index);

// z^2 <= x*y (x, y >= 0) as the cone ||[2z, x - y]|| <= x + y.
void add_lemma1(ProgramBuilder& pb, const LinExpr& z, const LinExpr& x, const LinExpr& y,
                const std::string& label);

// Conic chain enforcing 1 + gamma_ir >= 2^c (approximately; accuracy grows
// with q). Uses variables tau_offset .. tau_offset+q+3. An optional vector of
// q+4 reference magnitudes balances the squaring cones numerically.
void add_exp_soc_block(ProgramBuilder& pb, int c_index, int gamma_ir_index, int tau_offset,
                       int q, const std::string& label,
                       const Eigen::VectorXd& tau_ref = Eigen::VectorXd());

// --- Subproblem assembly ----------------------------------------------------

struct Subproblem {
    ConicProgram prog;
    SubproblemLayout layout;
    // Per-variable magnitudes used to column-scale the program; the solver
    // works on x_hat and the physical values are x = var_scale .* x_hat.
    Eigen::VectorXd var_scale;

    Eigen::VectorXd unscale(const Eigen::VectorXd& x_hat) const {
        return var_scale.cwiseProduct(x_hat);
    }
};

// Expected magnitude of every subproblem variable at the expansion point
// (positive, floored). Used both as hyperbolic-cone references and as column
// scales, so the solver sees O(1) data even when SINRs span many decades.
Eigen::VectorXd reference_magnitudes(const ChannelSet& ch, const NetworkConfig& cfg,
                                     const ExpansionPoint& pt, const ScaConfig& scfg,
                                     const SubproblemLayout& layout);

Subproblem build_subproblem(const ChannelSet& ch, const NetworkConfig& cfg,
                            const ExpansionPoint& pt, const ScaConfig& scfg, bool include_an);

// Pulls the beamforming vectors out of a subproblem optimizer.
BeamformingSolution extract_solution(const Eigen::VectorXd& x, const SubproblemLayout& layout);

// --- Phase-1 initialization ---------------------------------------------------

struct InitResult {
    bool feasible = false;
    ExpansionPoint point;
    BeamformingSolution solution;
    int rounds = 0;
    std::string reason; // set when infeasible
};

InitResult initialize(const ChannelSet& ch, const NetworkConfig& cfg, const ScaConfig& scfg,
                      const SolverSettings& solver, bool include_an);

// --- Outer loop ----------------------------------------------------------------

enum class ScaStatus { converged, max_iters, solver_failure, init_infeasible };
const char* to_string(ScaStatus s);

struct ScaIteration {
    double objective = 0.0;     // subproblem objective value
    double secrecy_rate = 0.0;  // exact rate of the extracted beams (unclamped)
    int solver_iters = 0;
    SolveStatus solver_status = SolveStatus::numerical_failure;
    ExpansionPoint point;       // expansion point this iteration was built from
};

struct ScaResult {
    ScaStatus status = ScaStatus::init_infeasible;
    BeamformingSolution solution;
    double secrecy_rate = 0.0; // audited, clamped at zero
    bool secrecy_clamped = false;
    ConstraintAudit audit;
    std::vector<ScaIteration> iterations;
    bool monotone_anomaly = false; // objective dropped beyond 10x solver tolerance
    std::string message;
};

ScaResult run_sca(const ChannelSet& ch, const NetworkConfig& cfg, const ScaConfig& scfg,
                  const SolverSettings& solver, bool include_an);

} // namespace secswipt

#endif
