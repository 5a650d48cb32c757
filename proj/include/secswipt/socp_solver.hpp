#ifndef SECSWIPT_SOCP_SOLVER_HPP
#define SECSWIPT_SOCP_SOLVER_HPP

#include <string>

#include <Eigen/Dense>

#include "secswipt/cone_program.hpp"

namespace secswipt {

enum class SolveStatus {
    optimal,
    primal_infeasible,
    dual_infeasible,
    max_iters,
    numerical_failure,
};

const char* to_string(SolveStatus s);

struct SolverSettings {
    double feas_tol = 1e-8;     // primal/dual residual tolerance
    double gap_tol = 1e-8;      // absolute or relative duality-gap tolerance
    int max_iters = 200;
    double static_reg = 1e-8;   // quasi-definite KKT regularization
    int refine_steps = 3;       // iterative-refinement steps per KKT solve
    bool equilibrate = true;    // Ruiz row/column scaling
    int ruiz_passes = 10;
    double step_scale = 0.99;   // fraction of the distance to the cone boundary
    bool verbose = false;

    void validate() const;
};

struct SolveResult {
    SolveStatus status = SolveStatus::numerical_failure;
    Eigen::VectorXd x, s, z;    // primal/slack/dual; certificates when infeasible
    double primal_obj = 0.0;
    double dual_obj = 0.0;
    double pres = 0.0;          // ||Ax + s - b|| / (1 + ||b||)
    double dres = 0.0;          // ||A'z + c|| / (1 + ||c||)
    double gap_abs = 0.0;
    double gap_rel = 0.0;
    int iters = 0;
};

// Primal-dual interior-point method on the homogeneous self-dual embedding,
// Nesterov-Todd scaled predictor-corrector steps with Mehrotra centering.
SolveResult solve_socp(const ConicProgram& prog, const SolverSettings& settings = SolverSettings());

struct KktResiduals {
    double primal = 0.0; // constraint violation incl. cone distance, scale-normalized
    double dual = 0.0;   // stationarity violation incl. dual-cone distance
    double gap = 0.0;    // |c'x + b'z| / (1 + |c'x| + |b'z|)
};

// Standalone optimality check for a candidate primal/dual pair, in the exact
// (unscaled) problem data.
KktResiduals kkt_residuals(const ConicProgram& prog, const Eigen::VectorXd& x,
                           const Eigen::VectorXd& z);

} // namespace secswipt

#endif
