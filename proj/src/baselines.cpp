#include "secswipt/baselines.hpp"

#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SVD>

namespace secswipt {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;

const char* to_string(Scheme s) {
    switch (s) {
        case Scheme::proposed: return "proposed";
        case Scheme::no_an: return "no_an";
        case Scheme::zf: return "zf";
    }
    return "unknown";
}

Scheme scheme_from_string(const std::string& name) {
    if (name == "proposed") return Scheme::proposed;
    if (name == "no_an") return Scheme::no_an;
    if (name == "zf") return Scheme::zf;
    throw ConfigError("unknown scheme '" + name + "' (expected proposed|no_an|zf)");
}

namespace {

// Orthonormal basis of { x : rows[i]^H x = 0 for all i }. Empty (dim x 0)
// when the rows already span the whole space.
MatrixXcd null_basis(const std::vector<VectorXcd>& rows, int dim) {
    if (rows.empty()) return MatrixXcd::Identity(dim, dim);
    MatrixXcd a(static_cast<int>(rows.size()), dim);
    for (int i = 0; i < static_cast<int>(rows.size()); ++i) a.row(i) = rows[i].adjoint();
    Eigen::JacobiSVD<MatrixXcd> svd(a, Eigen::ComputeFullV);
    svd.setThreshold(1e-12);
    const int rank = static_cast<int>(svd.rank());
    if (rank >= dim) return MatrixXcd(dim, 0);
    return svd.matrixV().rightCols(dim - rank);
}

// Projection of `target` onto the span of the orthonormal columns of `basis`.
VectorXcd project(const MatrixXcd& basis, const VectorXcd& target) {
    if (basis.cols() == 0) return VectorXcd::Zero(target.size());
    return basis * (basis.adjoint() * target);
}

SchemeOutcome fail(SchemeOutcome out, std::string why) {
    out.feasible = false;
    out.message = std::move(why);
    return out;
}

} // namespace

SchemeOutcome zf_scheme(const ChannelSet& ch, const NetworkConfig& cfg) {
    cfg.validate();
    SchemeOutcome out;
    out.scheme = Scheme::zf;

    // Macro beams: null every other macro user and the cross link into the
    // femto receiver, then spend exactly enough power to hit the SINR floor
    // (all interference at the macro users is nulled by construction).
    std::vector<VectorXcd> w_mu(cfg.m);
    double p_macro = 0.0;
    for (int m = 0; m < cfg.m; ++m) {
        std::vector<VectorXcd> nulled;
        for (int i = 0; i < cfg.m; ++i)
            if (i != m) nulled.push_back(ch.h_mu[i]);
        nulled.push_back(ch.h_ir0);
        const MatrixXcd basis = null_basis(nulled, cfg.n_m);
        const VectorXcd dir = project(basis, ch.h_mu[m]);
        const double gain = dir.squaredNorm(); // |h_m^H dir_hat|^2 for the projection
        if (!(gain > 0.0))
            return fail(std::move(out), "macro user channel lies entirely in the nulled span");
        const double p_m = cfg.gamma_mu[m] * cfg.sigma2_mu[m] / gain;
        w_mu[m] = std::sqrt(p_m) * dir.normalized();
        p_macro += p_m;
    }

    std::vector<VectorXcd> macro_links; // femto vectors must not disturb the macro users
    for (int m = 0; m < cfg.m; ++m) macro_links.push_back(ch.l_mu[m]);

    // Artificial noise: confined to the null space of the femto receiver and
    // the macro users, pointed at the harvesters, and sized so the worst one
    // still meets its floor from the AN alone.
    VectorXcd v_an = VectorXcd::Zero(cfg.n_f);
    double p_an = 0.0;
    bool any_need = false;
    for (int k = 0; k < cfg.k; ++k)
        any_need = any_need || (cfg.q_eh[k] / cfg.xi - cfg.sigma2_er[k] > 0.0);
    if (any_need) {
        std::vector<VectorXcd> nulled = macro_links;
        nulled.push_back(ch.h_ir);
        const MatrixXcd basis = null_basis(nulled, cfg.n_f);
        if (basis.cols() == 0)
            return fail(std::move(out),
                        "noise nulling needs more femto antennas (n_f > m + 1)");
        MatrixXcd gram = MatrixXcd::Zero(basis.cols(), basis.cols());
        for (int k = 0; k < cfg.k; ++k) {
            const VectorXcd gk = basis.adjoint() * ch.g_er[k];
            gram += gk * gk.adjoint();
        }
        Eigen::SelfAdjointEigenSolver<MatrixXcd> eig(gram);
        if (!(eig.eigenvalues()(basis.cols() - 1) > 0.0))
            return fail(std::move(out), "harvesters are invisible from the nulled span");
        const VectorXcd v_dir = basis * eig.eigenvectors().col(basis.cols() - 1);
        for (int k = 0; k < cfg.k; ++k) {
            const double need = cfg.q_eh[k] / cfg.xi - cfg.sigma2_er[k];
            if (need <= 0.0) continue;
            const double gain = std::norm(ch.g_er[k].dot(v_dir));
            if (!(gain > 0.0))
                return fail(std::move(out), "a harvester is invisible from the nulled span");
            p_an = std::max(p_an, need / gain);
        }
        v_an = std::sqrt(p_an) * v_dir;
    }

    // Information beam: receiver channel projected into the null space of all
    // eavesdroppers and macro users; whatever budget is left powers it.
    {
        std::vector<VectorXcd> nulled = macro_links;
        for (int k = 0; k < cfg.k; ++k) nulled.push_back(ch.g_er[k]);
        const MatrixXcd basis = null_basis(nulled, cfg.n_f);
        if (basis.cols() == 0)
            return fail(std::move(out),
                        "information nulling needs more femto antennas (n_f > k + m)");
        const VectorXcd dir = project(basis, ch.h_ir);
        if (!(dir.squaredNorm() > 0.0))
            return fail(std::move(out), "receiver channel lies entirely in the nulled span");
        const double p_info = cfg.p_th - p_macro - p_an;
        if (!(p_info > 0.0))
            return fail(std::move(out), "power budget exhausted before the information beam");
        out.solution.w_ir = std::sqrt(p_info) * dir.normalized();
    }

    out.solution.w_mu = std::move(w_mu);
    out.solution.v_an = v_an;
    out.audit = audit_solution(out.solution, ch, cfg);
    out.worst_violation = out.audit.worst_rel_violation;
    out.feasible = out.audit.feasible;
    out.secrecy_rate = out.feasible ? secrecy_rate(out.solution, ch, cfg) : 0.0;
    if (!out.feasible) out.message = "audit found a violated design floor";
    return out;
}

SchemeOutcome run_scheme(Scheme scheme, const ChannelSet& ch, const NetworkConfig& cfg,
                         const ScaConfig& scfg, const SolverSettings& solver) {
    if (scheme == Scheme::zf) return zf_scheme(ch, cfg);

    SchemeOutcome out;
    out.scheme = scheme;
    out.sca = run_sca(ch, cfg, scfg, solver, /*include_an=*/scheme == Scheme::proposed);
    out.iterations = static_cast<int>(out.sca.iterations.size());
    out.message = out.sca.message;
    const bool produced =
        out.sca.status == ScaStatus::converged || out.sca.status == ScaStatus::max_iters;
    if (!produced) return out;
    out.solution = out.sca.solution;
    out.audit = out.sca.audit;
    out.worst_violation = out.audit.worst_rel_violation;
    out.feasible = out.audit.feasible;
    out.secrecy_rate = out.feasible ? std::max(out.sca.secrecy_rate, 0.0) : 0.0;
    if (!out.feasible && out.message.empty()) out.message = "audit found a violated design floor";
    return out;
}

} // namespace secswipt
