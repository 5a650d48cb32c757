#include "secswipt/socp_solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <vector>

#include <Eigen/SparseCholesky>

namespace secswipt {

namespace {

using Eigen::VectorXd;
using SpMat = Eigen::SparseMatrix<double>;
using Triplet = Eigen::Triplet<double>;

// ---------------------------------------------------------------------------
// Cone block bookkeeping.
//
// Rows are ordered zero | nonneg | soc_0 | soc_1 | ... as guaranteed by
// ProgramBuilder. The symmetric part (everything after the zero block) is
// where slacks live and Nesterov-Todd scalings apply.
// ---------------------------------------------------------------------------

struct BlockInfo {
    int zero = 0;
    int nonneg = 0;
    std::vector<int> soc;      // per-block dimensions
    std::vector<int> soc_off;  // absolute row offset of each SOC block
    int rows = 0;
    int degree = 0;            // barrier degree: nonneg count + number of SOCs
};

BlockInfo make_blocks(const ConeLayout& cones) {
    BlockInfo b;
    b.zero = cones.zero;
    b.nonneg = cones.nonneg;
    b.soc = cones.soc;
    int off = cones.zero + cones.nonneg;
    b.soc_off.reserve(cones.soc.size());
    for (int d : cones.soc) {
        b.soc_off.push_back(off);
        off += d;
    }
    b.rows = off;
    b.degree = cones.nonneg + static_cast<int>(cones.soc.size());
    return b;
}

// Jordan-algebra product u o v per symmetric block (zero block untouched).
void jordan_product(const BlockInfo& b, const VectorXd& u, const VectorXd& v, VectorXd& out) {
    out.setZero(b.rows);
    for (int i = 0; i < b.nonneg; ++i) {
        const int r = b.zero + i;
        out[r] = u[r] * v[r];
    }
    for (std::size_t k = 0; k < b.soc.size(); ++k) {
        const int o = b.soc_off[k];
        const int d = b.soc[k];
        const auto u1 = u.segment(o + 1, d - 1);
        const auto v1 = v.segment(o + 1, d - 1);
        out[o] = u.segment(o, d).dot(v.segment(o, d));
        out.segment(o + 1, d - 1) = u[o] * v1 + v[o] * u1;
    }
}

// Jordan-algebra division u \ v (solve u o w = v) per symmetric block.
void jordan_division(const BlockInfo& b, const VectorXd& u, const VectorXd& v, VectorXd& out) {
    out.setZero(b.rows);
    for (int i = 0; i < b.nonneg; ++i) {
        const int r = b.zero + i;
        out[r] = v[r] / u[r];
    }
    for (std::size_t k = 0; k < b.soc.size(); ++k) {
        const int o = b.soc_off[k];
        const int d = b.soc[k];
        const double u0 = u[o];
        const auto u1 = u.segment(o + 1, d - 1);
        const double v0 = v[o];
        const auto v1 = v.segment(o + 1, d - 1);
        const double det = u0 * u0 - u1.squaredNorm(); // Jordan determinant
        const double u1v1 = u1.dot(v1);
        out[o] = (u0 * v0 - u1v1) / det;
        if (d > 1) {
            out.segment(o + 1, d - 1) = (u1v1 / u0 - v0) / det * u1 + v1 / u0;
        }
    }
}

// Identity element e of the symmetric cones (1 on nonneg rows and SOC heads).
VectorXd cone_identity(const BlockInfo& b) {
    VectorXd e = VectorXd::Zero(b.rows);
    for (int i = 0; i < b.nonneg; ++i) e[b.zero + i] = 1.0;
    for (std::size_t k = 0; k < b.soc.size(); ++k) e[b.soc_off[k]] = 1.0;
    return e;
}

// Largest margin by which v fails to be in the symmetric cone; <= 0 means
// every block is inside.
double cone_violation(const BlockInfo& b, const VectorXd& v) {
    double alpha = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < b.nonneg; ++i) alpha = std::max(alpha, -v[b.zero + i]);
    for (std::size_t k = 0; k < b.soc.size(); ++k) {
        const int o = b.soc_off[k];
        const int d = b.soc[k];
        alpha = std::max(alpha, v.segment(o + 1, d - 1).norm() - v[o]);
    }
    return alpha;
}

// Shift v along the identity direction until strictly inside the cone.
void bring_to_cone(const BlockInfo& b, VectorXd& v) {
    for (int i = 0; i < b.zero; ++i) v[i] = 0.0;
    if (b.degree == 0) return;
    const double alpha = cone_violation(b, v);
    if (alpha >= -1e-8) {
        const double shift = 1.0 + alpha;
        for (int i = 0; i < b.nonneg; ++i) v[b.zero + i] += shift;
        for (std::size_t k = 0; k < b.soc.size(); ++k) v[b.soc_off[k]] += shift;
    }
}

// Largest step length in [0, cap] keeping v + t*dv inside the symmetric cone.
double max_cone_step(const BlockInfo& b, const VectorXd& v, const VectorXd& dv, double cap) {
    double t = cap;
    for (int i = 0; i < b.nonneg; ++i) {
        const int r = b.zero + i;
        if (dv[r] < 0.0) t = std::min(t, -v[r] / dv[r]);
    }
    for (std::size_t k = 0; k < b.soc.size(); ++k) {
        const int o = b.soc_off[k];
        const int d = b.soc[k];
        const double v0 = v[o];
        const double dv0 = dv[o];
        const auto v1 = v.segment(o + 1, d - 1);
        const auto dv1 = dv.segment(o + 1, d - 1);
        // Boundary crossing of (v0 + t dv0)^2 - ||v1 + t dv1||^2 = q(t)
        // = a t^2 + 2 bq t + cq, with cq >= 0 at the current point. The first
        // positive root, when one exists, is cq / (-bq + sqrt(bq^2 - a cq)).
        const double a = dv0 * dv0 - dv1.squaredNorm();
        const double bq = v0 * dv0 - v1.dot(dv1);
        const double cq = v0 * v0 - v1.squaredNorm();
        double tb = cap;
        if (a < 0.0 || bq < 0.0) {
            const double disc = bq * bq - a * cq;
            if (disc >= 0.0) {
                const double den = -bq + std::sqrt(disc);
                tb = (den > 0.0) ? cq / den : 0.0;
                if (tb < 0.0) tb = 0.0;
            }
        }
        if (dv0 < 0.0) tb = std::min(tb, -v0 / dv0);
        t = std::min(t, tb);
    }
    return std::max(t, 0.0);
}

// ---------------------------------------------------------------------------
// Nesterov-Todd scaling state.
//
// For each symmetric block we hold the scaling point w with W s_scaled =
// lambda = W z_scaled... concretely:
//   nonneg rows:  W = diag(w), w_i = sqrt(s_i / z_i), lambda_i = sqrt(s_i z_i)
//   SOC blocks:   W = eta * Wbar, Wbar = I + 2 wbar wbar' - ... (arrow form),
//                 H = W^2 = eta^2 (2 wbar wbar' - J), J = diag(1, -I).
// ---------------------------------------------------------------------------

struct Scaling {
    VectorXd lp_w2;                      // nonneg: s_i / z_i
    std::vector<double> soc_eta;         // per SOC block
    std::vector<VectorXd> soc_wbar;      // per SOC block, unit hyperbolic vector
    VectorXd lambda;                     // scaled point, full row length
};

bool compute_scaling(const BlockInfo& b, const VectorXd& s, const VectorXd& z, Scaling& sc) {
    sc.lp_w2.resize(b.nonneg);
    sc.soc_eta.assign(b.soc.size(), 0.0);
    sc.soc_wbar.assign(b.soc.size(), VectorXd());
    sc.lambda.setZero(b.rows);
    for (int i = 0; i < b.nonneg; ++i) {
        const int r = b.zero + i;
        if (!(s[r] > 0.0) || !(z[r] > 0.0)) return false;
        sc.lp_w2[i] = s[r] / z[r];
        sc.lambda[r] = std::sqrt(s[r] * z[r]);
    }
    for (std::size_t k = 0; k < b.soc.size(); ++k) {
        const int o = b.soc_off[k];
        const int d = b.soc[k];
        const auto sk = s.segment(o, d);
        const auto zk = z.segment(o, d);
        const double rho_s = sk[0] * sk[0] - sk.tail(d - 1).squaredNorm();
        const double rho_z = zk[0] * zk[0] - zk.tail(d - 1).squaredNorm();
        if (!(rho_s > 0.0) || !(rho_z > 0.0) || !(sk[0] > 0.0) || !(zk[0] > 0.0)) return false;
        const double sqrt_rs = std::sqrt(rho_s);
        const double sqrt_rz = std::sqrt(rho_z);
        VectorXd sbar = sk / sqrt_rs;
        VectorXd zbar = zk / sqrt_rz;
        const double sz = sbar.dot(zbar);
        const double g = std::sqrt((1.0 + sz) / 2.0);
        VectorXd wbar(d);
        wbar[0] = (sbar[0] + zbar[0]) / (2.0 * g);
        wbar.tail(d - 1) = (sbar.tail(d - 1) - zbar.tail(d - 1)) / (2.0 * g);
        const double eta = std::pow(rho_s / rho_z, 0.25);
        sc.soc_eta[k] = eta;
        sc.soc_wbar[k] = wbar;
        // lambda = W z: arrow-structured product.
        const double w0 = wbar[0];
        const auto w1 = wbar.tail(d - 1);
        const auto z1 = zk.tail(d - 1);
        const double w1z1 = (d > 1) ? w1.dot(z1) : 0.0;
        sc.lambda[o] = eta * (w0 * zk[0] + w1z1);
        if (d > 1) {
            sc.lambda.segment(o + 1, d - 1) = eta * (z1 + (zk[0] + w1z1 / (1.0 + w0)) * w1);
        }
    }
    return true;
}

// y = W v (scaling applied), zero block passed through as zero.
void apply_w(const BlockInfo& b, const Scaling& sc, const VectorXd& v, VectorXd& y) {
    y.setZero(b.rows);
    for (int i = 0; i < b.nonneg; ++i) {
        const int r = b.zero + i;
        y[r] = std::sqrt(sc.lp_w2[i]) * v[r];
    }
    for (std::size_t k = 0; k < b.soc.size(); ++k) {
        const int o = b.soc_off[k];
        const int d = b.soc[k];
        const double eta = sc.soc_eta[k];
        const VectorXd& wbar = sc.soc_wbar[k];
        const double w0 = wbar[0];
        const auto w1 = wbar.tail(d - 1);
        const auto v1 = v.segment(o + 1, d - 1);
        const double w1v1 = (d > 1) ? w1.dot(v1) : 0.0;
        y[o] = eta * (w0 * v[o] + w1v1);
        if (d > 1) {
            y.segment(o + 1, d - 1) = eta * (v1 + (v[o] + w1v1 / (1.0 + w0)) * w1);
        }
    }
}

// y = W^{-1} v.
void apply_w_inv(const BlockInfo& b, const Scaling& sc, const VectorXd& v, VectorXd& y) {
    y.setZero(b.rows);
    for (int i = 0; i < b.nonneg; ++i) {
        const int r = b.zero + i;
        y[r] = v[r] / std::sqrt(sc.lp_w2[i]);
    }
    for (std::size_t k = 0; k < b.soc.size(); ++k) {
        const int o = b.soc_off[k];
        const int d = b.soc[k];
        const double eta = sc.soc_eta[k];
        const VectorXd& wbar = sc.soc_wbar[k];
        const double w0 = wbar[0];
        const auto w1 = wbar.tail(d - 1);
        const auto v1 = v.segment(o + 1, d - 1);
        const double w1v1 = (d > 1) ? w1.dot(v1) : 0.0;
        y[o] = (w0 * v[o] - w1v1) / eta;
        if (d > 1) {
            y.segment(o + 1, d - 1) = (v1 + (-v[o] + w1v1 / (1.0 + w0)) * w1) / eta;
        }
    }
}

// y = H v = W^2 v.
void apply_h(const BlockInfo& b, const Scaling& sc, const VectorXd& v, VectorXd& y) {
    y.setZero(b.rows);
    for (int i = 0; i < b.nonneg; ++i) {
        const int r = b.zero + i;
        y[r] = sc.lp_w2[i] * v[r];
    }
    for (std::size_t k = 0; k < b.soc.size(); ++k) {
        const int o = b.soc_off[k];
        const int d = b.soc[k];
        const double eta2 = sc.soc_eta[k] * sc.soc_eta[k];
        const VectorXd& wbar = sc.soc_wbar[k];
        const auto vk = v.segment(o, d);
        // H = eta^2 (2 wbar wbar' - J), J = diag(1, -I).
        const double wv = wbar.dot(vk);
        VectorXd jv(d);
        jv[0] = vk[0];
        jv.tail(d - 1) = -vk.tail(d - 1);
        y.segment(o, d) = eta2 * (2.0 * wv * wbar - jv);
    }
}

// ---------------------------------------------------------------------------
// Ruiz equilibration. Rows inside one SOC block share a single scale so the
// cone is preserved. Returns diagonal scalings E (rows) and D (cols).
// ---------------------------------------------------------------------------

void ruiz_equilibrate(const SpMat& a, const BlockInfo& b, int passes, VectorXd& e_row,
                      VectorXd& d_col) {
    const int m = static_cast<int>(a.rows());
    const int n = static_cast<int>(a.cols());
    e_row = VectorXd::Ones(m);
    d_col = VectorXd::Ones(n);
    if (m == 0 || n == 0) return;
    VectorXd row_max(m), col_max(n);
    for (int pass = 0; pass < passes; ++pass) {
        row_max.setZero();
        col_max.setZero();
        for (int j = 0; j < a.outerSize(); ++j) {
            for (SpMat::InnerIterator it(a, j); it; ++it) {
                const double v = std::abs(e_row[it.row()] * it.value() * d_col[it.col()]);
                row_max[it.row()] = std::max(row_max[it.row()], v);
                col_max[it.col()] = std::max(col_max[it.col()], v);
            }
        }
        // One scale per SOC block: use the max over the block's rows.
        for (std::size_t k = 0; k < b.soc.size(); ++k) {
            const int o = b.soc_off[k];
            const int d = b.soc[k];
            const double blk = row_max.segment(o, d).maxCoeff();
            row_max.segment(o, d).setConstant(blk);
        }
        double dev = 0.0;
        for (int i = 0; i < m; ++i) {
            if (row_max[i] > 0.0) {
                dev = std::max(dev, std::abs(1.0 - row_max[i]));
                e_row[i] /= std::sqrt(row_max[i]);
            }
        }
        for (int j = 0; j < n; ++j) {
            if (col_max[j] > 0.0) {
                dev = std::max(dev, std::abs(1.0 - col_max[j]));
                d_col[j] /= std::sqrt(col_max[j]);
            }
        }
        if (dev < 1e-3) break;
    }
}

// ---------------------------------------------------------------------------
// KKT system
//   [ delta*I      A'          ] [dx]   [rx]
//   [ A       -(H + delta*I)   ] [dz] = [rz]
// assembled once for the sparsity pattern, refactorized with fresh scaling
// values each iteration. Solutions are refined against the unregularized
// matrix.
// ---------------------------------------------------------------------------

class KktSystem {
public:
    KktSystem(const SpMat& a, const BlockInfo& blocks, double reg)
        : a_(a), blocks_(blocks), reg_(reg), n_(static_cast<int>(a.cols())),
          m_(static_cast<int>(a.rows())) {
        base_triplets_.reserve(static_cast<std::size_t>(a_.nonZeros()) * 2 + n_ + m_);
        for (int i = 0; i < n_; ++i) base_triplets_.emplace_back(i, i, reg_);
        for (int j = 0; j < a_.outerSize(); ++j) {
            for (SpMat::InnerIterator it(a_, j); it; ++it) {
                const int r = n_ + static_cast<int>(it.row());
                const int c = static_cast<int>(it.col());
                base_triplets_.emplace_back(r, c, it.value());
                base_triplets_.emplace_back(c, r, it.value());
            }
        }
        analyzed_ = false;
    }

    // Factorize with the given scaling (H block). Zero rows carry only the
    // -delta regularization; identity=true uses H = I (initialization).
    bool factorize(const Scaling* sc, bool identity) {
        std::vector<Triplet> trip = base_triplets_;
        for (int i = 0; i < blocks_.zero; ++i) {
            trip.emplace_back(n_ + i, n_ + i, -reg_);
        }
        for (int i = 0; i < blocks_.nonneg; ++i) {
            const int r = n_ + blocks_.zero + i;
            const double h = identity ? 1.0 : sc->lp_w2[i];
            trip.emplace_back(r, r, -(h + reg_));
        }
        // The SOC blocks are emitted dense in both modes so the sparsity
        // pattern stays identical across factorizations (analyzePattern is
        // reused; explicit zeros are retained by setFromTriplets).
        for (std::size_t k = 0; k < blocks_.soc.size(); ++k) {
            const int o = blocks_.soc_off[k];
            const int d = blocks_.soc[k];
            const double eta2 = identity ? 1.0 : sc->soc_eta[k] * sc->soc_eta[k];
            for (int i = 0; i < d; ++i) {
                for (int j = 0; j < d; ++j) {
                    double h = 0.0;
                    if (!identity) {
                        const VectorXd& wbar = sc->soc_wbar[k];
                        h = 2.0 * eta2 * wbar[i] * wbar[j];
                    }
                    if (i == 0 && j == 0) h += identity ? eta2 : -eta2;
                    if (i == j && i > 0) h += eta2;
                    double v = -h;
                    if (i == j) v -= reg_;
                    trip.emplace_back(n_ + o + i, n_ + o + j, v);
                }
            }
        }
        kkt_.resize(n_ + m_, n_ + m_);
        kkt_.setFromTriplets(trip.begin(), trip.end());
        if (!analyzed_) {
            ldlt_.analyzePattern(kkt_);
            analyzed_ = true;
        }
        ldlt_.factorize(kkt_);
        if (ldlt_.info() != Eigen::Success) return false;
        scaling_ = sc;
        identity_ = identity;
        return true;
    }

    // Solve the KKT system against the *unregularized* matrix via iterative
    // refinement with the regularized factorization as the preconditioner.
    void solve(const VectorXd& rhs, VectorXd& sol, int refine_steps) const {
        sol = ldlt_.solve(rhs);
        for (int r = 0; r < refine_steps; ++r) {
            VectorXd resid = rhs - multiply_unregularized(sol);
            const VectorXd d = ldlt_.solve(resid);
            const VectorXd cand = sol + d;
            if ((rhs - multiply_unregularized(cand)).norm() < resid.norm()) {
                sol = cand;
            } else {
                break;
            }
        }
    }

    int n() const { return n_; }
    int m() const { return m_; }

private:
    VectorXd multiply_unregularized(const VectorXd& v) const {
        const auto vx = v.head(n_);
        const auto vz = v.tail(m_);
        VectorXd out(n_ + m_);
        out.head(n_) = a_.transpose() * vz;
        out.tail(m_) = a_ * vx;
        VectorXd hv = VectorXd::Zero(m_);
        if (identity_) {
            for (int i = blocks_.zero; i < m_; ++i) hv[i] = vz[i];
        } else if (scaling_ != nullptr) {
            apply_h(blocks_, *scaling_, vz, hv);
        }
        out.tail(m_) -= hv;
        return out;
    }

    const SpMat& a_;
    const BlockInfo& blocks_;
    double reg_;
    int n_, m_;
    std::vector<Triplet> base_triplets_;
    SpMat kkt_;
    Eigen::SimplicialLDLT<SpMat> ldlt_;
    bool analyzed_ = false;
    const Scaling* scaling_ = nullptr;
    bool identity_ = true;
};

double soc_distance(const Eigen::Ref<const VectorXd>& v) {
    const int d = static_cast<int>(v.size());
    const double t = v[0];
    const double nu = (d > 1) ? v.tail(d - 1).norm() : 0.0;
    if (nu <= t) return 0.0;
    if (nu <= -t) return v.norm();
    // Distance to the cone boundary along the projection direction.
    return (nu - t) / std::sqrt(2.0);
}

} // namespace

const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::optimal: return "optimal";
        case SolveStatus::primal_infeasible: return "primal_infeasible";
        case SolveStatus::dual_infeasible: return "dual_infeasible";
        case SolveStatus::max_iters: return "max_iters";
        case SolveStatus::numerical_failure: return "numerical_failure";
    }
    return "unknown";
}

void SolverSettings::validate() const {
    if (!(feas_tol > 0.0) || !(gap_tol > 0.0)) {
        throw std::invalid_argument("solver tolerances must be positive");
    }
    if (max_iters < 1) throw std::invalid_argument("solver.max_iters must be >= 1");
    if (!(static_reg >= 0.0)) throw std::invalid_argument("solver.static_reg must be >= 0");
    if (refine_steps < 0) throw std::invalid_argument("solver.refine_steps must be >= 0");
    if (!(step_scale > 0.0 && step_scale < 1.0)) {
        throw std::invalid_argument("solver.step_scale must be in (0, 1)");
    }
}

SolveResult solve_socp(const ConicProgram& prog, const SolverSettings& settings) {
    settings.validate();
    prog.validate();

    const int n = prog.num_vars;
    const int m = static_cast<int>(prog.a.rows());
    const BlockInfo blocks = make_blocks(prog.cones);

    SolveResult res;
    res.x = VectorXd::Zero(n);
    res.s = VectorXd::Zero(m);
    res.z = VectorXd::Zero(m);

    if (m == 0) {
        // No constraints: optimum at the origin unless the objective is
        // unbounded along -c.
        if (prog.c.norm() == 0.0) {
            res.status = SolveStatus::optimal;
        } else {
            res.status = SolveStatus::dual_infeasible;
            res.x = -prog.c;
        }
        return res;
    }

    // -- Equilibration ------------------------------------------------------
    VectorXd e_row = VectorXd::Ones(m);
    VectorXd d_col = VectorXd::Ones(n);
    if (settings.equilibrate) {
        ruiz_equilibrate(prog.a, blocks, settings.ruiz_passes, e_row, d_col);
    }
    SpMat a_s = e_row.asDiagonal() * prog.a * d_col.asDiagonal();
    a_s.makeCompressed();
    const VectorXd b_s = e_row.cwiseProduct(prog.b);
    const VectorXd c_s = d_col.cwiseProduct(prog.c);

    const double b_norm = prog.b.norm();
    const double c_norm = prog.c.norm();

    KktSystem kkt(a_s, blocks, settings.static_reg);

    // -- Initialization: least-squares point pushed into the cone -----------
    VectorXd x(n), s(m), z(m);
    {
        if (!kkt.factorize(nullptr, /*identity=*/true)) {
            res.status = SolveStatus::numerical_failure;
            return res;
        }
        VectorXd rhs = VectorXd::Zero(n + m);
        rhs.tail(m) = b_s;
        VectorXd sol(n + m);
        kkt.solve(rhs, sol, settings.refine_steps);
        x = sol.head(n);
        s = b_s - a_s * x;
        bring_to_cone(blocks, s);

        rhs.setZero();
        rhs.head(n) = -c_s;
        kkt.solve(rhs, sol, settings.refine_steps);
        z = sol.tail(m);
        const VectorXd z_free = z.head(blocks.zero); // equality multipliers are free
        bring_to_cone(blocks, z);
        z.head(blocks.zero) = z_free;
    }
    double tau = 1.0;
    double kappa = 1.0;

    const double nu = static_cast<double>(blocks.degree) + 1.0;

    // Best-iterate fallback.
    double best_merit = std::numeric_limits<double>::infinity();
    VectorXd best_x = x, best_s = s, best_z = z;
    double best_tau = tau, best_kappa = kappa;
    SolveResult best_stats = res;

    Scaling sc;
    VectorXd rhs1(n + m), sol1(n + m), rhs2(n + m), sol2(n + m);
    VectorXd ds_target(m), tmp(m), w_dz(m), winv_ds(m), corr(m);
    VectorXd dx(n), dz(m), ds(m);
    VectorXd dx_aff(n), dz_aff(m), ds_aff(m);
    const VectorXd e_ident = cone_identity(blocks);

    int stall_count = 0;
    auto finalize_point = [&](SolveStatus st) {
        res.status = st;
        res.x = d_col.cwiseProduct(x) / tau;
        res.s = s.cwiseQuotient(e_row) / tau;
        res.z = e_row.cwiseProduct(z) / tau;
        res.primal_obj = prog.c.dot(res.x);
        res.dual_obj = -prog.b.dot(res.z);
    };

    for (int iter = 0; iter <= settings.max_iters; ++iter) {
        // ---- Residuals and termination in the original (unscaled) space ----
        const VectorXd x_u = d_col.cwiseProduct(x);
        const VectorXd s_u = s.cwiseQuotient(e_row);
        const VectorXd z_u = e_row.cwiseProduct(z);
        const VectorXd rp_u = prog.a * x_u + s_u - prog.b * tau;
        const VectorXd rd_u = prog.a.transpose() * z_u + prog.c * tau;
        const double pobj = prog.c.dot(x_u) / tau;
        const double dobj = -prog.b.dot(z_u) / tau;
        const double pres = (rp_u / tau).norm() / (1.0 + b_norm);
        const double dres = (rd_u / tau).norm() / (1.0 + c_norm);
        const double gap_abs = std::abs(pobj - dobj);
        const double gap_rel = gap_abs / std::max(1e-12, std::max(std::abs(pobj), std::abs(dobj)));

        res.pres = pres;
        res.dres = dres;
        res.gap_abs = gap_abs;
        res.gap_rel = gap_rel;
        res.iters = iter;

        if (settings.verbose) {
            std::printf("it %3d  pres %9.2e  dres %9.2e  gap %9.2e  tau %8.2e  kap %8.2e\n",
                        iter, pres, dres, gap_abs, tau, kappa);
        }

        const double merit = std::max({pres, dres, std::min(gap_abs, gap_rel)});
        if (std::isfinite(merit) && merit < best_merit && tau > 1e-10) {
            best_merit = merit;
            best_x = x; best_s = s; best_z = z; best_tau = tau; best_kappa = kappa;
            best_stats = res;
        }

        if (pres <= settings.feas_tol && dres <= settings.feas_tol &&
            (gap_abs <= settings.gap_tol || gap_rel <= settings.gap_tol)) {
            finalize_point(SolveStatus::optimal);
            return res;
        }

        // ---- Infeasibility certificates ----
        const double z_scale = std::max(1.0, z_u.norm());
        const double bz = prog.b.dot(z_u);
        if (bz / z_scale < -settings.gap_tol) {
            const double cert = (prog.a.transpose() * z_u).norm() / z_scale;
            if (cert <= settings.feas_tol && tau < kappa) {
                res.status = SolveStatus::primal_infeasible;
                res.z = z_u / (-bz); // normalized: b'z = -1
                res.x.setZero();
                res.s.setZero();
                res.pres = pres; res.dres = dres;
                return res;
            }
        }
        const double x_scale = std::max(1.0, x_u.norm() + s_u.norm());
        const double cx = prog.c.dot(x_u);
        if (cx / std::max(1.0, x_u.norm()) < -settings.gap_tol) {
            const double cert = (prog.a * x_u + s_u).norm() / x_scale;
            if (cert <= settings.feas_tol && tau < kappa) {
                res.status = SolveStatus::dual_infeasible;
                res.x = x_u / (-cx); // normalized: c'x = -1
                res.s = s_u / (-cx);
                res.z.setZero();
                return res;
            }
        }

        if (iter == settings.max_iters) break;

        if (tau < 1e-12 * std::max(1.0, kappa) || !std::isfinite(merit)) {
            x = best_x; s = best_s; z = best_z; tau = best_tau; kappa = best_kappa;
            res = best_stats;
            finalize_point(SolveStatus::numerical_failure);
            return res;
        }

        // ---- Scaled-space residuals for the Newton systems ----
        const VectorXd rd = a_s.transpose() * z + c_s * tau;
        const VectorXd rp = a_s * x + s - b_s * tau;
        const double rg = c_s.dot(x) + b_s.dot(z) + kappa;
        const double mu = (s.dot(z) + tau * kappa) / nu;

        if (!compute_scaling(blocks, s, z, sc) || !kkt.factorize(&sc, false)) {
            x = best_x; s = best_s; z = best_z; tau = best_tau; kappa = best_kappa;
            res = best_stats;
            finalize_point(SolveStatus::numerical_failure);
            return res;
        }

        // Constant column: K [p] = [-c; b].
        rhs1.head(n) = -c_s;
        rhs1.tail(m) = b_s;
        kkt.solve(rhs1, sol1, settings.refine_steps);
        const double denom = c_s.dot(sol1.head(n)) + b_s.dot(sol1.tail(m)) - kappa / tau;
        if (!std::isfinite(denom) || std::abs(denom) < 1e-300) {
            x = best_x; s = best_s; z = best_z; tau = best_tau; kappa = best_kappa;
            res = best_stats;
            finalize_point(SolveStatus::numerical_failure);
            return res;
        }

        // ---- Affine (predictor) direction ----
        // ds target: -lambda o lambda; rhs_z picks up -W(lambda \ ds) = +s.
        rhs2.head(n) = -rd;
        rhs2.tail(m) = -rp + s;
        for (int i = 0; i < blocks.zero; ++i) rhs2[n + i] = -rp[i]; // no slack there
        kkt.solve(rhs2, sol2, settings.refine_steps);
        const double dkap5_aff = -tau * kappa;
        double dtau_aff = (-rg - (c_s.dot(sol2.head(n)) + b_s.dot(sol2.tail(m))) - dkap5_aff / tau) / denom;
        dx_aff = sol2.head(n) + dtau_aff * sol1.head(n);
        dz_aff = sol2.tail(m) + dtau_aff * sol1.tail(m);
        // ds = W(lambda \ ds_target) - H dz = -s - H dz.
        apply_h(blocks, sc, dz_aff, tmp);
        ds_aff = -tmp;
        for (int i = blocks.zero; i < m; ++i) ds_aff[i] -= s[i];
        for (int i = 0; i < blocks.zero; ++i) ds_aff[i] = 0.0;
        const double dkap_aff = (dkap5_aff - kappa * dtau_aff) / tau;

        double alpha_aff = max_cone_step(blocks, s, ds_aff, 1.0);
        alpha_aff = max_cone_step(blocks, z, dz_aff, alpha_aff);
        if (dtau_aff < 0.0) alpha_aff = std::min(alpha_aff, -tau / dtau_aff);
        if (dkap_aff < 0.0) alpha_aff = std::min(alpha_aff, -kappa / dkap_aff);

        const double mu_aff =
            ((s + alpha_aff * ds_aff).dot(z + alpha_aff * dz_aff) +
             (tau + alpha_aff * dtau_aff) * (kappa + alpha_aff * dkap_aff)) / nu;
        double sigma = std::pow(std::max(0.0, mu_aff / mu), 3.0);
        sigma = std::clamp(sigma, 1e-8, 0.999);

        // ---- Combined (corrector) direction ----
        apply_w_inv(blocks, sc, ds_aff, winv_ds);
        apply_w(blocks, sc, dz_aff, w_dz);
        jordan_product(blocks, winv_ds, w_dz, corr);
        jordan_product(blocks, sc.lambda, sc.lambda, tmp);
        ds_target = sigma * mu * e_ident - tmp - corr;
        jordan_division(blocks, sc.lambda, ds_target, tmp);
        apply_w(blocks, sc, tmp, w_dz); // reuse w_dz as W(lambda \ ds_target)
        rhs2.head(n) = -(1.0 - sigma) * rd;
        rhs2.tail(m) = -(1.0 - sigma) * rp - w_dz;
        kkt.solve(rhs2, sol2, settings.refine_steps);
        const double dkap5 = sigma * mu - tau * kappa - dtau_aff * dkap_aff;
        double dtau = (-(1.0 - sigma) * rg - (c_s.dot(sol2.head(n)) + b_s.dot(sol2.tail(m))) -
                       dkap5 / tau) / denom;
        dx = sol2.head(n) + dtau * sol1.head(n);
        dz = sol2.tail(m) + dtau * sol1.tail(m);
        apply_h(blocks, sc, dz, tmp);
        ds = w_dz - tmp;
        for (int i = 0; i < blocks.zero; ++i) ds[i] = 0.0;
        const double dkap = (dkap5 - kappa * dtau) / tau;

        double alpha = max_cone_step(blocks, s, ds, 1.0 / settings.step_scale);
        alpha = max_cone_step(blocks, z, dz, alpha);
        if (dtau < 0.0) alpha = std::min(alpha, -tau / dtau);
        if (dkap < 0.0) alpha = std::min(alpha, -kappa / dkap);
        alpha = std::min(1.0, settings.step_scale * alpha);

        if (alpha < 1e-7) {
            if (++stall_count >= 2) {
                x = best_x; s = best_s; z = best_z; tau = best_tau; kappa = best_kappa;
                res = best_stats;
                finalize_point(SolveStatus::numerical_failure);
                return res;
            }
        } else {
            stall_count = 0;
        }

        x += alpha * dx;
        z += alpha * dz;
        s += alpha * ds;
        tau += alpha * dtau;
        kappa += alpha * dkap;
    }

    x = best_x; s = best_s; z = best_z; tau = best_tau; kappa = best_kappa;
    res = best_stats;
    finalize_point(SolveStatus::max_iters);
    res.status = SolveStatus::max_iters;
    return res;
}

KktResiduals kkt_residuals(const ConicProgram& prog, const Eigen::VectorXd& x,
                           const Eigen::VectorXd& z) {
    const BlockInfo blocks = make_blocks(prog.cones);
    KktResiduals out;

    // Primal: distance of b - Ax to the cone.
    VectorXd v = prog.b - prog.a * x;
    double pdist2 = 0.0;
    for (int i = 0; i < blocks.zero; ++i) pdist2 += v[i] * v[i];
    for (int i = 0; i < blocks.nonneg; ++i) {
        const double d = std::min(0.0, v[blocks.zero + i]);
        pdist2 += d * d;
    }
    for (std::size_t k = 0; k < blocks.soc.size(); ++k) {
        const double d = soc_distance(v.segment(blocks.soc_off[k], blocks.soc[k]));
        pdist2 += d * d;
    }
    out.primal = std::sqrt(pdist2) / (1.0 + prog.b.norm());

    // Dual: stationarity plus membership of z in the dual cone (self-dual
    // symmetric part; zero rows are free).
    const double stat = (prog.a.transpose() * z + prog.c).norm() / (1.0 + prog.c.norm());
    double zdist2 = 0.0;
    for (int i = 0; i < blocks.nonneg; ++i) {
        const double d = std::min(0.0, z[blocks.zero + i]);
        zdist2 += d * d;
    }
    for (std::size_t k = 0; k < blocks.soc.size(); ++k) {
        const double d = soc_distance(z.segment(blocks.soc_off[k], blocks.soc[k]));
        zdist2 += d * d;
    }
    out.dual = std::max(stat, std::sqrt(zdist2) / (1.0 + z.norm()));

    const double pobj = prog.c.dot(x);
    const double dobj = prog.b.dot(z);
    out.gap = std::abs(pobj + dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));
    return out;
}

} // namespace secswipt
