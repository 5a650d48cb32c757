#include "secswipt/sca.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace secswipt {

namespace {

using Eigen::VectorXcd;
using Eigen::VectorXd;

constexpr double kLn2 = 0.6931471805599453;

int lift_width(int n) { return 2 * n; }

// Append every coordinate of the lift at `offset` (width 2n) to a cone body.
void push_lift(std::vector<LinExpr>& body, int offset, int n) {
    for (int j = 0; j < 2 * n; ++j) body.push_back(LinExpr::var(offset + j));
}

VectorXcd read_lift(const VectorXd& x, int offset, int n) {
    VectorXcd w(n);
    for (int j = 0; j < n; ++j) {
        w[j] = std::complex<double>(x[offset + j], x[offset + n + j]);
    }
    return w;
}

} // namespace

// ---------------------------------------------------------------------------
// Layout
// ---------------------------------------------------------------------------

int SubproblemLayout::predict_total(int m, int k, int n_m, int n_f, int q, bool include_an) {
    int total = m * lift_width(n_m) + lift_width(n_f);
    if (include_an) total += lift_width(n_f);
    total += 7; // gamma, gamma_ir, gamma_er, s_ir, mu_ir, eta_ir, c
    total += m; // s_mu
    if (include_an) total += 1; // s_an
    total += k;     // t_er
    total += k * m; // t_er0
    if (include_an) total += k; // t_an
    total += q + 4; // tau
    return total;
}

SubproblemLayout SubproblemLayout::make(int m, int k, int n_m, int n_f, int q, bool include_an) {
    SubproblemLayout lo;
    lo.m = m;
    lo.k = k;
    lo.n_m = n_m;
    lo.n_f = n_f;
    lo.q = q;
    lo.include_an = include_an;
    int at = 0;
    lo.w_mu.resize(m);
    for (int i = 0; i < m; ++i) {
        lo.w_mu[i] = at;
        at += lift_width(n_m);
    }
    lo.w_ir = at;
    at += lift_width(n_f);
    if (include_an) {
        lo.v_an = at;
        at += lift_width(n_f);
    }
    lo.gamma = at++;
    lo.gamma_ir = at++;
    lo.gamma_er = at++;
    lo.s_ir = at++;
    lo.mu_ir = at++;
    lo.eta_ir = at++;
    lo.c = at++;
    lo.s_mu = at;
    at += m;
    if (include_an) lo.s_an = at++;
    lo.t_er = at;
    at += k;
    lo.t_er0 = at;
    at += k * m;
    if (include_an) {
        lo.t_an = at;
        at += k;
    }
    lo.tau = at;
    at += q + 4;
    lo.total = at;
    return lo;
}

std::string SubproblemLayout::describe() const {
    std::ostringstream os;
    os << "subproblem variable map (" << total << " real variables)\n";
    auto row = [&os](const std::string& name, int off, int width) {
        os << "  [" << off << ", " << off + width << ")  " << name << "\n";
    };
    for (int i = 0; i < m; ++i) {
        row("w_mu[" + std::to_string(i) + "] lift (re|im)", w_mu[i], lift_width(n_m));
    }
    row("w_ir lift (re|im)", w_ir, lift_width(n_f));
    if (include_an) row("v_an lift (re|im)", v_an, lift_width(n_f));
    row("gamma (secrecy surrogate)", gamma, 1);
    row("gamma_ir (IR SINR lower bound)", gamma_ir, 1);
    row("gamma_er (ER SINR upper bound)", gamma_er, 1);
    row("s_ir (IR signal-power minorant bound)", s_ir, 1);
    row("mu_ir (IR amplitude)", mu_ir, 1);
    row("eta_ir (IR interference+noise bound)", eta_ir, 1);
    row("c (rate surrogate, bits)", c, 1);
    row("s_mu (per-MU macro leakage amplitudes at IR)", s_mu, m);
    if (include_an) row("s_an (AN leakage amplitude at IR)", s_an, 1);
    if (k > 0) {
        row("t_er (info-beam amplitudes at ERs)", t_er, k);
        row("t_er0 (macro power minorant bounds at ERs, k-major)", t_er0, k * m);
        if (include_an) row("t_an (AN power minorant bounds at ERs)", t_an, k);
    }
    row("tau (exp-chain auxiliaries)", tau, q + 4);
    return os.str();
}

// ---------------------------------------------------------------------------
// Real-lift forms and linearizations
// ---------------------------------------------------------------------------

LinExpr re_inner(const VectorXcd& a, int offset) {
    LinExpr e;
    const int n = static_cast<int>(a.size());
    for (int j = 0; j < n; ++j) {
        e.add(offset + j, a[j].real());
        e.add(offset + n + j, a[j].imag());
    }
    return e;
}

LinExpr im_inner(const VectorXcd& a, int offset) {
    LinExpr e;
    const int n = static_cast<int>(a.size());
    for (int j = 0; j < n; ++j) {
        e.add(offset + j, -a[j].imag());
        e.add(offset + n + j, a[j].real());
    }
    return e;
}

LinExpr taylor_quadratic_minorant(const VectorXcd& a, const VectorXcd& w_tilde, int offset) {
    const std::complex<double> u = a.dot(w_tilde); // a^H w_tilde
    LinExpr e = 2.0 * u.real() * re_inner(a, offset) + 2.0 * u.imag() * im_inner(a, offset);
    e.constant -= std::norm(u);
    return e;
}

LinExpr quad_over_lin_minorant(double mu_t, double eta_t, int mu_index, int eta_index) {
    if (!(eta_t > 0.0)) throw std::invalid_argument("quad_over_lin_minorant: eta_t must be > 0");
    const double r = mu_t / eta_t;
    LinExpr e;
    e.add(mu_index, 2.0 * r);
    e.add(eta_index, -r * r);
    return e;
}

void add_lemma1(ProgramBuilder& pb, const LinExpr& z, const LinExpr& x, const LinExpr& y,
                const std::string& label) {
    pb.add_soc({x + y, 2.0 * z, x + (-1.0) * y}, label);
}

void add_exp_soc_block(ProgramBuilder& pb, int c_index, int gamma_ir_index, int tau_offset,
                       int q, const std::string& label, const Eigen::VectorXd& tau_ref) {
    if (q < 2) throw std::invalid_argument("exp block requires q >= 2");
    if (tau_ref.size() != 0 && tau_ref.size() != q + 4) {
        throw std::invalid_argument("tau_ref must be empty or of size q + 4");
    }
    auto tau = [tau_offset](int j) { return LinExpr::var(tau_offset + j); };
    auto ref = [&tau_ref](int j) { return tau_ref.size() ? tau_ref[j] : 1.0; };
    // x^2 <= y emitted against a reference magnitude t for y, so the cone
    // entries stay O(1) regardless of the value range covered by the chain.
    auto add_square = [&pb](const LinExpr& x, const LinExpr& y, double t,
                            const std::string& lab) {
        add_lemma1(pb, (1.0 / std::sqrt(t)) * x, (1.0 / t) * y, LinExpr(1.0), lab);
    };
    // tau_0 <= 1 + gamma_ir, normalized by the expected chain magnitude.
    LinExpr cap(1.0 / ref(0));
    cap.add(gamma_ir_index, 1.0 / ref(0)).add(tau_offset + 0, -1.0 / ref(0));
    pb.add_nonneg(cap, label + ".cap");
    // Seed cones. The chain squares tau_4 up q times, so it reproduces
    // exp(x) with x = c * ln2, i.e. a lower bound pinching 2^c.
    const double scale = kLn2;
    {
        LinExpr body(2.0);
        body.add(c_index, scale / std::pow(2.0, q - 1));
        pb.add_soc({LinExpr(1.0) + tau(1), body, LinExpr(1.0) + (-1.0) * tau(1)},
                   label + ".seed1");
    }
    {
        LinExpr body(5.0 / 3.0);
        body.add(c_index, scale / std::pow(2.0, q));
        pb.add_soc({LinExpr(1.0) + tau(2), body, LinExpr(1.0) + (-1.0) * tau(2)},
                   label + ".seed2");
    }
    add_square(tau(1), tau(3), ref(3), label + ".t1sq");
    {
        LinExpr taylor(-19.0 / 72.0);
        taylor.add(tau_offset + 4, 1.0).add(tau_offset + 2, -1.0).add(tau_offset + 3, -1.0 / 24.0);
        pb.add_nonneg(taylor, label + ".taylor");
    }
    for (int j = 5; j <= q + 3; ++j) {
        add_square(tau(j - 1), tau(j), ref(j), label + ".sq" + std::to_string(j));
    }
    add_square(tau(q + 3), tau(0), ref(0), label + ".close");
}

// ---------------------------------------------------------------------------
// Subproblem assembly
// ---------------------------------------------------------------------------

Eigen::VectorXd reference_magnitudes(const ChannelSet& ch, const NetworkConfig& cfg,
                                     const ExpansionPoint& pt, const ScaConfig& /*scfg*/,
                                     const SubproblemLayout& lo) {
    VectorXd ref = VectorXd::Ones(lo.total);
    const VectorXcd v_tilde = (lo.include_an && pt.v_an.size() == cfg.n_f)
                                  ? pt.v_an
                                  : VectorXcd::Zero(cfg.n_f);
    const double g_ir_t = pt.mu_ir * pt.mu_ir / pt.eta_ir;
    const double cmax = std::max(std::log2(1.0 + std::max(g_ir_t, 0.0)), 1.0);
    ref[lo.gamma] = cmax;
    ref[lo.gamma_ir] = std::max(g_ir_t, 1.0);
    ref[lo.gamma_er] = std::max(pt.gamma_er, 1.0);
    ref[lo.s_ir] = std::max(pt.mu_ir * pt.mu_ir, cfg.sigma2_ir);
    ref[lo.mu_ir] = std::sqrt(ref[lo.s_ir]);
    ref[lo.eta_ir] = pt.eta_ir;
    ref[lo.c] = cmax;
    for (int m = 0; m < lo.m; ++m) ref[lo.s_mu + m] = std::sqrt(pt.eta_ir);
    if (lo.include_an) ref[lo.s_an] = std::sqrt(pt.eta_ir);
    for (int k = 0; k < lo.k; ++k) {
        double b_ref = cfg.sigma2_er[k];
        for (int m = 0; m < lo.m; ++m) {
            const double p = std::norm(ch.g_er0[k].dot(pt.w_mu[m]));
            ref[lo.t_er0 + k * lo.m + m] = std::max(p, cfg.sigma2_er[k]);
            b_ref += ref[lo.t_er0 + k * lo.m + m];
        }
        if (lo.include_an) {
            const double p = std::norm(ch.g_er[k].dot(v_tilde));
            ref[lo.t_an + k] = std::max(p, cfg.sigma2_er[k]);
            b_ref += ref[lo.t_an + k];
        }
        ref[lo.t_er + k] = std::sqrt(ref[lo.gamma_er] * b_ref);
    }
    // Chain values at c = cmax (floored at 1 so square ratios stay <= 1).
    const double u = cmax * kLn2;
    VectorXd tau(lo.q + 4);
    tau[1] = std::pow(1.0 + u / std::pow(2.0, lo.q), 2);
    tau[2] = std::pow(5.0 / 6.0 + u / std::pow(2.0, lo.q + 1), 2);
    tau[3] = tau[1] * tau[1];
    tau[4] = tau[2] + tau[3] / 24.0 + 19.0 / 72.0;
    for (int j = 5; j <= lo.q + 3; ++j) tau[j] = tau[j - 1] * tau[j - 1];
    tau[0] = std::max(1.0 + std::max(g_ir_t, 0.0), tau[lo.q + 3] * tau[lo.q + 3]);
    for (int j = 0; j < lo.q + 4; ++j) ref[lo.tau + j] = std::max(tau[j], 1.0);
    return ref;
}

Subproblem build_subproblem(const ChannelSet& ch, const NetworkConfig& cfg,
                            const ExpansionPoint& pt, const ScaConfig& scfg, bool include_an) {
    cfg.validate();
    scfg.validate();
    if (!(pt.eta_ir > 0.0)) throw std::invalid_argument("expansion point needs eta_ir > 0");
    if (static_cast<int>(pt.w_mu.size()) != cfg.m) {
        throw std::invalid_argument("expansion point w_mu count mismatch");
    }

    const SubproblemLayout lo =
        SubproblemLayout::make(cfg.m, cfg.k, cfg.n_m, cfg.n_f, scfg.q, include_an);
    const VectorXcd v_tilde =
        (include_an && pt.v_an.size() == cfg.n_f) ? pt.v_an : VectorXcd::Zero(cfg.n_f);
    const VectorXd ref = reference_magnitudes(ch, cfg, pt, scfg, lo);

    ProgramBuilder pb;
    for (int m = 0; m < cfg.m; ++m) pb.add_vars("w_mu" + std::to_string(m), lift_width(cfg.n_m));
    pb.add_vars("w_ir", lift_width(cfg.n_f));
    if (include_an) pb.add_vars("v_an", lift_width(cfg.n_f));
    pb.add_var("gamma");
    pb.add_var("gamma_ir");
    pb.add_var("gamma_er");
    pb.add_var("s_ir");
    pb.add_var("mu_ir");
    pb.add_var("eta_ir");
    pb.add_var("c");
    pb.add_vars("s_mu", cfg.m);
    if (include_an) pb.add_var("s_an");
    pb.add_vars("t_er", cfg.k);
    pb.add_vars("t_er0", cfg.k * cfg.m);
    if (include_an) pb.add_vars("t_an", cfg.k);
    pb.add_vars("tau", scfg.q + 4);
    if (pb.num_vars() != lo.total) throw std::logic_error("layout/builder variable count mismatch");

    // Objective.
    if (scfg.objective_mode == ObjectiveMode::gamma_diff) {
        LinExpr obj;
        obj.add(lo.gamma_ir, 1.0).add(lo.gamma_er, -1.0);
        pb.set_objective_max(obj);
    } else {
        pb.set_objective_max(LinExpr::var(lo.gamma));
    }

    // Rate-difference surrogate row: gamma <= c - log2(1+g~) - (gamma_er - g~)/((1+g~) ln2).
    // Emitted as an equality in gamma_diff mode (gamma is otherwise untethered).
    {
        const double gt = pt.gamma_er;
        const double slope = 1.0 / ((1.0 + gt) * kLn2);
        LinExpr row(-std::log2(1.0 + gt) + slope * gt);
        row.add(lo.c, 1.0).add(lo.gamma_er, -slope).add(lo.gamma, -1.0);
        if (scfg.objective_mode == ObjectiveMode::gamma_diff) {
            pb.add_zero(row, "rate_diff_surrogate");
        } else {
            pb.add_nonneg(row, "rate_diff_surrogate");
        }
    }
    pb.add_nonneg(LinExpr::var(lo.c), "c_nonneg");

    // ---- Information-receiver chain ----
    {
        LinExpr row = taylor_quadratic_minorant(ch.h_ir, pt.w_ir, lo.w_ir);
        row.add(lo.s_ir, -1.0);
        pb.add_nonneg(row, "ir_signal_minorant");
    }
    {
        LinExpr row = quad_over_lin_minorant(pt.mu_ir, pt.eta_ir, lo.mu_ir, lo.eta_ir);
        row.add(lo.gamma_ir, -1.0);
        // Row normalized to O(1): its physical magnitude is the SINR itself.
        pb.add_nonneg((1.0 / ref[lo.gamma_ir]) * row, "ir_sinr_minorant");
    }
    for (int m = 0; m < cfg.m; ++m) {
        pb.add_soc({LinExpr::var(lo.s_mu + m), re_inner(ch.h_ir0, lo.w_mu[m]),
                    im_inner(ch.h_ir0, lo.w_mu[m])},
                   "ir_macro_leak_" + std::to_string(m));
    }
    if (include_an) {
        pb.add_soc({LinExpr::var(lo.s_an), re_inner(ch.h_ir, lo.v_an), im_inner(ch.h_ir, lo.v_an)},
                   "ir_an_leak");
    }
    {
        // mu_ir^2 <= s_ir against the reference magnitude of s_ir.
        const double t = ref[lo.s_ir];
        add_lemma1(pb, (1.0 / std::sqrt(t)) * LinExpr::var(lo.mu_ir),
                   (1.0 / t) * LinExpr::var(lo.s_ir), LinExpr(1.0), "ir_amplitude");
    }
    {
        // sum s_mu^2 (+ s_an^2) + sigma2 <= eta_ir, balanced by eta's reference.
        const double t = ref[lo.eta_ir];
        const double rt = std::sqrt(t);
        std::vector<LinExpr> entries;
        entries.push_back(LinExpr(1.0) + (1.0 / t) * LinExpr::var(lo.eta_ir));
        for (int m = 0; m < cfg.m; ++m)
            entries.push_back((2.0 / rt) * LinExpr::var(lo.s_mu + m));
        if (include_an) entries.push_back((2.0 / rt) * LinExpr::var(lo.s_an));
        entries.push_back(LinExpr(2.0 * std::sqrt(cfg.sigma2_ir) / rt));
        entries.push_back(LinExpr(-1.0) + (1.0 / t) * LinExpr::var(lo.eta_ir));
        pb.add_soc(std::move(entries), "ir_denominator");
    }

    // ---- Eavesdropper chain ----
    for (int k = 0; k < cfg.k; ++k) {
        pb.add_soc({LinExpr::var(lo.t_er + k), re_inner(ch.g_er[k], lo.w_ir),
                    im_inner(ch.g_er[k], lo.w_ir)},
                   "er_info_amp_" + std::to_string(k));
        for (int m = 0; m < cfg.m; ++m) {
            LinExpr row = taylor_quadratic_minorant(ch.g_er0[k], pt.w_mu[m], lo.w_mu[m]);
            row.add(lo.t_er0 + k * cfg.m + m, -1.0);
            pb.add_nonneg(row, "er_macro_minorant_" + std::to_string(k) + "_" + std::to_string(m));
        }
        if (include_an) {
            LinExpr row = taylor_quadratic_minorant(ch.g_er[k], v_tilde, lo.v_an);
            row.add(lo.t_an + k, -1.0);
            pb.add_nonneg(row, "er_an_minorant_" + std::to_string(k));
        }
        LinExpr b_k(cfg.sigma2_er[k]);
        for (int m = 0; m < cfg.m; ++m) b_k.add(lo.t_er0 + k * cfg.m + m, 1.0);
        if (include_an) b_k.add(lo.t_an + k, 1.0);
        // t_er^2 <= gamma_er * b_k balanced by the references of both factors.
        const double tx = ref[lo.gamma_er];
        const double ty = ref[lo.t_er + k] * ref[lo.t_er + k] / tx;
        add_lemma1(pb, (1.0 / std::sqrt(tx * ty)) * LinExpr::var(lo.t_er + k),
                   (1.0 / tx) * LinExpr::var(lo.gamma_er), (1.0 / ty) * b_k,
                   "er_sinr_cap_" + std::to_string(k));
    }
    if (cfg.k == 0) {
        pb.add_nonneg(LinExpr::var(lo.gamma_er), "gamma_er_nonneg");
    }

    // ---- Macro-user SINR floors (exact second-order cone form) ----
    for (int m = 0; m < cfg.m; ++m) {
        std::vector<LinExpr> entries;
        entries.push_back((1.0 / std::sqrt(cfg.gamma_mu[m])) * re_inner(ch.h_mu[m], lo.w_mu[m]));
        for (int i = 0; i < cfg.m; ++i) {
            if (i == m) continue;
            entries.push_back(re_inner(ch.h_mu[m], lo.w_mu[i]));
            entries.push_back(im_inner(ch.h_mu[m], lo.w_mu[i]));
        }
        entries.push_back(re_inner(ch.l_mu[m], lo.w_ir));
        entries.push_back(im_inner(ch.l_mu[m], lo.w_ir));
        if (include_an) {
            entries.push_back(re_inner(ch.l_mu[m], lo.v_an));
            entries.push_back(im_inner(ch.l_mu[m], lo.v_an));
        }
        entries.push_back(LinExpr(std::sqrt(cfg.sigma2_mu[m])));
        pb.add_soc(std::move(entries), "mu_sinr_" + std::to_string(m));
        pb.add_zero(im_inner(ch.h_mu[m], lo.w_mu[m]), "mu_phase_" + std::to_string(m));
    }

    // ---- Energy harvesting floors ----
    for (int k = 0; k < cfg.k; ++k) {
        LinExpr row(cfg.xi * cfg.sigma2_er[k] - cfg.q_eh[k]);
        if (scfg.eh_mode == EhMode::separated || !include_an) {
            row += cfg.xi * taylor_quadratic_minorant(ch.g_er[k], pt.w_ir, lo.w_ir);
            if (include_an) {
                row += cfg.xi * taylor_quadratic_minorant(ch.g_er[k], v_tilde, lo.v_an);
            }
        } else {
            // As-printed variant: minorant of the coherent sum |g^H (w_ir + v_an)|^2.
            const std::complex<double> u = ch.g_er[k].dot(pt.w_ir + v_tilde);
            LinExpr re_sum = re_inner(ch.g_er[k], lo.w_ir) + re_inner(ch.g_er[k], lo.v_an);
            LinExpr im_sum = im_inner(ch.g_er[k], lo.w_ir) + im_inner(ch.g_er[k], lo.v_an);
            LinExpr joint = 2.0 * u.real() * re_sum + 2.0 * u.imag() * im_sum;
            joint.constant -= std::norm(u);
            row += cfg.xi * joint;
        }
        pb.add_nonneg(row, "eh_floor_" + std::to_string(k));
    }

    // ---- Total power budget ----
    {
        std::vector<LinExpr> entries;
        entries.push_back(LinExpr(std::sqrt(cfg.p_th)));
        for (int m = 0; m < cfg.m; ++m) push_lift(entries, lo.w_mu[m], cfg.n_m);
        push_lift(entries, lo.w_ir, cfg.n_f);
        if (include_an) push_lift(entries, lo.v_an, cfg.n_f);
        pb.add_soc(std::move(entries), "power_budget");
    }

    // ---- Rate exponential chain ----
    add_exp_soc_block(pb, lo.c, lo.gamma_ir, lo.tau, scfg.q, "exp_chain",
                      ref.segment(lo.tau, scfg.q + 4));

    ConicProgram prog = pb.build();
    // Column scaling: the solver works on x_hat = x ./ ref, so its iterates
    // are O(1) at the expansion point no matter how wide the SINR range is.
    prog.a = prog.a * ref.asDiagonal();
    prog.c = prog.c.cwiseProduct(ref);
    // Unit-magnitude objective (a positive rescaling leaves the optimizer
    // unchanged; the physical objective is recomputed from the solution).
    const double c_inf = prog.c.cwiseAbs().maxCoeff();
    if (c_inf > 0.0) prog.c /= c_inf;
    return Subproblem{std::move(prog), lo, ref};
}

BeamformingSolution extract_solution(const VectorXd& x, const SubproblemLayout& layout) {
    BeamformingSolution s;
    s.w_mu.resize(layout.m);
    for (int m = 0; m < layout.m; ++m) s.w_mu[m] = read_lift(x, layout.w_mu[m], layout.n_m);
    s.w_ir = read_lift(x, layout.w_ir, layout.n_f);
    if (layout.include_an) s.v_an = read_lift(x, layout.v_an, layout.n_f);
    return s;
}

// ---------------------------------------------------------------------------
// Phase-1 initialization
// ---------------------------------------------------------------------------

namespace {

struct PowerMinResult {
    bool ok = false;
    std::vector<VectorXcd> w_mu;
    double power = 0.0;
    std::string reason;
};

// Minimum total macro power meeting every MU SINR floor, with the femto
// transmit vectors held fixed (their interference enters as constants).
PowerMinResult solve_macro_power_min(const ChannelSet& ch, const NetworkConfig& cfg,
                                     const VectorXcd& w_ir_fixed, const VectorXcd& v_an_fixed,
                                     const SolverSettings& solver) {
    ProgramBuilder pb;
    std::vector<int> off(cfg.m);
    for (int m = 0; m < cfg.m; ++m) {
        off[m] = pb.num_vars();
        pb.add_vars("w_mu" + std::to_string(m), lift_width(cfg.n_m));
    }
    const int p = pb.add_var("p_norm");
    pb.set_objective_min(LinExpr::var(p));
    {
        std::vector<LinExpr> entries;
        entries.push_back(LinExpr::var(p));
        for (int m = 0; m < cfg.m; ++m) push_lift(entries, off[m], cfg.n_m);
        pb.add_soc(std::move(entries), "total_norm");
    }
    for (int m = 0; m < cfg.m; ++m) {
        std::vector<LinExpr> entries;
        // Slightly inflated floors leave margin for the feasibility audit.
        const double target = cfg.gamma_mu[m] * (1.0 + 1e-6);
        entries.push_back((1.0 / std::sqrt(target)) * re_inner(ch.h_mu[m], off[m]));
        for (int i = 0; i < cfg.m; ++i) {
            if (i == m) continue;
            entries.push_back(re_inner(ch.h_mu[m], off[i]));
            entries.push_back(im_inner(ch.h_mu[m], off[i]));
        }
        const std::complex<double> fw = ch.l_mu[m].dot(w_ir_fixed);
        const std::complex<double> fv =
            (v_an_fixed.size() > 0) ? ch.l_mu[m].dot(v_an_fixed) : std::complex<double>(0, 0);
        entries.push_back(LinExpr(fw.real()));
        entries.push_back(LinExpr(fw.imag()));
        entries.push_back(LinExpr(fv.real()));
        entries.push_back(LinExpr(fv.imag()));
        entries.push_back(LinExpr(std::sqrt(cfg.sigma2_mu[m])));
        pb.add_soc(std::move(entries), "mu_sinr_" + std::to_string(m));
        pb.add_zero(im_inner(ch.h_mu[m], off[m]), "mu_phase_" + std::to_string(m));
    }

    PowerMinResult out;
    const SolveResult sr = solve_socp(pb.build(), solver);
    if (sr.status != SolveStatus::optimal) {
        out.reason = std::string("macro power minimization: ") + to_string(sr.status);
        return out;
    }
    out.ok = true;
    out.w_mu.resize(cfg.m);
    double power = 0.0;
    for (int m = 0; m < cfg.m; ++m) {
        out.w_mu[m] = read_lift(sr.x, off[m], cfg.n_m);
        power += out.w_mu[m].squaredNorm();
    }
    out.power = power;
    return out;
}

// Minimum-norm AN vector whose projection on every ER channel meets the
// amplitude target: Re(g_k^H v) >= need_k (a phase-restricted, hence convex,
// sufficient condition for |g_k^H v|^2 >= need_k^2). Optionally keeps v
// orthogonal to the IR channel so the AN does not jam the legitimate link.
struct AnCover {
    bool ok = false;
    VectorXcd v;
};

AnCover design_an_cover(const ChannelSet& ch, const NetworkConfig& cfg,
                        const VectorXd& need, const SolverSettings& solver, bool orthogonal) {
    ProgramBuilder pb;
    pb.add_vars("v", lift_width(cfg.n_f));
    const int t = pb.add_var("t_norm");
    pb.set_objective_min(LinExpr::var(t));
    {
        std::vector<LinExpr> entries;
        entries.push_back(LinExpr::var(t));
        push_lift(entries, 0, cfg.n_f);
        pb.add_soc(std::move(entries), "an_norm");
    }
    for (int k = 0; k < cfg.k; ++k) {
        LinExpr row = re_inner(ch.g_er[k], 0);
        row.constant -= need[k];
        pb.add_nonneg(row, "er_amp_" + std::to_string(k));
    }
    if (orthogonal) {
        pb.add_zero(re_inner(ch.h_ir, 0), "ir_orth_re");
        pb.add_zero(im_inner(ch.h_ir, 0), "ir_orth_im");
    }
    AnCover out;
    const SolveResult sr = solve_socp(pb.build(), solver);
    if (sr.status != SolveStatus::optimal) return out;
    out.ok = true;
    out.v = read_lift(sr.x, 0, cfg.n_f);
    return out;
}

} // namespace

InitResult initialize(const ChannelSet& ch, const NetworkConfig& cfg, const ScaConfig& scfg,
                      const SolverSettings& solver, bool include_an) {
    cfg.validate();
    scfg.validate();
    InitResult out;

    const VectorXcd w_ir_dir = ch.h_ir.normalized(); // matched filter
    VectorXcd v_dir = VectorXcd::Zero(cfg.n_f);
    if (include_an && cfg.k > 0) {
        // Dominant direction of the ER channel energy, orthogonal to the IR link.
        const Eigen::MatrixXcd proj =
            Eigen::MatrixXcd::Identity(cfg.n_f, cfg.n_f) - w_ir_dir * w_ir_dir.adjoint();
        Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(cfg.n_f, cfg.n_f);
        for (int k = 0; k < cfg.k; ++k) {
            const VectorXcd pg = proj * ch.g_er[k];
            s += pg * pg.adjoint();
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(s);
        v_dir = eig.eigenvectors().col(cfg.n_f - 1);
        const double v_energy = eig.eigenvalues()(cfg.n_f - 1);
        if (!(v_energy > 0.0)) v_dir.setZero();
    }

    VectorXcd w_ir = VectorXcd::Zero(cfg.n_f);
    VectorXcd v_an = VectorXcd::Zero(cfg.n_f);
    std::vector<VectorXcd> w_mu;
    // Share of the femto slack given to the information beam. Shrinks whenever
    // the femto pair turns out too loud for the macro tier to absorb.
    double femto_frac = 1.0;

    for (int round = 1; round <= 20; ++round) {
        out.rounds = round;
        const PowerMinResult pm = solve_macro_power_min(ch, cfg, w_ir, v_an, solver);
        if (!pm.ok) {
            out.reason = pm.reason;
            return out;
        }
        w_mu = pm.w_mu;
        const double p_rem = cfg.p_th - pm.power;
        if (!(p_rem > 1e-12 * cfg.p_th)) {
            if (round > 1 && femto_frac > 1e-9) {
                // The previous femto pair drowned the macro users. Quiet it and
                // let both tiers renegotiate with a smaller femto share.
                femto_frac *= 0.25;
                w_ir *= 0.5;
                v_an *= 0.5;
                continue;
            }
            out.reason = "macro users exhaust the power budget";
            return out;
        }

        // Split the femto budget between the information beam and AN so every
        // harvester floor holds.
        double f_info = 0.0;
        if (cfg.k == 0) {
            f_info = 0.5 * femto_frac * p_rem;
            v_an.setZero();
        } else if (include_an) {
            // Let the AN alone carry the harvester floors (with margin), via a
            // minimum-norm covering design; the info beam takes the remainder.
            VectorXd need(cfg.k);
            bool any_need = false;
            for (int k = 0; k < cfg.k; ++k) {
                const double r_k = cfg.q_eh[k] / cfg.xi - cfg.sigma2_er[k];
                need[k] = r_k > 0.0 ? std::sqrt(r_k) * (1.0 + 1e-4) : 0.0;
                any_need = any_need || need[k] > 0.0;
            }
            if (!any_need) {
                // No EH pressure; still seed a nonzero AN along the dominant ER
                // direction so its quadratic minorants have a live gradient.
                v_an = std::sqrt(0.05 * p_rem) * v_dir;
            } else {
                AnCover cover = design_an_cover(ch, cfg, need, solver, /*orthogonal=*/true);
                if (!cover.ok || cover.v.squaredNorm() > 0.95 * p_rem) {
                    cover = design_an_cover(ch, cfg, need, solver, /*orthogonal=*/false);
                }
                if (!cover.ok) {
                    out.reason = "harvester covering design failed";
                    return out;
                }
                if (cover.v.squaredNorm() > 0.95 * p_rem) {
                    out.reason = "harvester floors unreachable within the remaining budget";
                    return out;
                }
                v_an = cover.v;
            }
            f_info = femto_frac * (p_rem - v_an.squaredNorm());
        } else {
            double f_min = 0.0;
            for (int k = 0; k < cfg.k; ++k) {
                const double a_k = std::norm(ch.g_er[k].dot(w_ir_dir));
                const double r_k = cfg.q_eh[k] / cfg.xi - cfg.sigma2_er[k];
                if (r_k <= 0.0) continue;
                if (a_k <= 0.0) {
                    out.reason = "harvester floor unreachable without artificial noise";
                    return out;
                }
                f_min = std::max(f_min, (r_k / a_k) * (1.0 + 1e-4));
            }
            if (f_min > p_rem) {
                out.reason = "harvester floors unreachable within the remaining budget";
                return out;
            }
            f_info = f_min + 0.5 * femto_frac * (p_rem - f_min);
            v_an.setZero();
        }
        f_info = std::max(f_info, 1e-9 * cfg.p_th); // keep the beam gradient alive

        w_ir = std::sqrt(f_info) * w_ir_dir;

        BeamformingSolution cand;
        cand.w_mu = w_mu;
        cand.w_ir = w_ir;
        cand.v_an = v_an;
        const ConstraintAudit audit = audit_solution(cand, ch, cfg, 1e-8);
        if (audit.feasible) {
            out.feasible = true;
            out.solution = cand;
            out.point.w_mu = w_mu;
            out.point.w_ir = w_ir;
            out.point.v_an = include_an ? v_an : VectorXcd();
            out.point.mu_ir = std::abs(ch.h_ir.dot(w_ir));
            double eta = cfg.sigma2_ir + std::norm(ch.h_ir.dot(v_an));
            for (int m = 0; m < cfg.m; ++m) eta += std::norm(ch.h_ir0.dot(w_mu[m]));
            out.point.eta_ir = eta;
            double ge = 0.0;
            for (int k = 0; k < cfg.k; ++k) ge = std::max(ge, sinr_er(cand, ch, cfg, k));
            out.point.gamma_er = ge;
            return out;
        }
        // Otherwise loop: the macro problem re-solves against the updated
        // femto interference until the joint point audits clean.
    }
    out.reason = "initialization failed to stabilize within 20 rounds";
    return out;
}

// ---------------------------------------------------------------------------
// Outer successive-convex-approximation loop
// ---------------------------------------------------------------------------

const char* to_string(ScaStatus s) {
    switch (s) {
        case ScaStatus::converged: return "converged";
        case ScaStatus::max_iters: return "max_iters";
        case ScaStatus::solver_failure: return "solver_failure";
        case ScaStatus::init_infeasible: return "init_infeasible";
    }
    return "unknown";
}

ScaResult run_sca(const ChannelSet& ch, const NetworkConfig& cfg, const ScaConfig& scfg,
                  const SolverSettings& solver, bool include_an) {
    ScaResult out;
    const InitResult init = initialize(ch, cfg, scfg, solver, include_an);
    if (!init.feasible) {
        out.status = ScaStatus::init_infeasible;
        out.message = init.reason;
        return out;
    }

    ExpansionPoint pt = init.point;
    out.solution = init.solution;
    out.status = ScaStatus::max_iters;

    double prev_obj = std::numeric_limits<double>::quiet_NaN();
    for (int iter = 0; iter < scfg.max_iters; ++iter) {
        const Subproblem sp = build_subproblem(ch, cfg, pt, scfg, include_an);
        const SolveResult sr = solve_socp(sp.prog, solver);
        if (sr.status != SolveStatus::optimal) {
            out.status = ScaStatus::solver_failure;
            out.message = std::string("subproblem solve: ") + to_string(sr.status);
            break;
        }

        const VectorXd xp = sp.unscale(sr.x);
        const BeamformingSolution sol = extract_solution(xp, sp.layout);
        const double gamma_ir = xp[sp.layout.gamma_ir];
        const double gamma_er = xp[sp.layout.gamma_er];
        const double obj = (scfg.objective_mode == ObjectiveMode::gamma_diff)
                               ? gamma_ir - gamma_er
                               : xp[sp.layout.gamma];

        ScaIteration row;
        row.objective = obj;
        row.secrecy_rate = secrecy_rate(sol, ch, cfg);
        row.solver_iters = sr.iters;
        row.solver_status = sr.status;
        row.point = pt;
        out.iterations.push_back(std::move(row));
        out.solution = sol;

        if (iter > 0) {
            const double allowed_drop = 10.0 * solver.gap_tol * std::max(1.0, std::abs(prev_obj));
            if (obj < prev_obj - allowed_drop) out.monotone_anomaly = true;
            if (std::abs(obj - prev_obj) <= scfg.eps * std::max(1.0, std::abs(prev_obj))) {
                out.status = ScaStatus::converged;
                prev_obj = obj;
                break;
            }
        }
        prev_obj = obj;

        // Next expansion point from the optimizer (guarding positivity).
        pt.w_mu = sol.w_mu;
        pt.w_ir = sol.w_ir;
        pt.v_an = include_an ? sol.v_an : VectorXcd();
        double mu = xp[sp.layout.mu_ir];
        if (!(mu > 0.0)) mu = std::abs(ch.h_ir.dot(sol.w_ir));
        double eta = xp[sp.layout.eta_ir];
        if (!(eta > 0.0)) eta = cfg.sigma2_ir;
        pt.mu_ir = std::max(mu, 1e-9 * std::sqrt(cfg.sigma2_ir));
        pt.eta_ir = std::max(eta, 0.5 * cfg.sigma2_ir);
        pt.gamma_er = std::max(gamma_er, 0.0);
    }

    out.audit = audit_solution(out.solution, ch, cfg, 1e-6);
    out.secrecy_rate = secrecy_rate(out.solution, ch, cfg, &out.secrecy_clamped);
    return out;
}

} // namespace secswipt
