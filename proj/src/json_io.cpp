#include "secswipt/json_io.hpp"

#include <stdexcept>

namespace secswipt {

using nlohmann::json;

json complex_vector_to_json(const Eigen::VectorXcd& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i)
        out.push_back({v[i].real(), v[i].imag()});
    return out;
}

Eigen::VectorXcd complex_vector_from_json(const json& j) {
    if (!j.is_array()) throw std::invalid_argument("complex vector: expected an array");
    Eigen::VectorXcd v(static_cast<Eigen::Index>(j.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const json& p = j[static_cast<std::size_t>(i)];
        if (!p.is_array() || p.size() != 2)
            throw std::invalid_argument("complex vector: expected [re, im] pairs");
        v[i] = {p[0].get<double>(), p[1].get<double>()};
    }
    return v;
}

namespace {

json vectors_to_json(const std::vector<Eigen::VectorXcd>& vs) {
    json out = json::array();
    for (const auto& v : vs) out.push_back(complex_vector_to_json(v));
    return out;
}

std::vector<Eigen::VectorXcd> vectors_from_json(const json& j) {
    if (!j.is_array()) throw std::invalid_argument("expected an array of complex vectors");
    std::vector<Eigen::VectorXcd> out;
    out.reserve(j.size());
    for (const auto& e : j) out.push_back(complex_vector_from_json(e));
    return out;
}

} // namespace

json channel_set_to_json(const ChannelSet& ch) {
    return json{{"h_mu", vectors_to_json(ch.h_mu)},
                {"h_ir0", complex_vector_to_json(ch.h_ir0)},
                {"g_er0", vectors_to_json(ch.g_er0)},
                {"h_ir", complex_vector_to_json(ch.h_ir)},
                {"g_er", vectors_to_json(ch.g_er)},
                {"l_mu", vectors_to_json(ch.l_mu)}};
}

ChannelSet channel_set_from_json(const json& j) {
    ChannelSet ch;
    ch.h_mu = vectors_from_json(j.at("h_mu"));
    ch.h_ir0 = complex_vector_from_json(j.at("h_ir0"));
    ch.g_er0 = vectors_from_json(j.at("g_er0"));
    ch.h_ir = complex_vector_from_json(j.at("h_ir"));
    ch.g_er = vectors_from_json(j.at("g_er"));
    ch.l_mu = vectors_from_json(j.at("l_mu"));
    return ch;
}

json solution_to_json(const BeamformingSolution& s) {
    return json{{"w_mu", vectors_to_json(s.w_mu)},
                {"w_ir", complex_vector_to_json(s.w_ir)},
                {"v_an", complex_vector_to_json(s.v_an)}};
}

BeamformingSolution solution_from_json(const json& j) {
    BeamformingSolution s;
    s.w_mu = vectors_from_json(j.at("w_mu"));
    s.w_ir = complex_vector_from_json(j.at("w_ir"));
    s.v_an = complex_vector_from_json(j.at("v_an"));
    return s;
}

json audit_to_json(const ConstraintAudit& a) {
    json sinr = json::array();
    for (Eigen::Index i = 0; i < a.sinr_slack.size(); ++i) sinr.push_back(a.sinr_slack[i]);
    json eh = json::array();
    for (Eigen::Index i = 0; i < a.eh_slack.size(); ++i) eh.push_back(a.eh_slack[i]);
    return json{{"sinr_slack", sinr},
                {"power_slack", a.power_slack},
                {"eh_slack", eh},
                {"worst_rel_violation", a.worst_rel_violation},
                {"feasible", a.feasible}};
}

json outcome_to_json(const SchemeOutcome& o) {
    json trace = json::array();
    for (const auto& it : o.sca.iterations) {
        trace.push_back({{"objective", it.objective},
                         {"secrecy_rate", it.secrecy_rate},
                         {"solver_iters", it.solver_iters},
                         {"solver_status", to_string(it.solver_status)}});
    }
    json out{{"scheme", to_string(o.scheme)},
             {"feasible", o.feasible},
             {"secrecy_rate", o.secrecy_rate},
             {"iterations", o.iterations},
             {"worst_violation", o.worst_violation},
             {"message", o.message},
             {"solution", solution_to_json(o.solution)},
             {"audit", audit_to_json(o.audit)}};
    if (!o.sca.iterations.empty()) {
        out["trace"] = std::move(trace);
        out["sca_status"] = to_string(o.sca.status);
        out["monotone_anomaly"] = o.sca.monotone_anomaly;
    }
    return out;
}

} // namespace secswipt
