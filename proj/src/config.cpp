#include "secswipt/config.hpp"
#include "secswipt/socp_solver.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

namespace secswipt {
namespace {

std::string trim(const std::string& s)
{
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& s)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

Eigen::VectorXd fill_vector(int n, double value)
{
    return Eigen::VectorXd::Constant(n, value);
}

} // namespace

void NetworkConfig::validate() const
{
    if (n_m < 1 || n_f < 1) throw ConfigError("antenna counts must be positive");
    if (m < 1) throw ConfigError("need at least one macro user");
    if (k < 0) throw ConfigError("energy-receiver count must be non-negative");
    if (n_m < m) throw ConfigError("n_m must be >= m");
    if (gamma_mu.size() != m) throw ConfigError("gamma_mu size mismatch");
    if (q_eh.size() != k) throw ConfigError("q_eh size mismatch");
    if (sigma2_mu.size() != m) throw ConfigError("sigma2_mu size mismatch");
    if (sigma2_er.size() != k) throw ConfigError("sigma2_er size mismatch");
    if ((gamma_mu.array() <= 0).any()) throw ConfigError("SINR targets must be positive");
    if (k > 0 && (q_eh.array() <= 0).any()) throw ConfigError("EH thresholds must be positive");
    if (p_th <= 0) throw ConfigError("power budget must be positive");
    if (xi <= 0 || xi > 1) throw ConfigError("xi must lie in (0, 1]");
    if ((sigma2_mu.array() <= 0).any() || sigma2_ir <= 0 ||
        (k > 0 && (sigma2_er.array() <= 0).any()))
        throw ConfigError("noise powers must be positive");
    for (double d : {d_mbs_m, d_fbs_mu_m, d_fbs_ir_m, d_fbs_er_m})
        if (d <= 0) throw ConfigError("distances must be positive");
}

void ScaConfig::validate() const
{
    if (eps <= 0) throw ConfigError("sca.eps must be positive");
    if (max_iters < 1) throw ConfigError("sca.max_iters must be positive");
    if (q < 2 || q > 20) throw ConfigError("sca.q out of range [2, 20]");
}

void ExperimentConfig::validate() const
{
    if (trials < 1) throw ConfigError("experiment.trials must be positive");
    if (schemes.empty()) throw ConfigError("experiment.schemes must not be empty");
    for (const auto& s : schemes)
        if (s != "proposed" && s != "no_an" && s != "zf")
            throw ConfigError("unknown scheme '" + s + "'");
    if (p_th_sweep_dbm.empty()) throw ConfigError("experiment.p_th_sweep_dbm must not be empty");
    if (k_sweep.empty()) throw ConfigError("experiment.k_sweep must not be empty");
    for (int k : k_sweep)
        if (k < 0) throw ConfigError("experiment.k_sweep entries must be non-negative");
    if (threads < 0) throw ConfigError("experiment.threads must be >= 0");
}

KeyValueConfig KeyValueConfig::defaults()
{
    KeyValueConfig c;
    auto& v = c.values_;
    v["network.n_m"] = "10";
    v["network.n_f"] = "4";
    v["network.m"] = "2";
    v["network.k"] = "2";
    v["network.gamma_mu_db"] = "-10";
    v["network.p_th_dbm"] = "40";
    v["network.q_eh_dbm"] = "15";
    v["network.xi"] = "0.6";
    v["network.noise_mu_dbm"] = "-100";
    v["network.noise_ir_dbm"] = "-100";
    v["network.noise_er_dbm"] = "-100";
    v["network.d_mbs_m"] = "60";
    v["network.d_fbs_mu_m"] = "30";
    v["network.d_fbs_ir_m"] = "20";
    v["network.d_fbs_er_m"] = "5";
    v["channel.pathloss_intercept_db"] = "128.1";
    v["channel.pathloss_slope_db"] = "37.6";
    v["channel.shadow_sigma_db"] = "8";
    v["channel.antenna_gain_db"] = "15";
    v["sca.eps"] = "1e-4";
    v["sca.max_iters"] = "30";
    v["sca.q"] = "6";
    v["sca.eh_mode"] = "separated";
    v["sca.objective_mode"] = "gamma";
    v["solver.feas_tol"] = "1e-8";
    v["solver.gap_tol"] = "1e-8";
    v["solver.max_iters"] = "200";
    v["solver.static_reg"] = "1e-8";
    v["solver.equilibrate"] = "1";
    v["experiment.trials"] = "50";
    v["experiment.base_seed"] = "1";
    v["experiment.schemes"] = "proposed,no_an,zf";
    v["experiment.p_th_sweep_dbm"] = "20,25,30,35,40,45";
    v["experiment.k_sweep"] = "1,2,3,4";
    v["experiment.out_dir"] = "out";
    v["experiment.threads"] = "0";
    v["experiment.write_traces"] = "0";
    return c;
}

KeyValueConfig KeyValueConfig::from_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return from_string(ss.str());
}

KeyValueConfig KeyValueConfig::from_string(const std::string& text)
{
    KeyValueConfig c = defaults();
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected 'key = value'");
        c.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return c;
}

void KeyValueConfig::set(const std::string& key, const std::string& value)
{
    auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError("unknown config key '" + key + "'");
    it->second = value;
}

const std::string& KeyValueConfig::get(const std::string& key) const
{
    auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError("unknown config key '" + key + "'");
    return it->second;
}

bool KeyValueConfig::has(const std::string& key) const
{
    return values_.count(key) != 0;
}

double KeyValueConfig::get_double(const std::string& key) const
{
    const std::string& s = get(key);
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': cannot parse '" + s + "' as number");
    }
}

int KeyValueConfig::get_int(const std::string& key) const
{
    double v = get_double(key);
    int i = static_cast<int>(std::llround(v));
    if (std::abs(v - i) > 1e-9)
        throw ConfigError("key '" + key + "': expected integer, got '" + get(key) + "'");
    return i;
}

std::uint64_t KeyValueConfig::get_u64(const std::string& key) const
{
    const std::string& s = get(key);
    try {
        std::size_t pos = 0;
        std::uint64_t v = std::stoull(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': cannot parse '" + s + "' as unsigned integer");
    }
}

std::vector<double> KeyValueConfig::get_double_list(const std::string& key) const
{
    std::vector<double> out;
    for (const auto& item : split_list(get(key))) {
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw ConfigError("key '" + key + "': cannot parse list entry '" + item + "'");
        }
    }
    return out;
}

std::vector<int> KeyValueConfig::get_int_list(const std::string& key) const
{
    std::vector<int> out;
    for (double v : get_double_list(key)) out.push_back(static_cast<int>(std::llround(v)));
    return out;
}

std::vector<std::string> KeyValueConfig::get_string_list(const std::string& key) const
{
    return split_list(get(key));
}

NetworkConfig KeyValueConfig::network() const
{
    NetworkConfig n;
    n.n_m = get_int("network.n_m");
    n.n_f = get_int("network.n_f");
    n.m = get_int("network.m");
    n.k = get_int("network.k");
    n.gamma_mu = fill_vector(n.m, db_to_linear(get_double("network.gamma_mu_db")));
    n.q_eh = fill_vector(n.k, dbm_to_watts(get_double("network.q_eh_dbm")));
    n.p_th = dbm_to_watts(get_double("network.p_th_dbm"));
    n.xi = get_double("network.xi");
    n.sigma2_mu = fill_vector(n.m, dbm_to_watts(get_double("network.noise_mu_dbm")));
    n.sigma2_ir = dbm_to_watts(get_double("network.noise_ir_dbm"));
    n.sigma2_er = fill_vector(n.k, dbm_to_watts(get_double("network.noise_er_dbm")));
    n.d_mbs_m = get_double("network.d_mbs_m");
    n.d_fbs_mu_m = get_double("network.d_fbs_mu_m");
    n.d_fbs_ir_m = get_double("network.d_fbs_ir_m");
    n.d_fbs_er_m = get_double("network.d_fbs_er_m");
    n.prop.pathloss_intercept_db = get_double("channel.pathloss_intercept_db");
    n.prop.pathloss_slope_db = get_double("channel.pathloss_slope_db");
    n.prop.shadow_sigma_db = get_double("channel.shadow_sigma_db");
    n.prop.antenna_gain_db = get_double("channel.antenna_gain_db");
    n.validate();
    return n;
}

ScaConfig KeyValueConfig::sca() const
{
    ScaConfig s;
    s.eps = get_double("sca.eps");
    s.max_iters = get_int("sca.max_iters");
    s.q = get_int("sca.q");
    const std::string& eh = get("sca.eh_mode");
    if (eh == "separated") s.eh_mode = EhMode::separated;
    else if (eh == "as_printed") s.eh_mode = EhMode::as_printed;
    else throw ConfigError("sca.eh_mode must be 'separated' or 'as_printed'");
    const std::string& obj = get("sca.objective_mode");
    if (obj == "gamma_diff") s.objective_mode = ObjectiveMode::gamma_diff;
    else if (obj == "gamma") s.objective_mode = ObjectiveMode::gamma;
    else throw ConfigError("sca.objective_mode must be 'gamma_diff' or 'gamma'");
    s.validate();
    return s;
}

SolverSettings KeyValueConfig::solver() const
{
    SolverSettings s;
    s.feas_tol = get_double("solver.feas_tol");
    s.gap_tol = get_double("solver.gap_tol");
    s.max_iters = get_int("solver.max_iters");
    s.static_reg = get_double("solver.static_reg");
    s.equilibrate = get_int("solver.equilibrate") != 0;
    s.validate();
    return s;
}

ExperimentConfig KeyValueConfig::experiment() const
{
    ExperimentConfig e;
    e.trials = get_int("experiment.trials");
    e.base_seed = get_u64("experiment.base_seed");
    e.schemes = get_string_list("experiment.schemes");
    e.p_th_sweep_dbm = get_double_list("experiment.p_th_sweep_dbm");
    e.k_sweep = get_int_list("experiment.k_sweep");
    e.out_dir = get("experiment.out_dir");
    e.threads = get_int("experiment.threads");
    e.write_traces = get_int("experiment.write_traces") != 0;
    e.validate();
    return e;
}

std::string KeyValueConfig::to_string() const
{
    std::ostringstream out;
    for (const auto& [k, v] : values_) out << k << " = " << v << "\n";
    return out.str();
}

} // namespace secswipt
