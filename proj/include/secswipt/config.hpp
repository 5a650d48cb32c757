#ifndef SECSWIPT_CONFIG_HPP
#define SECSWIPT_CONFIG_HPP

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace secswipt {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double watts_to_dbm(double w) { return 10.0 * std::log10(w) + 30.0; }

// Large-scale propagation: beta(d) = 10^-((intercept + slope*log10(d_km))/10),
// log-normal shadowing applied as an amplitude factor 10^(X/20), X ~ N(0, sigma^2),
// and a fixed antenna gain applied as an amplitude factor 10^(G/20).
struct PropagationParams {
    double pathloss_intercept_db = 128.1;
    double pathloss_slope_db = 37.6;
    double shadow_sigma_db = 8.0;
    double antenna_gain_db = 15.0;
};

// Two-tier scenario: one macro BS (n_m antennas, m cellular users), one femto BS
// (n_f antennas) serving a single information receiver plus k energy receivers
// that double as potential eavesdroppers. All powers in watts, ratios linear.
struct NetworkConfig {
    int n_m = 10;
    int n_f = 4;
    int m = 2;
    int k = 2;

    Eigen::VectorXd gamma_mu;   // per-MU SINR floor, linear
    Eigen::VectorXd q_eh;       // per-ER harvested-energy floor, watts
    double p_th = dbm_to_watts(40.0);
    double xi = 0.6;            // energy conversion efficiency

    Eigen::VectorXd sigma2_mu;  // per-MU noise power, watts
    double sigma2_ir = dbm_to_watts(-100.0);
    Eigen::VectorXd sigma2_er;  // per-ER noise power, watts

    // Link distances in meters (converted to km inside the path-loss law).
    double d_mbs_m = 60.0;      // MBS to every MU / IR / ER
    double d_fbs_mu_m = 30.0;
    double d_fbs_ir_m = 20.0;
    double d_fbs_er_m = 5.0;

    PropagationParams prop;

    void validate() const;
};

enum class EhMode { separated, as_printed };
enum class ObjectiveMode { gamma_diff, gamma };

struct ScaConfig {
    double eps = 1e-4;          // relative objective-change stop
    int max_iters = 30;
    int q = 6;                  // exponential-block depth
    EhMode eh_mode = EhMode::separated;
    ObjectiveMode objective_mode = ObjectiveMode::gamma;

    void validate() const;
};

struct ExperimentConfig {
    int trials = 50;
    std::uint64_t base_seed = 1;
    std::vector<std::string> schemes = {"proposed", "no_an", "zf"};
    std::vector<double> p_th_sweep_dbm = {20, 25, 30, 35, 40, 45};
    std::vector<int> k_sweep = {1, 2, 3, 4};
    std::string out_dir = "out";
    int threads = 0;            // 0 = hardware concurrency
    bool write_traces = false;

    void validate() const;
};

struct SolverSettings; // socp_solver.hpp

// Flat dotted-key config ("network.n_m = 10"). Unknown keys are rejected so a
// typo cannot silently fall back to a default. dB-valued keys end in _db/_dbm
// and are converted to linear/watts exactly once, in the typed views below.
class KeyValueConfig {
public:
    static KeyValueConfig defaults();
    static KeyValueConfig from_file(const std::string& path);
    static KeyValueConfig from_string(const std::string& text);

    void set(const std::string& key, const std::string& value);
    const std::string& get(const std::string& key) const;
    bool has(const std::string& key) const;

    double get_double(const std::string& key) const;
    int get_int(const std::string& key) const;
    std::uint64_t get_u64(const std::string& key) const;
    std::vector<double> get_double_list(const std::string& key) const;
    std::vector<int> get_int_list(const std::string& key) const;
    std::vector<std::string> get_string_list(const std::string& key) const;

    NetworkConfig network() const;
    ScaConfig sca() const;
    SolverSettings solver() const;
    ExperimentConfig experiment() const;

    // Canonical "key = value" echo, sorted by key.
    std::string to_string() const;
    const std::map<std::string, std::string>& entries() const { return values_; }

private:
    std::map<std::string, std::string> values_;
};

} // namespace secswipt

#endif
