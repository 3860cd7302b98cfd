#ifndef HWLAB_EXPERIMENTS_HPP
#define HWLAB_EXPERIMENTS_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hwlab/dynamics.hpp"
#include "hwlab/field.hpp"

namespace hwlab {

struct Verdict {
    std::string name;
    bool pass = false;
    std::string threshold_key; // key of the threshold inside the config snapshot
    double threshold = 0.0;
    double measured = 0.0;
};

struct Series {
    std::vector<std::pair<double, double>> points; // strictly increasing abscissas
};

class ExperimentReport {
  public:
    std::string experiment_id;
    std::string config_snapshot; // JSON text of the full parameter record
    std::map<std::string, Series> series;
    std::map<std::string, double> fitted_exponents;
    std::vector<Verdict> verdicts;
    std::string notes;

    // validates strictly increasing abscissas
    void add_series(const std::string& name, std::vector<std::pair<double, double>> points);
    // validates that threshold_key exists in the config snapshot
    void add_verdict(const std::string& name, bool pass, const std::string& threshold_key,
                     double threshold, double measured);
    bool all_pass() const;
    nlohmann::json summary_json() const;
};

// Least-squares slope of log(value) against log(abscissa) over the window
// [t_min, t_max].  Requires at least three window points with positive
// abscissas and values.
double growth_exponent(const std::vector<std::pair<double, double>>& series, double t_min,
                       double t_max);

// Initial-profile description shared by the experiment configs.
struct ProfileSpec {
    std::string kind = "gaussian"; // gaussian | gaussian_normalized | zero_mean_x | file
    double amplitude = 1.0;
    double sigma_x = 1.0;
    double sigma_y = 1.0;
    std::string path; // for kind == "file"
};

Field make_profile(const ProfileSpec& spec, const GridSpec& grid);

struct Lemma1Config {
    double Lx = 20.0, Ly = 20.0;
    int Nx = 256, Ny = 256;
    ProfileSpec profile;
    double a = 1.0;
    double p = 3.0;
    int mu = 1;
    int k = 2;
    std::vector<double> nu_list{0.1, 0.05, 0.025};
    std::vector<double> t_list{0.25, 0.5, 0.75, 1.0};
    double dt = 0.005;
    double window_c1 = 1.0, window_c2 = 1.0;
    double slope_threshold = 0.9;
    int max_workers = 3;

    static Lemma1Config from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
};

ExperimentReport run_lemma1(const Lemma1Config& cfg);

struct InflationConfig {
    std::string mode = "case_i"; // case_i | case_ii
    double p = 7.0;
    double s1 = 1.0, s2 = 0.0;
    int mu = 1;
    double a = 1.0;
    double eps = 0.2;
    double Lx = 20.0, Ly = 20.0;
    int Nx = 512, Ny = 512;
    ProfileSpec profile{"gaussian", 1.0, 1.5, 1.5, ""};
    double dt = 0.01;
    double window_c1 = 1.0, window_c2 = 1.0;
    std::vector<double> nu_list{1e-3, 1e-4, 1e-5, 3e-6};
    int checkpoints = 64;
    double fit_t_min = 6.0;
    double ratio_threshold = 10.0;
    double exponent_tol = 0.2;
    int max_workers = 3;
    // case (ii) only
    double nu_fixed = 0.05;
    std::vector<double> rho_list{4.0, 5.66, 8.0, 11.3, 16.0}; // nu/lambda sweep
    double measure_time = 2.5;
    double pad_Lx = 160.0, pad_Ly = 720.0; // measurement-lattice box (zero padding)

    static InflationConfig case_i_defaults();
    static InflationConfig case_ii_defaults();
    static InflationConfig from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
};

ExperimentReport run_norm_inflation(const InflationConfig& cfg);

struct DecoherenceConfig {
    double p = 3.0;
    int mu = 1;
    double s1 = -1.0, s2 = -1.0;
    double a = 1.0, a_prime = 0.9;
    double eps = 0.1;
    double sigma = 0.1;
    int k = 3;
    std::vector<double> nu_list{0.002, 0.001};
    double Lx = 20.0, Ly = 80.0;
    int Nx = 512, Ny = 512;
    ProfileSpec profile; // default: normalized anisotropic gaussian, sigma_y = 8
    double dt = 0.5;
    double t_factor = M_PI;    // target peak relative phase defining T(a, a')
    double oracle_time = 2.0;  // short-time zero-dispersion cross-check
    double oracle_C = 1.0;
    double delta_factor = 1.5;
    double sep_threshold = 0.5;
    double remainder_drop = 10.0;
    double log_C = 1.0;
    int max_workers = 2;

    static DecoherenceConfig from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
};

ExperimentReport run_decoherence(const DecoherenceConfig& cfg);

struct CriticalDecoherenceConfig {
    double p = 3.0;
    double s1 = 0.5, s2 = 0.0;
    std::vector<int> n_list{2, 4, 8, 16};
    double Lx = 40.0, Ly = 40.0;
    int Nx = 512, Ny = 512;
    double solver_tol = 1e-9;
    int max_iter = 400;
    double tol_pct = 5.0;        // d(n_max)^2/||Q1||^2 within this % of 4
    double expansion_tol = 1e-8; // three-term expansion consistency
    std::optional<Field> q1;     // reuse a converged profile instead of solving

    static CriticalDecoherenceConfig from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
};

ExperimentReport run_critical_decoherence(const CriticalDecoherenceConfig& cfg);

} // namespace hwlab

#endif
