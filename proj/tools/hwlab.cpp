#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "hwlab/dynamics.hpp"
#include "hwlab/errors.hpp"
#include "hwlab/experiments.hpp"
#include "hwlab/field_io.hpp"
#include "hwlab/groundstate.hpp"
#include "hwlab/norms.hpp"
#include "hwlab/store.hpp"

namespace {

using nlohmann::json;

json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw hwlab::Error("config file not found: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw hwlab::Error("malformed config " + path + ": " + e.what());
    }
    return j;
}

int finish_report(const hwlab::ExperimentReport& rep, const std::string& store_root) {
    hwlab::RunStore store(store_root.empty() ? hwlab::default_store_root() : std::filesystem::path(store_root));
    const auto dir = store.save_report(rep);
    for (const auto& v : rep.verdicts) {
        std::printf("%-24s %s  (measured %.6g, threshold %.6g)\n", v.name.c_str(),
                    v.pass ? "pass" : "FAIL", v.measured, v.threshold);
    }
    std::printf("report: %s\n", dir.string().c_str());
    return rep.all_pass() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"hwlab: numerical laboratory for the half-wave Schrodinger model"};
    app.require_subcommand(1);
    std::string store_root;
    app.add_option("--store", store_root, "run-store root (default $HWLAB_STORE or ./runs)");

    // norms
    auto* norms_cmd = app.add_subcommand("norms", "print a Sobolev norm of a stored field");
    std::string field_path;
    double s1 = 0.0, s2 = 0.0;
    bool homogeneous = false;
    norms_cmd->add_option("field", field_path, "HWLAB1 field file")->required();
    norms_cmd->add_option("--s1", s1, "x regularity exponent");
    norms_cmd->add_option("--s2", s2, "y regularity exponent");
    norms_cmd->add_flag("--homogeneous", homogeneous, "use homogeneous weights");

    // simulate
    auto* sim_cmd = app.add_subcommand("simulate", "integrate the equation, store checkpoints");
    std::string sim_config;
    sim_cmd->add_option("--config", sim_config, "JSON config")->required();

    // experiments
    std::string l1_config, inf_config, dec_config, cd_config;
    auto* l1_cmd = app.add_subcommand("lemma1", "small-dispersion error experiment");
    l1_cmd->add_option("--config", l1_config, "JSON config")->required();
    auto* inf_cmd = app.add_subcommand("inflate", "norm-inflation experiment");
    inf_cmd->add_option("--config", inf_config, "JSON config")->required();
    auto* dec_cmd = app.add_subcommand("decohere", "decoherence experiment");
    dec_cmd->add_option("--config", dec_config, "JSON config")->required();
    auto* cd_cmd = app.add_subcommand("critical-decohere", "critical-space decoherence experiment");
    cd_cmd->add_option("--config", cd_config, "JSON config")->required();

    // groundstate
    auto* gs_cmd = app.add_subcommand("groundstate", "solve for a standing-wave profile");
    double gs_p = 3.0, gs_beta = 1.0, gs_tol = 1e-8;
    int gs_maxit = 500, gs_N = 256;
    double gs_L = 20.0;
    gs_cmd->add_option("--p", gs_p, "nonlinearity exponent (1 < p < 5)")->required();
    gs_cmd->add_option("--beta", gs_beta, "frequency beta > 0")->required();
    gs_cmd->add_option("--tol", gs_tol, "residual tolerance");
    gs_cmd->add_option("--max-iter", gs_maxit, "iteration cap");
    gs_cmd->add_option("--L", gs_L, "box half-width");
    gs_cmd->add_option("--N", gs_N, "modes per axis");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*norms_cmd) {
            const hwlab::Field f = hwlab::read_field(field_path);
            const double n = hwlab::sobolev_norm(f, {s1, s2, homogeneous});
            std::printf("%.17g\n", n);
            return 0;
        }
        if (*sim_cmd) {
            const json j = load_config(sim_config);
            const hwlab::GridSpec grid =
                hwlab::make_grid(j.value("Lx", 20.0), j.value("Ly", 20.0), j.value("Nx", 256),
                                 j.value("Ny", 256));
            hwlab::ProfileSpec prof;
            if (j.contains("profile")) {
                const auto& pj = j.at("profile");
                prof.kind = pj.value("kind", prof.kind);
                prof.amplitude = pj.value("amplitude", prof.amplitude);
                prof.sigma_x = pj.value("sigma_x", prof.sigma_x);
                prof.sigma_y = pj.value("sigma_y", prof.sigma_y);
                prof.path = pj.value("path", prof.path);
            }
            hwlab::ModelParams mp;
            mp.p = j.value("p", 3.0);
            mp.mu = j.value("mu", 1);
            mp.nu = j.value("nu", 1.0);
            hwlab::EvolveOptions opts;
            opts.checkpoint_every = j.value("checkpoint_every", 1);
            opts.dealias = j.value("dealias", true);
            const hwlab::Field f0 = hwlab::make_profile(prof, grid);
            const hwlab::Trajectory traj =
                hwlab::evolve(f0, j.at("T").get<double>(), j.at("dt").get<double>(), mp, opts);
            hwlab::RunStore store(store_root.empty() ? hwlab::default_store_root() : std::filesystem::path(store_root));
            const auto dir = store.create_run_dir("simulate");
            {
                std::ofstream cfg(dir / "config.json");
                cfg << j.dump(2) << "\n";
            }
            hwlab::Series mass, energy;
            for (const auto& c : traj.conservation_log) {
                mass.points.push_back({c.time, c.mass});
                energy.points.push_back({c.time, c.energy});
            }
            hwlab::write_series_csv(dir / "mass.csv", mass);
            hwlab::write_series_csv(dir / "energy.csv", energy);
            for (std::size_t i = 0; i < traj.states.size(); ++i) {
                char name[64];
                std::snprintf(name, sizeof(name), "state-%05zu.field", i);
                store.save_field(dir, name, traj.states[i]);
            }
            std::printf("trajectory with %zu checkpoints stored in %s\n", traj.states.size(),
                        dir.string().c_str());
            return 0;
        }
        if (*l1_cmd) {
            return finish_report(hwlab::run_lemma1(hwlab::Lemma1Config::from_json(load_config(l1_config))),
                                 store_root);
        }
        if (*inf_cmd) {
            return finish_report(
                hwlab::run_norm_inflation(hwlab::InflationConfig::from_json(load_config(inf_config))),
                store_root);
        }
        if (*dec_cmd) {
            return finish_report(
                hwlab::run_decoherence(hwlab::DecoherenceConfig::from_json(load_config(dec_config))),
                store_root);
        }
        if (*cd_cmd) {
            auto cfg = hwlab::CriticalDecoherenceConfig::from_json(load_config(cd_config));
            const json j = load_config(cd_config);
            if (j.contains("q1_path")) {
                cfg.q1 = hwlab::read_field(j.at("q1_path").get<std::string>());
            }
            return finish_report(hwlab::run_critical_decoherence(cfg), store_root);
        }
        if (*gs_cmd) {
            const hwlab::GridSpec grid = hwlab::make_grid(gs_L, gs_L, gs_N, gs_N);
            hwlab::PetviashviliOptions opts;
            opts.tol = gs_tol;
            opts.max_iter = gs_maxit;
            const hwlab::GroundStateResult res = hwlab::petviashvili(gs_p, gs_beta, grid, opts);
            hwlab::RunStore store(store_root.empty() ? hwlab::default_store_root() : std::filesystem::path(store_root));
            const auto dir = store.create_run_dir("groundstate");
            store.save_field(dir, "Q.field", res.profile);
            json summary{{"p", res.p},
                         {"beta", res.beta},
                         {"residual", res.residual},
                         {"stabilization", res.stabilization},
                         {"iterations", res.iterations},
                         {"L", gs_L},
                         {"N", gs_N}};
            std::ofstream out(dir / "summary.json");
            out << summary.dump(2) << "\n";
            std::printf("converged in %d iterations, residual %.3e; stored in %s\n",
                        res.iterations, res.residual, dir.string().c_str());
            return 0;
        }
    } catch (const hwlab::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
