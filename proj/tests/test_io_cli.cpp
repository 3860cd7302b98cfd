#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "hwlab/experiments.hpp"
#include "hwlab/errors.hpp"
#include "hwlab/field_io.hpp"
#include "hwlab/norms.hpp"
#include "hwlab/store.hpp"

using namespace hwlab;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& tag) {
    static std::mt19937_64 rng(std::random_device{}());
    const fs::path dir =
        fs::temp_directory_path() / ("hwlab-test-" + tag + "-" + std::to_string(rng()));
    fs::create_directories(dir);
    return dir;
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(HWLAB_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("field files round trip bit-exactly") {
    const GridSpec g = make_grid(12.5, 7.25, 32, 64);
    std::mt19937 rng(42);
    std::normal_distribution<double> dist;
    std::vector<cplx> v(g.size());
    for (cplx& z : v) z = cplx(dist(rng), dist(rng));
    const Field f = Field::from_physical(g, v);

    const fs::path dir = fresh_dir("field");
    write_field(dir / "f.field", f);
    const Field back = read_field(dir / "f.field");
    CHECK(back.grid() == g);
    for (std::size_t i = 0; i < g.size(); ++i) {
        CHECK(back.values()[i].real() == f.values()[i].real());
        CHECK(back.values()[i].imag() == f.values()[i].imag());
    }
    // rewriting produces an identical byte stream
    write_field(dir / "g.field", back);
    CHECK(slurp(dir / "f.field") == slurp(dir / "g.field"));

    std::ofstream bad(dir / "bad.field", std::ios::binary);
    bad << "NOTAFIELD";
    bad.close();
    CHECK_THROWS_AS(read_field(dir / "bad.field"), Error);
    fs::remove_all(dir);
}

TEST_CASE("run store lays out reports with config snapshots") {
    ExperimentReport rep;
    rep.experiment_id = "demo";
    rep.config_snapshot = R"({"alpha": 1.5, "beta": 2})";
    rep.add_series("a_series", {{1.0, 2.0}, {2.0, 3.0}});
    rep.add_verdict("check", true, "alpha", 1.5, 1.2);

    const fs::path root = fresh_dir("store");
    RunStore store(root);
    const fs::path dir = store.save_report(rep);
    CHECK(fs::exists(dir / "a_series.csv"));
    CHECK(fs::exists(dir / "summary.json"));
    CHECK(fs::exists(dir / "manifest.json"));
    const std::string csv = slurp(dir / "a_series.csv");
    CHECK(csv.rfind("abscissa,value\n", 0) == 0);
    const std::string summary = slurp(dir / "summary.json");
    CHECK(summary.find("\"alpha\": 1.5") != std::string::npos);
    CHECK(summary.find("\"pass\": true") != std::string::npos);
    fs::remove_all(root);
}

TEST_CASE("series CSVs are byte-identical across writes") {
    Series s;
    std::mt19937_64 rng(7);
    std::normal_distribution<double> dist;
    double t = 0.0;
    for (int i = 0; i < 200; ++i) {
        t += 0.1 + std::abs(dist(rng));
        s.points.push_back({t, dist(rng) * 1e-7});
    }
    const fs::path dir = fresh_dir("csv");
    write_series_csv(dir / "a.csv", s);
    write_series_csv(dir / "b.csv", s);
    CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));
    fs::remove_all(dir);
}

TEST_CASE("cli: norms on a zero field prints 0 and exits 0") {
    const fs::path dir = fresh_dir("cli-norms");
    const GridSpec g = make_grid(10.0, 10.0, 32, 32);
    write_field(dir / "zero.field", Field::zero(g));
    const std::string out = dir.string() + "/out.txt";
    const std::string cmd = std::string(HWLAB_CLI_PATH) + " norms " + (dir / "zero.field").string() +
                            " --s1 1 --s2 1 > " + out + " 2>/dev/null";
    CHECK(WEXITSTATUS(std::system(cmd.c_str())) == 0);
    CHECK(slurp(out).rfind("0", 0) == 0);
    fs::remove_all(dir);
}

TEST_CASE("cli: error paths exit with code 2") {
    CHECK(run_cli("inflate --config /nonexistent/missing.json") == 2);
    CHECK(run_cli("definitely-not-a-subcommand") == 2);
    const fs::path dir = fresh_dir("cli-bad");
    std::ofstream(dir / "broken.json") << "{ not json";
    CHECK(run_cli("lemma1 --config " + (dir / "broken.json").string()) == 2);
    fs::remove_all(dir);
}

TEST_CASE("cli: groundstate solves and stores a certified result") {
    const fs::path dir = fresh_dir("cli-gs");
    const int rc = run_cli("--store " + dir.string() + " groundstate --p 3 --beta 1 --L 20 --N 128");
    CHECK(rc == 0);
    // find the run folder and check the stored artifacts
    bool found = false;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_directory()) continue;
        found = true;
        const Field Q = read_field(entry.path() / "Q.field");
        const std::string summary = slurp(entry.path() / "summary.json");
        CHECK(summary.find("\"residual\"") != std::string::npos);
        CHECK(l2_norm(Q) > 0.0);
    }
    CHECK(found);
    fs::remove_all(dir);
}

TEST_CASE("cli: repeated inflate runs give bit-identical csv output") {
    const fs::path dir = fresh_dir("cli-det");
    nlohmann::json cfg{{"mode", "case_i"},
                       {"Lx", 10.0},
                       {"Ly", 10.0},
                       {"Nx", 128},
                       {"Ny", 128},
                       {"nu_list", {0.05, 0.02}},
                       {"eps", 0.2},
                       {"dt", 0.05},
                       {"window_c1", 0.5},
                       {"window_c2", 1.0},
                       {"fit_t_min", 0.2},
                       {"checkpoints", 8},
                       {"profile", {{"kind", "gaussian"}, {"sigma_x", 1.5}, {"sigma_y", 1.5}}},
                       {"ratio_threshold", 0.5},
                       {"exponent_tol", 100.0},
                       {"max_workers", 2}};
    std::ofstream(dir / "cfg.json") << cfg.dump();
    const std::string base = "--store " + dir.string() + " inflate --config " +
                             (dir / "cfg.json").string();
    CHECK(run_cli(base) == 0);
    CHECK(run_cli(base) == 0);
    std::vector<fs::path> runs;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_directory()) runs.push_back(entry.path());
    }
    REQUIRE(runs.size() == 2);
    std::sort(runs.begin(), runs.end());
    for (const auto& entry : fs::directory_iterator(runs[0])) {
        if (entry.path().extension() != ".csv") continue;
        const auto other = runs[1] / entry.path().filename();
        REQUIRE(fs::exists(other));
        CHECK(slurp(entry.path()) == slurp(other));
    }
    fs::remove_all(dir);
}
