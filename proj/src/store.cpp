#include "hwlab/store.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>

#include <json.hpp>

#include "hwlab/errors.hpp"
#include "hwlab/field_io.hpp"

namespace hwlab {

namespace fs = std::filesystem;
using nlohmann::json;

std::filesystem::path default_store_root() {
    if (const char* env = std::getenv("HWLAB_STORE"); env && *env) return fs::path(env);
    return fs::path("runs");
}

RunStore::RunStore(std::filesystem::path root) : root_(std::move(root)) {
    fs::create_directories(root_);
}

std::filesystem::path RunStore::create_run_dir(const std::string& experiment_id) {
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&tt, &tm);
    char stamp[32];
    std::strftime(stamp, sizeof(stamp), "%Y%m%d-%H%M%S", &tm);
    fs::path dir = root_ / (experiment_id + "-" + stamp);
    for (int suffix = 1; fs::exists(dir); ++suffix) {
        dir = root_ / (experiment_id + "-" + std::string(stamp) + "-" + std::to_string(suffix));
    }
    fs::create_directories(dir);
    return dir;
}

void write_series_csv(const std::filesystem::path& path, const Series& s) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw Error("write_series_csv: cannot open " + path.string());
    out << "abscissa,value\n";
    char line[80];
    for (const auto& [t, v] : s.points) {
        std::snprintf(line, sizeof(line), "%.17g,%.17g\n", t, v);
        out << line;
    }
    if (!out) throw Error("write_series_csv: short write to " + path.string());
}

std::filesystem::path RunStore::save_report(const ExperimentReport& report) {
    const fs::path dir = create_run_dir(report.experiment_id);
    json manifest;
    manifest["experiment_id"] = report.experiment_id;
    manifest["files"] = json::array();
    for (const auto& [name, series] : report.series) {
        const std::string fname = name + ".csv";
        write_series_csv(dir / fname, series);
        manifest["files"].push_back(fname);
    }
    {
        std::ofstream out(dir / "summary.json", std::ios::trunc);
        out << report.summary_json().dump(2) << "\n";
        manifest["files"].push_back("summary.json");
    }
    {
        std::ofstream out(dir / "manifest.json", std::ios::trunc);
        out << manifest.dump(2) << "\n";
    }
    return dir;
}

void RunStore::save_field(const std::filesystem::path& run_dir, const std::string& name,
                          const Field& f) {
    write_field(run_dir / name, f);
}

} // namespace hwlab
