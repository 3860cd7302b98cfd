#ifndef HWLAB_STORE_HPP
#define HWLAB_STORE_HPP

#include <filesystem>
#include <string>

#include "hwlab/experiments.hpp"

namespace hwlab {

// Root for run persistence: HWLAB_STORE environment variable, else ./runs.
std::filesystem::path default_store_root();

// Per-run folders named <experiment_id>-<timestamp>[-<n>], each holding one
// CSV per series, summary.json (verdicts, exponents, config snapshot) and a
// manifest of stored files.
class RunStore {
  public:
    explicit RunStore(std::filesystem::path root);

    const std::filesystem::path& root() const { return root_; }
    std::filesystem::path create_run_dir(const std::string& experiment_id);

    // writes series CSVs, summary.json and manifest.json; returns the run dir
    std::filesystem::path save_report(const ExperimentReport& report);
    void save_field(const std::filesystem::path& run_dir, const std::string& name, const Field& f);

  private:
    std::filesystem::path root_;
};

// CSV with header "abscissa,value" and full-precision doubles; byte-for-byte
// deterministic for identical series.
void write_series_csv(const std::filesystem::path& path, const Series& s);

} // namespace hwlab

#endif
