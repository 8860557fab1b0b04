#pragma once

#include <filesystem>
#include <nlohmann/json.hpp>
#include <vector>

#include "eelab/config.hpp"
#include "eelab/records.hpp"

namespace eelab {

/// In-memory outcome of one mode run; `run` persists it to disk.
struct RunOutcome {
    std::vector<ResultRow> rows;
    nlohmann::json summary;
    int exit_code = 0;
};

RunOutcome run_sweep_free(const RunConfig& config);
RunOutcome run_sweep_perturbed(const RunConfig& config);
RunOutcome run_fit(const RunConfig& config, const std::filesystem::path& base_dir);
RunOutcome run_verify_inequalities(const RunConfig& config);
RunOutcome run_riesz_check(const RunConfig& config);
RunOutcome run_green_decay(const RunConfig& config);

/// Execute a validated config, writing results.csv (when the mode produces
/// rows) and summary.json under out_dir. Returns the process exit code.
int run(const RunConfig& config, const std::filesystem::path& out_dir);

/// Per-scale deltas and trend statistics between two result files with
/// matching L grids.
nlohmann::json compare_results(const std::filesystem::path& run_a,
                               const std::filesystem::path& run_b);

} // namespace eelab
