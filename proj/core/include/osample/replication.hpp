#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "osample/experiment_config.hpp"
#include "osample/order_selection.hpp"
#include "osample/report.hpp"
#include "osample/result_table.hpp"

namespace osample::replication {

[[nodiscard]] std::string version();

using ProgressFn = std::function<void(const std::string&)>;

/// Runs every (cell, T, method, alpha) combination. Replication i uses seed base_seed + i,
/// so results do not depend on the worker count. A failing method yields NaN rows for
/// that cell and an entry in table.errors.
/// @throws ConfigError on an invalid configuration
[[nodiscard]] ResultTable run_experiment(const ExperimentConfig& config,
                                         const ProgressFn& progress = {});

struct SingleTestOptions {
    std::optional<int> M;
    int L = 5;
    int p = 4;
    int set_lo = 10;
    int set_hi = 30;
    std::optional<double> bandwidth;
    std::optional<double> beta;
    std::uint64_t seed = 1;
    int B = 20;
    int n_boot = 1000;
    double phi = 0.0;    ///< goodness-of-fit null
    double sigma = 1.0;  ///< goodness-of-fit null
    int lag = 1;         ///< selectM weight e^{i lag w}
};

/// Columns of a numeric CSV file; first line may be a header.
/// @throws DataError naming the line on malformed content
[[nodiscard]] std::vector<std::vector<double>> read_columns(const std::string& path);

/// kind: portmanteau | gof | box_pierce | robust | bootstrap | bootstrap_gof | equality
/// @throws DataError on unreadable or too-short data, ConfigError on bad kind or options
[[nodiscard]] TestReport run_single_test(const std::string& path, const std::string& kind,
                                         const SingleTestOptions& options);

/// M selection on the first column with weight e^{i lag w}.
[[nodiscard]] SelectionResult run_select_M(const std::string& path,
                                           const SingleTestOptions& options);

[[nodiscard]] std::string to_json(const SelectionResult& result);

}  // namespace osample::replication
