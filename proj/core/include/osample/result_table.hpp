#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace osample::replication {

inline constexpr const char* kCsvHeader = "model,T,method,alpha,rate,se,time_ms";

/// One rejection-rate cell. rate and se are percentages; NaN marks a failed cell.
struct ResultRow {
    std::string model;
    std::size_t T = 0;
    std::string method;
    double alpha = 0.05;
    double rate = 0.0;
    double se = 0.0;
    double time_ms = 0.0;
};

struct TableMetadata {
    std::string experiment;
    std::string config_hash;
    std::uint64_t seed = 0;
    std::string version;
    int nrep = 0;
    int workers = 1;
};

/// Sorted studentized statistics against reference quantiles at (i - 0.5) / n.
struct QQSeries {
    std::string model;
    std::size_t T = 0;
    int df = 0;
    std::vector<double> empirical;
    std::vector<double> reference;
    double ks_statistic = 0.0;
    double ks_pvalue = 1.0;
};

struct ResultTable {
    std::vector<ResultRow> rows;
    TableMetadata meta;
    std::vector<QQSeries> qq;
    std::map<std::string, double> diagnostics;  ///< e.g. mean beta estimates per cell
    std::vector<std::string> errors;

    [[nodiscard]] const ResultRow* find(const std::string& model, std::size_t T,
                                        const std::string& method, double alpha) const;
};

/// SE in percent: sqrt(p (1 - p) / nrep) * 100 with p = rate / 100.
[[nodiscard]] double rate_standard_error(double rate_percent, int nrep);

[[nodiscard]] std::string to_csv(const ResultTable& table);
/// @throws DataError on malformed CSV (line numbers are 1-based)
[[nodiscard]] std::vector<ResultRow> parse_csv(const std::string& text);
[[nodiscard]] std::string to_json(const ResultTable& table);

/// Field-wise equality; NaN equals NaN. time_ms is compared only when with_time is set.
[[nodiscard]] bool rows_equal(const std::vector<ResultRow>& a, const std::vector<ResultRow>& b,
                              bool with_time = true);

enum class EmitFormat { csv, csv_and_json };

/// Writes <dir>/<name>.csv (and .json), <dir>/<name>.meta.json, and one
/// <dir>/<name>_qq_<k>.csv per QQ series. Returns the written paths.
/// @throws std::runtime_error if a destination cannot be written or the table is empty
std::vector<std::string> emit(const ResultTable& table, const std::string& dir,
                              const std::string& name, EmitFormat format = EmitFormat::csv);

}  // namespace osample::replication
