#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "osample/hypothesis_tests.hpp"
#include "osample/sim_models.hpp"

namespace osample::replication {

enum class ExperimentKind {
    qq_t10,
    table_equality,
    table_uncorrelated_null,
    table_uncorrelated_power,
    table_gof_null,
    table_gof_power,
    custom_test
};

[[nodiscard]] std::string to_string(ExperimentKind k);
/// @throws ConfigError on unknown names
[[nodiscard]] ExperimentKind parse_experiment_kind(const std::string& s);

/// A simulated model plus, for goodness-of-fit cells, the AR(1) null (phi, sigma).
struct ModelCell {
    sim::ModelSpec model;
    std::optional<std::pair<double, double>> gof_null;

    [[nodiscard]] std::string label() const;
};

struct ExperimentConfig {
    std::string name = "experiment";
    ExperimentKind kind = ExperimentKind::custom_test;
    std::vector<ModelCell> cells;
    std::vector<std::size_t> T_values;
    int nrep = 100;
    int paper_nrep = 0;  ///< replication count of the published tables; 0 when unknown
    bool paper_scale = false;
    MPolicy m_policy;                       ///< portmanteau / goodness-of-fit tests
    std::map<std::size_t, int> M_by_T;      ///< overrides, e.g. equality tables
    int L = 5;
    double bandwidth = 0.1;
    std::map<std::size_t, double> bandwidth_by_T;
    std::vector<std::string> methods;       ///< see README for names per experiment
    std::vector<int> bootstrap_blocks;
    int n_boot = 1000;
    std::vector<std::string> betas;         ///< equality: "hat" or a number
    int qq_M = 5;
    bool qq_demean = false;  ///< QQ models have known mean zero
    std::vector<double> alphas{0.05, 0.10};
    std::uint64_t base_seed = 1;
    int workers = 1;

    /// Replications actually run: paper_nrep when paper_scale is set and known.
    [[nodiscard]] int effective_nrep() const;
    /// M for a given T when the policy is fixed or overridden per T.
    [[nodiscard]] MPolicy policy_for(std::size_t T) const;
    [[nodiscard]] double bandwidth_for(std::size_t T) const;
    /// Canonical key=value text (sorted, workers excluded) used for hashing.
    [[nodiscard]] std::string canonical_text() const;
    [[nodiscard]] std::string hash() const;
};

/// FNV-1a 64-bit, as 16 hex digits.
[[nodiscard]] std::string fnv1a_hex(const std::string& data);

/// key = value lines; '#' starts a comment.
/// @throws ConfigError with the offending line number
[[nodiscard]] ExperimentConfig parse_config_text(const std::string& text);
/// JSON object with the same keys; arrays stand for lists.
[[nodiscard]] ExperimentConfig parse_config_json(const std::string& text);
/// Dispatches on the first non-blank character ('{' means JSON).
[[nodiscard]] ExperimentConfig load_config(const std::string& path);

/// Applies OSAMPLE_WORKERS when set.
void apply_worker_env(ExperimentConfig& cfg);

}  // namespace osample::replication
