#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "osample/distributions.hpp"

namespace osample {

enum class NullKind { orthogonal, bootstrap };

/// Draws from an estimated null law: {S_R(r), S_I(r)} for r = 1..M, or bootstrap draws.
struct EmpiricalNull {
    std::vector<double> draws;
    NullKind kind = NullKind::orthogonal;
};

/// Tuning echo for audit; unset fields did not apply.
struct Tuning {
    std::optional<int> L;
    std::optional<int> M;
    std::optional<int> B;
    std::optional<int> n_boot;
    std::optional<int> p;
    std::optional<double> bandwidth;
    std::optional<double> beta;
    bool M_selected = false;
    std::vector<std::pair<int, double>> criterion_curve;  ///< filled when M was selected
};

struct Decision {
    double alpha = 0.05;
    bool reject = false;  ///< p_value < alpha (strict)
};

inline const std::vector<double> kDefaultAlphas{0.05, 0.10};

struct TestReport {
    std::string test_name;
    double statistic = 0.0;
    double p_value = 1.0;
    std::variant<dist::DistRef, EmpiricalNull> null_ref;
    Tuning tuning;
    std::vector<Decision> decisions;
    std::map<std::string, double> extras;  ///< auxiliary values, e.g. beta_hat, raw_statistic
    std::vector<std::string> warnings;

    [[nodiscard]] bool rejects_at(double alpha) const { return p_value < alpha; }
};

/// Fills decisions for each alpha with the strict p < alpha rule.
void decide(TestReport& report, const std::vector<double>& alphas = kDefaultAlphas);

/// JSON text of the full report (two-space indented).
[[nodiscard]] std::string to_json(const TestReport& report);

}  // namespace osample
