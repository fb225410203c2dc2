#pragma once

#include <functional>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "osample/report.hpp"
#include "osample/spectral_core.hpp"

namespace osample {

/// V_M(w_{r0}) = (T/M) sum_{s=r0+1}^{r0+M} |A_T(phi; s)|^2.
struct VarianceEstimate {
    double value = 0.0;
    int M = 0;
    int shift_origin = 0;  ///< r0; 0 targets V(0)
    int T = 0;
    std::string target_note = "long-run variance of sqrt(T) A_T(phi) at the window origin";
};

enum class Alternative { two_sided, greater, less };

struct StudentizedReport {
    double statistic = 0.0;  ///< sqrt(T)(A_T - A) / sqrt(V)
    int df = 0;              ///< 2M
    double point = 0.0;
    double std_error = 0.0;  ///< sqrt(V / T)
    double p_value_two_sided = 1.0;
    double p_value_greater = 0.5;
    double p_value_less = 0.5;
    std::map<double, std::pair<double, double>> intervals;  ///< level -> (lo, hi)

    [[nodiscard]] double p_value(Alternative alt) const;
};

struct CovMatrixEstimate {
    Eigen::MatrixXd matrix;
    int p = 0;
    int M = 0;
    int T = 0;
};

/// @throws InvalidInput on an empty sample
[[nodiscard]] VarianceEstimate variance_estimate(const OrthogonalSample& sample);

/// @throws OutOfRange unless r0 >= 0, M >= 1 and r0 + M < T/2
[[nodiscard]] VarianceEstimate variance_estimate_at(const DftGrid& grid, const WeightFunction& phi,
                                                    int r0, int M);

/// Same from precomputed shifts A(s), s = 0..>= r0+M.
[[nodiscard]] double variance_from_shifts(std::span<const std::complex<double>> shifts, int T,
                                          int r0, int M);

/// t_{2M} calibrated statistic with confidence intervals at each level.
/// @throws DegenerateVariance if variance.value == 0
[[nodiscard]] StudentizedReport studentize(double point, double target,
                                           const VarianceEstimate& variance, int T,
                                           std::span<const double> ci_levels = {});

/// (T/M) sum_r Re(A(r) A(r)^*), symmetrized.
/// @throws InvalidInput if samples are empty or disagree on M or T
[[nodiscard]] CovMatrixEstimate covariance_matrix_estimate(
    std::span<const OrthogonalSample> samples);

/// T (A - a)' S^{-1} (A - a) against Hotelling T^2(p, 2M).
/// @throws RankDeficient if S is singular or its condition number exceeds max_condition
[[nodiscard]] TestReport hotelling_test(std::span<const double> points,
                                        std::span<const double> targets,
                                        const CovMatrixEstimate& cov, int T,
                                        double max_condition = 1e12);

/// theta -> phi_theta
using WeightFamily = std::function<WeightFunction(std::span<const double>)>;

/// Plug-in estimate V_{theta_hat, M}(0): orthogonal sample of phi_{theta_hat}.
[[nodiscard]] VarianceEstimate composite_variance(const TimeSeries& series,
                                                  const WeightFamily& family,
                                                  std::span<const double> theta_hat, int M);

}  // namespace osample
