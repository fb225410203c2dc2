#pragma once

#include <functional>
#include <span>
#include <string>

namespace osample::dist {

enum class Family { t, chi2, normal, F, hotelling };

/// Reference law. Parameter meaning by family:
///   t: p1 = degrees of freedom; chi2: p1 = degrees of freedom; normal: none;
///   F: p1 = d1, p2 = d2; hotelling: p1 = dimension p, p2 = m (requires m - p + 1 > 0).
struct DistRef {
    Family family = Family::normal;
    double p1 = 0.0;
    double p2 = 0.0;

    [[nodiscard]] static DistRef t(double df) { return {Family::t, df, 0.0}; }
    [[nodiscard]] static DistRef chi2(double df) { return {Family::chi2, df, 0.0}; }
    [[nodiscard]] static DistRef normal() { return {Family::normal, 0.0, 0.0}; }
    [[nodiscard]] static DistRef F(double d1, double d2) { return {Family::F, d1, d2}; }
    [[nodiscard]] static DistRef hotelling(double p, double m) { return {Family::hotelling, p, m}; }

    /// @throws InvalidInput on invalid parameters
    void validate() const;
    [[nodiscard]] std::string describe() const;
};

[[nodiscard]] double cdf(const DistRef& d, double x);
/// Upper tail 1 - cdf, computed without cancellation.
[[nodiscard]] double sf(const DistRef& d, double x);
/// @throws InvalidInput unless 0 < q < 1
[[nodiscard]] double quantile(const DistRef& d, double q);
[[nodiscard]] double pdf(const DistRef& d, double x);

/// I_x(a, b)
[[nodiscard]] double regularized_beta(double a, double b, double x);
/// P(a, x) and Q(a, x) = 1 - P(a, x)
[[nodiscard]] double regularized_gamma_p(double a, double x);
[[nodiscard]] double regularized_gamma_q(double a, double x);

/// One-sample Kolmogorov-Smirnov statistic sup |F_n - F|.
[[nodiscard]] double ks_statistic(std::span<const double> sample,
                                  const std::function<double(double)>& cdf_fn);
/// Asymptotic P(D_n > d) with Stephens' small-sample correction.
[[nodiscard]] double kolmogorov_pvalue(double d, std::size_t n);

}  // namespace osample::dist
