#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "osample/hypothesis_tests.hpp"
#include "osample/report.hpp"
#include "osample/spectral_core.hpp"

namespace osample {

/// Smoothing window W (integrating to one) with bandwidth b in (0, 1).
struct KernelSpec {
    std::function<double(double)> window;
    double bandwidth = 0.1;
    std::string name;

    /// W(x) = 1/2 on |x| <= 1.
    [[nodiscard]] static KernelSpec daniell(double bandwidth);
};

struct MomentEstimates {
    double mu_hat = 0.0;
    double sigma2_hat = 0.0;
    double mu3_hat = 0.0;  ///< centered third moment
    int M = 0;
};

struct BetaEstimate {
    double value = 1.0;  ///< clamped into [kBetaFloor, 1]
    double raw = 1.0;    ///< 1 - mu mu3 / (3 sigma^4) before clamping
    bool clamped = false;
};

inline constexpr double kBetaFloor = 0.01;

/// f(w_l; r) = (1/(bT)) sum_k W(d(w_l, w_k)/b) J_k conj(J_{k+r}), d the circular distance.
/// Values for l = 1..T in storage order l-1.
/// @throws OutOfRange unless 0 <= r < T/2
/// @throws InvalidInput if bT < 4 or the window covers fewer than 2 grid points
[[nodiscard]] std::vector<std::complex<double>> kernel_spectral_estimate(const DftGrid& grid,
                                                                         const KernelSpec& kernel,
                                                                         int r);

/// r = 0: (S_T, 0), S_T = (2/T) sum_{j=1}^{floor(T/2)} |fx_j - fy_j|^2.
/// r > 0: S_R = (2/T) sum_{j=1}^{T} (Re fx_j - Re fy_j)^2 and S_I likewise with imaginary parts.
/// The full circle is used because f(w;r) is not symmetric about pi for r != 0.
/// @throws InvalidInput if the grids differ in length
[[nodiscard]] L2Pair l2_distance_stat(std::span<const std::complex<double>> fx,
                                      std::span<const std::complex<double>> fy, int r);

/// Plain 1/(2M) moments of the 2M draws.
/// @throws InvalidInput unless M >= 2
[[nodiscard]] MomentEstimates moment_estimates(std::span<const L2Pair> null_draws);

/// 1 - mu mu3 / (3 sigma^4), clamped into [kBetaFloor, 1].
/// @throws DegenerateVariance if sigma2_hat == 0
[[nodiscard]] BetaEstimate estimate_beta(const MomentEstimates& m);
[[nodiscard]] double beta_hat(const MomentEstimates& m);

/// nullopt: estimate beta from the orthogonal sample.
struct BetaMode {
    std::optional<double> fixed;
    [[nodiscard]] static BetaMode estimated() { return {}; }
    [[nodiscard]] static BetaMode fixed_at(double b) { return {b}; }
};

/// M = 6, 12, 18 for T around 128, 512, 1024.
[[nodiscard]] int default_equality_M(std::size_t T);

/// (S^beta - mu_beta) / sigma_beta referred to sqrt(1 + 1/(2M)) t_{2M-1}, right tail.
/// @throws InvalidInput on unequal lengths or M outside [2, T/2)
/// @throws DegenerateVariance on degenerate moments
[[nodiscard]] TestReport equality_test(const TimeSeries& x, const TimeSeries& y,
                                       const KernelSpec& kernel, int M, BetaMode beta_mode,
                                       const std::vector<double>& alphas = kDefaultAlphas);

}  // namespace osample
