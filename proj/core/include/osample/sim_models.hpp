#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace osample::sim {

enum class Innovation { normal, t5, arch, chi2 };

struct IidNormal {};
struct IidT {
    double df = 5.0;
};
/// X_t = sum_{j>=0} a^j e_{t-j} - a/(1-a^2) e_{t+1}; e iid normal, iid t5, or ARCH(arch_alpha).
struct NoncausalLinear {
    double a = 0.6;
    Innovation innovation = Innovation::normal;
    double arch_alpha = 0.7;
};
/// Z_t Z_{t-1}
struct TwoDependent {};
/// Z_{t-1} Z_{t-2} (Z_{t-1} + Z_t + 1)
struct Lobato {};
/// X_t = sigma_t Z_t, sigma_t^2 = 1 + alpha X_{t-1}^2
struct Arch1 {
    double alpha = 0.8;
};
/// |X_t| V_t with X ARCH(alpha) and V the noncausal filter (a) of iid normals.
struct ArchTimesNoncausal {
    double a = 0.8;
    double alpha = 0.8;
};
/// Noncausal filter b1 applied to the noncausal filter b2 of an ARCH(alpha) sequence.
struct PseudoLinear {
    double b1 = -0.8;
    double b2 = -0.6;
    double alpha = 0.5;
};
/// s_t Z_t Z_{t-1} with s of period 12 indexed by (t-1) mod 12.
struct PeriodicScaled {
    std::vector<double> scale{1, 1, 1, 2, 3, 1, 1, 1, 1, 2, 4, 6};
};
/// x_t = sum_j coeffs_j x_{t-j} + e_t; e standard normal or raw chi2(1).
struct Autoregressive {
    std::vector<double> coeffs{0.6};
    Innovation innovation = Innovation::normal;
};
/// Y_t |U_t| with Y AR(1) (phi) on normals and U ARCH(alpha), independent.
struct ArTimesArch {
    double phi = -0.2;
    double alpha = 0.5;
};
/// X_t = 0.8 X_{t-1} + e_t, Y_t = 0.8 Y_{t-1} + delta Y_{t-2} + n_t, corr(e, n) = rho.
struct BivariateAr {
    double delta = 0.0;
    double rho = 0.0;
};

using ModelSpec = std::variant<IidNormal, IidT, NoncausalLinear, TwoDependent, Lobato, Arch1,
                               ArchTimesNoncausal, PseudoLinear, PeriodicScaled, Autoregressive,
                               ArTimesArch, BivariateAr>;

struct SimOutput {
    std::vector<double> series;
    std::vector<double> second;  ///< bivariate models only
    std::uint64_t seed = 0;
    int burn_in_used = 0;
    int truncation_used = 0;
};

inline constexpr int kBurnIn = 1000;

/// Number of past terms kept in a noncausal filter: ceil(log(1e-10) / log|a|).
[[nodiscard]] int truncation_length(double a);

/// @throws InvalidInput if the spec is not stationary or T < 2
void validate(const ModelSpec& spec);

/// Deterministic in (spec, T, seed). Bivariate specs fill both series.
[[nodiscard]] SimOutput generate(const ModelSpec& spec, std::size_t T, std::uint64_t seed);

[[nodiscard]] SimOutput generate_bivariate(double delta, double rho, std::size_t T,
                                           std::uint64_t seed);

/// Closed-form AR spectral density sigma^2/(2 pi) |1 - sum_j a_j e^{ijw}|^{-2}, with sigma^2
/// the innovation variance (1 for normal, 2 for chi2).
/// @throws InvalidInput for non-AR specs
[[nodiscard]] double model_spectral_density(const ModelSpec& spec, double omega);

/// True when all roots of 1 - sum a_j z^j lie outside the unit circle.
[[nodiscard]] bool ar_stationary(const std::vector<double>& coeffs);

/// Text form, e.g. "noncausal_linear(a=0.6,innovation=t5)", "ar(coeffs=1.5/-0.75)".
[[nodiscard]] std::string to_string(const ModelSpec& spec);
/// @throws ConfigError on unknown names, keys or malformed values
[[nodiscard]] ModelSpec parse_model_spec(const std::string& text);

[[nodiscard]] bool is_bivariate(const ModelSpec& spec);

}  // namespace osample::sim
