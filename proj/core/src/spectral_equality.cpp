#include "osample/spectral_equality.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "osample/distributions.hpp"
#include "osample/errors.hpp"
#include "osample/fft.hpp"

namespace osample {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

KernelSpec KernelSpec::daniell(double bandwidth) {
    KernelSpec k;
    k.bandwidth = bandwidth;
    k.name = "daniell";
    k.window = [](double x) { return std::abs(x) <= 1.0 + 1e-12 ? 0.5 : 0.0; };
    return k;
}

std::vector<std::complex<double>> kernel_spectral_estimate(const DftGrid& grid,
                                                           const KernelSpec& kernel, int r) {
    const std::size_t T = grid.size();
    if (!shift_admissible(r, T)) throw OutOfRange("kernel_spectral_estimate: r outside [0, T/2)");
    const double b = kernel.bandwidth;
    if (!(b > 0.0 && b < 1.0)) throw InvalidInput("kernel bandwidth must lie in (0, 1)");
    const double Td = static_cast<double>(T);
    if (b * Td < 4.0) throw InvalidInput("kernel bandwidth too small: b*T < 4");

    const auto& J = grid.coeffs();
    fft::cvec P(T);
    for (std::size_t i = 0; i < T; ++i) P[i] = J[i] * std::conj(J[(i + static_cast<std::size_t>(r)) % T]);

    // w_d for cyclic offset d
    fft::cvec w(T);
    std::size_t covered = 0;
    for (std::size_t d = 0; d < T; ++d) {
        const double dist = static_cast<double>(std::min(d, T - d)) * kTwoPi / Td;
        const double v = kernel.window(dist / b);
        if (v != 0.0) ++covered;
        w[d] = v / (b * Td);
    }
    if (covered < 2) {
        throw InvalidInput("kernel bandwidth too small: window covers " + std::to_string(covered) +
                           " grid point(s)");
    }
    return fft::cyclic_convolve(w, P);
}

L2Pair l2_distance_stat(std::span<const std::complex<double>> fx,
                        std::span<const std::complex<double>> fy, int r) {
    if (fx.size() != fy.size() || fx.empty()) throw InvalidInput("l2_distance_stat: grid mismatch");
    if (r < 0) throw OutOfRange("l2_distance_stat: negative shift");
    const std::size_t T = fx.size();
    const double Td = static_cast<double>(T);
    L2Pair out;
    if (r == 0) {
        for (std::size_t j = 1; j <= T / 2; ++j) out.real += std::norm(fx[j - 1] - fy[j - 1]);
        out.real *= 2.0 / Td;
        return out;
    }
    // shifted estimates have no mirror symmetry, so both halves of the circle are used
    for (std::size_t j = 0; j < T; ++j) {
        const auto d = fx[j] - fy[j];
        out.real += d.real() * d.real();
        out.imag += d.imag() * d.imag();
    }
    out.real *= 2.0 / Td;
    out.imag *= 2.0 / Td;
    return out;
}

MomentEstimates moment_estimates(std::span<const L2Pair> null_draws) {
    const int M = static_cast<int>(null_draws.size());
    if (M < 2) throw InvalidInput("moment_estimates: need M >= 2");
    const double n = 2.0 * M;
    MomentEstimates m;
    m.M = M;
    for (const auto& d : null_draws) m.mu_hat += d.real + d.imag;
    m.mu_hat /= n;
    for (const auto& d : null_draws) {
        for (double v : {d.real, d.imag}) {
            const double c = v - m.mu_hat;
            m.sigma2_hat += c * c;
            m.mu3_hat += c * c * c;
        }
    }
    m.sigma2_hat /= n;
    m.mu3_hat /= n;
    return m;
}

BetaEstimate estimate_beta(const MomentEstimates& m) {
    if (!(m.sigma2_hat > 0.0)) throw DegenerateVariance("beta_hat: zero variance");
    BetaEstimate b;
    b.raw = 1.0 - m.mu_hat * m.mu3_hat / (3.0 * m.sigma2_hat * m.sigma2_hat);
    b.value = std::clamp(b.raw, kBetaFloor, 1.0);
    b.clamped = b.value != b.raw;
    return b;
}

double beta_hat(const MomentEstimates& m) { return estimate_beta(m).value; }

int default_equality_M(std::size_t T) {
    int M = 18;
    if (T < 320) {
        M = 6;
    } else if (T < 768) {
        M = 12;
    }
    while (M > 2 && !shift_admissible(M, T)) --M;
    return M;
}

TestReport equality_test(const TimeSeries& x, const TimeSeries& y, const KernelSpec& kernel, int M,
                         BetaMode beta_mode, const std::vector<double>& alphas) {
    const std::size_t T = x.size();
    if (y.size() != T) throw InvalidInput("equality_test: series lengths differ");
    if (M < 2 || !shift_admissible(M, T)) throw InvalidInput("equality_test: need 2 <= M < T/2");
    if (beta_mode.fixed && !(*beta_mode.fixed > 0.0 && *beta_mode.fixed <= 1.0)) {
        throw InvalidInput("equality_test: fixed beta must lie in (0, 1]");
    }
    const auto gx = dft(x, true);
    const auto gy = dft(y, true);

    const double S = l2_distance_stat(kernel_spectral_estimate(gx, kernel, 0),
                                      kernel_spectral_estimate(gy, kernel, 0), 0)
                         .real;
    std::vector<L2Pair> draws;
    for (int r = 1; r <= M; ++r) {
        draws.push_back(l2_distance_stat(kernel_spectral_estimate(gx, kernel, r),
                                         kernel_spectral_estimate(gy, kernel, r), r));
    }
    const auto mom = moment_estimates(draws);
    if (!(mom.sigma2_hat > 0.0) || !(mom.mu_hat > 0.0)) {
        throw DegenerateVariance("equality_test: degenerate orthogonal-sample moments");
    }

    TestReport rep;
    rep.test_name = "spectral_equality";
    const auto bhat = estimate_beta(mom);
    const double beta = beta_mode.fixed ? *beta_mode.fixed : bhat.value;
    if (!beta_mode.fixed && bhat.clamped) {
        rep.warnings.push_back("beta estimate " + std::to_string(bhat.raw) + " clamped to " +
                               std::to_string(bhat.value));
    }
    const double mu = mom.mu_hat;
    const double sd = std::sqrt(mom.sigma2_hat);
    const double mu_b = std::pow(mu, beta) +
                        0.5 * beta * (beta - 1.0) * std::pow(mu, beta - 2.0) * mom.sigma2_hat;
    const double sd_b = beta * std::pow(mu, beta - 1.0) * sd;
    const double transformed = std::pow(S, beta);

    rep.statistic = (transformed - mu_b) / sd_b;
    const double scale = std::sqrt(1.0 + 1.0 / (2.0 * M));
    const auto law = dist::DistRef::t(2.0 * M - 1.0);
    rep.null_ref = law;
    rep.p_value = dist::sf(law, rep.statistic / scale);
    rep.tuning.M = M;
    rep.tuning.bandwidth = kernel.bandwidth;
    rep.tuning.beta = beta;
    rep.extras["raw_statistic"] = S;
    rep.extras["transformed_statistic"] = transformed;
    rep.extras["studentized_raw"] = (S - mu) / sd;
    rep.extras["beta_hat"] = bhat.value;
    rep.extras["beta_hat_raw"] = bhat.raw;
    rep.extras["beta_used"] = beta;
    rep.extras["mu_hat"] = mu;
    rep.extras["sigma2_hat"] = mom.sigma2_hat;
    rep.extras["mu3_hat"] = mom.mu3_hat;
    rep.extras["t_scale"] = scale;
    decide(rep, alphas);
    return rep;
}

}  // namespace osample
