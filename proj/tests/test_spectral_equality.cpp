#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "osample/distributions.hpp"
#include "osample/errors.hpp"
#include "osample/sim_models.hpp"
#include "osample/spectral_equality.hpp"
#include "support.hpp"

using namespace osample;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

namespace {

std::vector<std::complex<double>> naive_kernel(const DftGrid& g, const KernelSpec& k, int r) {
    const long T = static_cast<long>(g.size());
    const double b = k.bandwidth;
    std::vector<std::complex<double>> out(static_cast<std::size_t>(T));
    for (long l = 1; l <= T; ++l) {
        std::complex<double> acc = 0.0;
        for (long kk = 1; kk <= T; ++kk) {
            const long d = std::labs(l - kk);
            const double dist = static_cast<double>(std::min(d, T - d)) * kTwoPi / static_cast<double>(T);
            acc += k.window(dist / b) * g(kk) * std::conj(g(kk + r));
        }
        out[static_cast<std::size_t>(l - 1)] = acc / (b * static_cast<double>(T));
    }
    return out;
}

}  // namespace

TEST(KernelEstimate, MatchesDirectSum) {
    const auto g = dft(fixtures::ar1_series(0.5, 96, 31));
    const auto k = KernelSpec::daniell(0.15);
    for (int r : {0, 1, 5, 47}) {
        const auto fast = kernel_spectral_estimate(g, k, r);
        const auto slow = naive_kernel(g, k, r);
        ASSERT_EQ(fast.size(), slow.size());
        for (std::size_t i = 0; i < fast.size(); ++i) EXPECT_LT(std::abs(fast[i] - slow[i]), 1e-12) << r << " " << i;
    }
}

TEST(KernelEstimate, FlatSpectrumLevel) {
    // white noise with variance 4; each J_k enters (2m+1) windows with weight W / (bT), and the
    // demeaned periodogram sums to (T-1) sigma^2 / (2 pi)
    const auto k = KernelSpec::daniell(0.1);
    const double T = 512.0;
    double window_mass = 0.0;
    for (int d = 0; d < 512; ++d) window_mass += k.window(std::min(d, 512 - d) * kTwoPi / T / 0.1) / (0.1 * T);
    const double expected = window_mass * (T - 1.0) / T * 4.0 / kTwoPi;
    std::vector<double> means;
    for (std::uint64_t s = 0; s < 40; ++s) {
        auto x = fixtures::normal_values(512, 1000 + s);
        for (auto& v : x) v *= 2.0;
        const auto f = kernel_spectral_estimate(dft(TimeSeries(x)), k, 0);
        double acc = 0.0;
        for (const auto& v : f) acc += v.real();
        means.push_back(acc / static_cast<double>(f.size()));
    }
    const auto m = fixtures::moments(means);
    EXPECT_NEAR(m.mean, expected, 4.0 * m.se);
    EXPECT_NEAR(m.mean, 4.0 / (kTwoPi * kTwoPi), 0.06 * 4.0 / (kTwoPi * kTwoPi));
}

TEST(KernelEstimate, RealAndNonNegativeAtZeroShift) {
    const auto f = kernel_spectral_estimate(dft(fixtures::normal_series(128, 32)), KernelSpec::daniell(0.15), 0);
    for (const auto& v : f) {
        EXPECT_GE(v.real(), 0.0);
        EXPECT_NEAR(v.imag(), 0.0, 1e-14);
    }
}

TEST(KernelEstimate, InvalidArguments) {
    const auto g = dft(fixtures::normal_series(64, 33));
    EXPECT_THROW((void)kernel_spectral_estimate(g, KernelSpec::daniell(0.15), 32), OutOfRange);
    EXPECT_THROW((void)kernel_spectral_estimate(g, KernelSpec::daniell(0.05), 0), InvalidInput);
    EXPECT_THROW((void)kernel_spectral_estimate(g, KernelSpec::daniell(1.5), 0), InvalidInput);
}

TEST(L2Distance, Formulas) {
    const std::vector<std::complex<double>> fx{{1, 1}, {2, 0}, {0, 3}, {5, 5}};
    const std::vector<std::complex<double>> fy{{0, 0}, {1, 1}, {0, 0}, {0, 0}};
    // j = 1..2 only
    const auto s0 = l2_distance_stat(fx, fy, 0);
    EXPECT_DOUBLE_EQ(s0.real, (2.0 / 4.0) * (2.0 + 2.0));
    EXPECT_EQ(s0.imag, 0.0);
    const auto s1 = l2_distance_stat(fx, fy, 3);
    // all four points for r > 0
    EXPECT_DOUBLE_EQ(s1.real, (2.0 / 4.0) * (1.0 + 1.0 + 0.0 + 25.0));
    EXPECT_DOUBLE_EQ(s1.imag, (2.0 / 4.0) * (1.0 + 1.0 + 9.0 + 25.0));
    const std::vector<std::complex<double>> shorter{{0, 0}};
    EXPECT_THROW((void)l2_distance_stat(fx, shorter, 0), InvalidInput);
}

TEST(Moments, KnownDraws) {
    // values 1,2,3,4,5,9
    const std::vector<L2Pair> d{{1, 2}, {3, 4}, {5, 9}};
    const auto m = moment_estimates(d);
    EXPECT_EQ(m.M, 3);
    EXPECT_DOUBLE_EQ(m.mu_hat, 4.0);
    EXPECT_NEAR(m.sigma2_hat, (9 + 4 + 1 + 0 + 1 + 25) / 6.0, 1e-14);
    EXPECT_NEAR(m.mu3_hat, (-27 - 8 - 1 + 0 + 1 + 125) / 6.0, 1e-14);
    const std::vector<L2Pair> one{{1, 2}};
    EXPECT_THROW((void)moment_estimates(one), InvalidInput);
}

TEST(Beta, SymmetricDrawsGiveOne) {
    const std::vector<L2Pair> d{{1, 3}, {2, 2}};
    EXPECT_DOUBLE_EQ(beta_hat(moment_estimates(d)), 1.0);
}

TEST(Beta, ChiSquareSkewGivesAboutOneThird) {
    // for chi2_k draws mu mu3 / (3 sigma^4) = k * 8k / (3 * 4k^2) = 2/3
    MomentEstimates m{5.0, 10.0, 40.0, 10};
    EXPECT_NEAR(beta_hat(m), 1.0 / 3.0, 1e-14);
}

TEST(Beta, ClampedAtFloor) {
    MomentEstimates m{10.0, 1.0, 5.0, 10};
    const auto b = estimate_beta(m);
    EXPECT_LT(b.raw, 0.0);
    EXPECT_DOUBLE_EQ(b.value, kBetaFloor);
    EXPECT_TRUE(b.clamped);
    EXPECT_THROW((void)estimate_beta(MomentEstimates{1.0, 0.0, 0.0, 3}), DegenerateVariance);
}

TEST(DefaultM, TableValues) {
    EXPECT_EQ(default_equality_M(128), 6);
    EXPECT_EQ(default_equality_M(512), 12);
    EXPECT_EQ(default_equality_M(1024), 18);
    EXPECT_EQ(default_equality_M(10), 4);
}

TEST(EqualityTest, BetaOneIsStudentizedRaw) {
    const auto sim = sim::generate_bivariate(0.0, 0.0, 256, 34);
    const auto rep = equality_test(TimeSeries(sim.series), TimeSeries(sim.second), KernelSpec::daniell(0.15), 8,
                                   BetaMode::fixed_at(1.0));
    EXPECT_NEAR(rep.statistic, rep.extras.at("studentized_raw"), 1e-12);
    const double scale = std::sqrt(1.0 + 1.0 / 16.0);
    EXPECT_NEAR(rep.p_value, dist::sf(dist::DistRef::t(15), rep.statistic / scale), 1e-14);
    EXPECT_DOUBLE_EQ(rep.tuning.beta.value(), 1.0);
}

TEST(EqualityTest, TransformedStatisticByHand) {
    const auto sim = sim::generate_bivariate(0.0, 0.5, 512, 35);
    const auto rep = equality_test(TimeSeries(sim.series), TimeSeries(sim.second), KernelSpec::daniell(0.1), 12,
                                   BetaMode::estimated());
    const double b = rep.extras.at("beta_used");
    const double mu = rep.extras.at("mu_hat");
    const double s2 = rep.extras.at("sigma2_hat");
    const double S = rep.extras.at("raw_statistic");
    const double mub = std::pow(mu, b) + 0.5 * b * (b - 1.0) * std::pow(mu, b - 2.0) * s2;
    const double sdb = b * std::pow(mu, b - 1.0) * std::sqrt(s2);
    EXPECT_NEAR(rep.statistic, (std::pow(S, b) - mub) / sdb, 1e-10);
    EXPECT_DOUBLE_EQ(b, rep.extras.at("beta_hat"));
    EXPECT_GT(b, 0.0);
    EXPECT_LE(b, 1.0);
}

TEST(EqualityTest, IdenticalSeriesDoNotReject) {
    const auto x = fixtures::ar1_series(0.8, 256, 36);
    EXPECT_THROW((void)equality_test(x, x, KernelSpec::daniell(0.15), 6, BetaMode::estimated()),
                 DegenerateVariance);
}

TEST(EqualityTest, DetectsDifferentSpectra) {
    const auto sim = sim::generate_bivariate(-0.5, 0.0, 1024, 37);
    const auto rep = equality_test(TimeSeries(sim.series), TimeSeries(sim.second), KernelSpec::daniell(0.1), 18,
                                   BetaMode::estimated());
    EXPECT_LT(rep.p_value, 0.05);
}

TEST(EqualityTest, InvalidArguments) {
    const auto x = fixtures::normal_series(128, 1);
    const auto y = fixtures::normal_series(127, 2);
    const auto k = KernelSpec::daniell(0.15);
    EXPECT_THROW((void)equality_test(x, y, k, 6, BetaMode::estimated()), InvalidInput);
    EXPECT_THROW((void)equality_test(x, x, k, 1, BetaMode::estimated()), InvalidInput);
    EXPECT_THROW((void)equality_test(x, x, k, 64, BetaMode::estimated()), InvalidInput);
    EXPECT_THROW((void)equality_test(x, x, k, 6, BetaMode::fixed_at(0.0)), InvalidInput);
}
