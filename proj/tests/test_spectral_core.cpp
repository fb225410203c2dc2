#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "osample/errors.hpp"
#include "osample/oracles.hpp"
#include "osample/rng.hpp"
#include "osample/spectral_core.hpp"
#include "support.hpp"

using namespace osample;
using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;

namespace {

double rel_err(cd a, cd b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

// direct time-domain c~(j) on the demeaned series
double truncated_autocov(const TimeSeries& s, int j) {
    const auto x = s.demeaned();
    const std::size_t T = x.size();
    double acc = 0.0;
    for (std::size_t t = 0; t + j < T; ++t) acc += x[t] * x[t + j];
    return acc / static_cast<double>(T);
}

}  // namespace

TEST(TimeSeries, RejectsShortAndNonFinite) {
    EXPECT_THROW(TimeSeries(std::vector<double>{1.0}), InvalidInput);
    EXPECT_THROW(TimeSeries(std::vector<double>{1.0, std::nan("")}), InvalidInput);
    EXPECT_THROW(TimeSeries(std::vector<double>{1.0, INFINITY, 2.0}), InvalidInput);
    const TimeSeries s(std::vector<double>{1.0, 2.0, 6.0});
    EXPECT_DOUBLE_EQ(s(3), 6.0);
    EXPECT_DOUBLE_EQ(s.mean(), 3.0);
}

TEST(Dft, ConstantSeriesDemeanedIsZero) {
    const auto grid = dft(TimeSeries(std::vector<double>(20, 3.5)), true);
    EXPECT_TRUE(grid.demeaned());
    for (const auto& c : grid.coeffs()) EXPECT_LT(std::abs(c), 1e-12);
}

TEST(Dft, AlternatingToneHitsPiOnly) {
    const auto grid = dft(TimeSeries(std::vector<double>{1, -1, 1, -1}), false);
    ASSERT_EQ(grid.size(), 4u);
    // sum_t x_t e^{i t pi} = -4 for this phase
    EXPECT_NEAR(std::abs(grid(2)), 4.0 / std::sqrt(8.0 * kPi), 1e-14);
    EXPECT_NEAR(grid(2).real(), -4.0 / std::sqrt(8.0 * kPi), 1e-14);
    for (long k : {1L, 3L, 4L}) EXPECT_LT(std::abs(grid(k)), 1e-14);
}

TEST(Dft, MatchesNaiveOracle) {
    for (std::size_t T : {2u, 7u, 37u, 64u, 100u}) {
        const auto s = fixtures::normal_series(T, 100 + T);
        for (bool demean : {true, false}) {
            const auto grid = dft(s, demean);
            const auto ref = oracle::naive_dft(s, demean);
            double scale = 0.0;
            for (const auto& c : ref) scale = std::max(scale, std::abs(c));
            for (std::size_t k = 0; k < T; ++k) {
                EXPECT_LT(std::abs(grid.coeffs()[k] - ref[k]), 1e-10 * scale) << "T=" << T << " k=" << k;
            }
        }
    }
}

TEST(Dft, HermitianSymmetryAndCyclicIndex) {
    const std::size_t T = 51;
    const auto grid = dft(fixtures::normal_series(T, 3));
    for (long k = 1; k < static_cast<long>(T); ++k) {
        EXPECT_LT(std::abs(grid(T - k) - std::conj(grid(k))), 1e-12 * (1.0 + std::abs(grid(k))));
    }
    EXPECT_EQ(grid(0), grid(static_cast<long>(T)));
    EXPECT_EQ(grid(-1), grid(static_cast<long>(T) - 1));
    EXPECT_EQ(grid(static_cast<long>(T) + 5), grid(5));
    EXPECT_NEAR(grid.omega(static_cast<long>(T)), 2.0 * kPi, 1e-15);
    EXPECT_DOUBLE_EQ(grid.convention_scale(), 1.0 / std::sqrt(2.0 * kPi * T));
}

TEST(Dft, OracleRefusesAboveBound) {
    const auto s = fixtures::normal_series(300, 1);
    EXPECT_THROW((void)oracle::naive_dft(s, true), OracleMisuse);
    EXPECT_THROW((void)oracle::quadratic_form_oracle(s, WeightFunction::constant(1.0), 0), OracleMisuse);
    EXPECT_NO_THROW((void)oracle::naive_dft(s, true, 512));
}

TEST(WeightedAverage, Parseval) {
    for (std::size_t T : {16u, 37u, 64u, 1000u}) {
        const auto s = fixtures::normal_series(T, T);
        const auto a = weighted_average(dft(s), WeightFunction::constant(1.0), 0);
        double ss = 0.0;
        for (double v : s.demeaned()) ss += v * v;
        EXPECT_NEAR(2.0 * kPi * a.real(), ss / T, 1e-10 * ss / T);
        EXPECT_NEAR(a.imag(), 0.0, 1e-12);
    }
}

TEST(WeightedAverage, LagFunctionalIsCircularAutocovariance) {
    for (std::size_t T : {16u, 37u, 64u}) {
        const auto s = fixtures::normal_series(T, 7 * T);
        const auto grid = dft(s);
        for (int j = 0; j < static_cast<int>(T); ++j) {
            const auto a = weighted_average(grid, WeightFunction::lag_exponential(j), 0);
            const double direct = truncated_autocov(s, j) + (j == 0 ? 0.0 : truncated_autocov(s, static_cast<int>(T) - j));
            EXPECT_NEAR(2.0 * kPi * a.real(), direct, 1e-10) << "T=" << T << " j=" << j;
            EXPECT_NEAR(a.imag(), 0.0, 1e-10);
            EXPECT_NEAR(circular_autocov(s, j), direct, 1e-12);
        }
    }
}

TEST(WeightedAverage, AgreesWithQuadraticFormOracle) {
    auto rng = make_rng(2024);
    std::uniform_int_distribution<int> len(4, 64);
    std::normal_distribution<double> z;
    for (int c = 0; c < 100; ++c) {
        const std::size_t T = static_cast<std::size_t>(len(rng));
        std::vector<double> x(T);
        for (auto& v : x) v = z(rng);
        std::vector<cd> tab(T);
        for (auto& v : tab) v = cd(z(rng), z(rng));
        const TimeSeries s(x);
        const auto phi = WeightFunction::tabulated(tab);
        std::uniform_int_distribution<int> shift(0, static_cast<int>((T - 1) / 2));
        const int r = shift(rng);
        ASSERT_TRUE(shift_admissible(r, T));
        const auto fast = weighted_average(dft(s), phi, r);
        const auto slow = oracle::quadratic_form_oracle(s, phi, r);
        EXPECT_LT(rel_err(fast, slow), 1e-8) << "case " << c << " T=" << T << " r=" << r;
    }
}

TEST(WeightedAverage, ZeroWeightGivesZero) {
    const auto s = fixtures::normal_series(32, 9);
    EXPECT_EQ(oracle::quadratic_form_oracle(s, WeightFunction::constant(0.0), 3), cd(0.0, 0.0));
    EXPECT_EQ(weighted_average(dft(s), WeightFunction::constant(0.0), 3), cd(0.0, 0.0));
}

TEST(WeightedAverage, ShiftRangeEnforced) {
    const auto grid = dft(fixtures::normal_series(20, 1));
    const auto phi = WeightFunction::lag_exponential(1);
    EXPECT_NO_THROW((void)weighted_average(grid, phi, 9));
    EXPECT_THROW((void)weighted_average(grid, phi, 10), OutOfRange);
    EXPECT_THROW((void)weighted_average(grid, phi, -1), OutOfRange);
    EXPECT_FALSE(shift_admissible(10, 20));
    EXPECT_TRUE(shift_admissible(9, 20));
}

TEST(OrthogonalSample, SingleShiftAndBounds) {
    const auto grid = dft(fixtures::normal_series(40, 5));
    const auto phi = WeightFunction::lag_exponential(2);
    const auto os = orthogonal_sample(grid, phi, 1);
    ASSERT_EQ(os.shifted.size(), 1u);
    EXPECT_EQ(os.M, 1);
    EXPECT_EQ(os.T, 40);
    EXPECT_LT(std::abs(os.shifted[0] - weighted_average(grid, phi, 1)), 1e-15);
    EXPECT_LT(std::abs(os.base - weighted_average(grid, phi, 0)), 1e-15);
    EXPECT_EQ(os.at(1), os.shifted[0]);
    EXPECT_THROW((void)orthogonal_sample(grid, phi, 20), OutOfRange);
    EXPECT_THROW((void)orthogonal_sample(grid, phi, 0), OutOfRange);
}

TEST(OrthogonalSample, ShiftsAreQuadraticForms) {
    const auto s = fixtures::normal_series(48, 17);
    const auto phi = WeightFunction::lag_exponential(1);
    const auto os = orthogonal_sample(dft(s), phi, 10);
    for (int r = 1; r <= 10; ++r) {
        EXPECT_LT(rel_err(os.at(r), oracle::quadratic_form_oracle(s, phi, r)), 1e-10);
    }
}

TEST(ShiftedFunctionals, FftRouteMatchesDirectSums) {
    for (std::size_t T : {101u, 256u, 1000u}) {
        const auto grid = dft(fixtures::normal_series(T, T + 1));
        const auto phi = evaluate_on_grid(WeightFunction::model_reciprocal(1, [](double w) {
            return 1.0 + 0.5 * std::cos(w);
        }), T);
        const int max_shift = static_cast<int>((T - 1) / 2);
        const auto all = shifted_functionals(grid, phi, max_shift);
        ASSERT_EQ(all.size(), static_cast<std::size_t>(max_shift + 1));
        for (int r = 0; r <= max_shift; r += 7) {
            EXPECT_LT(rel_err(all[static_cast<std::size_t>(r)], weighted_average(grid, phi, r)), 1e-10)
                << "T=" << T << " r=" << r;
        }
    }
}

TEST(CircularAutocov, SmallCases) {
    const TimeSeries alt(std::vector<double>{1, -1, 1, -1});
    EXPECT_NEAR(circular_autocov(alt, 0), 1.0, 1e-15);
    EXPECT_NEAR(circular_autocov(alt, 1), -1.0, 1e-15);  // -3/4 - 1/4
    EXPECT_NEAR(circular_autocov(alt, 2), 1.0, 1e-15);   // 1/2 + 1/2
    EXPECT_NEAR(2.0 * kPi * weighted_average(dft(alt), WeightFunction::lag_exponential(1), 0).real(), -1.0, 1e-14);
    EXPECT_THROW((void)circular_autocov(alt, 4), OutOfRange);
    EXPECT_THROW((void)circular_autocov(alt, -1), OutOfRange);
    EXPECT_NEAR(sample_autocov(alt, 1), -0.75, 1e-15);
}

TEST(WeightFunction, NonFiniteValuesRejectedOnGrid) {
    const auto bad = WeightFunction::model_reciprocal(1, [](double) { return 0.0; });
    EXPECT_THROW((void)evaluate_on_grid(bad, 16), InvalidInput);
    const auto win = evaluate_on_grid(WeightFunction::daniell_window(0.5, kPi), 16);
    EXPECT_EQ(win.size(), 16u);
}
