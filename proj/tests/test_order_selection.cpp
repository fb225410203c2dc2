#include <gtest/gtest.h>

#include <cmath>

#include "osample/errors.hpp"
#include "osample/order_selection.hpp"
#include "osample/orthogonal_variance.hpp"
#include "support.hpp"

using namespace osample;

namespace {

double criterion_direct(const DftGrid& g, const WeightFunction& phi, int M, int p) {
    const int T = static_cast<int>(g.size());
    double acc = 0.0;
    for (int r = 1; r <= T / p; ++r) {
        const double v = variance_estimate_at(g, phi, r, M).value;
        const double e = T * std::norm(weighted_average(g, phi, r)) / v - 1.0;
        acc += e * e;
    }
    return static_cast<double>(p) / T * acc;
}

}  // namespace

TEST(SearchRange, Inclusive) {
    EXPECT_EQ(search_range(3, 6), (std::vector<int>{3, 4, 5, 6}));
    EXPECT_TRUE(search_range(5, 4).empty());
}

TEST(FeasibleSet, Clipping) {
    const auto s = search_range(10, 30);
    EXPECT_EQ(feasible_search_set(100, s, 4), search_range(10, 24));
    EXPECT_EQ(feasible_search_set(200, search_range(2, 60), 4), search_range(2, 49));
    EXPECT_EQ(feasible_search_set(500, s, 4), s);
    EXPECT_TRUE(feasible_search_set(20, s, 4).empty());
    EXPECT_TRUE(feasible_search_set(100, s, 1).empty());
}

TEST(Criterion, MatchesVarianceEstimateRoute) {
    const auto g = dft(fixtures::ar1_series(0.3, 120, 41));
    for (int j : {1, 3}) {
        const auto phi = WeightFunction::lag_exponential(j);
        for (int M : {2, 10, 29}) {
            for (int p : {4, 6}) {
                if (120 / p + M >= 60) continue;
                EXPECT_NEAR(criterion(g, phi, M, p), criterion_direct(g, phi, M, p), 1e-9) << j << " " << M << " " << p;
            }
        }
    }
}

TEST(Criterion, WindowEnforced) {
    const auto g = dft(fixtures::normal_series(100, 42));
    const auto phi = WeightFunction::lag_exponential(1);
    EXPECT_NO_THROW((void)criterion(g, phi, 24, 4));
    EXPECT_THROW((void)criterion(g, phi, 25, 4), OutOfRange);
    EXPECT_THROW((void)criterion(g, phi, 5, 1), OutOfRange);
    EXPECT_THROW((void)criterion(g, phi, 0, 4), OutOfRange);
}

TEST(Criterion, NonNegativeAndFinite) {
    const auto g = dft(fixtures::normal_series(200, 43));
    const auto phi = WeightFunction::lag_exponential(1);
    for (int M = 2; M <= 49; ++M) {
        const double c = criterion(g, phi, M, 4);
        EXPECT_GE(c, 0.0);
        EXPECT_TRUE(std::isfinite(c));
    }
}

TEST(Criterion, ZeroWeightDegenerate) {
    const auto g = dft(fixtures::normal_series(100, 44));
    EXPECT_THROW((void)criterion(g, WeightFunction::constant(0.0), 5, 4), DegenerateVariance);
}

TEST(Criterion, FromShiftsNeedsEnoughShifts) {
    const std::vector<std::complex<double>> few(10, {1.0, 0.0});
    EXPECT_THROW((void)criterion_from_shifts(few, 100, 5, 4), InvalidInput);
}

TEST(ArgminCurve, EarliestTie) {
    const std::vector<std::pair<int, double>> c{{1, 3.0}, {2, 1.0}, {3, 1.0}, {4, 2.0}};
    EXPECT_EQ(argmin_curve(c), 1u);
    EXPECT_THROW((void)argmin_curve(std::span<const std::pair<int, double>>{}), InvalidInput);
}

TEST(SelectM, CurveAndChoice) {
    const auto g = dft(fixtures::ar1_series(0.5, 200, 45));
    const auto phi = WeightFunction::lag_exponential(2);
    const std::vector<int> set{30, 5, 12, 5, 49};
    const auto res = select_M(g, phi, set, 4);
    EXPECT_EQ(res.search_set, (std::vector<int>{5, 12, 30, 49}));
    ASSERT_EQ(res.criterion_curve.size(), 4u);
    double best = 1e300;
    int best_M = 0;
    for (const auto& [M, c] : res.criterion_curve) {
        EXPECT_NEAR(c, criterion(g, phi, M, 4), 1e-10);
        if (c < best) {
            best = c;
            best_M = M;
        }
    }
    EXPECT_EQ(res.chosen_M, best_M);
    EXPECT_EQ(res.p, 4);
}

TEST(SelectM, Errors) {
    const auto g = dft(fixtures::normal_series(100, 46));
    const auto phi = WeightFunction::lag_exponential(1);
    EXPECT_THROW((void)select_M(g, phi, std::vector<int>{}, 4), InvalidInput);
    EXPECT_THROW((void)select_M(g, phi, search_range(10, 30), 4), OutOfRange);
}

TEST(SelectM, InsensitiveToScale) {
    auto x = fixtures::normal_values(150, 47);
    const auto a = select_M(dft(TimeSeries(x)), WeightFunction::lag_exponential(1), search_range(2, 30), 4);
    for (auto& v : x) v *= 13.0;
    const auto b = select_M(dft(TimeSeries(x)), WeightFunction::lag_exponential(1), search_range(2, 30), 4);
    EXPECT_EQ(a.chosen_M, b.chosen_M);
    for (std::size_t i = 0; i < a.criterion_curve.size(); ++i) {
        EXPECT_NEAR(a.criterion_curve[i].second, b.criterion_curve[i].second, 1e-9 * (1.0 + a.criterion_curve[i].second));
    }
}
