#include <gtest/gtest.h>

#include <cmath>

#include "osample/errors.hpp"
#include "osample/orthogonal_variance.hpp"
#include "support.hpp"

using namespace osample;
using cd = std::complex<double>;

namespace {

OrthogonalSample make_sample(std::vector<cd> shifted, int T, cd base = 0.0) {
    OrthogonalSample s;
    s.base = base;
    s.M = static_cast<int>(shifted.size());
    s.shifted = std::move(shifted);
    s.T = T;
    return s;
}

}  // namespace

TEST(VarianceEstimate, ZeroSampleIsZero) {
    const auto v = variance_estimate(make_sample({0.0, 0.0, 0.0}, 50));
    EXPECT_EQ(v.value, 0.0);
    EXPECT_EQ(v.M, 3);
    EXPECT_EQ(v.shift_origin, 0);
}

TEST(VarianceEstimate, SingleTermAlgebra) {
    const int T = 64;
    const double a = 1.5, b = -0.25;
    const auto v = variance_estimate(make_sample({cd(a, b) / std::sqrt(double(T))}, T));
    EXPECT_NEAR(v.value, a * a + b * b, 1e-14);
}

TEST(VarianceEstimate, EmptySampleRejected) {
    EXPECT_THROW((void)variance_estimate(make_sample({}, 10)), InvalidInput);
}

TEST(VarianceEstimateAt, ReducesAndShifts) {
    const std::size_t T = 200;
    const auto grid = dft(fixtures::normal_series(T, 4));
    const auto phi = WeightFunction::lag_exponential(1);
    const auto direct = variance_estimate(orthogonal_sample(grid, phi, 7));
    EXPECT_NEAR(variance_estimate_at(grid, phi, 0, 7).value, direct.value, 1e-15);
    const double a4 = std::norm(weighted_average(grid, phi, 4));
    EXPECT_NEAR(variance_estimate_at(grid, phi, 3, 1).value, T * a4, 1e-15);
    EXPECT_EQ(variance_estimate_at(grid, phi, 3, 1).shift_origin, 3);
    EXPECT_THROW((void)variance_estimate_at(grid, phi, 95, 5), OutOfRange);
    EXPECT_THROW((void)variance_estimate_at(grid, phi, -1, 5), OutOfRange);
}

TEST(VarianceEstimate, ScalingAndSignInvariance) {
    const auto s = fixtures::normal_series(300, 8);
    const auto phi = WeightFunction::lag_exponential(2);
    const double v = variance_estimate(orthogonal_sample(dft(s), phi, 10)).value;
    std::vector<double> neg, scaled;
    for (double x : s.values()) {
        neg.push_back(-x);
        scaled.push_back(3.0 * x);
    }
    EXPECT_NEAR(variance_estimate(orthogonal_sample(dft(TimeSeries(neg)), phi, 10)).value, v, 1e-12 * v);
    EXPECT_NEAR(variance_estimate(orthogonal_sample(dft(TimeSeries(scaled)), phi, 10)).value, 81.0 * v, 1e-10 * v);
}

TEST(Studentize, PointEqualsTarget) {
    VarianceEstimate v;
    v.value = 2.0;
    v.M = 5;
    const auto r = studentize(0.3, 0.3, v, 100);
    EXPECT_EQ(r.statistic, 0.0);
    EXPECT_EQ(r.df, 10);
    EXPECT_NEAR(r.p_value_two_sided, 1.0, 1e-12);
    EXPECT_NEAR(r.p_value(Alternative::greater), 0.5, 1e-12);
}

TEST(Studentize, TenDegreesOfFreedomCriticalValue) {
    VarianceEstimate v;
    v.value = 4.0;
    v.M = 5;
    // sqrt(4) * 2.2281 / sqrt(4)
    const auto r = studentize(2.2281, 0.0, v, 4);
    EXPECT_NEAR(r.statistic, 2.2281, 1e-12);
    EXPECT_NEAR(r.p_value_two_sided, 0.05000329358647445, 1e-6);
    EXPECT_NEAR(r.p_value_greater + r.p_value_less, 1.0, 1e-12);
    for (const auto& [level, ci] : r.intervals) {
        EXPECT_LE(ci.first, r.point);
        EXPECT_GE(ci.second, r.point);
    }
    ASSERT_EQ(r.intervals.count(0.95), 1u);
    // half-width t_{10, 0.975} * sqrt(V/T)
    EXPECT_NEAR(r.intervals.at(0.95).second - r.point, 2.2281388519649385, 1e-7);
}

TEST(Studentize, ZeroVarianceRejected) {
    VarianceEstimate v;
    v.M = 5;
    EXPECT_THROW((void)studentize(1.0, 0.0, v, 100), DegenerateVariance);
}

TEST(CovarianceMatrix, ScalarCaseAndZeros) {
    const auto grid = dft(fixtures::normal_series(256, 12));
    const auto s1 = orthogonal_sample(grid, WeightFunction::lag_exponential(1), 9);
    const std::vector<OrthogonalSample> one{s1};
    const auto cov = covariance_matrix_estimate(one);
    ASSERT_EQ(cov.p, 1);
    EXPECT_NEAR(cov.matrix(0, 0), variance_estimate(s1).value, 1e-15);

    const std::vector<OrthogonalSample> zeros{make_sample({0.0, 0.0}, 30), make_sample({0.0, 0.0}, 30)};
    EXPECT_EQ(covariance_matrix_estimate(zeros).matrix.norm(), 0.0);

    const std::vector<OrthogonalSample> mismatched{make_sample({1.0, 0.0}, 30), make_sample({1.0}, 30)};
    EXPECT_THROW((void)covariance_matrix_estimate(mismatched), InvalidInput);
}

TEST(CovarianceMatrix, SymmetricPositiveSemidefinite) {
    const auto grid = dft(fixtures::ar1_series(0.4, 500, 2));
    std::vector<OrthogonalSample> s;
    for (int j = 1; j <= 4; ++j) s.push_back(orthogonal_sample(grid, WeightFunction::lag_exponential(j), 12));
    const auto cov = covariance_matrix_estimate(s);
    EXPECT_LT((cov.matrix - cov.matrix.transpose()).norm(), 1e-15);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov.matrix);
    EXPECT_GE(es.eigenvalues().minCoeff(), -1e-10 * cov.matrix.trace());
}

TEST(Hotelling, ZeroDeviation) {
    CovMatrixEstimate cov{Eigen::MatrixXd::Identity(2, 2), 2, 10, 100};
    const std::vector<double> pts{0.1, 0.2};
    const auto r = hotelling_test(pts, pts, cov, 100);
    EXPECT_EQ(r.statistic, 0.0);
    EXPECT_NEAR(r.p_value, 1.0, 1e-12);
}

TEST(Hotelling, ScalarIsSquaredT) {
    const std::size_t T = 300;
    const auto grid = dft(fixtures::normal_series(T, 21));
    const auto s = orthogonal_sample(grid, WeightFunction::lag_exponential(1), 8);
    const std::vector<OrthogonalSample> one{s};
    const auto cov = covariance_matrix_estimate(one);
    const std::vector<double> pt{s.base.real()}, tg{0.0};
    const auto h = hotelling_test(pt, tg, cov, static_cast<int>(T));
    const auto t = studentize(s.base.real(), 0.0, variance_estimate(s), static_cast<int>(T));
    EXPECT_NEAR(h.statistic, t.statistic * t.statistic, 1e-10 * (1.0 + h.statistic));
    // T^2(1, m) is the square of t_m
    EXPECT_NEAR(h.p_value, t.p_value_two_sided, 1e-8);
}

TEST(Hotelling, FivePercentPoint) {
    const double crit = 7.414512127534372;  // 0.95 quantile of T^2(2, 20)
    CovMatrixEstimate cov{Eigen::MatrixXd::Identity(2, 2), 2, 10, 100};
    const std::vector<double> pts{std::sqrt(crit / 100.0), 0.0}, tg{0.0, 0.0};
    const auto r = hotelling_test(pts, tg, cov, 100);
    EXPECT_NEAR(r.statistic, crit, 1e-10);
    EXPECT_NEAR(r.p_value, 0.05, 1e-3);
}

TEST(Hotelling, SingularMatrixRejected) {
    Eigen::MatrixXd m(2, 2);
    m << 1.0, 1.0, 1.0, 1.0;
    CovMatrixEstimate cov{m, 2, 10, 100};
    const std::vector<double> pts{0.1, 0.2}, tg{0.0, 0.0};
    try {
        (void)hotelling_test(pts, tg, cov, 100);
        FAIL() << "expected RankDeficient";
    } catch (const RankDeficient& e) {
        EXPECT_LT(std::abs(e.eigenvalue()), 1e-10);
    }
}

TEST(CompositeVariance, ConstantFamilyIsPlainEstimate) {
    const auto s = fixtures::normal_series(200, 31);
    const auto phi = WeightFunction::lag_exponential(1);
    const WeightFamily fam = [&](std::span<const double>) { return phi; };
    const std::vector<double> theta{0.123};
    EXPECT_NEAR(composite_variance(s, fam, theta, 6).value,
                variance_estimate(orthogonal_sample(dft(s), phi, 6)).value, 1e-15);
}
