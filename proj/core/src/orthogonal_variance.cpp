#include "osample/orthogonal_variance.hpp"

#include <cmath>
#include <string>

#include "osample/distributions.hpp"
#include "osample/errors.hpp"

namespace osample {

namespace {
const std::vector<double> kDefaultLevels{0.90, 0.95, 0.99};
}

double StudentizedReport::p_value(Alternative alt) const {
    switch (alt) {
        case Alternative::two_sided: return p_value_two_sided;
        case Alternative::greater: return p_value_greater;
        case Alternative::less: return p_value_less;
    }
    return p_value_two_sided;
}

VarianceEstimate variance_estimate(const OrthogonalSample& sample) {
    if (sample.M < 1 || sample.shifted.empty()) {
        throw InvalidInput("variance_estimate: empty orthogonal sample");
    }
    double acc = 0.0;
    for (const auto& a : sample.shifted) acc += std::norm(a);
    VarianceEstimate v;
    v.value = static_cast<double>(sample.T) / static_cast<double>(sample.M) * acc;
    v.M = sample.M;
    v.shift_origin = 0;
    v.T = sample.T;
    return v;
}

double variance_from_shifts(std::span<const std::complex<double>> shifts, int T, int r0, int M) {
    if (M < 1 || r0 < 0) throw OutOfRange("variance window needs M >= 1 and r0 >= 0");
    if (static_cast<std::size_t>(r0 + M) >= shifts.size()) {
        throw OutOfRange("variance window exceeds available shifts");
    }
    double acc = 0.0;
    for (int s = r0 + 1; s <= r0 + M; ++s) acc += std::norm(shifts[static_cast<std::size_t>(s)]);
    return static_cast<double>(T) / static_cast<double>(M) * acc;
}

VarianceEstimate variance_estimate_at(const DftGrid& grid, const WeightFunction& phi, int r0,
                                      int M) {
    const std::size_t T = grid.size();
    if (M < 1 || r0 < 0 || !shift_admissible(r0 + M, T)) {
        throw OutOfRange("variance_estimate_at: window r0+M=" + std::to_string(r0 + M) +
                         " must stay below T/2 (T=" + std::to_string(T) + ")");
    }
    const auto w = evaluate_on_grid(phi, T);
    std::vector<std::complex<double>> shifts(static_cast<std::size_t>(r0 + M) + 1);
    for (int s = r0 + 1; s <= r0 + M; ++s) shifts[static_cast<std::size_t>(s)] = weighted_average(grid, w, s);
    VarianceEstimate v;
    v.value = variance_from_shifts(shifts, static_cast<int>(T), r0, M);
    v.M = M;
    v.shift_origin = r0;
    v.T = static_cast<int>(T);
    return v;
}

StudentizedReport studentize(double point, double target, const VarianceEstimate& variance, int T,
                             std::span<const double> ci_levels) {
    if (!(variance.value > 0.0)) throw DegenerateVariance("studentize: variance estimate is zero");
    if (T < 2) throw InvalidInput("studentize: T must be >= 2");
    StudentizedReport rep;
    rep.df = 2 * variance.M;
    rep.point = point;
    rep.std_error = std::sqrt(variance.value / static_cast<double>(T));
    rep.statistic = (point - target) / rep.std_error;
    const auto law = dist::DistRef::t(rep.df);
    rep.p_value_greater = dist::sf(law, rep.statistic);
    rep.p_value_less = dist::cdf(law, rep.statistic);
    rep.p_value_two_sided = std::min(1.0, 2.0 * dist::sf(law, std::abs(rep.statistic)));
    const auto levels = ci_levels.empty() ? std::span<const double>(kDefaultLevels) : ci_levels;
    for (double level : levels) {
        if (!(level > 0.0 && level < 1.0)) throw InvalidInput("confidence level must lie in (0,1)");
        const double q = dist::quantile(law, 0.5 + 0.5 * level);
        rep.intervals[level] = {point - q * rep.std_error, point + q * rep.std_error};
    }
    return rep;
}

CovMatrixEstimate covariance_matrix_estimate(std::span<const OrthogonalSample> samples) {
    if (samples.empty()) throw InvalidInput("covariance_matrix_estimate: no samples");
    const int M = samples.front().M;
    const int T = samples.front().T;
    for (const auto& s : samples) {
        if (s.M != M || s.T != T || static_cast<int>(s.shifted.size()) != M) {
            throw InvalidInput("covariance_matrix_estimate: samples disagree on M or T");
        }
    }
    if (M < 1) throw InvalidInput("covariance_matrix_estimate: M must be >= 1");
    const auto p = static_cast<Eigen::Index>(samples.size());
    Eigen::MatrixXd S = Eigen::MatrixXd::Zero(p, p);
    Eigen::VectorXd re(p);
    Eigen::VectorXd im(p);
    for (int r = 0; r < M; ++r) {
        for (Eigen::Index i = 0; i < p; ++i) {
            re(i) = samples[static_cast<std::size_t>(i)].shifted[static_cast<std::size_t>(r)].real();
            im(i) = samples[static_cast<std::size_t>(i)].shifted[static_cast<std::size_t>(r)].imag();
        }
        S.noalias() += re * re.transpose() + im * im.transpose();
    }
    S *= static_cast<double>(T) / static_cast<double>(M);
    CovMatrixEstimate out;
    out.matrix = 0.5 * (S + S.transpose());
    out.p = static_cast<int>(p);
    out.M = M;
    out.T = T;
    return out;
}

TestReport hotelling_test(std::span<const double> points, std::span<const double> targets,
                          const CovMatrixEstimate& cov, int T, double max_condition) {
    const auto p = static_cast<Eigen::Index>(points.size());
    if (p == 0 || targets.size() != points.size() || cov.p != p || cov.matrix.rows() != p) {
        throw InvalidInput("hotelling_test: dimension mismatch");
    }
    const int m = 2 * cov.M;
    if (m - p + 1 <= 0) {
        throw InvalidInput("hotelling_test: need 2M - p + 1 > 0 (p=" + std::to_string(p) +
                           ", M=" + std::to_string(cov.M) + ")");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov.matrix);
    const auto& ev = es.eigenvalues();
    const double lmax = ev.maxCoeff();
    const double lmin = ev.minCoeff();
    if (!(lmax > 0.0) || !(lmin > 0.0) || lmax / lmin > max_condition) {
        throw RankDeficient("hotelling_test: covariance estimate is singular or ill-conditioned "
                            "(smallest eigenvalue " + std::to_string(lmin) + ")",
                            lmin);
    }
    Eigen::VectorXd d(p);
    for (Eigen::Index i = 0; i < p; ++i) {
        d(i) = points[static_cast<std::size_t>(i)] - targets[static_cast<std::size_t>(i)];
    }
    // S^{-1} d through the eigen decomposition
    const Eigen::VectorXd proj = es.eigenvectors().transpose() * d;
    double q = 0.0;
    for (Eigen::Index i = 0; i < p; ++i) q += proj(i) * proj(i) / ev(i);

    TestReport rep;
    rep.test_name = "hotelling";
    rep.statistic = static_cast<double>(T) * q;
    const auto law = dist::DistRef::hotelling(static_cast<double>(p), m);
    rep.null_ref = law;
    rep.p_value = dist::sf(law, rep.statistic);
    rep.tuning.M = cov.M;
    rep.extras["dimension"] = static_cast<double>(p);
    decide(rep);
    return rep;
}

VarianceEstimate composite_variance(const TimeSeries& series, const WeightFamily& family,
                                    std::span<const double> theta_hat, int M) {
    const DftGrid grid = dft(series, true);
    WeightFunction phi = family(theta_hat);
    return variance_estimate(orthogonal_sample(grid, phi, M));
}

}  // namespace osample
