#include "osample/sim_models.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <string>

#include <Eigen/Eigenvalues>

#include "osample/errors.hpp"
#include "osample/rng.hpp"

namespace osample::sim {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::vector<double> normals(std::size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> z(0.0, 1.0);
    std::vector<double> out(n);
    for (auto& v : out) v = z(rng);
    return out;
}

std::vector<double> arch_path(std::size_t n, double alpha, std::mt19937_64& rng) {
    std::normal_distribution<double> z(0.0, 1.0);
    std::vector<double> out(n);
    // start from the stationary mean of sigma^2, then discard kBurnIn values
    double x = std::sqrt(1.0 / (1.0 - alpha)) * z(rng);
    for (int i = 0; i < kBurnIn; ++i) x = std::sqrt(1.0 + alpha * x * x) * z(rng);
    for (auto& v : out) {
        x = std::sqrt(1.0 + alpha * x * x) * z(rng);
        v = x;
    }
    return out;
}

std::vector<double> innovations(std::size_t n, Innovation kind, double arch_alpha,
                                std::mt19937_64& rng) {
    switch (kind) {
        case Innovation::normal: return normals(n, rng);
        case Innovation::t5: {
            std::student_t_distribution<double> t(5.0);
            std::vector<double> out(n);
            for (auto& v : out) v = t(rng);
            return out;
        }
        case Innovation::chi2: {
            auto z = normals(n, rng);
            for (auto& v : z) v *= v;
            return z;
        }
        case Innovation::arch: return arch_path(n, arch_alpha, rng);
    }
    return {};
}

// y_i = sum_{j=0}^{...} a^j e_{i+J-j} - a/(1-a^2) e_{i+J+1}, i = 0..n-J-2; the causal part is
// run as a recursion started J steps back so dropped weights are below 1e-10.
std::vector<double> noncausal_filter(const std::vector<double>& e, double a, int J) {
    const std::size_t n = e.size();
    const auto Jz = static_cast<std::size_t>(J);
    if (n < Jz + 2) return {};
    const double c = a / (1.0 - a * a);
    std::vector<double> out(n - Jz - 1);
    double s = 0.0;
    for (std::size_t i = 0; i < Jz; ++i) s = a * s + e[i];
    for (std::size_t i = 0; i < out.size(); ++i) {
        s = a * s + e[i + Jz];
        out[i] = s - c * e[i + Jz + 1];
    }
    return out;
}

std::vector<double> ar_path(std::size_t T, const std::vector<double>& coeffs,
                            const std::vector<double>& e) {
    const std::size_t p = coeffs.size();
    std::vector<double> x(e.size(), 0.0);
    for (std::size_t t = 0; t < e.size(); ++t) {
        double v = e[t];
        for (std::size_t j = 1; j <= p && j <= t; ++j) v += coeffs[j - 1] * x[t - j];
        x[t] = v;
    }
    return {x.end() - static_cast<long>(T), x.end()};
}

void check_abs_below_one(double v, const char* what) {
    if (!(std::abs(v) < 1.0)) throw InvalidInput(std::string(what) + " must satisfy |.| < 1");
}

void check_arch(double alpha) {
    if (!(alpha >= 0.0 && alpha < 1.0)) throw InvalidInput("ARCH alpha must lie in [0, 1)");
}

}  // namespace

int truncation_length(double a) {
    const double m = std::abs(a);
    if (m == 0.0) return 0;
    return static_cast<int>(std::ceil(std::log(1e-10) / std::log(m)));
}

bool ar_stationary(const std::vector<double>& coeffs) {
    const auto p = static_cast<Eigen::Index>(coeffs.size());
    if (p == 0) return true;
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(p, p);
    for (Eigen::Index j = 0; j < p; ++j) C(0, j) = coeffs[static_cast<std::size_t>(j)];
    for (Eigen::Index i = 1; i < p; ++i) C(i, i - 1) = 1.0;
    Eigen::EigenSolver<Eigen::MatrixXd> es(C, false);
    for (Eigen::Index i = 0; i < p; ++i) {
        if (std::abs(es.eigenvalues()(i)) >= 1.0) return false;
    }
    return true;
}

bool is_bivariate(const ModelSpec& spec) { return std::holds_alternative<BivariateAr>(spec); }

void validate(const ModelSpec& spec) {
    std::visit(overloaded{
                   [](const IidNormal&) {},
                   [](const IidT& m) {
                       if (!(m.df > 2.0)) throw InvalidInput("iid_t: df must exceed 2");
                   },
                   [](const NoncausalLinear& m) {
                       check_abs_below_one(m.a, "noncausal a");
                       if (m.a == 0.0) throw InvalidInput("noncausal a must be nonzero");
                       if (m.innovation == Innovation::arch) check_arch(m.arch_alpha);
                       if (m.innovation == Innovation::chi2) {
                           throw InvalidInput("noncausal_linear supports normal, t5 or arch innovations");
                       }
                   },
                   [](const TwoDependent&) {},
                   [](const Lobato&) {},
                   [](const Arch1& m) { check_arch(m.alpha); },
                   [](const ArchTimesNoncausal& m) {
                       check_abs_below_one(m.a, "noncausal a");
                       if (m.a == 0.0) throw InvalidInput("noncausal a must be nonzero");
                       check_arch(m.alpha);
                   },
                   [](const PseudoLinear& m) {
                       check_abs_below_one(m.b1, "b1");
                       check_abs_below_one(m.b2, "b2");
                       if (m.b1 == 0.0 || m.b2 == 0.0) throw InvalidInput("b1, b2 must be nonzero");
                       check_arch(m.alpha);
                   },
                   [](const PeriodicScaled& m) {
                       if (m.scale.empty()) throw InvalidInput("periodic scale sequence is empty");
                   },
                   [](const Autoregressive& m) {
                       if (!ar_stationary(m.coeffs)) throw InvalidInput("AR coefficients are not stationary");
                       if (m.innovation != Innovation::normal && m.innovation != Innovation::chi2) {
                           throw InvalidInput("ar supports normal or chi2 innovations");
                       }
                   },
                   [](const ArTimesArch& m) {
                       check_abs_below_one(m.phi, "AR phi");
                       check_arch(m.alpha);
                   },
                   [](const BivariateAr& m) {
                       if (!(std::abs(m.rho) <= 1.0)) throw InvalidInput("bivariate rho must satisfy |rho| <= 1");
                       if (!ar_stationary({0.8, m.delta})) throw InvalidInput("(0.8, delta) is not stationary");
                   },
               },
               spec);
}

SimOutput generate(const ModelSpec& spec, std::size_t T, std::uint64_t seed) {
    if (T < 2) throw InvalidInput("generate: T must be >= 2");
    validate(spec);
    auto rng = make_rng(seed);
    SimOutput out;
    out.seed = seed;

    std::visit(
        overloaded{
            [&](const IidNormal&) { out.series = normals(T, rng); },
            [&](const IidT& m) {
                std::student_t_distribution<double> t(m.df);
                out.series.resize(T);
                for (auto& v : out.series) v = t(rng);
            },
            [&](const NoncausalLinear& m) {
                const int J = truncation_length(m.a);
                const auto e = innovations(T + static_cast<std::size_t>(J) + 1, m.innovation,
                                           m.arch_alpha, rng);
                out.series = noncausal_filter(e, m.a, J);
                out.truncation_used = J;
                if (m.innovation == Innovation::arch) out.burn_in_used = kBurnIn;
            },
            [&](const TwoDependent&) {
                const auto z = normals(T + 1, rng);
                out.series.resize(T);
                for (std::size_t t = 0; t < T; ++t) out.series[t] = z[t + 1] * z[t];
            },
            [&](const Lobato&) {
                const auto z = normals(T + 2, rng);
                out.series.resize(T);
                for (std::size_t t = 0; t < T; ++t) {
                    out.series[t] = z[t + 1] * z[t] * (z[t + 1] + z[t + 2] + 1.0);
                }
            },
            [&](const Arch1& m) {
                out.series = arch_path(T, m.alpha, rng);
                out.burn_in_used = kBurnIn;
            },
            [&](const ArchTimesNoncausal& m) {
                const auto x = arch_path(T, m.alpha, rng);
                const int J = truncation_length(m.a);
                const auto v = noncausal_filter(normals(T + static_cast<std::size_t>(J) + 1, rng), m.a, J);
                out.series.resize(T);
                for (std::size_t t = 0; t < T; ++t) out.series[t] = std::abs(x[t]) * v[t];
                out.burn_in_used = kBurnIn;
                out.truncation_used = J;
            },
            [&](const PseudoLinear& m) {
                const int J1 = truncation_length(m.b1);
                const int J2 = truncation_length(m.b2);
                const auto u2 = arch_path(T + static_cast<std::size_t>(J1 + J2) + 2, m.alpha, rng);
                const auto u1 = noncausal_filter(u2, m.b2, J2);
                out.series = noncausal_filter(u1, m.b1, J1);
                out.burn_in_used = kBurnIn;
                out.truncation_used = J1 + J2;
            },
            [&](const PeriodicScaled& m) {
                const auto z = normals(T + 1, rng);
                out.series.resize(T);
                for (std::size_t t = 0; t < T; ++t) {
                    out.series[t] = m.scale[t % m.scale.size()] * z[t + 1] * z[t];
                }
            },
            [&](const Autoregressive& m) {
                const auto e = innovations(T + kBurnIn, m.innovation, 0.0, rng);
                out.series = ar_path(T, m.coeffs, e);
                out.burn_in_used = kBurnIn;
            },
            [&](const ArTimesArch& m) {
                const auto y = ar_path(T, {m.phi}, normals(T + kBurnIn, rng));
                const auto u = arch_path(T, m.alpha, rng);
                out.series.resize(T);
                for (std::size_t t = 0; t < T; ++t) out.series[t] = y[t] * std::abs(u[t]);
                out.burn_in_used = kBurnIn;
            },
            [&](const BivariateAr& m) {
                const std::size_t n = T + kBurnIn;
                const auto z1 = normals(n, rng);
                const auto z2 = normals(n, rng);
                const double s = std::sqrt(std::max(0.0, 1.0 - m.rho * m.rho));
                std::vector<double> eta(n);
                for (std::size_t t = 0; t < n; ++t) eta[t] = m.rho * z1[t] + s * z2[t];
                out.series = ar_path(T, {0.8}, z1);
                out.second = ar_path(T, {0.8, m.delta}, eta);
                out.burn_in_used = kBurnIn;
            },
        },
        spec);
    return out;
}

SimOutput generate_bivariate(double delta, double rho, std::size_t T, std::uint64_t seed) {
    return generate(BivariateAr{delta, rho}, T, seed);
}

double model_spectral_density(const ModelSpec& spec, double omega) {
    const auto* ar = std::get_if<Autoregressive>(&spec);
    if (ar == nullptr) throw InvalidInput("model_spectral_density: spec is not autoregressive");
    std::complex<double> h{1.0, 0.0};
    for (std::size_t j = 0; j < ar->coeffs.size(); ++j) {
        h -= ar->coeffs[j] * std::polar(1.0, static_cast<double>(j + 1) * omega);
    }
    const double s2 = ar->innovation == Innovation::chi2 ? 2.0 : 1.0;
    return s2 / (2.0 * std::numbers::pi * std::norm(h));
}

}  // namespace osample::sim
