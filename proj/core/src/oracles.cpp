#include "osample/oracles.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "osample/errors.hpp"

namespace osample::oracle {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_bound(std::size_t T, std::size_t bound) {
    if (T > bound) {
        throw OracleMisuse("oracle refused: T=" + std::to_string(T) + " exceeds bound " +
                           std::to_string(bound));
    }
}

std::vector<double> prepared(const TimeSeries& s, bool demean) {
    if (demean) return s.demeaned();
    return {s.values().begin(), s.values().end()};
}
}  // namespace

std::vector<std::complex<double>> naive_dft(const TimeSeries& series, bool demean,
                                            std::size_t bound) {
    const std::size_t T = series.size();
    check_bound(T, bound);
    const auto x = prepared(series, demean);
    const double scale = 1.0 / std::sqrt(kTwoPi * static_cast<double>(T));
    std::vector<std::complex<double>> J(T);
    for (std::size_t k = 1; k <= T; ++k) {
        std::complex<double> acc{0.0, 0.0};
        for (std::size_t t = 1; t <= T; ++t) {
            // reduce t*k mod T first to keep the angle small
            const double ang = kTwoPi * static_cast<double>((t * k) % T) / static_cast<double>(T);
            acc += x[t - 1] * std::polar(1.0, ang);
        }
        J[k - 1] = acc * scale;
    }
    return J;
}

std::complex<double> quadratic_form_oracle(const TimeSeries& series, const WeightFunction& phi,
                                           int r, bool demean, std::size_t bound) {
    const std::size_t T = series.size();
    check_bound(T, bound);
    const auto x = prepared(series, demean);
    const auto Tl = static_cast<long>(T);
    const double Td = static_cast<double>(T);

    std::vector<std::complex<double>> w(T);
    for (std::size_t k = 1; k <= T; ++k) w[k - 1] = phi(kTwoPi * static_cast<double>(k) / Td);

    // Phi_T(u) for u = -(T-1)..(T-1), stored at u + T - 1
    std::vector<std::complex<double>> Phi(2 * T - 1);
    for (long u = -(Tl - 1); u <= Tl - 1; ++u) {
        std::complex<double> acc{0.0, 0.0};
        for (long k = 1; k <= Tl; ++k) {
            const long m = ((u * k) % Tl + Tl) % Tl;
            acc += w[static_cast<std::size_t>(k - 1)] *
                   std::polar(1.0, kTwoPi * static_cast<double>(m) / Td);
        }
        Phi[static_cast<std::size_t>(u + Tl - 1)] = acc / Td;
    }

    std::complex<double> total{0.0, 0.0};
    for (long tau = 1; tau <= Tl; ++tau) {
        const long m = ((tau * r) % Tl + Tl) % Tl;
        const auto mod = std::polar(1.0, -kTwoPi * static_cast<double>(m) / Td);
        std::complex<double> inner{0.0, 0.0};
        for (long t = 1; t <= Tl; ++t) {
            inner += Phi[static_cast<std::size_t>(t - tau + Tl - 1)] * x[static_cast<std::size_t>(t - 1)];
        }
        total += inner * x[static_cast<std::size_t>(tau - 1)] * mod;
    }
    return total / (kTwoPi * Td);
}

}  // namespace osample::oracle
