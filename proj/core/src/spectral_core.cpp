#include "osample/spectral_core.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "osample/errors.hpp"
#include "osample/fft.hpp"

namespace osample {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_shift(long r, std::size_t T, const char* what) {
    if (!shift_admissible(r, T)) {
        throw OutOfRange(std::string(what) + ": shift " + std::to_string(r) +
                         " outside [0, T/2) for T=" + std::to_string(T));
    }
}
}  // namespace

DftGrid::DftGrid(std::vector<std::complex<double>> coeffs, bool demeaned)
    : coeffs_(std::move(coeffs)), demeaned_(demeaned) {
    if (coeffs_.size() < 2) throw InvalidInput("DftGrid needs T >= 2");
}

double DftGrid::convention_scale() const noexcept {
    return 1.0 / std::sqrt(kTwoPi * static_cast<double>(coeffs_.size()));
}

std::complex<double> DftGrid::operator()(long k) const noexcept {
    const auto T = static_cast<long>(coeffs_.size());
    long idx = ((k - 1) % T + T) % T;
    return coeffs_[static_cast<std::size_t>(idx)];
}

double DftGrid::omega(long k) const noexcept {
    return kTwoPi * static_cast<double>(k) / static_cast<double>(coeffs_.size());
}

std::vector<double> DftGrid::periodogram() const {
    std::vector<double> out(coeffs_.size());
    for (std::size_t i = 0; i < coeffs_.size(); ++i) out[i] = std::norm(coeffs_[i]);
    return out;
}

DftGrid dft(const TimeSeries& series, bool demean) {
    const std::size_t T = series.size();
    const double m = demean ? series.mean() : 0.0;
    fft::cvec y(T);
    for (std::size_t n = 0; n < T; ++n) y[n] = series.values()[n] - m;
    const fft::cvec Y = fft::backward(y);

    // J_k = e^{i w_k} Y_{k mod T} / sqrt(2 pi T), stored at k-1
    const double scale = 1.0 / std::sqrt(kTwoPi * static_cast<double>(T));
    std::vector<std::complex<double>> J(T);
    for (std::size_t k = 1; k <= T; ++k) {
        const double w = kTwoPi * static_cast<double>(k) / static_cast<double>(T);
        J[k - 1] = std::polar(scale, w) * Y[k % T];
    }
    return DftGrid(std::move(J), demean);
}

std::complex<double> weighted_average(const DftGrid& grid,
                                      const std::vector<std::complex<double>>& phi, int r) {
    const std::size_t T = grid.size();
    check_shift(r, T, "weighted_average");
    if (phi.size() != T) throw InvalidInput("weighted_average: weight length differs from T");
    const auto& J = grid.coeffs();
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t i = 0; i < T; ++i) {
        std::size_t j = i + static_cast<std::size_t>(r);
        if (j >= T) j -= T;
        acc += phi[i] * J[i] * std::conj(J[j]);
    }
    return acc / static_cast<double>(T);
}

std::complex<double> weighted_average(const DftGrid& grid, const WeightFunction& phi, int r) {
    check_shift(r, grid.size(), "weighted_average");
    return weighted_average(grid, evaluate_on_grid(phi, grid.size()), r);
}

OrthogonalSample orthogonal_sample(const DftGrid& grid, const WeightFunction& phi, int M) {
    const std::size_t T = grid.size();
    if (M < 1) throw OutOfRange("orthogonal_sample: M must be >= 1");
    check_shift(M, T, "orthogonal_sample");
    const auto w = evaluate_on_grid(phi, T);
    const auto& J = grid.coeffs();

    std::vector<std::complex<double>> a(T);
    for (std::size_t i = 0; i < T; ++i) a[i] = w[i] * J[i];

    OrthogonalSample out;
    out.M = M;
    out.T = static_cast<int>(T);
    out.shifted.resize(static_cast<std::size_t>(M));
    const double invT = 1.0 / static_cast<double>(T);
    for (int r = 0; r <= M; ++r) {
        std::complex<double> acc{0.0, 0.0};
        const std::size_t split = T - static_cast<std::size_t>(r);
        for (std::size_t i = 0; i < split; ++i) acc += a[i] * std::conj(J[i + r]);
        for (std::size_t i = split; i < T; ++i) acc += a[i] * std::conj(J[i - split]);
        if (r == 0) {
            out.base = acc * invT;
        } else {
            out.shifted[static_cast<std::size_t>(r - 1)] = acc * invT;
        }
    }
    return out;
}

std::vector<std::complex<double>> shifted_functionals(
    const DftGrid& grid, const std::vector<std::complex<double>>& phi, int max_shift) {
    const std::size_t T = grid.size();
    check_shift(max_shift, T, "shifted_functionals");
    if (phi.size() != T) throw InvalidInput("shifted_functionals: weight length differs from T");
    const auto& J = grid.coeffs();
    std::vector<std::complex<double>> a(T);
    for (std::size_t i = 0; i < T; ++i) a[i] = phi[i] * J[i];

    std::vector<std::complex<double>> out(static_cast<std::size_t>(max_shift) + 1);
    const double invT = 1.0 / static_cast<double>(T);

    if (max_shift < 48) {
        for (int r = 0; r <= max_shift; ++r) {
            std::complex<double> acc{0.0, 0.0};
            const std::size_t split = T - static_cast<std::size_t>(r);
            for (std::size_t i = 0; i < split; ++i) acc += a[i] * std::conj(J[i + r]);
            for (std::size_t i = split; i < T; ++i) acc += a[i] * std::conj(J[i - split]);
            out[static_cast<std::size_t>(r)] = acc * invT;
        }
        return out;
    }

    // c_r = sum_i conj(a_i) J_{i+r} = IDFT(conj(F a) . F J)_r / T, and A(r) = conj(c_r) / T
    fft::cvec fa = fft::forward(a);
    const fft::cvec fj = fft::forward(J);
    for (std::size_t m = 0; m < T; ++m) fa[m] = std::conj(fa[m]) * fj[m];
    const fft::cvec c = fft::backward(fa);
    for (int r = 0; r <= max_shift; ++r) {
        out[static_cast<std::size_t>(r)] = std::conj(c[static_cast<std::size_t>(r)]) * invT * invT;
    }
    return out;
}

double circular_autocov(const TimeSeries& series, int lag) {
    const std::size_t T = series.size();
    if (lag < 0 || static_cast<std::size_t>(lag) >= T) {
        throw OutOfRange("circular_autocov: lag " + std::to_string(lag) + " outside [0, T)");
    }
    const auto x = series.demeaned();
    double acc = 0.0;
    for (std::size_t t = 0; t < T; ++t) acc += x[t] * x[(t + static_cast<std::size_t>(lag)) % T];
    return acc / static_cast<double>(T);
}

double sample_autocov(const TimeSeries& series, int lag) {
    const std::size_t T = series.size();
    if (lag < 0 || static_cast<std::size_t>(lag) >= T) {
        throw OutOfRange("sample_autocov: lag " + std::to_string(lag) + " outside [0, T)");
    }
    const auto x = series.demeaned();
    double acc = 0.0;
    for (std::size_t t = 0; t + static_cast<std::size_t>(lag) < T; ++t) acc += x[t] * x[t + lag];
    return acc / static_cast<double>(T);
}

}  // namespace osample
