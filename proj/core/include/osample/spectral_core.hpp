#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "osample/time_series.hpp"
#include "osample/weight_function.hpp"

namespace osample {

/// J_k = (2 pi T)^{-1/2} sum_t x_t e^{i t w_k}, w_k = 2 pi k / T, for k = 1..T.
class DftGrid {
public:
    DftGrid(std::vector<std::complex<double>> coeffs, bool demeaned);

    [[nodiscard]] std::size_t size() const noexcept { return coeffs_.size(); }
    [[nodiscard]] bool demeaned() const noexcept { return demeaned_; }
    [[nodiscard]] double convention_scale() const noexcept;

    /// J_k with cyclic indexing: any integer k, reduced into 1..T.
    [[nodiscard]] std::complex<double> operator()(long k) const noexcept;
    [[nodiscard]] double omega(long k) const noexcept;

    /// Storage order: index k-1 holds J_k.
    [[nodiscard]] const std::vector<std::complex<double>>& coeffs() const noexcept {
        return coeffs_;
    }

    /// |J_k|^2 in storage order.
    [[nodiscard]] std::vector<double> periodogram() const;

private:
    std::vector<std::complex<double>> coeffs_;
    bool demeaned_;
};

/// A_T(phi; r) for r = 0..M: base is r = 0, shifted[r-1] is r.
struct OrthogonalSample {
    std::complex<double> base;
    std::vector<std::complex<double>> shifted;
    int M = 0;
    int T = 0;

    [[nodiscard]] std::complex<double> at(int r) const { return r == 0 ? base : shifted.at(r - 1); }
};

/// O(T log T).
/// @throws InvalidInput via TimeSeries on non-finite data
[[nodiscard]] DftGrid dft(const TimeSeries& series, bool demean = true);

/// (1/T) sum_{k=1}^T phi(w_k) J_k conj(J_{k+r}).
/// @throws OutOfRange unless 0 <= r < T/2
[[nodiscard]] std::complex<double> weighted_average(const DftGrid& grid, const WeightFunction& phi,
                                                    int r);

/// Same, with phi already evaluated on the grid (storage order).
[[nodiscard]] std::complex<double> weighted_average(const DftGrid& grid,
                                                    const std::vector<std::complex<double>>& phi,
                                                    int r);

/// @throws OutOfRange unless 1 <= M < T/2
[[nodiscard]] OrthogonalSample orthogonal_sample(const DftGrid& grid, const WeightFunction& phi,
                                                 int M);

/// A_T(phi; r) for r = 0..max_shift. Switches between direct sums and one FFT
/// cross-correlation depending on max_shift.
/// @throws OutOfRange unless 0 <= max_shift < T/2
[[nodiscard]] std::vector<std::complex<double>> shifted_functionals(
    const DftGrid& grid, const std::vector<std::complex<double>>& phi, int max_shift);

/// c~(j) + c~(T-j) on the demeaned series, c~(j) = (1/T) sum_{t=1}^{T-j} x_t x_{t+j}.
/// Equals 2 pi A_T(e^{ijw}; 0).
/// @throws OutOfRange unless 0 <= lag < T
[[nodiscard]] double circular_autocov(const TimeSeries& series, int lag);

/// c~(j) = (1/T) sum_{t=1}^{T-j} (x_t - xbar)(x_{t+j} - xbar), the truncated estimator.
/// @throws OutOfRange unless 0 <= lag < T
[[nodiscard]] double sample_autocov(const TimeSeries& series, int lag);

/// true when 0 <= r and 2r < T
[[nodiscard]] constexpr bool shift_admissible(long r, std::size_t T) noexcept {
    return r >= 0 && 2 * static_cast<std::size_t>(r) < T;
}

}  // namespace osample
