#pragma once

// Brute-force O(T^2) reference implementations. Slow by design; meant for tests.

#include <complex>
#include <cstddef>
#include <vector>

#include "osample/time_series.hpp"
#include "osample/weight_function.hpp"

namespace osample::oracle {

inline constexpr std::size_t kDefaultBound = 256;

/// Direct summation of J_k, k = 1..T, storage index k-1.
/// @throws OracleMisuse if T > bound
[[nodiscard]] std::vector<std::complex<double>> naive_dft(const TimeSeries& series, bool demean,
                                                          std::size_t bound = kDefaultBound);

/// (1 / (2 pi T)) sum_{t,tau} Phi_T(t - tau) x_t x_tau e^{-i tau w_r},
/// Phi_T(u) = (1/T) sum_k phi(w_k) e^{i u w_k}. Series demeaned when demean is set.
/// @throws OracleMisuse if T > bound
[[nodiscard]] std::complex<double> quadratic_form_oracle(const TimeSeries& series,
                                                         const WeightFunction& phi, int r,
                                                         bool demean = true,
                                                         std::size_t bound = kDefaultBound);

}  // namespace osample::oracle
