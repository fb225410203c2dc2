#pragma once

#include <complex>
#include <span>
#include <utility>
#include <vector>

#include "osample/spectral_core.hpp"

namespace osample {

struct SelectionResult {
    int chosen_M = 0;
    std::vector<std::pair<int, double>> criterion_curve;  ///< (M, C(M)) in search order
    std::vector<int> search_set;
    int p = 4;
};

/// {lo, lo+1, ..., hi}
[[nodiscard]] std::vector<int> search_range(int lo, int hi);

/// Members M of the set with T/p + M < T/2, i.e. usable by criterion().
[[nodiscard]] std::vector<int> feasible_search_set(std::size_t T, std::span<const int> set, int p);

/// C(M) = (p/T) sum_{r=1}^{T/p} (T |A_T(phi;r)|^2 / V_M(w_r) - 1)^2,
/// V_M(w_r) the variance estimate over shifts r+1..r+M.
/// @throws OutOfRange unless p >= 2 and T/p + M < T/2
/// @throws DegenerateVariance if some V_M(w_r) is zero
[[nodiscard]] double criterion(const DftGrid& grid, const WeightFunction& phi, int M, int p);

/// Criterion from shifts A(s), s = 0..T/p+M (index s).
[[nodiscard]] double criterion_from_shifts(std::span<const std::complex<double>> shifts,
                                           std::size_t T, int M, int p);

/// Index of the smallest value; ties go to the earliest entry.
[[nodiscard]] std::size_t argmin_curve(std::span<const std::pair<int, double>> curve);

/// Minimizes the criterion over the search set, smallest M on ties.
/// @throws InvalidInput on an empty set; criterion errors propagate
[[nodiscard]] SelectionResult select_M(const DftGrid& grid, const WeightFunction& phi,
                                       std::span<const int> search_set, int p = 4);

}  // namespace osample
