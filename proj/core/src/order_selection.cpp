#include "osample/order_selection.hpp"

#include <algorithm>
#include <string>

#include "osample/errors.hpp"

namespace osample {

namespace {
void check_window(std::size_t T, int M, int p) {
    if (p < 2) throw OutOfRange("criterion: p must be >= 2");
    if (M < 1) throw OutOfRange("criterion: M must be >= 1");
    const auto reach = static_cast<long>(T) / p + M;
    if (!shift_admissible(reach, T)) {
        throw OutOfRange("criterion: T/p + M = " + std::to_string(reach) +
                         " must stay below T/2 (T=" + std::to_string(T) + ")");
    }
}
}  // namespace

std::vector<int> search_range(int lo, int hi) {
    std::vector<int> out;
    for (int m = lo; m <= hi; ++m) out.push_back(m);
    return out;
}

std::vector<int> feasible_search_set(std::size_t T, std::span<const int> set, int p) {
    std::vector<int> out;
    if (p < 2) return out;
    for (int m : set) {
        if (m >= 1 && shift_admissible(static_cast<long>(T) / p + m, T)) out.push_back(m);
    }
    return out;
}

double criterion_from_shifts(std::span<const std::complex<double>> shifts, std::size_t T, int M,
                             int p) {
    check_window(T, M, p);
    const int R = static_cast<int>(T) / p;
    if (shifts.size() < static_cast<std::size_t>(R + M + 1)) {
        throw InvalidInput("criterion: not enough shifts supplied");
    }
    const double Td = static_cast<double>(T);
    // running window sum of |A(s)|^2 over s = r+1..r+M
    double window = 0.0;
    for (int s = 2; s <= M + 1; ++s) window += std::norm(shifts[static_cast<std::size_t>(s)]);
    double acc = 0.0;
    for (int r = 1; r <= R; ++r) {
        if (r > 1) {
            window += std::norm(shifts[static_cast<std::size_t>(r + M)]) -
                      std::norm(shifts[static_cast<std::size_t>(r)]);
        }
        const double v = Td / M * window;
        if (!(v > 0.0)) {
            throw DegenerateVariance("criterion: zero variance estimate at r=" + std::to_string(r));
        }
        const double e = Td * std::norm(shifts[static_cast<std::size_t>(r)]) / v - 1.0;
        acc += e * e;
    }
    return static_cast<double>(p) / Td * acc;
}

double criterion(const DftGrid& grid, const WeightFunction& phi, int M, int p) {
    const std::size_t T = grid.size();
    check_window(T, M, p);
    const int reach = static_cast<int>(T) / p + M;
    const auto shifts = shifted_functionals(grid, evaluate_on_grid(phi, T), reach);
    return criterion_from_shifts(shifts, T, M, p);
}

std::size_t argmin_curve(std::span<const std::pair<int, double>> curve) {
    if (curve.empty()) throw InvalidInput("argmin_curve: empty curve");
    std::size_t best = 0;
    for (std::size_t i = 1; i < curve.size(); ++i) {
        if (curve[i].second < curve[best].second) best = i;
    }
    return best;
}

SelectionResult select_M(const DftGrid& grid, const WeightFunction& phi,
                         std::span<const int> search_set, int p) {
    if (search_set.empty()) throw InvalidInput("select_M: empty search set");
    const std::size_t T = grid.size();
    std::vector<int> sorted(search_set.begin(), search_set.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (int m : sorted) check_window(T, m, p);

    const int reach = static_cast<int>(T) / p + sorted.back();
    const auto shifts = shifted_functionals(grid, evaluate_on_grid(phi, T), reach);

    SelectionResult res;
    res.p = p;
    res.search_set = sorted;
    for (int m : sorted) res.criterion_curve.emplace_back(m, criterion_from_shifts(shifts, T, m, p));
    res.chosen_M = res.criterion_curve[argmin_curve(res.criterion_curve)].first;
    return res;
}

}  // namespace osample
