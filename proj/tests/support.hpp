#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "osample/rng.hpp"
#include "osample/sim_models.hpp"
#include "osample/time_series.hpp"

namespace osample::fixtures {

inline std::vector<double> normal_values(std::size_t T, std::uint64_t seed) {
    auto rng = make_rng(seed);
    std::normal_distribution<double> z;
    std::vector<double> x(T);
    for (auto& v : x) v = z(rng);
    return x;
}

inline TimeSeries normal_series(std::size_t T, std::uint64_t seed) {
    return TimeSeries(normal_values(T, seed));
}

inline TimeSeries ar1_series(double phi, std::size_t T, std::uint64_t seed) {
    return TimeSeries(sim::generate(sim::Autoregressive{{phi}, sim::Innovation::normal}, T, seed).series);
}

struct Moments {
    double mean = 0.0;
    double var = 0.0;
    double se = 0.0;  ///< standard error of the mean
};

inline Moments moments(const std::vector<double>& v) {
    Moments m;
    const double n = static_cast<double>(v.size());
    for (double x : v) m.mean += x;
    m.mean /= n;
    for (double x : v) m.var += (x - m.mean) * (x - m.mean);
    m.var /= (n - 1.0);
    m.se = std::sqrt(m.var / n);
    return m;
}

}  // namespace osample::fixtures
