#include "osample/time_series.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "osample/errors.hpp"

namespace osample {

TimeSeries::TimeSeries(std::vector<double> values) : values_(std::move(values)) {
    if (values_.size() < 2) {
        throw InvalidInput("time series needs at least 2 observations, got " +
                           std::to_string(values_.size()));
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw InvalidInput("non-finite value at position " + std::to_string(i + 1));
        }
    }
}

TimeSeries::TimeSeries(std::span<const double> values)
    : TimeSeries(std::vector<double>(values.begin(), values.end())) {}

double TimeSeries::mean() const noexcept {
    return std::accumulate(values_.begin(), values_.end(), 0.0) /
           static_cast<double>(values_.size());
}

std::vector<double> TimeSeries::demeaned() const {
    const double m = mean();
    std::vector<double> out(values_.size());
    for (std::size_t i = 0; i < values_.size(); ++i) out[i] = values_[i] - m;
    return out;
}

}  // namespace osample
