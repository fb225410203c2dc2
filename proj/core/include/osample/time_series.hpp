#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace osample {

/// Real-valued series x_1..x_T with T >= 2 and every value finite.
class TimeSeries {
public:
    /// @throws InvalidInput if fewer than 2 values or any value is non-finite
    explicit TimeSeries(std::vector<double> values);
    explicit TimeSeries(std::span<const double> values);

    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    /// 1-based access, x_t for t = 1..T.
    [[nodiscard]] double operator()(std::size_t t) const { return values_[t - 1]; }

    [[nodiscard]] double mean() const noexcept;
    [[nodiscard]] std::vector<double> demeaned() const;

private:
    std::vector<double> values_;
};

}  // namespace osample
