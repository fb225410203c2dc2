#include "osample/weight_function.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "osample/errors.hpp"

namespace osample {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double circle_distance(double a, double b) {
    double d = std::fmod(std::abs(a - b), kTwoPi);
    return std::min(d, kTwoPi - d);
}
}  // namespace

WeightFunction WeightFunction::constant(std::complex<double> c) {
    return {[c](double) { return c; }, {WeightKind::constant, 0, 0, 0, 0, ""}};
}

WeightFunction WeightFunction::lag_exponential(int j) {
    return {[j](double w) { return std::polar(1.0, static_cast<double>(j) * w); },
            {WeightKind::lag_exponential, j, 0, 0, 0, ""}};
}

WeightFunction WeightFunction::daniell_window(double bandwidth, double center) {
    if (!(bandwidth > 0.0)) throw InvalidInput("daniell_window: bandwidth must be positive");
    return {[bandwidth, center](double w) {
                // small slack so points exactly on the window edge are included
                const double x = circle_distance(center, w) / bandwidth;
                return std::complex<double>(x <= 1.0 + 1e-12 ? 0.5 / bandwidth : 0.0, 0.0);
            },
            {WeightKind::kernel_window, 0, bandwidth, center, 0, "daniell"}};
}

WeightFunction WeightFunction::model_reciprocal(int j, std::function<double(double)> g) {
    return {[j, g = std::move(g)](double w) {
                return std::polar(1.0, static_cast<double>(j) * w) / g(w);
            },
            {WeightKind::model_reciprocal, j, 0, 0, 0, ""}};
}

WeightFunction WeightFunction::tabulated(std::vector<std::complex<double>> values) {
    if (values.empty()) throw InvalidInput("tabulated weight needs at least one value");
    const auto T = static_cast<long>(values.size());
    return {[v = std::move(values), T](double w) {
                long k = std::lround(w * static_cast<double>(T) / kTwoPi);
                k = ((k - 1) % T + T) % T;
                return v[static_cast<std::size_t>(k)];
            },
            {WeightKind::tabulated, 0, 0, 0, 0, ""}};
}

std::vector<std::complex<double>> evaluate_on_grid(const WeightFunction& phi, std::size_t T) {
    std::vector<std::complex<double>> out(T);
    const double step = kTwoPi / static_cast<double>(T);
    for (std::size_t k = 1; k <= T; ++k) {
        const auto v = phi(step * static_cast<double>(k));
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            throw InvalidInput("weight function is not finite at grid point k=" +
                               std::to_string(k));
        }
        out[k - 1] = v;
    }
    return out;
}

}  // namespace osample
