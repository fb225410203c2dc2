#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace osample {

enum class WeightKind {
    constant,
    lag_exponential,   ///< e^{ij w}
    kernel_window,     ///< b^{-1} W((w_l - w) / b), cyclic distance
    model_reciprocal,  ///< e^{ij w} / g(w; theta)
    score_weight,      ///< d/dtheta_c of 1 / f(w; theta)
    tabulated,         ///< values given on the Fourier grid
    custom
};

struct WeightDescriptor {
    WeightKind kind = WeightKind::custom;
    int lag = 0;            ///< j for lag_exponential / model_reciprocal
    double bandwidth = 0;   ///< b for kernel_window
    double center = 0;      ///< w_l for kernel_window
    int coordinate = 0;     ///< parameter index for score_weight
    std::string note;
};

/// Weight phi(w) on (0, 2 pi]. Evaluated lazily at grid points.
class WeightFunction {
public:
    using Evaluator = std::function<std::complex<double>(double)>;

    WeightFunction(Evaluator eval, WeightDescriptor desc)
        : eval_(std::move(eval)), desc_(std::move(desc)) {}

    [[nodiscard]] std::complex<double> operator()(double omega) const { return eval_(omega); }
    [[nodiscard]] const WeightDescriptor& descriptor() const noexcept { return desc_; }

    /// phi = c. Lipschitz (constant).
    [[nodiscard]] static WeightFunction constant(std::complex<double> c);

    /// phi = e^{ijw}. Lipschitz with constant |j|.
    [[nodiscard]] static WeightFunction lag_exponential(int j);

    /// phi = b^{-1} W((w_l - w)/b) with W the Daniell box, distance taken on the circle.
    /// Piecewise constant, so Lipschitz only away from the window edges.
    [[nodiscard]] static WeightFunction daniell_window(double bandwidth, double center);

    /// phi = e^{ijw} / g(w). Lipschitz whenever g is Lipschitz and bounded away from zero.
    [[nodiscard]] static WeightFunction model_reciprocal(int j, std::function<double(double)> g);

    /// Values v_1..v_T attached to grid points w_k = 2 pi k / T; evaluation snaps to the
    /// nearest grid point. Intended for randomized tests.
    [[nodiscard]] static WeightFunction tabulated(std::vector<std::complex<double>> values);

private:
    Evaluator eval_;
    WeightDescriptor desc_;
};

/// phi(w_k) for k = 1..T, stored at index k-1.
[[nodiscard]] std::vector<std::complex<double>> evaluate_on_grid(const WeightFunction& phi,
                                                                 std::size_t T);

}  // namespace osample
