#pragma once

#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "osample/orthogonal_variance.hpp"
#include "osample/spectral_core.hpp"

namespace osample {

using Params = std::vector<double>;

/// Parametric spectral density f(w; theta) with closed-form derivatives.
struct SpectralModel {
    std::string name;
    std::function<double(double, std::span<const double>)> density;
    /// grad_theta f(w; theta)
    std::function<std::vector<double>(double, std::span<const double>)> gradient;
    /// grad_theta 1/f(w; theta); derived from gradient when left empty
    std::function<std::vector<double>(double, std::span<const double>)> reciprocal_gradient;
    int param_dim = 0;
    /// Per-coordinate [lo, hi]; lo == hi holds that coordinate fixed.
    std::vector<std::pair<double, double>> param_box;
    std::vector<std::string> param_names;

    [[nodiscard]] std::vector<double> reciprocal_grad(double w, std::span<const double> theta) const;
    [[nodiscard]] bool in_box(std::span<const double> theta) const;
};

/// g(w; phi, sigma) = sigma^2 / (2 pi) |1 - phi e^{iw}|^{-2}; theta = (phi, sigma).
/// Default box phi in [-0.99, 0.99], sigma in [0.05, 10].
[[nodiscard]] SpectralModel ar1_model();
/// Same with sigma held at a fixed value.
[[nodiscard]] SpectralModel ar1_model_fixed_sigma(double sigma);
/// theta = (a1, a2, sigma), x_t = a1 x_{t-1} + a2 x_{t-2} + e_t.
[[nodiscard]] SpectralModel ar2_model();

struct WhittleFit {
    Params theta_hat;
    double objective_at_min = 0.0;
    int iterations = 0;
    bool boundary_hit = false;  ///< a free coordinate ended on its box edge
    std::vector<std::string> warnings;
};

struct WhittleFitOptions {
    int seeds_per_dim = 25;
    double tolerance = 1e-6;
    int max_sweeps = 200;
};

/// (1/T) sum_{k=1}^T (|J_k|^2 / f(w_k) + log f(w_k)).
/// @throws InvalidInput on nonpositive density or theta outside the box
[[nodiscard]] double whittle_objective(const DftGrid& grid, const SpectralModel& model,
                                       std::span<const double> theta);

/// Gradient of the objective: A_T(grad 1/f; 0) + (1/T) sum grad f / f.
[[nodiscard]] std::vector<double> whittle_gradient(const DftGrid& grid, const SpectralModel& model,
                                                   std::span<const double> theta);

/// Grid seed over the box followed by golden-section coordinate descent.
/// @throws InvalidInput if param_dim > 3
[[nodiscard]] WhittleFit whittle_fit(const DftGrid& grid, const SpectralModel& model,
                                     const WhittleFitOptions& options = {});

/// Weight w -> d/dtheta_c 1/f(w; theta).
[[nodiscard]] WeightFunction score_weight(const SpectralModel& model, Params theta, int coordinate);

struct ScoreVariance {
    std::vector<VarianceEstimate> per_coordinate;  ///< free coordinates only
    std::vector<int> coordinates;                  ///< indices of the free coordinates
    CovMatrixEstimate matrix;
};

/// Orthogonal-sample variance of the score weights at theta_hat.
[[nodiscard]] ScoreVariance whittle_score_variance(const DftGrid& grid, const SpectralModel& model,
                                                   std::span<const double> theta_hat, int M);

}  // namespace osample
