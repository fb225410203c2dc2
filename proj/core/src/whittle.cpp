#include "osample/whittle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "osample/errors.hpp"

namespace osample {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

double ar1_h(double phi, double w) { return 1.0 - 2.0 * phi * std::cos(w) + phi * phi; }

double ar2_h(double a1, double a2, double w) {
    return 1.0 + a1 * a1 + a2 * a2 - 2.0 * a1 * (1.0 - a2) * std::cos(w) -
           2.0 * a2 * std::cos(2.0 * w);
}

std::vector<int> free_coordinates(const SpectralModel& m) {
    std::vector<int> out;
    for (int i = 0; i < m.param_dim; ++i) {
        if (m.param_box[static_cast<std::size_t>(i)].first <
            m.param_box[static_cast<std::size_t>(i)].second) {
            out.push_back(i);
        }
    }
    return out;
}

// objective that maps invalid points to +inf, used inside the optimizer
double safe_objective(const DftGrid& grid, const std::vector<double>& pgram,
                      const SpectralModel& model, std::span<const double> theta) {
    const std::size_t T = grid.size();
    double acc = 0.0;
    for (std::size_t k = 1; k <= T; ++k) {
        const double f = model.density(grid.omega(static_cast<long>(k)), theta);
        if (!(f > 0.0) || !std::isfinite(f)) return kInf;
        acc += pgram[k - 1] / f + std::log(f);
    }
    return acc / static_cast<double>(T);
}
}  // namespace

std::vector<double> SpectralModel::reciprocal_grad(double w, std::span<const double> theta) const {
    if (reciprocal_gradient) return reciprocal_gradient(w, theta);
    if (!gradient) throw InvalidInput("model " + name + " has no gradient");
    const double f = density(w, theta);
    auto g = gradient(w, theta);
    for (auto& v : g) v = -v / (f * f);
    return g;
}

bool SpectralModel::in_box(std::span<const double> theta) const {
    if (static_cast<int>(theta.size()) != param_dim) return false;
    for (int i = 0; i < param_dim; ++i) {
        const auto& b = param_box[static_cast<std::size_t>(i)];
        const double v = theta[static_cast<std::size_t>(i)];
        if (!(v >= b.first && v <= b.second)) return false;
    }
    return true;
}

SpectralModel ar1_model() {
    SpectralModel m;
    m.name = "ar1";
    m.param_dim = 2;
    m.param_box = {{-0.99, 0.99}, {0.05, 10.0}};
    m.param_names = {"phi", "sigma"};
    m.density = [](double w, std::span<const double> th) {
        return th[1] * th[1] / (kTwoPi * ar1_h(th[0], w));
    };
    m.gradient = [](double w, std::span<const double> th) {
        const double h = ar1_h(th[0], w);
        const double s2 = th[1] * th[1];
        return std::vector<double>{-s2 * (2.0 * th[0] - 2.0 * std::cos(w)) / (kTwoPi * h * h),
                                   2.0 * th[1] / (kTwoPi * h)};
    };
    m.reciprocal_gradient = [](double w, std::span<const double> th) {
        const double s = th[1];
        return std::vector<double>{kTwoPi * (2.0 * th[0] - 2.0 * std::cos(w)) / (s * s),
                                   -2.0 * kTwoPi * ar1_h(th[0], w) / (s * s * s)};
    };
    return m;
}

SpectralModel ar1_model_fixed_sigma(double sigma) {
    if (!(sigma > 0.0)) throw InvalidInput("ar1_model_fixed_sigma: sigma must be positive");
    SpectralModel m;
    m.name = "ar1_fixed_sigma";
    m.param_dim = 1;
    m.param_box = {{-0.99, 0.99}};
    m.param_names = {"phi"};
    const double s2 = sigma * sigma;
    m.density = [s2](double w, std::span<const double> th) {
        return s2 / (kTwoPi * ar1_h(th[0], w));
    };
    m.gradient = [s2](double w, std::span<const double> th) {
        const double h = ar1_h(th[0], w);
        return std::vector<double>{-s2 * (2.0 * th[0] - 2.0 * std::cos(w)) / (kTwoPi * h * h)};
    };
    m.reciprocal_gradient = [s2](double w, std::span<const double> th) {
        return std::vector<double>{kTwoPi * (2.0 * th[0] - 2.0 * std::cos(w)) / s2};
    };
    return m;
}

SpectralModel ar2_model() {
    SpectralModel m;
    m.name = "ar2";
    m.param_dim = 3;
    m.param_box = {{-1.99, 1.99}, {-0.99, 0.99}, {0.05, 10.0}};
    m.param_names = {"a1", "a2", "sigma"};
    m.density = [](double w, std::span<const double> th) {
        return th[2] * th[2] / (kTwoPi * ar2_h(th[0], th[1], w));
    };
    m.gradient = [](double w, std::span<const double> th) {
        const double h = ar2_h(th[0], th[1], w);
        const double s2 = th[2] * th[2];
        const double c = -s2 / (kTwoPi * h * h);
        return std::vector<double>{c * (2.0 * th[0] - 2.0 * (1.0 - th[1]) * std::cos(w)),
                                   c * (2.0 * th[1] + 2.0 * th[0] * std::cos(w) - 2.0 * std::cos(2.0 * w)),
                                   2.0 * th[2] / (kTwoPi * h)};
    };
    m.reciprocal_gradient = [](double w, std::span<const double> th) {
        const double s = th[2];
        const double c = kTwoPi / (s * s);
        return std::vector<double>{
            c * (2.0 * th[0] - 2.0 * (1.0 - th[1]) * std::cos(w)),
            c * (2.0 * th[1] + 2.0 * th[0] * std::cos(w) - 2.0 * std::cos(2.0 * w)),
            -2.0 * kTwoPi * ar2_h(th[0], th[1], w) / (s * s * s)};
    };
    return m;
}

double whittle_objective(const DftGrid& grid, const SpectralModel& model,
                         std::span<const double> theta) {
    if (!model.in_box(theta)) throw InvalidInput("whittle_objective: theta outside the parameter box");
    const std::size_t T = grid.size();
    double acc = 0.0;
    for (std::size_t k = 1; k <= T; ++k) {
        const double w = grid.omega(static_cast<long>(k));
        const double f = model.density(w, theta);
        if (!(f > 0.0) || !std::isfinite(f)) {
            throw InvalidInput("whittle_objective: nonpositive density at grid point k=" +
                               std::to_string(k));
        }
        acc += std::norm(grid(static_cast<long>(k))) / f + std::log(f);
    }
    return acc / static_cast<double>(T);
}

std::vector<double> whittle_gradient(const DftGrid& grid, const SpectralModel& model,
                                     std::span<const double> theta) {
    const std::size_t T = grid.size();
    std::vector<double> g(static_cast<std::size_t>(model.param_dim), 0.0);
    for (std::size_t k = 1; k <= T; ++k) {
        const double w = grid.omega(static_cast<long>(k));
        const double f = model.density(w, theta);
        const auto rg = model.reciprocal_grad(w, theta);
        const double p = std::norm(grid(static_cast<long>(k)));
        // grad f / f = -f grad(1/f)
        for (std::size_t i = 0; i < g.size(); ++i) g[i] += (p - f) * rg[i];
    }
    for (auto& v : g) v /= static_cast<double>(T);
    return g;
}

WhittleFit whittle_fit(const DftGrid& grid, const SpectralModel& model,
                       const WhittleFitOptions& options) {
    if (model.param_dim < 1 || model.param_dim > 3) {
        throw InvalidInput("whittle_fit supports 1 to 3 parameters");
    }
    if (static_cast<int>(model.param_box.size()) != model.param_dim) {
        throw InvalidInput("whittle_fit: parameter box has wrong dimension");
    }
    const auto pgram = grid.periodogram();
    const auto freeidx = free_coordinates(model);
    const int n = options.seeds_per_dim;
    if (n < 2) throw InvalidInput("whittle_fit: need at least 2 seeds per dimension");

    auto objective = [&](const Params& th) { return safe_objective(grid, pgram, model, th); };

    Params theta(static_cast<std::size_t>(model.param_dim));
    for (int i = 0; i < model.param_dim; ++i) theta[static_cast<std::size_t>(i)] = model.param_box[static_cast<std::size_t>(i)].first;

    // exhaustive grid seed over the free coordinates
    Params best = theta;
    double best_val = kInf;
    std::size_t total = 1;
    for (std::size_t c = 0; c < freeidx.size(); ++c) total *= static_cast<std::size_t>(n);
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t rem = idx;
        for (int c : freeidx) {
            const auto& b = model.param_box[static_cast<std::size_t>(c)];
            const auto step = static_cast<double>(rem % static_cast<std::size_t>(n));
            rem /= static_cast<std::size_t>(n);
            theta[static_cast<std::size_t>(c)] = b.first + (b.second - b.first) * step / (n - 1);
        }
        const double v = objective(theta);
        if (v < best_val) {
            best_val = v;
            best = theta;
        }
    }
    if (!std::isfinite(best_val)) throw InvalidInput("whittle_fit: objective is not finite on any seed");

    WhittleFit fit;
    theta = best;
    double fval = best_val;
    std::vector<double> delta(static_cast<std::size_t>(model.param_dim));
    for (int c : freeidx) {
        const auto& b = model.param_box[static_cast<std::size_t>(c)];
        delta[static_cast<std::size_t>(c)] = (b.second - b.first) / (n - 1);
    }

    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    int sweep = 0;
    for (; sweep < options.max_sweeps; ++sweep) {
        double max_change = 0.0;
        for (int c : freeidx) {
            const auto ci = static_cast<std::size_t>(c);
            const double lo = model.param_box[ci].first;
            const double hi = model.param_box[ci].second;
            auto along = [&](double v) {
                Params t = theta;
                t[ci] = v;
                return objective(t);
            };
            const double x0 = theta[ci];
            const double d = std::max(delta[ci], 1e-7 * (hi - lo));

            // bracket a minimum: a < m < b with f(m) <= f(a), f(b), or stop at the box edge
            double a = std::max(lo, x0 - d);
            double b = std::min(hi, x0 + d);
            double fa = along(a);
            double fb = along(b);
            double step = d;
            while (fa < fval && a > lo) {
                step *= 2.0;
                a = std::max(lo, a - step);
                fa = along(a);
            }
            step = d;
            while (fb < fval && b < hi) {
                step *= 2.0;
                b = std::min(hi, b + step);
                fb = along(b);
            }

            double x1 = b - gr * (b - a);
            double x2 = a + gr * (b - a);
            double f1 = along(x1);
            double f2 = along(x2);
            const double xtol = 1e-3 * options.tolerance;
            for (int it = 0; it < 200 && (b - a) > xtol; ++it) {
                if (f1 <= f2) {
                    b = x2;
                    x2 = x1;
                    f2 = f1;
                    x1 = b - gr * (b - a);
                    f1 = along(x1);
                } else {
                    a = x1;
                    x1 = x2;
                    f1 = f2;
                    x2 = a + gr * (b - a);
                    f2 = along(x2);
                }
            }
            // candidates: interior golden point and the bracket ends (box edges)
            double xn = f1 <= f2 ? x1 : x2;
            double fn = std::min(f1, f2);
            for (double e : {a, b}) {
                const double fe = along(e);
                if (fe < fn) {
                    fn = fe;
                    xn = e;
                }
            }
            if (fn < fval) {
                max_change = std::max(max_change, std::abs(xn - x0));
                delta[ci] = std::max(4.0 * std::abs(xn - x0), 1e-5 * (hi - lo));
                theta[ci] = xn;
                fval = fn;
            } else {
                delta[ci] = std::max(0.5 * delta[ci], 1e-5 * (hi - lo));
            }
        }
        if (max_change < options.tolerance) {
            ++sweep;
            break;
        }
    }

    fit.theta_hat = theta;
    fit.objective_at_min = fval;
    fit.iterations = sweep;
    for (int c : freeidx) {
        const auto& b = model.param_box[static_cast<std::size_t>(c)];
        const double v = theta[static_cast<std::size_t>(c)];
        const double edge = 10.0 * options.tolerance;
        if (v - b.first < edge || b.second - v < edge) {
            fit.boundary_hit = true;
            const std::string pname = static_cast<std::size_t>(c) < model.param_names.size()
                                          ? model.param_names[static_cast<std::size_t>(c)]
                                          : std::to_string(c);
            fit.warnings.push_back("minimum on box boundary for parameter " + pname);
        }
    }
    if (sweep >= options.max_sweeps) fit.warnings.push_back("coordinate descent hit the sweep limit");
    return fit;
}

WeightFunction score_weight(const SpectralModel& model, Params theta, int coordinate) {
    if (coordinate < 0 || coordinate >= model.param_dim) {
        throw InvalidInput("score_weight: coordinate out of range");
    }
    WeightDescriptor desc{WeightKind::score_weight, 0, 0, 0, coordinate, model.name};
    return {[model, theta = std::move(theta), coordinate](double w) {
                return std::complex<double>(
                    model.reciprocal_grad(w, theta)[static_cast<std::size_t>(coordinate)], 0.0);
            },
            desc};
}

ScoreVariance whittle_score_variance(const DftGrid& grid, const SpectralModel& model,
                                     std::span<const double> theta_hat, int M) {
    if (!model.in_box(theta_hat)) throw InvalidInput("whittle_score_variance: theta outside the box");
    ScoreVariance out;
    out.coordinates = free_coordinates(model);
    std::vector<OrthogonalSample> samples;
    const Params th(theta_hat.begin(), theta_hat.end());
    for (int c : out.coordinates) {
        samples.push_back(orthogonal_sample(grid, score_weight(model, th, c), M));
        out.per_coordinate.push_back(variance_estimate(samples.back()));
    }
    if (!samples.empty()) out.matrix = covariance_matrix_estimate(samples);
    return out;
}

}  // namespace osample
