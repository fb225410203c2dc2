#include "osample/replication.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <mutex>
#include <optional>
#include <thread>

#include "osample/distributions.hpp"
#include "osample/errors.hpp"
#include "osample/orthogonal_variance.hpp"
#include "osample/rng.hpp"
#include "osample/spectral_equality.hpp"
#include "osample/text_util.hpp"

#ifndef OSAMPLE_VERSION
#define OSAMPLE_VERSION "0.0.0"
#endif

namespace osample::replication {

namespace {

constexpr std::uint64_t kBootstrapStream = 0x9e3779b97f4a7c15ULL;

/// One method evaluated on one replication.
struct Outcome {
    std::vector<char> reject;  ///< per alpha
    double ms = 0.0;
    double statistic = std::nan("");
    double extra = std::nan("");  ///< beta_hat for equality, chosen M otherwise
    std::optional<std::string> error;
};

/// A named method applied to one simulated replication.
struct Method {
    std::string label;
    std::function<TestReport(const sim::SimOutput&, std::uint64_t seed)> run;
};

std::mt19937_64 bootstrap_rng(std::uint64_t seed) { return make_rng(splitmix64(seed) ^ kBootstrapStream); }

std::vector<Method> build_methods(const ExperimentConfig& cfg, const ModelCell& cell, std::size_t T) {
    using K = ExperimentKind;
    std::vector<Method> out;
    const int L = cfg.L;
    const auto alphas = cfg.alphas;
    const MPolicy policy = cfg.policy_for(T);

    if (cfg.kind == K::qq_t10) return out;

    if (cfg.kind == K::table_equality ||
        std::find(cfg.methods.begin(), cfg.methods.end(), "equality") != cfg.methods.end()) {
        const auto it = cfg.M_by_T.find(T);
        const int M = it != cfg.M_by_T.end() ? it->second : default_equality_M(T);
        const KernelSpec kernel = KernelSpec::daniell(cfg.bandwidth_for(T));
        for (const auto& b : cfg.betas) {
            const BetaMode mode =
                b == "hat" ? BetaMode::estimated() : BetaMode::fixed_at(text::parse_double(b, "betas"));
            out.push_back({"beta_" + b, [=](const sim::SimOutput& s, std::uint64_t) {
                               return equality_test(TimeSeries(s.series), TimeSeries(s.second), kernel,
                                                    M, mode, alphas);
                           }});
        }
        return out;
    }

    const bool gof = cfg.kind == K::table_gof_null || cfg.kind == K::table_gof_power;
    std::vector<double> theta;
    if (gof) theta = {cell.gof_null->first, cell.gof_null->second};
    const SpectralModel model = ar1_model();

    for (const auto& name : cfg.methods) {
        if (name == "orthogonal") {
            if (gof) {
                out.push_back({"orthogonal", [=](const sim::SimOutput& s, std::uint64_t) {
                                   return goodness_of_fit_test(TimeSeries(s.series), model, theta, L,
                                                               policy, alphas);
                               }});
            } else {
                out.push_back({"orthogonal", [=](const sim::SimOutput& s, std::uint64_t) {
                                   return portmanteau_test(TimeSeries(s.series), L, policy, alphas);
                               }});
            }
        } else if (name == "box_pierce") {
            out.push_back({"box_pierce", [=](const sim::SimOutput& s, std::uint64_t) {
                               return box_pierce(TimeSeries(s.series), L, alphas);
                           }});
        } else if (name == "robust") {
            out.push_back({"robust", [=](const sim::SimOutput& s, std::uint64_t) {
                               return robust_portmanteau(TimeSeries(s.series), L, alphas);
                           }});
        } else if (name == "bootstrap") {
            const int n_boot = cfg.n_boot;
            for (int B : cfg.bootstrap_blocks) {
                const std::string label = "bootstrap_B" + std::to_string(B);
                if (gof) {
                    out.push_back({label, [=](const sim::SimOutput& s, std::uint64_t seed) {
                                       auto rng = bootstrap_rng(seed + static_cast<std::uint64_t>(B));
                                       return bootstrap_goodness_of_fit_test(TimeSeries(s.series), model,
                                                                             theta, L, B, n_boot, rng,
                                                                             alphas);
                                   }});
                } else {
                    out.push_back({label, [=](const sim::SimOutput& s, std::uint64_t seed) {
                                       auto rng = bootstrap_rng(seed + static_cast<std::uint64_t>(B));
                                       return bootstrap_portmanteau_test(TimeSeries(s.series), L, B,
                                                                         n_boot, rng, alphas);
                                   }});
                }
            }
        }
    }
    return out;
}

/// Runs body(i) for i in [0, n) on `workers` threads.
template <class F>
void parallel_for(int n, int workers, F body) {
    const int w = std::max(1, std::min(workers, n));
    if (w == 1) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(w));
    for (int t = 0; t < w; ++t) {
        pool.emplace_back([&] {
            for (int i = next++; i < n; i = next++) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

void run_qq(const ExperimentConfig& cfg, const ModelCell& cell, std::size_t T, ResultTable& table) {
    const int nrep = cfg.effective_nrep();
    const int M = cfg.qq_M;
    std::vector<double> stats(static_cast<std::size_t>(nrep), std::nan(""));
    std::vector<std::string> errs(static_cast<std::size_t>(nrep));
    const auto phi = WeightFunction::lag_exponential(1);
    const auto start = std::chrono::steady_clock::now();
    parallel_for(nrep, cfg.workers, [&](int i) {
        try {
            const auto s = sim::generate(cell.model, T, cfg.base_seed + static_cast<std::uint64_t>(i));
            const auto grid = dft(TimeSeries(s.series), cfg.qq_demean);
            const auto sample = orthogonal_sample(grid, phi, M);
            const auto var = variance_estimate(sample);
            stats[static_cast<std::size_t>(i)] =
                studentize(sample.base.real(), 0.0, var, static_cast<int>(T)).statistic;
        } catch (const std::exception& e) {
            errs[static_cast<std::size_t>(i)] = e.what();
        }
    });
    const double ms = elapsed_ms(start);
    const std::string label = cell.label();
    const std::string method = "studentized_t" + std::to_string(2 * M);
    for (std::size_t i = 0; i < errs.size(); ++i) {
        if (!errs[i].empty()) {
            table.errors.push_back(label + " T=" + std::to_string(T) + " " + method + ": " + errs[i]);
            for (double a : cfg.alphas) {
                table.rows.push_back({label, T, method, a, std::nan(""), std::nan(""), ms});
            }
            return;
        }
    }
    const auto ref = dist::DistRef::t(2.0 * M);
    QQSeries q;
    q.model = label;
    q.T = T;
    q.df = 2 * M;
    q.empirical = stats;
    std::sort(q.empirical.begin(), q.empirical.end());
    const double n = static_cast<double>(nrep);
    q.reference.reserve(q.empirical.size());
    for (int i = 1; i <= nrep; ++i) q.reference.push_back(dist::quantile(ref, (i - 0.5) / n));
    q.ks_statistic = dist::ks_statistic(q.empirical, [&](double x) { return dist::cdf(ref, x); });
    q.ks_pvalue = dist::kolmogorov_pvalue(q.ks_statistic, q.empirical.size());
    table.diagnostics["ks_pvalue|" + label + "|" + std::to_string(T)] = q.ks_pvalue;
    for (double a : cfg.alphas) {
        const double crit = dist::quantile(ref, 1.0 - a / 2.0);
        const auto hits = std::count_if(stats.begin(), stats.end(), [&](double s) { return std::abs(s) > crit; });
        const double rate = 100.0 * static_cast<double>(hits) / n;
        table.rows.push_back({label, T, method, a, rate, rate_standard_error(rate, nrep), ms});
    }
    table.qq.push_back(std::move(q));
}

void run_tests(const ExperimentConfig& cfg, const ModelCell& cell, std::size_t T, ResultTable& table) {
    const int nrep = cfg.effective_nrep();
    const auto methods = build_methods(cfg, cell, T);
    const std::size_t nm = methods.size();
    const std::size_t na = cfg.alphas.size();
    std::vector<std::vector<Outcome>> outcomes(static_cast<std::size_t>(nrep));
    std::vector<std::string> sim_errors(static_cast<std::size_t>(nrep));

    parallel_for(nrep, cfg.workers, [&](int i) {
        const std::uint64_t seed = cfg.base_seed + static_cast<std::uint64_t>(i);
        auto& row = outcomes[static_cast<std::size_t>(i)];
        row.resize(nm);
        sim::SimOutput s;
        try {
            s = sim::generate(cell.model, T, seed);
        } catch (const std::exception& e) {
            sim_errors[static_cast<std::size_t>(i)] = e.what();
            return;
        }
        for (std::size_t m = 0; m < nm; ++m) {
            auto& o = row[m];
            const auto start = std::chrono::steady_clock::now();
            try {
                const TestReport rep = methods[m].run(s, seed);
                o.statistic = rep.statistic;
                o.reject.resize(na);
                for (std::size_t a = 0; a < na; ++a) o.reject[a] = rep.rejects_at(cfg.alphas[a]) ? 1 : 0;
                if (auto it = rep.extras.find("beta_hat"); it != rep.extras.end()) {
                    o.extra = it->second;
                } else if (rep.tuning.M) {
                    o.extra = *rep.tuning.M;
                }
            } catch (const std::exception& e) {
                o.error = e.what();
            }
            o.ms = elapsed_ms(start);
        }
    });

    const std::string label = cell.label();
    const std::string cell_key = label + "|" + std::to_string(T);
    for (std::size_t i = 0; i < sim_errors.size(); ++i) {
        if (!sim_errors[i].empty()) {
            table.errors.push_back(label + " T=" + std::to_string(T) + ": " + sim_errors[i]);
            for (const auto& m : methods) {
                for (double a : cfg.alphas) {
                    table.rows.push_back({label, T, m.label, a, std::nan(""), std::nan(""), std::nan("")});
                }
            }
            return;
        }
    }
    for (std::size_t m = 0; m < nm; ++m) {
        double ms = 0.0;
        std::optional<std::string> err;
        std::vector<long> hits(na, 0);
        double extra_sum = 0.0;
        int extra_n = 0;
        for (const auto& row : outcomes) {
            const auto& o = row[m];
            ms += o.ms;
            if (o.error) {
                if (!err) err = o.error;
                continue;
            }
            for (std::size_t a = 0; a < na; ++a) hits[a] += o.reject[a];
            if (!std::isnan(o.extra)) {
                extra_sum += o.extra;
                ++extra_n;
            }
        }
        if (err) {
            table.errors.push_back(label + " T=" + std::to_string(T) + " " + methods[m].label + ": " + *err);
        }
        for (std::size_t a = 0; a < na; ++a) {
            const double rate = err ? std::nan("") : 100.0 * static_cast<double>(hits[a]) / nrep;
            table.rows.push_back({label, T, methods[m].label, cfg.alphas[a], rate,
                                  rate_standard_error(rate, nrep), ms});
        }
        if (!err && extra_n > 0) {
            const bool beta = methods[m].label == "beta_hat";
            if (beta || methods[m].label == "orthogonal") {
                table.diagnostics[(beta ? "mean_beta_hat|" : "mean_M|") + cell_key] = extra_sum / extra_n;
            }
        }
    }
}

}  // namespace

std::string version() { return OSAMPLE_VERSION; }

ResultTable run_experiment(const ExperimentConfig& config, const ProgressFn& progress) {
    if (config.cells.empty() || config.T_values.empty()) throw ConfigError("config has no cells to run");
    if (config.workers < 1) throw ConfigError("workers must be >= 1");
    ResultTable table;
    table.meta.experiment = config.name;
    table.meta.config_hash = config.hash();
    table.meta.seed = config.base_seed;
    table.meta.version = version();
    table.meta.nrep = config.effective_nrep();
    table.meta.workers = config.workers;
    for (const auto& cell : config.cells) {
        for (std::size_t T : config.T_values) {
            if (progress) progress(cell.label() + " T=" + std::to_string(T));
            if (config.kind == ExperimentKind::qq_t10) {
                run_qq(config, cell, T, table);
            } else {
                run_tests(config, cell, T, table);
            }
        }
    }
    return table;
}

}  // namespace osample::replication
