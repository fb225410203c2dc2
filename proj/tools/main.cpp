#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "osample/errors.hpp"
#include "osample/replication.hpp"
#include "osample/text_util.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 2;
constexpr int kDataError = 3;

using namespace osample;

int cmd_run(const std::string& config_path, const std::string& out_dir, bool json, bool paper_scale,
            int workers, bool quiet) {
    auto cfg = replication::load_config(config_path);
    replication::apply_worker_env(cfg);
    if (workers > 0) cfg.workers = workers;
    if (paper_scale) {
        if (cfg.paper_nrep <= 0) throw ConfigError("config does not record paper_nrep");
        cfg.paper_scale = true;
    }
    replication::ProgressFn progress;
    if (!quiet) progress = [](const std::string& s) { std::cerr << "  " << s << "\n"; };
    if (!quiet) {
        std::cerr << cfg.name << ": " << to_string(cfg.kind) << ", nrep=" << cfg.effective_nrep()
                  << ", workers=" << cfg.workers << "\n";
    }
    const auto table = replication::run_experiment(cfg, progress);
    const auto paths = replication::emit(table, out_dir, cfg.name,
                                         json ? replication::EmitFormat::csv_and_json
                                              : replication::EmitFormat::csv);
    for (const auto& p : paths) std::cout << p << "\n";
    for (const auto& e : table.errors) std::cerr << "warning: " << e << "\n";
    return kOk;
}

std::pair<int, int> parse_set(const std::string& s) {
    const auto dots = s.find("..");
    if (dots == std::string::npos) throw ConfigError("--set expects lo..hi");
    return {static_cast<int>(text::parse_long(s.substr(0, dots), "--set")),
            static_cast<int>(text::parse_long(s.substr(dots + 2), "--set"))};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Orthogonal-sample inference for time series"};
    app.set_version_flag("--version", replication::version());
    app.require_subcommand(1);

    std::string config_path, out_dir = "results";
    bool json = false, paper_scale = false, quiet = false;
    int workers = 0;
    auto* run = app.add_subcommand("run", "Run a replication experiment from a config file");
    run->add_option("config", config_path, "Config file (key=value or JSON)")->required();
    run->add_option("-o,--out", out_dir, "Output directory");
    run->add_flag("--json", json, "Also write a JSON table");
    run->add_flag("--paper-scale", paper_scale, "Use the published replication count");
    run->add_option("-w,--workers", workers, "Worker threads (overrides OSAMPLE_WORKERS)");
    run->add_flag("-q,--quiet", quiet, "No progress output");

    std::string kind, data_path, set_text = "10..30";
    replication::SingleTestOptions opts;
    int M = 0;
    double bandwidth = 0.0, beta = 0.0;
    auto* test = app.add_subcommand("test", "Run one test on a data file and print a JSON report");
    test->add_option("kind", kind,
                     "portmanteau | gof | box_pierce | robust | bootstrap | bootstrap_gof | equality")
        ->required();
    test->add_option("datafile", data_path, "CSV with one column (two for equality)")->required();
    auto* m_opt = test->add_option("--M", M, "Fixed number of shifts (default: selected)");
    test->add_option("--L", opts.L, "Number of lags");
    test->add_option("--p", opts.p, "Selection window divisor");
    test->add_option("--set", set_text, "M search set lo..hi");
    auto* b_opt = test->add_option("--b", bandwidth, "Kernel bandwidth (equality)");
    auto* beta_opt = test->add_option("--beta", beta, "Fixed power transform (equality)");
    test->add_option("--seed", opts.seed, "Bootstrap seed");
    test->add_option("--B", opts.B, "Bootstrap block length");
    test->add_option("--n-boot", opts.n_boot, "Bootstrap draws");
    test->add_option("--phi", opts.phi, "AR(1) null coefficient (gof)");
    test->add_option("--sigma", opts.sigma, "AR(1) null innovation sd (gof)");

    std::string sel_path, sel_set = "10..30";
    replication::SingleTestOptions sel_opts;
    auto* select = app.add_subcommand("selectM", "Select the number of shifts M for a data file");
    select->add_option("datafile", sel_path, "CSV, first column used")->required();
    select->add_option("--p", sel_opts.p, "Window divisor");
    select->add_option("--set", sel_set, "Search set lo..hi");
    select->add_option("--lag", sel_opts.lag, "Weight e^{i lag w}");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kConfigError;
    }

    try {
        if (*run) return cmd_run(config_path, out_dir, json, paper_scale, workers, quiet);
        if (*test) {
            if (*m_opt) opts.M = M;
            if (*b_opt) opts.bandwidth = bandwidth;
            if (*beta_opt) opts.beta = beta;
            std::tie(opts.set_lo, opts.set_hi) = parse_set(set_text);
            const auto report = replication::run_single_test(data_path, kind, opts);
            std::cout << to_json(report) << "\n";
            return kOk;
        }
        std::tie(sel_opts.set_lo, sel_opts.set_hi) = parse_set(sel_set);
        std::cout << replication::to_json(replication::run_select_M(sel_path, sel_opts)) << "\n";
        return kOk;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kDataError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
