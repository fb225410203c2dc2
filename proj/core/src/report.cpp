#include "osample/report.hpp"

#include <cmath>

#include "json.hpp"

namespace osample {

void decide(TestReport& report, const std::vector<double>& alphas) {
    report.decisions.clear();
    for (double a : alphas) report.decisions.push_back({a, report.p_value < a});
}

namespace {
nlohmann::json number(double v) {
    if (std::isfinite(v)) return v;
    return nullptr;
}
}  // namespace

std::string to_json(const TestReport& r) {
    nlohmann::json j;
    j["test"] = r.test_name;
    j["statistic"] = number(r.statistic);
    j["p_value"] = number(r.p_value);
    if (const auto* d = std::get_if<dist::DistRef>(&r.null_ref)) {
        j["null"] = {{"type", "distribution"}, {"law", d->describe()}};
    } else {
        const auto& e = std::get<EmpiricalNull>(r.null_ref);
        nlohmann::json draws = nlohmann::json::array();
        for (double v : e.draws) draws.push_back(number(v));
        j["null"] = {{"type", e.kind == NullKind::orthogonal ? "orthogonal" : "bootstrap"},
                     {"size", e.draws.size()},
                     {"draws", draws}};
    }
    nlohmann::json t = nlohmann::json::object();
    if (r.tuning.L) t["L"] = *r.tuning.L;
    if (r.tuning.M) t["M"] = *r.tuning.M;
    if (r.tuning.B) t["B"] = *r.tuning.B;
    if (r.tuning.n_boot) t["n_boot"] = *r.tuning.n_boot;
    if (r.tuning.p) t["p"] = *r.tuning.p;
    if (r.tuning.bandwidth) t["b"] = *r.tuning.bandwidth;
    if (r.tuning.beta) t["beta"] = *r.tuning.beta;
    t["M_selected"] = r.tuning.M_selected;
    if (!r.tuning.criterion_curve.empty()) {
        nlohmann::json curve = nlohmann::json::array();
        for (const auto& [m, c] : r.tuning.criterion_curve) curve.push_back({{"M", m}, {"C", number(c)}});
        t["criterion_curve"] = curve;
    }
    j["tuning"] = t;
    nlohmann::json dec = nlohmann::json::array();
    for (const auto& d : r.decisions) dec.push_back({{"alpha", d.alpha}, {"reject", d.reject}});
    j["decisions"] = dec;
    nlohmann::json ex = nlohmann::json::object();
    for (const auto& [k, v] : r.extras) ex[k] = number(v);
    j["extras"] = ex;
    j["warnings"] = r.warnings;
    return j.dump(2);
}

}  // namespace osample
