#include "osample/experiment_config.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "osample/errors.hpp"
#include "osample/text_util.hpp"

namespace osample::replication {

namespace {

using text::format_double;
using text::trim;

const std::set<std::string> kKnownKeys{
    "name",   "experiment", "models", "T",     "nrep",    "paper_nrep", "paper_scale",
    "M",      "p",          "M_by_T", "L",     "bandwidth", "bandwidth_by_T", "methods",
    "blocks", "n_boot",     "betas",  "qq_M",  "qq_demean",  "alpha",   "seed",       "workers"};

std::vector<std::string> list_of(const std::string& v) {
    std::vector<std::string> out;
    for (auto& s : text::split_top_level(v, ',')) {
        if (!s.empty()) out.push_back(s);
    }
    return out;
}

bool parse_bool(const std::string& v, const std::string& key) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("invalid boolean for " + key + ": '" + v + "'");
}

std::pair<int, int> parse_range(const std::string& v, const std::string& key) {
    const auto dots = v.find("..");
    if (dots == std::string::npos) throw ConfigError(key + ": expected lo..hi, got '" + v + "'");
    const int lo = static_cast<int>(text::parse_long(v.substr(0, dots), key));
    const int hi = static_cast<int>(text::parse_long(v.substr(dots + 2), key));
    if (lo < 1 || hi < lo) throw ConfigError(key + ": invalid range '" + v + "'");
    return {lo, hi};
}

template <class V, class F>
std::map<std::size_t, V> parse_by_T(const std::string& v, const std::string& key, F conv) {
    std::map<std::size_t, V> out;
    for (const auto& item : list_of(v)) {
        const auto colon = item.find(':');
        if (colon == std::string::npos) throw ConfigError(key + ": expected T:value pairs");
        const auto T = text::parse_long(item.substr(0, colon), key);
        if (T < 2) throw ConfigError(key + ": T must be >= 2");
        out[static_cast<std::size_t>(T)] = conv(item.substr(colon + 1));
    }
    return out;
}

ModelCell parse_cell(const std::string& s) {
    ModelCell cell;
    const auto tilde = s.find('~');
    cell.model = sim::parse_model_spec(trim(s.substr(0, tilde)));
    if (tilde != std::string::npos) {
        const std::string null_text = trim(s.substr(tilde + 1));
        const auto open = null_text.find('(');
        if (open == std::string::npos || null_text.back() != ')' ||
            trim(null_text.substr(0, open)) != "null") {
            throw ConfigError("goodness-of-fit null must read null(phi=..,sigma=..), got '" +
                              null_text + "'");
        }
        double phi = 0.0;
        double sigma = 1.0;
        for (const auto& item : list_of(null_text.substr(open + 1, null_text.size() - open - 2))) {
            const auto eq = item.find('=');
            if (eq == std::string::npos) throw ConfigError("null parameter '" + item + "' is not key=value");
            const std::string k = trim(item.substr(0, eq));
            const double v = text::parse_double(item.substr(eq + 1), "null." + k);
            if (k == "phi") {
                phi = v;
            } else if (k == "sigma") {
                sigma = v;
            } else {
                throw ConfigError("unknown null parameter '" + k + "'");
            }
        }
        if (!(std::abs(phi) < 0.99 + 1e-12) || !(sigma > 0.0)) {
            throw ConfigError("null(phi, sigma) needs |phi| <= 0.99 and sigma > 0");
        }
        cell.gof_null = std::make_pair(phi, sigma);
    }
    return cell;
}

void apply_defaults(ExperimentConfig& c, const std::set<std::string>& given) {
    using K = ExperimentKind;
    if (!given.count("methods")) {
        switch (c.kind) {
            case K::qq_t10: c.methods = {"studentized"}; break;
            case K::table_equality: c.methods = {"equality"}; break;
            case K::table_uncorrelated_null:
            case K::table_uncorrelated_power:
                c.methods = {"orthogonal", "box_pierce", "robust", "bootstrap"};
                break;
            case K::table_gof_null:
            case K::table_gof_power: c.methods = {"orthogonal", "bootstrap"}; break;
            case K::custom_test: c.methods = {"orthogonal"}; break;
        }
    }
    if (!given.count("blocks")) {
        if (c.kind == K::table_gof_null || c.kind == K::table_gof_power) {
            c.bootstrap_blocks = {5, 10, 20, 30, 40};
        } else {
            c.bootstrap_blocks = {5, 10, 20};
        }
    }
    if (!given.count("betas")) c.betas = {"hat", "0.25"};
    if (c.kind == K::table_equality && !given.count("M_by_T")) {
        c.M_by_T = {{128, 6}, {512, 12}, {1024, 18}};
    }
    if (c.kind == K::table_equality && !given.count("bandwidth_by_T")) {
        c.bandwidth_by_T = {{128, 0.15}, {512, 0.1}, {1024, 0.1}};
    }
}

void check(const ExperimentConfig& c) {
    using K = ExperimentKind;
    if (c.cells.empty()) throw ConfigError("config lists no models");
    if (c.T_values.empty()) throw ConfigError("config lists no T values");
    if (c.nrep < 1) throw ConfigError("nrep must be >= 1");
    if (c.L < 1) throw ConfigError("L must be >= 1");
    if (c.alphas.empty()) throw ConfigError("at least one alpha level is required");
    for (double a : c.alphas) {
        if (!(a > 0.0 && a < 1.0)) throw ConfigError("alpha levels must lie in (0,1)");
    }
    for (auto T : c.T_values) {
        if (T < 8) throw ConfigError("T values must be >= 8");
    }
    if (c.workers < 1) throw ConfigError("workers must be >= 1");
    for (int b : c.bootstrap_blocks) {
        if (b < 1) throw ConfigError("bootstrap block lengths must be >= 1");
    }
    const std::set<std::string> univariate{"orthogonal", "box_pierce", "robust", "bootstrap"};
    const std::set<std::string> gof{"orthogonal", "bootstrap"};
    for (const auto& m : c.methods) {
        bool ok = false;
        switch (c.kind) {
            case K::qq_t10: ok = m == "studentized"; break;
            case K::table_equality: ok = m == "equality"; break;
            case K::table_uncorrelated_null:
            case K::table_uncorrelated_power: ok = univariate.count(m) > 0; break;
            case K::table_gof_null:
            case K::table_gof_power: ok = gof.count(m) > 0; break;
            case K::custom_test:
                ok = univariate.count(m) > 0 || m == "equality";
                break;
        }
        if (!ok) throw ConfigError("method '" + m + "' is not available for " + to_string(c.kind));
    }
    const bool wants_gof = c.kind == K::table_gof_null || c.kind == K::table_gof_power;
    const bool wants_equality =
        c.kind == K::table_equality ||
        std::find(c.methods.begin(), c.methods.end(), "equality") != c.methods.end();
    for (const auto& cell : c.cells) {
        if (wants_gof && !cell.gof_null) {
            throw ConfigError("goodness-of-fit cell '" + cell.label() + "' needs '~ null(phi=..,sigma=..)'");
        }
        if (wants_equality != sim::is_bivariate(cell.model)) {
            throw ConfigError(wants_equality ? "equality experiments need bivariate_ar models"
                                             : "bivariate models need the equality method");
        }
    }
    for (const auto& b : c.betas) {
        if (b == "hat") continue;
        const double v = text::parse_double(b, "betas");
        if (!(v > 0.0 && v <= 1.0)) throw ConfigError("fixed beta must lie in (0, 1]");
    }
    if (c.qq_M < 1) throw ConfigError("qq_M must be >= 1");
}

}  // namespace

std::string to_string(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::qq_t10: return "qq_t10";
        case ExperimentKind::table_equality: return "table_equality";
        case ExperimentKind::table_uncorrelated_null: return "table_uncorrelated_null";
        case ExperimentKind::table_uncorrelated_power: return "table_uncorrelated_power";
        case ExperimentKind::table_gof_null: return "table_gof_null";
        case ExperimentKind::table_gof_power: return "table_gof_power";
        case ExperimentKind::custom_test: return "custom_test";
    }
    return "custom_test";
}

ExperimentKind parse_experiment_kind(const std::string& s) {
    for (auto k : {ExperimentKind::qq_t10, ExperimentKind::table_equality,
                   ExperimentKind::table_uncorrelated_null, ExperimentKind::table_uncorrelated_power,
                   ExperimentKind::table_gof_null, ExperimentKind::table_gof_power,
                   ExperimentKind::custom_test}) {
        if (to_string(k) == s) return k;
    }
    throw ConfigError("unknown experiment '" + s + "'");
}

std::string ModelCell::label() const {
    std::string s = sim::to_string(model);
    if (gof_null) {
        s += " ~ null(phi=" + format_double(gof_null->first) +
             ",sigma=" + format_double(gof_null->second) + ")";
    }
    return s;
}

int ExperimentConfig::effective_nrep() const {
    return paper_scale && paper_nrep > 0 ? paper_nrep : nrep;
}

MPolicy ExperimentConfig::policy_for(std::size_t T) const {
    if (auto it = M_by_T.find(T); it != M_by_T.end()) return MPolicy::fixed_at(it->second);
    return m_policy;
}

double ExperimentConfig::bandwidth_for(std::size_t T) const {
    if (auto it = bandwidth_by_T.find(T); it != bandwidth_by_T.end()) return it->second;
    return bandwidth;
}

std::string ExperimentConfig::canonical_text() const {
    std::map<std::string, std::string> kv;
    auto join = [](const auto& v, auto fmt) {
        std::string out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) out += ",";
            out += fmt(v[i]);
        }
        return out;
    };
    kv["name"] = name;
    kv["experiment"] = to_string(kind);
    std::string models;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) models += ";";
        models += cells[i].label();
    }
    kv["models"] = models;
    kv["T"] = join(T_values, [](std::size_t t) { return std::to_string(t); });
    kv["nrep"] = std::to_string(effective_nrep());
    if (m_policy.fixed) {
        kv["M"] = std::to_string(*m_policy.fixed);
    } else {
        kv["M"] = "select(" + join(m_policy.search_set, [](int m) { return std::to_string(m); }) +
                  ";p=" + std::to_string(m_policy.p) + ")";
    }
    std::string mbt;
    for (const auto& [t, m] : M_by_T) mbt += std::to_string(t) + ":" + std::to_string(m) + ",";
    kv["M_by_T"] = mbt;
    kv["L"] = std::to_string(L);
    kv["bandwidth"] = format_double(bandwidth);
    std::string bbt;
    for (const auto& [t, b] : bandwidth_by_T) bbt += std::to_string(t) + ":" + format_double(b) + ",";
    kv["bandwidth_by_T"] = bbt;
    kv["methods"] = join(methods, [](const std::string& s) { return s; });
    kv["blocks"] = join(bootstrap_blocks, [](int b) { return std::to_string(b); });
    kv["n_boot"] = std::to_string(n_boot);
    kv["betas"] = join(betas, [](const std::string& s) { return s; });
    kv["qq_M"] = std::to_string(qq_M);
    kv["qq_demean"] = qq_demean ? "true" : "false";
    kv["alpha"] = join(alphas, [](double a) { return format_double(a); });
    kv["seed"] = std::to_string(base_seed);
    std::string out;
    for (const auto& [k, v] : kv) out += k + "=" + v + "\n";
    return out;
}

std::string fnv1a_hex(const std::string& data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string ExperimentConfig::hash() const { return fnv1a_hex(canonical_text()); }

namespace {

ExperimentConfig from_pairs(const std::vector<std::pair<std::string, std::string>>& pairs,
                            const std::vector<std::size_t>& lines) {
    ExperimentConfig c;
    std::set<std::string> given;
    bool kind_seen = false;
    // experiment first so that defaults can depend on it
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (pairs[i].first == "experiment") {
            c.kind = parse_experiment_kind(pairs[i].second);
            kind_seen = true;
        }
    }
    if (!kind_seen) throw ConfigError("config is missing 'experiment'");
    std::optional<int> p_override;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto& [key, v] = pairs[i];
        const std::string where = lines.empty() ? key : "line " + std::to_string(lines[i]) + " (" + key + ")";
        try {
            if (!kKnownKeys.count(key)) throw ConfigError("unknown key '" + key + "'");
            if (given.count(key)) throw ConfigError("duplicate key '" + key + "'");
            given.insert(key);
            if (key == "name") {
                c.name = v;
            } else if (key == "experiment") {
            } else if (key == "models") {
                for (const auto& item : text::split_top_level(v, ';')) {
                    if (!item.empty()) c.cells.push_back(parse_cell(item));
                }
            } else if (key == "T") {
                for (const auto& t : list_of(v)) c.T_values.push_back(static_cast<std::size_t>(text::parse_long(t, "T")));
            } else if (key == "nrep") {
                c.nrep = static_cast<int>(text::parse_long(v, key));
            } else if (key == "paper_nrep") {
                c.paper_nrep = static_cast<int>(text::parse_long(v, key));
            } else if (key == "paper_scale") {
                c.paper_scale = parse_bool(v, key);
            } else if (key == "M") {
                if (v.rfind("select", 0) == 0) {
                    const auto open = v.find('(');
                    if (open == std::string::npos || v.back() != ')') throw ConfigError("M: expected select(lo..hi[,p=k])");
                    const auto parts = list_of(v.substr(open + 1, v.size() - open - 2));
                    if (parts.empty()) throw ConfigError("M: empty select()");
                    const auto [lo, hi] = parse_range(parts[0], "M");
                    c.m_policy = MPolicy::selected(search_range(lo, hi), 4);
                    for (std::size_t j = 1; j < parts.size(); ++j) {
                        if (parts[j].rfind("p=", 0) != 0) throw ConfigError("M: unknown option '" + parts[j] + "'");
                        c.m_policy.p = static_cast<int>(text::parse_long(parts[j].substr(2), "M.p"));
                    }
                } else {
                    c.m_policy = MPolicy::fixed_at(static_cast<int>(text::parse_long(v, key)));
                }
            } else if (key == "p") {
                p_override = static_cast<int>(text::parse_long(v, key));
            } else if (key == "M_by_T") {
                c.M_by_T = parse_by_T<int>(v, key, [&](const std::string& s) {
                    return static_cast<int>(text::parse_long(s, key));
                });
            } else if (key == "L") {
                c.L = static_cast<int>(text::parse_long(v, key));
            } else if (key == "bandwidth") {
                c.bandwidth = text::parse_double(v, key);
            } else if (key == "bandwidth_by_T") {
                c.bandwidth_by_T = parse_by_T<double>(v, key, [&](const std::string& s) {
                    return text::parse_double(s, key);
                });
            } else if (key == "methods") {
                c.methods = list_of(v);
            } else if (key == "blocks") {
                for (const auto& b : list_of(v)) c.bootstrap_blocks.push_back(static_cast<int>(text::parse_long(b, key)));
            } else if (key == "n_boot") {
                c.n_boot = static_cast<int>(text::parse_long(v, key));
            } else if (key == "betas") {
                c.betas = list_of(v);
            } else if (key == "qq_demean") {
                c.qq_demean = parse_bool(v, key);
            } else if (key == "qq_M") {
                c.qq_M = static_cast<int>(text::parse_long(v, key));
            } else if (key == "alpha") {
                c.alphas.clear();
                for (const auto& a : list_of(v)) c.alphas.push_back(text::parse_double(a, key));
            } else if (key == "seed") {
                c.base_seed = static_cast<std::uint64_t>(text::parse_long(v, key));
            } else if (key == "workers") {
                c.workers = static_cast<int>(text::parse_long(v, key));
            }
        } catch (const ConfigError& e) {
            throw ConfigError(where + ": " + e.what());
        }
    }
    if (p_override) c.m_policy.p = *p_override;
    apply_defaults(c, given);
    check(c);
    return c;
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& textv) {
    std::vector<std::pair<std::string, std::string>> pairs;
    std::vector<std::size_t> lines;
    std::istringstream in(textv);
    std::string line;
    std::size_t no = 0;
    while (std::getline(in, line)) {
        ++no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(no) + ": expected key = value");
        }
        pairs.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
        lines.push_back(no);
    }
    return from_pairs(pairs, lines);
}

ExperimentConfig parse_config_json(const std::string& textv) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(textv);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("invalid JSON config: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("JSON config must be an object");
    auto scalar = [](const nlohmann::json& v, const std::string& key) -> std::string {
        if (v.is_string()) return v.get<std::string>();
        if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
        if (v.is_number_integer()) return std::to_string(v.get<long long>());
        if (v.is_number()) return format_double(v.get<double>());
        throw ConfigError("unsupported JSON value for '" + key + "'");
    };
    std::vector<std::pair<std::string, std::string>> pairs;
    for (const auto& [key, v] : j.items()) {
        if (v.is_array()) {
            const std::string sep = key == "models" ? ";" : ",";
            std::string joined;
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (i) joined += sep;
                joined += scalar(v[i], key);
            }
            pairs.emplace_back(key, joined);
        } else {
            pairs.emplace_back(key, scalar(v, key));
        }
    }
    return from_pairs(pairs, {});
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string body = ss.str();
    const auto first = body.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && body[first] == '{') return parse_config_json(body);
    return parse_config_text(body);
}

void apply_worker_env(ExperimentConfig& cfg) {
    if (const char* env = std::getenv("OSAMPLE_WORKERS")) {
        const long w = text::parse_long(env, "OSAMPLE_WORKERS");
        if (w < 1) throw ConfigError("OSAMPLE_WORKERS must be >= 1");
        cfg.workers = static_cast<int>(w);
    }
}

}  // namespace osample::replication
