#include <map>
#include <set>
#include <sstream>
#include <string>

#include "osample/errors.hpp"
#include "osample/sim_models.hpp"
#include "osample/text_util.hpp"

namespace osample::sim {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

using text::format_double;

std::string innovation_name(Innovation i) {
    switch (i) {
        case Innovation::normal: return "normal";
        case Innovation::t5: return "t5";
        case Innovation::arch: return "arch";
        case Innovation::chi2: return "chi2";
    }
    return "normal";
}

Innovation parse_innovation(const std::string& s) {
    if (s == "normal" || s == "gaussian") return Innovation::normal;
    if (s == "t5") return Innovation::t5;
    if (s == "arch") return Innovation::arch;
    if (s == "chi2") return Innovation::chi2;
    throw ConfigError("unknown innovation '" + s + "' (normal, t5, arch, chi2)");
}

std::string join_list(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += '/';
        out += format_double(v[i]);
    }
    return out;
}

std::vector<double> parse_list(const std::string& s, const std::string& what) {
    std::vector<double> out;
    for (const auto& piece : text::split_top_level(s, '/')) out.push_back(text::parse_double(piece, what));
    return out;
}

class Args {
public:
    Args(std::string model, std::map<std::string, std::string> kv)
        : model_(std::move(model)), kv_(std::move(kv)) {}

    double num(const std::string& key, double def) {
        used_.insert(key);
        auto it = kv_.find(key);
        return it == kv_.end() ? def : text::parse_double(it->second, model_ + "." + key);
    }
    std::string str(const std::string& key, const std::string& def) {
        used_.insert(key);
        auto it = kv_.find(key);
        return it == kv_.end() ? def : it->second;
    }
    std::vector<double> list(const std::string& key, const std::vector<double>& def) {
        used_.insert(key);
        auto it = kv_.find(key);
        return it == kv_.end() ? def : parse_list(it->second, model_ + "." + key);
    }
    void finish() const {
        for (const auto& [k, v] : kv_) {
            if (!used_.count(k)) throw ConfigError("unknown parameter '" + k + "' for model " + model_);
        }
    }

private:
    std::string model_;
    std::map<std::string, std::string> kv_;
    std::set<std::string> used_;
};

}  // namespace

std::string to_string(const ModelSpec& spec) {
    return std::visit(
        overloaded{
            [](const IidNormal&) { return std::string("iid_normal"); },
            [](const IidT& m) { return "iid_t(df=" + format_double(m.df) + ")"; },
            [](const NoncausalLinear& m) {
                std::string s = "noncausal_linear(a=" + format_double(m.a) +
                                ",innovation=" + innovation_name(m.innovation);
                if (m.innovation == Innovation::arch) s += ",alpha=" + format_double(m.arch_alpha);
                return s + ")";
            },
            [](const TwoDependent&) { return std::string("two_dependent"); },
            [](const Lobato&) { return std::string("lobato"); },
            [](const Arch1& m) { return "arch1(alpha=" + format_double(m.alpha) + ")"; },
            [](const ArchTimesNoncausal& m) {
                return "arch_times_noncausal(a=" + format_double(m.a) +
                       ",alpha=" + format_double(m.alpha) + ")";
            },
            [](const PseudoLinear& m) {
                return "pseudo_linear(b1=" + format_double(m.b1) + ",b2=" + format_double(m.b2) +
                       ",alpha=" + format_double(m.alpha) + ")";
            },
            [](const PeriodicScaled& m) {
                const PeriodicScaled def;
                if (m.scale == def.scale) return std::string("periodic_scaled");
                return "periodic_scaled(scale=" + join_list(m.scale) + ")";
            },
            [](const Autoregressive& m) {
                return "ar(coeffs=" + join_list(m.coeffs) +
                       ",innovation=" + innovation_name(m.innovation) + ")";
            },
            [](const ArTimesArch& m) {
                return "ar_times_arch(phi=" + format_double(m.phi) +
                       ",alpha=" + format_double(m.alpha) + ")";
            },
            [](const BivariateAr& m) {
                return "bivariate_ar(delta=" + format_double(m.delta) +
                       ",rho=" + format_double(m.rho) + ")";
            },
        },
        spec);
}

ModelSpec parse_model_spec(const std::string& raw) {
    const std::string s = text::trim(raw);
    std::string name = s;
    std::map<std::string, std::string> kv;
    if (const auto open = s.find('('); open != std::string::npos) {
        if (s.back() != ')') throw ConfigError("model spec '" + s + "' is missing ')'");
        name = text::trim(s.substr(0, open));
        const std::string inner = s.substr(open + 1, s.size() - open - 2);
        if (!text::trim(inner).empty()) {
            for (const auto& item : text::split_top_level(inner, ',')) {
                const auto eq = item.find('=');
                if (eq == std::string::npos) {
                    throw ConfigError("model parameter '" + item + "' is not key=value");
                }
                kv[text::trim(item.substr(0, eq))] = text::trim(item.substr(eq + 1));
            }
        }
    }
    if (name.empty()) throw ConfigError("empty model spec");
    Args a(name, kv);
    ModelSpec out;
    if (name == "iid_normal" || name == "normal") {
        out = IidNormal{};
    } else if (name == "iid_t" || name == "iid_t5") {
        out = IidT{a.num("df", 5.0)};
    } else if (name == "noncausal_linear") {
        NoncausalLinear m;
        m.a = a.num("a", 0.6);
        m.innovation = parse_innovation(a.str("innovation", "normal"));
        m.arch_alpha = a.num("alpha", 0.7);
        out = m;
    } else if (name == "two_dependent") {
        out = TwoDependent{};
    } else if (name == "lobato" || name == "lobato_nonmartingale") {
        out = Lobato{};
    } else if (name == "arch1") {
        out = Arch1{a.num("alpha", 0.8)};
    } else if (name == "arch_times_noncausal") {
        out = ArchTimesNoncausal{a.num("a", 0.8), a.num("alpha", 0.8)};
    } else if (name == "pseudo_linear") {
        out = PseudoLinear{a.num("b1", -0.8), a.num("b2", -0.6), a.num("alpha", 0.5)};
    } else if (name == "periodic_scaled") {
        out = PeriodicScaled{a.list("scale", PeriodicScaled{}.scale)};
    } else if (name == "ar") {
        Autoregressive m;
        m.coeffs = a.list("coeffs", {0.6});
        m.innovation = parse_innovation(a.str("innovation", "normal"));
        out = m;
    } else if (name == "ar_times_arch") {
        out = ArTimesArch{a.num("phi", -0.2), a.num("alpha", 0.5)};
    } else if (name == "bivariate_ar") {
        out = BivariateAr{a.num("delta", 0.0), a.num("rho", 0.0)};
    } else {
        throw ConfigError("unknown model '" + name + "'");
    }
    a.finish();
    try {
        validate(out);
    } catch (const InvalidInput& e) {
        throw ConfigError("model '" + s + "': " + e.what());
    }
    return out;
}

}  // namespace osample::sim
