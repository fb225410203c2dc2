#include "osample/result_table.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "osample/errors.hpp"
#include "osample/text_util.hpp"

namespace osample::replication {

namespace {

std::string quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string num(double v) {
    if (std::isnan(v)) return "nan";
    return text::format_double(v);
}

std::vector<std::string> split_csv_line(const std::string& line, std::size_t no) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (quoted) throw DataError("unterminated quote on line " + std::to_string(no), no);
    out.push_back(cur);
    return out;
}

double parse_num(const std::string& s, std::size_t no) {
    if (s == "nan") return std::nan("");
    try {
        return text::parse_double(s, "value");
    } catch (const ConfigError&) {
        throw DataError("invalid number '" + s + "' on line " + std::to_string(no), no);
    }
}

bool same(double a, double b) { return (std::isnan(a) && std::isnan(b)) || a == b; }

nlohmann::json json_num(double v) {
    if (std::isnan(v)) return nullptr;
    return v;
}

void write_file(const std::filesystem::path& p, const std::string& body) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + p.string() + "'");
    out << body;
    if (!out) throw std::runtime_error("write failed for '" + p.string() + "'");
}

}  // namespace

const ResultRow* ResultTable::find(const std::string& model, std::size_t T,
                                   const std::string& method, double alpha) const {
    for (const auto& r : rows) {
        if (r.model == model && r.T == T && r.method == method && std::abs(r.alpha - alpha) < 1e-12) {
            return &r;
        }
    }
    return nullptr;
}

double rate_standard_error(double rate_percent, int nrep) {
    if (nrep < 1 || std::isnan(rate_percent)) return std::nan("");
    const double p = rate_percent / 100.0;
    return std::sqrt(p * (1.0 - p) / nrep) * 100.0;
}

std::string to_csv(const ResultTable& table) {
    std::string out = std::string(kCsvHeader) + "\n";
    for (const auto& r : table.rows) {
        out += quote(r.model) + "," + std::to_string(r.T) + "," + quote(r.method) + "," +
               num(r.alpha) + "," + num(r.rate) + "," + num(r.se) + "," + num(r.time_ms) + "\n";
    }
    return out;
}

std::vector<ResultRow> parse_csv(const std::string& body) {
    std::istringstream in(body);
    std::string line;
    std::size_t no = 0;
    if (!std::getline(in, line)) throw DataError("empty CSV", 0);
    ++no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kCsvHeader) throw DataError("unexpected CSV header", 1);
    std::vector<ResultRow> rows;
    while (std::getline(in, line)) {
        ++no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto f = split_csv_line(line, no);
        if (f.size() != 7) {
            throw DataError("expected 7 fields on line " + std::to_string(no), no);
        }
        ResultRow r;
        r.model = f[0];
        const double T = parse_num(f[1], no);
        if (!(T >= 0) || T != std::floor(T)) throw DataError("invalid T on line " + std::to_string(no), no);
        r.T = static_cast<std::size_t>(T);
        r.method = f[2];
        r.alpha = parse_num(f[3], no);
        r.rate = parse_num(f[4], no);
        r.se = parse_num(f[5], no);
        r.time_ms = parse_num(f[6], no);
        rows.push_back(std::move(r));
    }
    return rows;
}

std::string to_json(const ResultTable& table) {
    nlohmann::json j;
    j["metadata"] = {{"experiment", table.meta.experiment},
                     {"config_hash", table.meta.config_hash},
                     {"seed", table.meta.seed},
                     {"version", table.meta.version},
                     {"nrep", table.meta.nrep},
                     {"workers", table.meta.workers}};
    j["rows"] = nlohmann::json::array();
    for (const auto& r : table.rows) {
        j["rows"].push_back({{"model", r.model},
                             {"T", r.T},
                             {"method", r.method},
                             {"alpha", r.alpha},
                             {"rate", json_num(r.rate)},
                             {"se", json_num(r.se)},
                             {"time_ms", json_num(r.time_ms)}});
    }
    j["qq"] = nlohmann::json::array();
    for (const auto& q : table.qq) {
        j["qq"].push_back({{"model", q.model},
                           {"T", q.T},
                           {"df", q.df},
                           {"n", q.empirical.size()},
                           {"ks_statistic", q.ks_statistic},
                           {"ks_pvalue", q.ks_pvalue}});
    }
    nlohmann::json diag = nlohmann::json::object();
    for (const auto& [k, v] : table.diagnostics) diag[k] = json_num(v);
    j["diagnostics"] = diag;
    j["errors"] = table.errors;
    return j.dump(2);
}

bool rows_equal(const std::vector<ResultRow>& a, const std::vector<ResultRow>& b, bool with_time) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto& x = a[i];
        const auto& y = b[i];
        if (x.model != y.model || x.T != y.T || x.method != y.method || !same(x.alpha, y.alpha) ||
            !same(x.rate, y.rate) || !same(x.se, y.se)) {
            return false;
        }
        if (with_time && !same(x.time_ms, y.time_ms)) return false;
    }
    return true;
}

std::vector<std::string> emit(const ResultTable& table, const std::string& dir,
                              const std::string& name, EmitFormat format) {
    if (table.rows.empty() && table.qq.empty()) throw std::runtime_error("result table is empty");
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create '" + dir + "': " + ec.message());
    const std::filesystem::path base(dir);
    std::vector<std::string> written;

    const auto csv = base / (name + ".csv");
    write_file(csv, to_csv(table));
    written.push_back(csv.string());

    nlohmann::json meta = {{"experiment", table.meta.experiment},
                           {"config_hash", table.meta.config_hash},
                           {"seed", table.meta.seed},
                           {"version", table.meta.version},
                           {"nrep", table.meta.nrep},
                           {"workers", table.meta.workers},
                           {"errors", table.errors}};
    const auto meta_path = base / (name + ".meta.json");
    write_file(meta_path, meta.dump(2) + "\n");
    written.push_back(meta_path.string());

    if (format == EmitFormat::csv_and_json) {
        const auto jp = base / (name + ".json");
        write_file(jp, to_json(table) + "\n");
        written.push_back(jp.string());
    }
    for (std::size_t k = 0; k < table.qq.size(); ++k) {
        const auto& q = table.qq[k];
        std::string body = "empirical,reference\n";
        for (std::size_t i = 0; i < q.empirical.size(); ++i) {
            body += num(q.empirical[i]) + "," + num(q.reference[i]) + "\n";
        }
        const auto qp = base / (name + "_qq_" + std::to_string(k) + ".csv");
        write_file(qp, body);
        written.push_back(qp.string());
    }
    return written;
}

}  // namespace osample::replication
