#include "meanlab/report.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace meanlab {

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

const char* verdict_label(Verdict v) {
    switch (v) {
        case Verdict::Holds: return "holds";
        case Verdict::Violated: return "violated";
        case Verdict::Indeterminate: return "indeterminate";
    }
    return "?";
}

void RunConfig::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error("config line " + std::to_string(lineno) +
                                     ": expected key=value");
        }
        auto trim = [](std::string s) {
            auto b = s.find_first_not_of(" \t");
            auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key == "seed") seed = std::stoull(val);
        else if (key == "samples") samples = static_cast<long>(std::stod(val));
        else if (key == "scalar_tol") scalar_tol = std::stod(val);
        else if (key == "loewner_tol") loewner_tol = std::stod(val);
        else if (key == "quad_nodes") quad_nodes = std::stoi(val);
        else if (key == "escalate") escalate = (val == "1" || val == "true");
        else if (key == "digits") digits = static_cast<unsigned>(std::stoul(val));
        else if (key == "format") format = val;
        else if (key == "output") output = val;
        else if (key == "threads") threads = std::stoi(val);
        else throw std::runtime_error("unknown config key: " + key);
    }
}

nlohmann::ordered_json RunConfig::echo() const {
    nlohmann::ordered_json j;
    j["seed"] = seed;
    j["samples"] = samples;
    j["scalar_tol"] = format_double(scalar_tol);
    j["loewner_tol"] = format_double(loewner_tol);
    j["quad_nodes"] = quad_nodes;
    j["precision_policy"] =
        escalate ? ("escalate(" + std::to_string(digits) + ")") : "double-only";
    j["format"] = format;
    j["output"] = output;
    j["threads"] = threads;
    return j;
}

namespace {

nlohmann::ordered_json point_to_json(const Point& pt, const Arity& ar) {
    nlohmann::ordered_json j;
    if (ar.a) j["a"] = format_double(pt.a);
    if (ar.b) j["b"] = format_double(pt.b);
    if (ar.v) j["v"] = format_double(pt.v);
    if (ar.r) j["r"] = format_double(pt.r);
    if (ar.p) j["p"] = format_double(pt.p);
    return j;
}

std::string point_to_csv(const Point& pt, bool has_point) {
    if (!has_point) return ",,,,";
    return format_double(pt.a) + "," + format_double(pt.b) + "," + format_double(pt.v) +
           "," + format_double(pt.r) + "," + format_double(pt.p);
}

}  // namespace

void ReportEnvelope::add(const GapReport& rep, const std::string& anchor,
                         const std::string& note) {
    ReportRecord rec;
    rec.id = rep.case_id;
    rec.point = rep.point;
    rec.gap = rep.gap_decimal;
    rec.relative_gap = format_double(rep.relative_gap);
    rec.precision = rep.precision.label();
    rec.verdict = verdict_label(rep.verdict);
    rec.paper_anchor = anchor;
    rec.note = note;
    records.push_back(std::move(rec));
    ++summary.checked;
    switch (rep.verdict) {
        case Verdict::Holds: ++summary.held; break;
        case Verdict::Violated: ++summary.violated; break;
        case Verdict::Indeterminate: ++summary.indeterminate; break;
    }
}

void ReportEnvelope::add_operator(const std::string& case_key,
                                  const OperatorCaseReport& rep, int dim,
                                  std::uint64_t pair_seed) {
    ReportRecord rec;
    rec.id = case_key;
    rec.has_point = false;
    rec.gap = format_double(rep.min_eig);
    rec.relative_gap = format_double(rep.min_eig);
    rec.precision = "double";
    rec.verdict = rep.holds ? "holds" : "violated";
    rec.note = "dim=" + std::to_string(dim) + " pair_seed=" + std::to_string(pair_seed) +
               " v=" + format_double(rep.v) +
               (rep.id == OperatorCase::ZjTsallis ? " r=" + format_double(rep.r) : "");
    records.push_back(std::move(rec));
    ++summary.checked;
    if (rep.holds) ++summary.held;
    else ++summary.violated;
}

void ReportEnvelope::add_skipped(const std::string& id, const std::string& note) {
    ReportRecord rec;
    rec.id = id;
    rec.has_point = false;
    rec.verdict = "skipped";
    rec.note = note;
    records.push_back(std::move(rec));
    ++summary.skipped;
}

std::string ReportEnvelope::to_json() const {
    nlohmann::ordered_json j;
    j["version"] = kToolVersion;
    j["config"] = config.echo();
    j["cases"] = nlohmann::ordered_json::array();
    const Catalog& cat = Catalog::instance();
    for (const auto& rec : records) {
        nlohmann::ordered_json c;
        c["id"] = rec.id;
        if (rec.has_point && cat.contains(rec.id)) {
            c["point"] = point_to_json(rec.point, cat.lookup(rec.id).arity);
        } else {
            c["point"] = nullptr;
        }
        c["gap"] = rec.gap;
        c["relative_gap"] = rec.relative_gap;
        c["precision"] = rec.precision;
        c["verdict"] = rec.verdict;
        c["paper_anchor"] = rec.paper_anchor;
        if (!rec.note.empty()) c["note"] = rec.note;
        j["cases"].push_back(std::move(c));
    }
    nlohmann::ordered_json s;
    s["checked"] = summary.checked;
    s["held"] = summary.held;
    s["violated"] = summary.violated;
    s["indeterminate"] = summary.indeterminate;
    s["skipped"] = summary.skipped;
    j["summary"] = std::move(s);
    j["exit"] = exit_status;
    return j.dump(2) + "\n";
}

std::string ReportEnvelope::to_csv() const {
    std::ostringstream os;
    os << "id,a,b,v,r,p,gap,relative_gap,precision,verdict,note\n";
    for (const auto& rec : records) {
        os << rec.id << "," << point_to_csv(rec.point, rec.has_point) << "," << rec.gap
           << "," << rec.relative_gap << "," << rec.precision << "," << rec.verdict
           << ",\"" << rec.note << "\"\n";
    }
    os << "# checked=" << summary.checked << " held=" << summary.held
       << " violated=" << summary.violated << " indeterminate=" << summary.indeterminate
       << " skipped=" << summary.skipped << " exit=" << exit_status << "\n";
    return os.str();
}

void ReportEnvelope::emit(std::ostream& fallback) const {
    std::string body = config.format == "csv" ? to_csv() : to_json();
    if (config.output.empty()) {
        fallback << body;
    } else {
        std::ofstream out(config.output, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open output file: " + config.output);
        out << body;
    }
}

nlohmann::ordered_json spd_to_json(const SpdMatrix& m) {
    nlohmann::ordered_json j;
    j["dim"] = m.dim();
    nlohmann::ordered_json entries = nlohmann::ordered_json::array();
    for (int i = 0; i < m.dim(); ++i)
        for (int k = 0; k < m.dim(); ++k) entries.push_back(m.matrix()(i, k));
    j["entries"] = std::move(entries);
    return j;
}

SpdMatrix spd_from_json(const nlohmann::json& j) {
    int dim = j.at("dim").get<int>();
    const auto& entries = j.at("entries");
    if (static_cast<int>(entries.size()) != dim * dim) {
        throw std::runtime_error("matrix entries length does not match dim^2");
    }
    Eigen::MatrixXd m(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int k = 0; k < dim; ++k) m(i, k) = entries[i * dim + k].get<double>();
    return SpdMatrix(m);
}

}  // namespace meanlab
