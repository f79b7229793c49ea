#ifndef MEANLAB_REPORT_HPP
#define MEANLAB_REPORT_HPP

// Run configuration and bit-stable report emission. All numeric content is
// rendered as 17-significant-digit decimal (big-float results at their full
// requested digits), identically in JSON and CSV.

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "meanlab/catalog.hpp"
#include "meanlab/operator_means.hpp"

namespace meanlab {

inline constexpr const char* kToolVersion = "meanlab 0.1.0";

struct RunConfig {
    std::uint64_t seed = 1;
    long samples = 100000;
    double scalar_tol = 1e-12;      // relative-gap tolerance for verdict = holds
    double loewner_tol = 1e-8;
    int quad_nodes = 32;
    bool escalate = true;
    unsigned digits = 50;
    std::string format = "json";    // json | csv
    std::string output;             // empty = stdout
    int threads = 1;

    // Flat key=value file; unknown keys are rejected. Flags override file
    // values, so the CLI loads the file first.
    void load_file(const std::string& path);
    nlohmann::ordered_json echo() const;
};

struct ReportRecord {
    std::string id;
    Point point;
    bool has_point = true;
    std::string gap;            // decimal string
    std::string relative_gap;
    std::string precision;
    std::string verdict;        // holds | violated | indeterminate | skipped
    std::string paper_anchor;
    std::string note;
};

struct ReportSummary {
    long checked = 0;
    long held = 0;
    long violated = 0;
    long indeterminate = 0;
    long skipped = 0;
};

struct ReportEnvelope {
    RunConfig config;
    std::vector<ReportRecord> records;
    ReportSummary summary;
    int exit_status = 0;

    void add(const GapReport& rep, const std::string& anchor, const std::string& note = {});
    void add_operator(const std::string& case_key, const OperatorCaseReport& rep,
                      int dim, std::uint64_t pair_seed);
    void add_skipped(const std::string& id, const std::string& note);

    std::string to_json() const;  // key-ordered, locale-independent
    std::string to_csv() const;
    // Serializes per config.format to config.output or stdout.
    void emit(std::ostream& fallback) const;
};

// 17-significant-digit decimal rendering used everywhere in reports.
std::string format_double(double x);

const char* verdict_label(Verdict v);

// JSON wire form for matrices: {"dim": n, "entries": [row-major]}.
nlohmann::ordered_json spd_to_json(const SpdMatrix& m);
SpdMatrix spd_from_json(const nlohmann::json& j);

}  // namespace meanlab

#endif  // MEANLAB_REPORT_HPP
