#ifndef MEANLAB_CATALOG_HPP
#define MEANLAB_CATALOG_HPP

// Registry of every scalar inequality in scope, as signed gap functions with
// domain predicates and expected status, plus the nested-mean compositor.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "meanlab/gap_kernels.hpp"

namespace meanlab {

enum class CaseStatus { HoldsEverywhere, FailsSomewhere, Conditional, Conjecture };

enum class Verdict { Holds, Violated, Indeterminate };

struct Arity {
    bool a = true;
    bool b = true;
    bool v = false;
    bool r = false;
    bool p = false;
};

struct InequalityCase {
    CaseId id;
    std::string key;
    std::string description;
    std::string paper_anchor;
    Arity arity;
    CaseStatus expected;
    int num_links;
    std::function<bool(const Point&)> domain;
    std::vector<Point> witnesses;       // stored violation points, if any
    std::string annotation;             // e.g. the paper's printed values
};

struct Precision {
    bool big = false;
    unsigned digits = 0;  // significant decimal digits when big

    static Precision dbl() { return {}; }
    static Precision bigfloat(unsigned digits) { return {true, digits}; }
    std::string label() const;
};

struct GapReport {
    std::string case_id;
    Point point;
    double gap = 0.0;
    double relative_gap = 0.0;
    std::string gap_decimal;  // full-precision decimal of the gap
    Precision precision;
    Verdict verdict = Verdict::Indeterminate;
};

struct AxisSpec {
    double lo = 0.0;
    double hi = 0.0;
    int n = 0;          // 0 means the axis is not swept
    bool log_scale = false;

    std::vector<double> values() const;
};

struct GridSpec {
    AxisSpec a;
    AxisSpec b;
    AxisSpec v;
    AxisSpec r;
    AxisSpec p;
    Point base;  // values for axes not swept
};

struct SweepResult {
    std::vector<GapReport> reports;
    std::size_t min_index = 0;  // position of the minimum-gap report
};

class Catalog {
  public:
    static const Catalog& instance();

    const std::vector<InequalityCase>& cases() const { return cases_; }
    const InequalityCase& lookup(const std::string& key) const;  // throws UnknownCaseError
    const InequalityCase& lookup(CaseId id) const;
    bool contains(const std::string& key) const;

  private:
    Catalog();
    std::vector<InequalityCase> cases_;
};

struct UnknownCaseError : std::runtime_error {
    explicit UnknownCaseError(const std::string& key)
        : std::runtime_error("unknown inequality case: " + key) {}
};

struct DomainViolationError : std::runtime_error {
    DomainViolationError(const std::string& key, const std::string& what)
        : std::runtime_error("point outside domain of case " + key + ": " + what) {}
};

// Amplification bound used by the conditioning guard:
// max(v/(1-v), (1-v)/v, 1) * |log(a/b)|, clamped below at 8 so that plain
// few-ulp arithmetic noise near a = b never reads as a violation.
double amplification_bound(const InequalityCase& c, const Point& pt);

// Conditioning bound below which a gap's sign is not trusted at the given
// precision. scale = max(a, b).
double conditioning_bound(const InequalityCase& c, const Point& pt, const Precision& prec);

Verdict classify_gap(double gap, double bound);

GapReport evaluate_gap(const std::string& key, const Point& pt,
                       const Precision& prec = Precision::dbl());

SweepResult sweep(const std::string& key, const GridSpec& grid,
                  const Precision& prec = Precision::dbl(), int threads = 1);

// M_outer(N_v(a,b), N_{1-v}(a,b)) with the outer mean unweighted. Only the
// A/G/H/L kinds compose; Heinz and PowerThird are rejected.
double nested_mean(MeanKind outer, MeanKind inner, const ScalarPair<double>& pr,
                   const WeightSplit& w);

}  // namespace meanlab

#endif  // MEANLAB_CATALOG_HPP
