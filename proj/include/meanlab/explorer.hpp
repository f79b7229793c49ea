#ifndef MEANLAB_EXPLORER_HPP
#define MEANLAB_EXPLORER_HPP

// Counterexample search over the inequality registry: deterministic grid
// scans, derivative-free simplex refinement, precision-escalated
// adjudication of near-zero gaps, the optimal-p probe, and the conjecture
// probe.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "meanlab/catalog.hpp"

namespace meanlab {

enum class PrecisionPolicy { DoubleOnly, Escalate };

struct SearchConfig {
    double log_lo = std::log(1e-6);  // ln a, ln b range
    double log_hi = std::log(1e6);
    double v_delta = 1e-3;           // v in [delta, 1-delta]
    int grid_n = 33;                 // resolution per axis, >= 2
    int max_refine_iters = 400;
    std::uint64_t seed = 1;
    PrecisionPolicy policy = PrecisionPolicy::Escalate;
    unsigned digits = 50;            // >= 30 when escalation enabled
    std::optional<double> fixed_r;
    std::optional<double> fixed_p;
    int threads = 1;

    void validate() const;  // throws std::invalid_argument
};

enum class WitnessStatus { Violated, NoViolationFound, Indeterminate };

const char* witness_status_label(WitnessStatus s);

struct SearchResult {
    Point best;
    double best_gap = 0.0;
    Precision precision;
    WitnessStatus status = WitnessStatus::NoViolationFound;
    long evaluations = 0;
    std::string gap_decimal;  // at the reported precision
};

SearchResult grid_scan(const std::string& case_key, const SearchConfig& cfg);

// Nelder-Mead in (ln a, ln b, v) from a start point; reflect-and-clamp keeps
// every trial inside the domain box. Never reports a gap above the start gap.
SearchResult refine(const std::string& case_key, const Point& start,
                    const SearchConfig& cfg);

// Gap of a case at a point, evaluated with >= `digits` significant decimal
// digits through the same cancellation-safe kernels.
GapReport adjudicate(const std::string& case_key, const Point& pt, unsigned digits);

// Naive textbook-form evaluation of the optimal-p gap in plain double; kept
// only to reproduce published desk calculations for comparison.
double naive_optimal_p_gap(const Point& pt);

struct OptimalPResult {
    double p_lo = 0.5;
    double p_hi = 2.0 / 3.0;
    SearchResult witness_lo;  // minimizer at p_lo (holds)
    SearchResult witness_hi;  // minimizer at p_hi (violated)
};

// Bisection on p in [1/2, 2/3]; inner loop = grid scan + refinement over
// (a, b, v), adjudicated at cfg.digits. The returned sup is an empirical
// estimate over the configured domain. Requires cfg.policy == Escalate.
OptimalPResult find_optimal_p(const SearchConfig& cfg);

struct ConjectureEvidence {
    double min_gap = 0.0;
    Point argmin;
    WitnessStatus status = WitnessStatus::NoViolationFound;
    long evaluations = 0;
};

// Random sampling of conjecture_nested_L plus refinement from the smallest
// observed gaps.
ConjectureEvidence probe_conjecture(long samples, const SearchConfig& cfg);

struct EscalationDisabledError : std::runtime_error {
    EscalationDisabledError()
        : std::runtime_error("this probe requires the escalate precision policy") {}
};

}  // namespace meanlab

#endif  // MEANLAB_EXPLORER_HPP
