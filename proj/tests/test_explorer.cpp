#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "meanlab/explorer.hpp"

using namespace meanlab;

namespace {

SearchConfig small_cfg() {
    SearchConfig cfg;
    cfg.log_lo = std::log(1e-3);
    cfg.log_hi = std::log(1e3);
    cfg.grid_n = 17;
    cfg.max_refine_iters = 200;
    return cfg;
}

}  // namespace

TEST_CASE("config validation") {
    SearchConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    SearchConfig bad = cfg;
    bad.grid_n = 1;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = cfg;
    bad.v_delta = 0.7;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = cfg;
    bad.digits = 10;  // too few for escalation
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = cfg;
    bad.log_lo = bad.log_hi;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("grid scan finds no violation of the four-means order") {
    SearchConfig cfg = small_cfg();
    SearchResult res = grid_scan("four_means_order", cfg);
    CHECK(res.status != WitnessStatus::Violated);
    CHECK(res.evaluations > 0);
    CHECK(res.best_gap >= -1e-30);
}

TEST_CASE("grid scan finds and confirms the known violation") {
    SearchConfig cfg = small_cfg();
    SearchResult res = grid_scan("half_mix_unweighted_L", cfg);
    CHECK(res.status == WitnessStatus::Violated);
    CHECK(res.best_gap < 0.0);
    CHECK(res.precision.big);  // confirmed by the high-precision oracle
}

TEST_CASE("grid scan is deterministic across thread counts") {
    SearchConfig c1 = small_cfg();
    c1.threads = 1;
    SearchConfig c4 = small_cfg();
    c4.threads = 4;
    SearchResult r1 = grid_scan("wlog_two_thirds", c1);
    SearchResult r4 = grid_scan("wlog_two_thirds", c4);
    CHECK(r1.best.a == r4.best.a);
    CHECK(r1.best.b == r4.best.b);
    CHECK(r1.best.v == r4.best.v);
    CHECK(r1.best_gap == r4.best_gap);
    CHECK(r1.gap_decimal == r4.gap_decimal);
}

TEST_CASE("grid scan error paths") {
    SearchConfig cfg = small_cfg();
    CHECK_THROWS_AS(grid_scan("nope", cfg), UnknownCaseError);
    cfg.fixed_r = 0.0;  // empties the r-conditional domain
    CHECK_THROWS_AS(grid_scan("r_young", cfg), DomainViolationError);
}

TEST_CASE("refine with a zero budget reports the start point") {
    SearchConfig cfg = small_cfg();
    cfg.max_refine_iters = 0;
    Point start{2.0, 1.0, 0.75, 1.0, 0.5};
    SearchResult res = refine("half_mix_unweighted_L", start, cfg);
    CHECK(res.best.a == doctest::Approx(2.0).epsilon(1e-15));  // log/exp round trip
    CHECK(res.best.v == 0.75);
    CHECK(res.best_gap == doctest::Approx(-0.223091483387602874).epsilon(1e-10));
    CHECK(res.status == WitnessStatus::Violated);
}

TEST_CASE("refine never reports a worse gap than its start") {
    SearchConfig cfg = small_cfg();
    cfg.policy = PrecisionPolicy::DoubleOnly;
    for (double v : {0.1, 0.3, 0.6, 0.9}) {
        Point start{3.0, 0.4, v, 1.0, 0.5};
        double g0 = case_gap<double>(CaseId::WlogTwoThirds, start);
        SearchResult res = refine("wlog_two_thirds", start, cfg);
        CHECK(res.best_gap <= g0 + 1e-12);  // allow the log/exp round trip
    }
    CHECK_THROWS_AS(refine("wlog_two_thirds", Point{-1.0, 1.0, 0.5, 1.0, 0.5}, cfg),
                    DomainViolationError);
}

TEST_CASE("adjudicate reproduces the frozen high-precision gap") {
    GapReport rep = adjudicate("half_mix_unweighted_L", Point{0.5, 1.0, 0.25, 1.0, 0.5}, 50);
    CHECK(rep.precision.big);
    CHECK(rep.precision.digits == 50);
    CHECK(rep.gap == doctest::Approx(-0.111545741693801437).epsilon(1e-12));
    CHECK(rep.verdict == Verdict::Violated);
    CHECK_THROWS_AS(adjudicate("polya", Point{2.0, 1.0}, 20), std::invalid_argument);
}

TEST_CASE("double-only policy never escalates") {
    SearchConfig cfg = small_cfg();
    cfg.policy = PrecisionPolicy::DoubleOnly;
    SearchResult res = grid_scan("half_mix_unweighted_L", cfg);
    CHECK_FALSE(res.precision.big);
    CHECK(res.status == WitnessStatus::Violated);
}

TEST_CASE("collapsed points come back indeterminate, not violated") {
    SearchConfig cfg = small_cfg();
    cfg.max_refine_iters = 0;
    Point eq{5.0, 5.0, 0.4, 1.0, 0.5};
    SearchResult res = refine("wlog_half_mix", eq, cfg);
    CHECK(res.best_gap == 0.0);
    CHECK(res.status == WitnessStatus::Indeterminate);
}

TEST_CASE("the published mixing-weight witness is cancellation noise") {
    Point witness{1e-10, 1.0, 1.0 - 1e-10, 1.0, 13.0 / 25.0};
    double naive = naive_optimal_p_gap(witness);
    GapReport oracle = adjudicate("optimal_p_mix", witness, 50);
    // the true gap is tiny but positive; the textbook-form double value is
    // dominated by rounding and lands orders of magnitude away
    CHECK(oracle.gap == doctest::Approx(1.6053537156011366e-12).epsilon(1e-4));
    CHECK(oracle.gap > 0.0);
    CHECK(oracle.verdict == Verdict::Holds);
    CHECK(std::abs(naive - oracle.gap) > 1e-10);
}

TEST_CASE("optimal-p bisection brackets the crossover") {
    SearchConfig cfg;
    cfg.log_lo = std::log(1e-3);
    cfg.log_hi = std::log(1e3);
    cfg.grid_n = 9;
    cfg.max_refine_iters = 150;
    OptimalPResult res = find_optimal_p(cfg);
    CHECK(res.p_lo >= 0.5);
    CHECK(res.p_hi <= 2.0 / 3.0);
    CHECK(res.p_hi - res.p_lo <= 1e-4);
    CHECK(res.witness_hi.status == WitnessStatus::Violated);
    CHECK(res.witness_lo.status != WitnessStatus::Violated);

    SearchConfig off = cfg;
    off.policy = PrecisionPolicy::DoubleOnly;
    off.digits = 0;
    CHECK_THROWS_AS(find_optimal_p(off), EscalationDisabledError);
}

TEST_CASE("conjecture probe finds no counterexample on a modest budget") {
    SearchConfig cfg = small_cfg();
    cfg.seed = 7;
    ConjectureEvidence ev = probe_conjecture(2000, cfg);
    CHECK(ev.status != WitnessStatus::Violated);
    CHECK(ev.evaluations >= 2000);
    CHECK(ev.min_gap >= -1e-12);

    // deterministic under a fixed seed
    ConjectureEvidence ev2 = probe_conjecture(2000, cfg);
    CHECK(ev.min_gap == ev2.min_gap);
    CHECK(ev.argmin.a == ev2.argmin.a);
}
