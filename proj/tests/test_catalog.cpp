#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "meanlab/catalog.hpp"

using namespace meanlab;

namespace {

Point pt(double a, double b, double v = 0.5, double r = 1.0, double p = 0.5) {
    return Point{a, b, v, r, p};
}

std::mt19937_64 make_rng(std::uint64_t seed) { return std::mt19937_64(seed); }

Point random_in_domain(const InequalityCase& c, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> ulog(std::log(1e-6), std::log(1e6));
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    while (true) {
        Point x;
        x.a = std::exp(ulog(rng));
        x.b = std::exp(ulog(rng));
        x.v = u01(rng);
        double r = -2.0 + 4.0 * u01(rng);
        x.r = std::abs(r) < 1e-3 ? (r < 0 ? -1e-3 : 1e-3) : r;
        x.p = u01(rng);
        if (c.domain(x)) return x;
    }
}

}  // namespace

TEST_CASE("registry contents and stable order") {
    const auto& cases = Catalog::instance().cases();
    CHECK(cases.size() == 27);
    std::set<std::string> keys;
    for (const auto& c : cases) {
        CHECK(keys.insert(c.key).second);  // ids unique
        CHECK(!c.paper_anchor.empty());
    }
    CHECK(Catalog::instance().lookup("polya").expected == CaseStatus::HoldsEverywhere);
    CHECK(Catalog::instance().lookup("wlog_two_thirds").expected ==
          CaseStatus::FailsSomewhere);
    CHECK(Catalog::instance().lookup("refined_young_reverse").expected ==
          CaseStatus::FailsSomewhere);
    CHECK(Catalog::instance().lookup("half_mix_unweighted_L").expected ==
          CaseStatus::FailsSomewhere);
    CHECK(Catalog::instance().lookup("r_young").expected == CaseStatus::Conditional);
    CHECK(Catalog::instance().lookup("conditional_mix").expected ==
          CaseStatus::Conditional);
    CHECK(Catalog::instance().lookup("conjecture_nested_L").expected ==
          CaseStatus::Conjecture);
    CHECK_THROWS_AS(Catalog::instance().lookup("nope"), UnknownCaseError);
}

TEST_CASE("gap orientation: polya is (2/3)G + (1/3)A - L") {
    Point x = pt(5.0, 2.0);
    ScalarPair<double> p(5.0, 2.0);
    WeightSplit half(0.5);
    double expect = 2.0 / 3.0 * weighted_geometric(p, half) +
                    1.0 / 3.0 * weighted_arithmetic(p, half) - log_mean(p);
    CHECK(case_gap<double>(CaseId::Polya, x) == expect);
}

TEST_CASE("chain link gaps sum to the end-to-end gap") {
    std::mt19937_64 rng = make_rng(5);
    for (const char* key : {"lin_chain", "refined_polya", "four_means_order",
                            "heinz_chain", "heinz_refined", "refined_young"}) {
        const auto& c = Catalog::instance().lookup(key);
        for (int i = 0; i < 200; ++i) {
            Point x = random_in_domain(c, rng);
            auto links = case_link_gaps<double>(c.id, x);
            CHECK(static_cast<int>(links.size()) == c.num_links);
            // telescoping: sum of RHS_i - LHS_i equals end RHS - first LHS
            double sum = 0.0;
            for (double g : links) sum += g;
            // recompute end-to-end directly for four_means_order as a spot check
            if (std::string(key) == "four_means_order") {
                ScalarPair<double> p(x.a, x.b);
                WeightSplit w(x.v);
                double direct = weighted_arithmetic(p, w) - weighted_harmonic(p, w);
                CHECK(sum == doctest::Approx(direct).epsilon(1e-12));
            }
            CHECK(std::isfinite(sum));
        }
    }
}

TEST_CASE("frozen witness gaps of half_mix_unweighted_L") {
    // 50-digit oracle: -0.111545741693801437 and -0.223091483387602874.
    // The published figures are -0.223091 and -0.446183, exactly double;
    // stored as an annotation, not adopted.
    GapReport g1 = evaluate_gap("half_mix_unweighted_L", pt(0.5, 1.0, 0.25));
    CHECK(g1.gap == doctest::Approx(-0.111545741693801437).epsilon(1e-10));
    CHECK(g1.verdict == Verdict::Violated);
    GapReport g2 = evaluate_gap("half_mix_unweighted_L", pt(2.0, 1.0, 0.75));
    CHECK(g2.gap == doctest::Approx(-0.223091483387602874).epsilon(1e-10));
    CHECK(g2.verdict == Verdict::Violated);
    const auto& c = Catalog::instance().lookup("half_mix_unweighted_L");
    CHECK(c.witnesses.size() == 2);
    CHECK(c.annotation.find("-0.223091") != std::string::npos);
    CHECK(c.annotation.find("-0.446183") != std::string::npos);
}

TEST_CASE("collapsing point gives zero gap") {
    GapReport g = evaluate_gap("wlog_half_mix", pt(3.0, 3.0, 0.4));
    CHECK(g.gap == 0.0);
    CHECK(g.verdict == Verdict::Indeterminate);  // below the conditioning bound
}

TEST_CASE("thm_heinz_v holds at the cited sign-only example") {
    GapReport g = evaluate_gap("thm_heinz_v", pt(4.0, 1.0, 0.3));
    CHECK(g.gap >= 0.0);
    CHECK(g.verdict == Verdict::Holds);
}

TEST_CASE("refined_young at v = 1/2 has coefficient exactly 1/8") {
    WeightSplit half(0.5);
    CHECK(half.mu * half.mu / 2.0 == 0.125);
    ScalarPair<double> p(7.0, 2.0);
    double f = refined_young_factor(p, half);
    double lr = p.log_ratio;
    CHECK(f == 1.0 + 0.125 * lr * lr);
}

TEST_CASE("domain predicates") {
    CHECK_THROWS_AS(evaluate_gap("r_young", pt(2.0, 1.0, 0.3, 0.5)),
                    DomainViolationError);  // r > 0 needs a <= b
    CHECK_NOTHROW(evaluate_gap("r_young", pt(1.0, 2.0, 0.3, 0.5)));
    CHECK_NOTHROW(evaluate_gap("r_young", pt(2.0, 1.0, 0.3, -0.5)));
    CHECK_THROWS_AS(evaluate_gap("conditional_mix", pt(0.5, 1.0, 0.25)),
                    DomainViolationError);
    CHECK_THROWS_AS(evaluate_gap("nope", pt(1.0, 2.0)), UnknownCaseError);
}

TEST_CASE("property: expected-holds cases are nonnegative on random samples") {
    std::mt19937_64 rng = make_rng(101);
    for (const auto& c : Catalog::instance().cases()) {
        if (c.expected != CaseStatus::HoldsEverywhere &&
            c.expected != CaseStatus::Conditional)
            continue;
        if (c.id == CaseId::OptimalPMix) continue;  // parametric; probed separately
        for (int i = 0; i < 2000; ++i) {
            Point x = random_in_domain(c, rng);
            double g = case_gap<double>(c.id, x);
            double rel = g / std::max(x.a, x.b);
            CHECK_MESSAGE(rel >= -1e-12, c.key, " at a=", x.a, " b=", x.b, " v=", x.v,
                          " r=", x.r);
        }
    }
}

TEST_CASE("property: conditional_mix holds on its restricted domain") {
    std::mt19937_64 rng = make_rng(103);
    const auto& c = Catalog::instance().lookup("conditional_mix");
    for (int i = 0; i < 10000; ++i) {
        Point x = random_in_domain(c, rng);
        double rel = case_gap<double>(c.id, x) / std::max(x.a, x.b);
        CHECK(rel >= -1e-12);
    }
}

TEST_CASE("property: optimal_p_mix at p = 1/2 matches wlog_half_mix") {
    std::mt19937_64 rng = make_rng(107);
    const auto& c = Catalog::instance().lookup("optimal_p_mix");
    for (int i = 0; i < 2000; ++i) {
        Point x = random_in_domain(c, rng);
        x.p = 0.5;
        double g1 = case_gap<double>(CaseId::OptimalPMix, x);
        double g2 = case_gap<double>(CaseId::WlogHalfMix, x);
        CHECK(g1 == doctest::Approx(g2).epsilon(1e-12));
        CHECK(g1 / std::max(x.a, x.b) >= -1e-12);
    }
}

TEST_CASE("exp_ratio_bounds holds across the t range including near 1") {
    for (double t : {1e-6, 1e-3, 0.5, 1.0 - 1e-9, 1.0, 1.0 + 1e-9, 2.0, 1e3, 1e6}) {
        auto links = case_link_gaps<double>(CaseId::ExpRatioBounds, pt(t, 1.0));
        CHECK(links.size() == 2);
        CHECK(links[0] >= -1e-12 * std::max(t, 1.0));
        CHECK(links[1] >= -1e-12 * std::max(t, 1.0));
    }
}

TEST_CASE("nested identities: A.A, G.G, H.H reproduce the unweighted mean") {
    std::mt19937_64 rng = make_rng(109);
    std::uniform_real_distribution<double> ulog(std::log(1e-6), std::log(1e6));
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    WeightSplit half(0.5);
    for (int i = 0; i < 10000; ++i) {
        ScalarPair<double> p(std::exp(ulog(rng)), std::exp(ulog(rng)));
        WeightSplit w(u01(rng));
        double aa = nested_mean(MeanKind::Arithmetic, MeanKind::Arithmetic, p, w);
        CHECK(aa == doctest::Approx(weighted_arithmetic(p, half)).epsilon(1e-12));
        double gg = nested_mean(MeanKind::Geometric, MeanKind::Geometric, p, w);
        CHECK(gg == doctest::Approx(weighted_geometric(p, half)).epsilon(1e-12));
        double hh = nested_mean(MeanKind::Harmonic, MeanKind::Harmonic, p, w);
        CHECK(hh == doctest::Approx(weighted_harmonic(p, half)).epsilon(1e-12));
    }
}

TEST_CASE("nested L.L differs from L by the published example value") {
    ScalarPair<double> p(10.0, 1.0);
    double ll = nested_mean(MeanKind::Logarithmic, MeanKind::Logarithmic, p,
                            WeightSplit(0.25));
    CHECK(ll - log_mean(p) == doctest::Approx(0.0173327).epsilon(3e-4));
    CHECK(ll - log_mean(p) == doctest::Approx(0.017332741958268099).epsilon(1e-10));
}

TEST_CASE("nested_mean rejects Heinz and PowerThird") {
    ScalarPair<double> p(2.0, 1.0);
    WeightSplit w(0.3);
    CHECK_THROWS_AS(nested_mean(MeanKind::Heinz, MeanKind::Arithmetic, p, w),
                    std::invalid_argument);
    CHECK_THROWS_AS(nested_mean(MeanKind::Arithmetic, MeanKind::PowerThird, p, w),
                    std::invalid_argument);
}

TEST_CASE("nested identity example A(A_v, A_{1-v}) at the cited point") {
    ScalarPair<double> p(2.0, 1.0);
    double m = nested_mean(MeanKind::Arithmetic, MeanKind::Arithmetic, p, WeightSplit(0.3));
    CHECK(m == doctest::Approx(1.5).epsilon(1e-15));
}

TEST_CASE("sweep: four_means_order holds over a grid") {
    GridSpec grid;
    grid.a = {0.1, 10.0, 10, true};
    grid.b = {0.1, 10.0, 10, true};
    grid.v = {0.05, 0.95, 10, false};
    SweepResult res = sweep("four_means_order", grid);
    CHECK(res.reports.size() == 1000);
    for (const auto& rep : res.reports) {
        CHECK(rep.verdict != Verdict::Violated);
    }
    // min-gap flag consistency
    for (const auto& rep : res.reports) {
        CHECK(res.reports[res.min_index].gap <= rep.gap);
    }
}

TEST_CASE("sweep: wlog_two_thirds violated near the known region") {
    // fails where the ratio is extreme and the weight leans to the larger side
    GridSpec grid;
    grid.a = {0.001, 0.1, 8, true};
    grid.b = {1.0, 1.0, 1, false};
    grid.v = {0.7, 0.95, 12, false};
    SweepResult res = sweep("wlog_two_thirds", grid);
    bool any_violated = false;
    for (const auto& rep : res.reports) {
        any_violated = any_violated || rep.verdict == Verdict::Violated;
    }
    CHECK(any_violated);
}

TEST_CASE("sweep: empty grid is an error") {
    GridSpec grid;  // all axes unswept, base point only -> 1 point, not empty
    grid.a.n = 0;
    grid.base = pt(0.0, 1.0);  // invalid base: a = 0 fails the domain
    CHECK_THROWS(sweep("polya", grid));
    GridSpec g2;
    g2.a = {1.0, 2.0, 0, false};
    g2.base = pt(2.0, 1.0);
    // degenerate but valid single-point sweep
    SweepResult res = sweep("polya", g2);
    CHECK(res.reports.size() == 1);
}

TEST_CASE("sweep is deterministic and thread-count independent") {
    GridSpec grid;
    grid.a = {0.01, 100.0, 12, true};
    grid.b = {0.01, 100.0, 12, true};
    grid.v = {0.1, 0.9, 5, false};
    SweepResult s1 = sweep("wlog_half_mix", grid, Precision::dbl(), 1);
    SweepResult s4 = sweep("wlog_half_mix", grid, Precision::dbl(), 4);
    REQUIRE(s1.reports.size() == s4.reports.size());
    CHECK(s1.min_index == s4.min_index);
    for (std::size_t i = 0; i < s1.reports.size(); ++i) {
        CHECK(s1.reports[i].gap == s4.reports[i].gap);
    }
}

TEST_CASE("GapReport relative gap shares sign with gap") {
    std::mt19937_64 rng = make_rng(211);
    const auto& c = Catalog::instance().lookup("wlog_two_thirds");
    for (int i = 0; i < 500; ++i) {
        Point x = random_in_domain(c, rng);
        GapReport rep = evaluate_gap("wlog_two_thirds", x);
        CHECK(std::signbit(rep.gap) == std::signbit(rep.relative_gap));
    }
}
