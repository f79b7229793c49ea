#include "meanlab/catalog.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <sstream>
#include <thread>

#include "meanlab/bigfloat.hpp"

namespace meanlab {

namespace {

bool positive_pair(const Point& pt) { return pt.a > 0.0 && pt.b > 0.0; }

bool base_domain(const Point& pt) {
    return positive_pair(pt) && pt.v >= 0.0 && pt.v <= 1.0;
}

bool r_young_domain(const Point& pt) {
    if (!base_domain(pt) || pt.r == 0.0) return false;
    return (pt.r > 0.0 && pt.a <= pt.b) || (pt.r < 0.0 && pt.a >= pt.b);
}

bool conditional_mix_domain(const Point& pt) {
    if (!base_domain(pt)) return false;
    return (pt.v <= 0.5 && pt.a >= pt.b) || (pt.v >= 0.5 && pt.a <= pt.b);
}

bool mix_p_domain(const Point& pt) {
    return base_domain(pt) && pt.p >= 0.0 && pt.p <= 1.0;
}

}  // namespace

std::string Precision::label() const {
    if (!big) return "double";
    return "bigfloat(" + std::to_string(digits) + ")";
}

Catalog::Catalog() {
    const Arity ab{true, true, false, false, false};
    const Arity abv{true, true, true, false, false};
    const Arity abvr{true, true, true, true, false};
    const Arity abvp{true, true, true, false, true};

    auto add = [this](CaseId id, std::string key, std::string desc, std::string anchor,
                      Arity ar, CaseStatus st, int links,
                      std::function<bool(const Point&)> dom,
                      std::vector<Point> wit = {}, std::string note = {}) {
        cases_.push_back({id, std::move(key), std::move(desc), std::move(anchor), ar, st,
                          links, std::move(dom), std::move(wit), std::move(note)});
    };

    add(CaseId::Polya, "polya", "L <= (2/3)G + (1/3)A",
        "Eq. (2), the classical Polya inequality", ab, CaseStatus::HoldsEverywhere, 1,
        positive_pair);
    add(CaseId::LinChain, "lin_chain", "G <= L <= ((a^{1/3}+b^{1/3})/2)^3",
        "Eq. (3), Lin's chain", ab, CaseStatus::HoldsEverywhere, 2, positive_pair);
    add(CaseId::RefinedPolya, "refined_polya",
        "L <= ((a^{1/3}+b^{1/3})/2)^3 <= (2/3)G + (1/3)A",
        "Eq. (4), refinement of the Polya inequality", ab, CaseStatus::HoldsEverywhere, 2,
        positive_pair);
    add(CaseId::WlogHalfMix, "wlog_half_mix", "L_v <= (1/2)G_v + (1/2)A_v",
        "Eq. (6)", abv, CaseStatus::HoldsEverywhere, 1, base_domain);
    add(CaseId::WlogTwoThirds, "wlog_two_thirds", "L_v <= (2/3)G_v + (1/3)A_v",
        "Eq. (7), does not hold in general", abv, CaseStatus::FailsSomewhere, 1,
        base_domain, {{0.01, 1.0, 0.9, 1.0, 0.5}});
    add(CaseId::FourMeansOrder, "four_means_order", "H_v <= G_v <= L_v <= A_v",
        "Eq. (8)", abv, CaseStatus::HoldsEverywhere, 3, base_domain);
    add(CaseId::RefinedYoung, "refined_young",
        "G_v <= {1 + (mu^2/2)(log a - log b)^2} G_v <= A_v",
        "Theorem 2.1", abv, CaseStatus::HoldsEverywhere, 2, base_domain);
    add(CaseId::RefinedYoungReverse, "refined_young_reverse",
        "A_v <= {1 + (lambda^2/2)(log a - log b)^2} G_v",
        "remark after Theorem 2.1, does not hold in general", abv,
        CaseStatus::FailsSomewhere, 1, base_domain, {{64.0, 1.0, 0.5, 1.0, 0.5}});
    add(CaseId::RYoung, "r_young",
        "G_v <= {1 + (mu^2/2)(ln_r(a/b))^2} G_v <= A_v on the stated r-order domain",
        "Corollary 2.2, conditional on (i) r>0, a<=b or (ii) r<0, a>=b", abvr,
        CaseStatus::Conditional, 2, r_young_domain);
    add(CaseId::HeinzChain, "heinz_chain", "G <= Hz_v <= A",
        "Eq. (12)", abv, CaseStatus::HoldsEverywhere, 2, base_domain);
    add(CaseId::HeinzRefined, "heinz_refined",
        "G <= Hz_v <= {1 + (mu^2/2)(log a - log b)^2} Hz_v <= A",
        "Corollary 2.3", abv, CaseStatus::HoldsEverywhere, 3, base_domain);
    add(CaseId::HalfMixUnweightedL, "half_mix_unweighted_L",
        "L <= (1/2)A_v + (1/2)G_v",
        "conc01, does not hold in general", abv, CaseStatus::FailsSomewhere, 1,
        base_domain, {{0.5, 1.0, 0.25, 1.0, 0.5}, {2.0, 1.0, 0.75, 1.0, 0.5}},
        "paper prints -0.223091 at (1/2,1,1/4) and -0.446183 at (2,1,3/4); the "
        "literal expression evaluates to half those values (-0.111546, -0.223091); "
        "the sign is unaffected");
    add(CaseId::ThmHeinzV, "thm_heinz_v", "L <= (1/2)A_v + (1/2)G_{1-v}",
        "Theorem 2.5", abv, CaseStatus::HoldsEverywhere, 1, base_domain);
    add(CaseId::HalfAHeinz, "half_a_heinz", "L <= (1/2)A + (1/2)Hz_v",
        "Remark (i)", abv, CaseStatus::HoldsEverywhere, 1, base_domain);
    add(CaseId::ExpRatioBounds, "exp_ratio_bounds",
        "(t-1)/log t <= t^{t/(t-1)}/e <= (t^2+1)/(t+1), t = a/b",
        "Remark (ii)", ab, CaseStatus::HoldsEverywhere, 2, positive_pair);
    add(CaseId::NestedAg1, "nested_ag_1", "G <= G(A_v, A_{1-v}) <= A",
        "Proposition 2.6", abv, CaseStatus::HoldsEverywhere, 2, base_domain);
    add(CaseId::NestedAg2, "nested_ag_2", "G <= A(G_v, G_{1-v}) <= A",
        "Proposition 2.6", abv, CaseStatus::HoldsEverywhere, 2, base_domain);
    add(CaseId::NestedHg1, "nested_hg_1", "H <= G(H_v, H_{1-v}) <= G",
        "Proposition 2.7", abv, CaseStatus::HoldsEverywhere, 2, base_domain);
    add(CaseId::NestedHg2, "nested_hg_2", "H <= H(G_v, G_{1-v}) <= G",
        "Proposition 2.7", abv, CaseStatus::HoldsEverywhere, 2, base_domain);
    add(CaseId::NestedAl1, "nested_al_1", "L <= A(L_v, L_{1-v}) <= A",
        "Theorem 2.8", abv, CaseStatus::HoldsEverywhere, 2, base_domain);
    add(CaseId::NestedAl2, "nested_al_2", "L <= L(A_v, A_{1-v}) <= A",
        "Theorem 2.8", abv, CaseStatus::HoldsEverywhere, 2, base_domain);
    add(CaseId::NestedGl1, "nested_gl_1", "G <= L(G_v, G_{1-v}) <= L",
        "Theorem 2.9", abv, CaseStatus::HoldsEverywhere, 2, base_domain);
    add(CaseId::NestedGl2, "nested_gl_2", "G <= G(L_v, L_{1-v}) <= L",
        "Theorem 2.9", abv, CaseStatus::HoldsEverywhere, 2, base_domain);
    add(CaseId::LvProduct, "lv_product", "L_v(t) L_{1-v}(t) <= L_{1/2}(t)^2",
        "from the proof of Theorem 2.9", abv, CaseStatus::HoldsEverywhere, 1,
        base_domain);
    add(CaseId::ConditionalMix, "conditional_mix",
        "L <= (1/2)A_v + (1/2)G_v for (v<=1/2, a>=b) or (v>=1/2, a<=b)",
        "Proposition 3.1", abv, CaseStatus::Conditional, 1, conditional_mix_domain);
    add(CaseId::OptimalPMix, "optimal_p_mix", "L_v <= (1-p)A_v + p G_v",
        "Eq. (sec01_ineq03), parametric in p", abvp, CaseStatus::Conditional, 1,
        mix_p_domain);
    add(CaseId::ConjectureNestedL, "conjecture_nested_L", "L <= L(L_v, L_{1-v})",
        "Eq. (conjecture02), open conjecture", abv, CaseStatus::Conjecture, 1,
        base_domain);
}

const Catalog& Catalog::instance() {
    static const Catalog c;
    return c;
}

const InequalityCase& Catalog::lookup(const std::string& key) const {
    for (const auto& c : cases_) {
        if (c.key == key) return c;
    }
    throw UnknownCaseError(key);
}

const InequalityCase& Catalog::lookup(CaseId id) const {
    for (const auto& c : cases_) {
        if (c.id == id) return c;
    }
    throw UnknownCaseError("<bad id>");
}

bool Catalog::contains(const std::string& key) const {
    return std::any_of(cases_.begin(), cases_.end(),
                       [&](const auto& c) { return c.key == key; });
}

double amplification_bound(const InequalityCase& c, const Point& pt) {
    double kappa = 1.0;
    double lr = std::abs(std::log(pt.a) - std::log(pt.b));
    if (c.arity.v) {
        double v = std::min(std::max(pt.v, kEndpointWeightEps), 1.0 - kEndpointWeightEps);
        double wfac = std::max({v / (1.0 - v), (1.0 - v) / v, 1.0});
        kappa = std::max(8.0, wfac * lr);
    } else {
        kappa = std::max(8.0, lr);
    }
    return kappa;
}

double conditioning_bound(const InequalityCase& c, const Point& pt, const Precision& prec) {
    double scale = std::max(pt.a, pt.b);
    if (prec.big) {
        return std::pow(10.0, -(static_cast<double>(prec.digits) - 10.0)) * scale;
    }
    const double eps = DBL_EPSILON / 2.0;
    return amplification_bound(c, pt) * eps * scale;
}

Verdict classify_gap(double gap, double bound) {
    if (std::abs(gap) < bound) return Verdict::Indeterminate;
    return gap > 0.0 ? Verdict::Holds : Verdict::Violated;
}

namespace {

std::string decimal_string(double x) {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os.precision(17);
    os << x;
    return os.str();
}

std::string decimal_string(const BigFloat& x, unsigned digits) {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os.precision(static_cast<int>(digits));
    os << x;
    return os.str();
}

}  // namespace

GapReport evaluate_gap(const std::string& key, const Point& pt, const Precision& prec) {
    const InequalityCase& c = Catalog::instance().lookup(key);
    if (!c.domain(pt)) {
        throw DomainViolationError(key, "predicate failed");
    }
    GapReport rep;
    rep.case_id = key;
    rep.point = pt;
    rep.precision = prec;
    if (prec.big) {
        ScopedPrecision guard(prec.digits);
        BigFloat g = case_gap<BigFloat>(c.id, pt);
        rep.gap = static_cast<double>(g);
        rep.gap_decimal = decimal_string(g, prec.digits);
        rep.relative_gap = static_cast<double>(g / BigFloat(std::max(pt.a, pt.b)));
    } else {
        rep.gap = case_gap<double>(c.id, pt);
        rep.gap_decimal = decimal_string(rep.gap);
        rep.relative_gap = rep.gap / std::max(pt.a, pt.b);
    }
    rep.verdict = classify_gap(rep.gap, conditioning_bound(c, pt, prec));
    return rep;
}

std::vector<double> AxisSpec::values() const {
    std::vector<double> out;
    if (n <= 0) return out;
    if (n == 1) {
        out.push_back(lo);
        return out;
    }
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double f = static_cast<double>(i) / static_cast<double>(n - 1);
        if (log_scale) {
            out.push_back(std::exp(std::log(lo) + f * (std::log(hi) - std::log(lo))));
        } else {
            out.push_back(lo + f * (hi - lo));
        }
    }
    return out;
}

SweepResult sweep(const std::string& key, const GridSpec& grid, const Precision& prec,
                  int threads) {
    const InequalityCase& c = Catalog::instance().lookup(key);

    auto axis_values = [](const AxisSpec& ax, double base) {
        std::vector<double> vals = ax.values();
        if (vals.empty()) vals.push_back(base);
        return vals;
    };
    std::vector<double> as = axis_values(grid.a, grid.base.a);
    std::vector<double> bs = axis_values(grid.b, grid.base.b);
    std::vector<double> vs = axis_values(grid.v, grid.base.v);
    std::vector<double> rs = axis_values(grid.r, grid.base.r);
    std::vector<double> ps = axis_values(grid.p, grid.base.p);

    std::vector<Point> points;
    for (double a : as)
        for (double b : bs)
            for (double v : vs)
                for (double r : rs)
                    for (double p : ps) points.push_back({a, b, v, r, p});
    if (points.empty()) {
        throw std::invalid_argument("sweep requires a nonempty grid");
    }
    for (const Point& pt : points) {
        if (!c.domain(pt)) throw DomainViolationError(key, "grid point outside domain");
    }

    SweepResult result;
    result.reports.resize(points.size());
    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            result.reports[i] = evaluate_gap(key, points[i], prec);
        }
    };
    int nthreads = std::max(1, threads);
    if (nthreads == 1 || points.size() < 256 || prec.big) {
        work(0, points.size());
    } else {
        // fixed index partition keeps the merged order deterministic
        std::vector<std::thread> pool;
        std::size_t chunk = (points.size() + nthreads - 1) / nthreads;
        for (int t = 0; t < nthreads; ++t) {
            std::size_t lo = static_cast<std::size_t>(t) * chunk;
            std::size_t hi = std::min(points.size(), lo + chunk);
            if (lo < hi) pool.emplace_back(work, lo, hi);
        }
        for (auto& th : pool) th.join();
    }

    for (std::size_t i = 1; i < result.reports.size(); ++i) {
        if (result.reports[i].gap < result.reports[result.min_index].gap) {
            result.min_index = i;
        }
    }
    return result;
}

double nested_mean(MeanKind outer, MeanKind inner, const ScalarPair<double>& pr,
                   const WeightSplit& w) {
    auto composable = [](MeanKind k) {
        return k == MeanKind::Arithmetic || k == MeanKind::Geometric ||
               k == MeanKind::Harmonic || k == MeanKind::Logarithmic;
    };
    if (!composable(outer) || !composable(inner)) {
        throw std::invalid_argument("nested_mean supports only the A/G/H/L kinds");
    }
    WeightSplit half(0.5);
    // M_{1-v}(a,b) = M_v(b,a) for all four composable kinds, so the
    // complement-weight leg swaps the pair instead of rounding 1 - v.
    ScalarPair<double> swapped(pr.b, pr.a);
    ScalarPair<double> pair_v(mean_value(inner, pr, w), mean_value(inner, swapped, w));
    return mean_value(outer, pair_v, half);
}

}  // namespace meanlab
