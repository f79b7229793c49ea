#ifndef MEANLAB_GAP_KERNELS_HPP
#define MEANLAB_GAP_KERNELS_HPP

// Per-link gap evaluation for every registered inequality, templated on the
// real type. Each link gap is RHS - LHS in the printed orientation, so the
// inequality holds at a point iff every link gap is nonnegative.

#include <stdexcept>
#include <vector>

#include "meanlab/scalar_means.hpp"

namespace meanlab {

enum class CaseId {
    Polya,
    LinChain,
    RefinedPolya,
    WlogHalfMix,
    WlogTwoThirds,
    FourMeansOrder,
    RefinedYoung,
    RefinedYoungReverse,
    RYoung,
    HeinzChain,
    HeinzRefined,
    HalfMixUnweightedL,
    ThmHeinzV,
    HalfAHeinz,
    ExpRatioBounds,
    NestedAg1,
    NestedAg2,
    NestedHg1,
    NestedHg2,
    NestedAl1,
    NestedAl2,
    NestedGl1,
    NestedGl2,
    LvProduct,
    ConditionalMix,
    OptimalPMix,
    ConjectureNestedL,
};

// Evaluation point; only the coordinates in a case's arity are read.
struct Point {
    double a = 1.0;
    double b = 1.0;
    double v = 0.5;
    double r = 1.0;
    double p = 0.5;
};

namespace gaps {

template <class Real>
struct Ctx {
    ScalarPair<Real> pr;
    ScalarPair<Real> ps;  // swapped pair (b, a); M_{1-v}(a,b) = M_v(b,a), so
                          // complement-weight means avoid rounding 1-v in double
    WeightSplit w;
    WeightSplit half;

    explicit Ctx(const Point& pt)
        : pr(Real(pt.a), Real(pt.b)), ps(Real(pt.b), Real(pt.a)), w(pt.v), half(0.5) {}

    Real A() const { return weighted_arithmetic(pr, half); }
    Real G() const { return weighted_geometric(pr, half); }
    Real H() const { return weighted_harmonic(pr, half); }
    Real L() const { return log_mean(pr); }
    Real P13() const { return power_mean_third(pr); }
    Real Av() const { return weighted_arithmetic(pr, w); }
    Real Gv() const { return weighted_geometric(pr, w); }
    Real Hv() const { return weighted_harmonic(pr, w); }
    Real Lv() const { return weighted_log_mean(pr, w); }
    Real Av1() const { return weighted_arithmetic(ps, w); }
    Real Gv1() const { return weighted_geometric(ps, w); }
    Real Hv1() const { return weighted_harmonic(ps, w); }
    Real Lv1() const { return weighted_log_mean(ps, w); }
    Real Hzv() const { return heinz(pr, w); }
};

// exp-ratio middle term t^{t/(t-1)}/e = exp(t/L(t,1) - 1), stable through
// the log-mean kernel as t -> 1.
template <class Real>
Real exp_ratio_middle(Real t) {
    using std::exp;
    ScalarPair<Real> pt(t, Real(1));
    return exp(t / log_mean(pt) - Real(1));
}

}  // namespace gaps

template <class Real>
std::vector<Real> case_link_gaps(CaseId id, const Point& pt) {
    using gaps::Ctx;
    Ctx<Real> c(pt);
    switch (id) {
        case CaseId::Polya:
            return {Real(2) / Real(3) * c.G() + Real(1) / Real(3) * c.A() - c.L()};
        case CaseId::LinChain:
            return {c.L() - c.G(), c.P13() - c.L()};
        case CaseId::RefinedPolya:
            return {c.P13() - c.L(),
                    Real(2) / Real(3) * c.G() + Real(1) / Real(3) * c.A() - c.P13()};
        case CaseId::WlogHalfMix:
            return {(c.Gv() + c.Av()) / Real(2) - c.Lv()};
        case CaseId::WlogTwoThirds:
            return {Real(2) / Real(3) * c.Gv() + Real(1) / Real(3) * c.Av() - c.Lv()};
        case CaseId::FourMeansOrder:
            return {c.Gv() - c.Hv(), c.Lv() - c.Gv(), c.Av() - c.Lv()};
        case CaseId::RefinedYoung: {
            Real f = refined_young_factor(c.pr, c.w);
            return {(f - Real(1)) * c.Gv(), c.Av() - f * c.Gv()};
        }
        case CaseId::RefinedYoungReverse: {
            Real lam(c.w.lambda);
            Real f = Real(1) + lam * lam / Real(2) * c.pr.log_ratio * c.pr.log_ratio;
            return {f * c.Gv() - c.Av()};
        }
        case CaseId::RYoung: {
            Deformation d(pt.r);
            Real f = refined_young_factor(c.pr, c.w, &d);
            return {(f - Real(1)) * c.Gv(), c.Av() - f * c.Gv()};
        }
        case CaseId::HeinzChain:
            return {c.Hzv() - c.G(), c.A() - c.Hzv()};
        case CaseId::HeinzRefined: {
            Real f = refined_young_factor(c.pr, c.w);
            return {c.Hzv() - c.G(), (f - Real(1)) * c.Hzv(), c.A() - f * c.Hzv()};
        }
        case CaseId::HalfMixUnweightedL:
            return {(c.Av() + c.Gv()) / Real(2) - c.L()};
        case CaseId::ThmHeinzV:
            return {(c.Av() + c.Gv1()) / Real(2) - c.L()};
        case CaseId::HalfAHeinz:
            return {(c.A() + c.Hzv()) / Real(2) - c.L()};
        case CaseId::ExpRatioBounds: {
            Real t = c.pr.a / c.pr.b;
            ScalarPair<Real> pt1(t, Real(1));
            Real mid = gaps::exp_ratio_middle(t);
            Real upper = (t * t + Real(1)) / (t + Real(1));
            return {mid - log_mean(pt1), upper - mid};
        }
        case CaseId::NestedAg1: {
            ScalarPair<Real> inner(c.Av(), c.Av1());
            Real m = weighted_geometric(inner, c.half);
            return {m - c.G(), c.A() - m};
        }
        case CaseId::NestedAg2: {
            ScalarPair<Real> inner(c.Gv(), c.Gv1());
            Real m = weighted_arithmetic(inner, c.half);
            return {m - c.G(), c.A() - m};
        }
        case CaseId::NestedHg1: {
            ScalarPair<Real> inner(c.Hv(), c.Hv1());
            Real m = weighted_geometric(inner, c.half);
            return {m - c.H(), c.G() - m};
        }
        case CaseId::NestedHg2: {
            ScalarPair<Real> inner(c.Gv(), c.Gv1());
            Real m = weighted_harmonic(inner, c.half);
            return {m - c.H(), c.G() - m};
        }
        case CaseId::NestedAl1: {
            ScalarPair<Real> inner(c.Lv(), c.Lv1());
            Real m = weighted_arithmetic(inner, c.half);
            return {m - c.L(), c.A() - m};
        }
        case CaseId::NestedAl2: {
            ScalarPair<Real> inner(c.Av(), c.Av1());
            Real m = log_mean(inner);
            return {m - c.L(), c.A() - m};
        }
        case CaseId::NestedGl1: {
            ScalarPair<Real> inner(c.Gv(), c.Gv1());
            Real m = log_mean(inner);
            return {m - c.G(), c.L() - m};
        }
        case CaseId::NestedGl2: {
            ScalarPair<Real> inner(c.Lv(), c.Lv1());
            Real m = weighted_geometric(inner, c.half);
            return {m - c.G(), c.L() - m};
        }
        case CaseId::LvProduct: {
            Real l = c.L();
            return {l * l - c.Lv() * c.Lv1()};
        }
        case CaseId::ConditionalMix:
            return {(c.Av() + c.Gv()) / Real(2) - c.L()};
        case CaseId::OptimalPMix: {
            Real p(pt.p);
            return {(Real(1) - p) * c.Av() + p * c.Gv() - c.Lv()};
        }
        case CaseId::ConjectureNestedL: {
            ScalarPair<Real> inner(c.Lv(), c.Lv1());
            return {log_mean(inner) - c.L()};
        }
    }
    throw std::logic_error("unreachable case id");
}

// Signed gap of a case at a point: the minimum link gap, so gap >= 0 iff the
// whole chain holds there. Link gaps along a chain sum to the end-to-end gap
// by construction.
template <class Real>
Real case_gap(CaseId id, const Point& pt) {
    std::vector<Real> links = case_link_gaps<Real>(id, pt);
    Real m = links.front();
    for (const Real& g : links) {
        if (g < m) m = g;
    }
    return m;
}

}  // namespace meanlab

#endif  // MEANLAB_GAP_KERNELS_HPP
