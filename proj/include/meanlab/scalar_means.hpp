#ifndef MEANLAB_SCALAR_MEANS_HPP
#define MEANLAB_SCALAR_MEANS_HPP

// Cancellation-safe kernels for the weighted scalar means and the deformed
// logarithm. All kernels are templated on the real type so the same code
// path serves double evaluation and the high-precision oracle.

#include <cmath>
#include <limits>
#include <stdexcept>
#include <type_traits>

namespace meanlab {

// Switch thresholds, pinned for double. Multiprecision types override via
// near_equal_switch() below.
inline constexpr double kNearEqualSwitch = 1e-6;
inline constexpr double kEndpointWeightEps = 1e-15;
inline constexpr double kDeformationSwitch = 1e-12;

// A positive input pair with its log-ratio cached once at construction.
template <class Real>
struct ScalarPair {
    Real a;
    Real b;
    Real log_ratio;  // ln(a) - ln(b)

    ScalarPair(Real a_, Real b_) : a(a_), b(b_) {
        using std::log;
        if (!(a > Real(0)) || !(b > Real(0))) {
            throw std::domain_error("ScalarPair requires a > 0 and b > 0");
        }
        log_ratio = log(a) - log(b);
    }
};

// Weight v in [0,1] with the split mu = min{1-v, v}, lambda = max{1-v, v}.
struct WeightSplit {
    double v;
    double mu;
    double lambda;

    explicit WeightSplit(double v_) : v(v_) {
        if (!(v >= 0.0) || !(v <= 1.0)) {
            throw std::domain_error("WeightSplit requires v in [0,1]");
        }
        mu = std::min(1.0 - v, v);
        lambda = std::max(1.0 - v, v);
    }
};

// Deformation parameter of the r-logarithm; r = 0 denotes the classical log.
struct Deformation {
    double r;

    explicit Deformation(double r_) : r(r_) {
        if (!std::isfinite(r)) {
            throw std::domain_error("Deformation requires finite r");
        }
    }
    bool classical() const { return std::abs(r) < kDeformationSwitch; }
};

enum class MeanKind { Arithmetic, Geometric, Harmonic, Logarithmic, Heinz, PowerThird };

namespace detail {

// Threshold below which |log_ratio| triggers the Taylor kernel. For double
// this is the pinned 1e-6; for wider types it shrinks so the 4-term
// truncation error x^4/24 stays below the type's epsilon.
template <class Real>
Real near_equal_switch() {
    if constexpr (std::is_same_v<Real, double>) {
        return kNearEqualSwitch;
    } else {
        using std::pow;
        Real eps = std::numeric_limits<Real>::epsilon();
        return pow(eps * Real(24), Real(1) / Real(4)) / Real(8);
    }
}

// Taylor coefficients of the representing kernel
//   f(x) = sum_{n>=1} c_n x^{n-1}/n!,   c_n = A(1-w^n) + B w^n,
// with w = 1-v, A = (1-v)/v, B = v/(1-v). f(log_ratio) * b = L_v(a,b).
template <class Real>
Real weighted_log_taylor(Real x, double v) {
    using std::expm1;
    using std::log1p;
    Real rv(v);
    Real rw = Real(1) - rv;
    Real A = rw / rv;
    Real B = rv / rw;
    Real acc(0);
    Real fact(1);
    Real xpow(1);
    for (int n = 1; n <= 4; ++n) {
        fact *= Real(n);
        // 1 - (1-v)^n without cancellation at small v
        Real one_minus_wn = -expm1(Real(n) * log1p(Real(-v)));
        Real wn = Real(1) - one_minus_wn;
        Real cn = A * one_minus_wn + B * wn;
        acc += cn * xpow / fact;
        xpow *= x;
    }
    return acc;
}

}  // namespace detail

template <class Real>
Real weighted_arithmetic(const ScalarPair<Real>& p, const WeightSplit& w) {
    // The complement weight is formed in Real so the two weights sum to one
    // exactly even when 1 - v is not representable in double.
    Real rv(w.v);
    return (Real(1) - rv) * p.a + rv * p.b;
}

template <class Real>
Real weighted_geometric(const ScalarPair<Real>& p, const WeightSplit& w) {
    using std::exp;
    if (w.v == 0.0) return p.a;
    if (w.v == 1.0) return p.b;
    // b * (a/b)^{1-v}, evaluated through the cached log-ratio
    return p.b * exp((Real(1) - Real(w.v)) * p.log_ratio);
}

template <class Real>
Real weighted_harmonic(const ScalarPair<Real>& p, const WeightSplit& w) {
    Real rv(w.v);
    return Real(1) / ((Real(1) - rv) / p.a + rv / p.b);
}

template <class Real>
Real log_mean(const ScalarPair<Real>& p) {
    using std::abs;
    using std::expm1;
    Real x = p.log_ratio;
    if (p.a == p.b) return p.a;
    if (abs(x) < detail::near_equal_switch<Real>()) {
        // em(x)/x = 1 + x/2 + x^2/6 + x^3/24
        return p.b * (Real(1) + x / Real(2) + x * x / Real(6) + x * x * x / Real(24));
    }
    return p.b * expm1(x) / x;
}

// Weighted logarithmic mean, evaluated as
//   L_v(a,b) = b * [ ((1-v)/v) e^{(1-v)Lr} em(v Lr) + (v/(1-v)) em((1-v)Lr) ] / Lr
// with em = expm1 and Lr the cached log-ratio. The naive two-term form loses
// ~10 digits as v -> 1 or a/b -> 1.
template <class Real>
Real weighted_log_mean(const ScalarPair<Real>& p, const WeightSplit& w) {
    using std::abs;
    using std::exp;
    using std::expm1;
    if (w.v < kEndpointWeightEps) return p.a;
    if (w.v > 1.0 - kEndpointWeightEps) return p.b;
    if (p.a == p.b) return p.a;
    Real x = p.log_ratio;
    if (abs(x) < detail::near_equal_switch<Real>()) {
        return p.b * detail::weighted_log_taylor(x, w.v);
    }
    Real rv(w.v);
    Real rw = Real(1) - rv;
    Real term1 = (rw / rv) * exp(rw * x) * expm1(rv * x);
    Real term2 = (rv / rw) * expm1(rw * x);
    return p.b * (term1 + term2) / x;
}

template <class Real>
Real heinz(const ScalarPair<Real>& p, const WeightSplit& w) {
    using std::exp;
    if (w.v == 0.0 || w.v == 1.0) return (p.a + p.b) / Real(2);
    Real rv(w.v);
    Real rw = Real(1) - rv;
    // (b (a/b)^{1-v} + b (a/b)^v) / 2 with both exponents from the same rv
    return p.b * (exp(rw * p.log_ratio) + exp(rv * p.log_ratio)) / Real(2);
}

template <class Real>
Real power_mean_third(const ScalarPair<Real>& p) {
    using std::cbrt;
    using std::pow;
    Real m;
    if constexpr (std::is_same_v<Real, double>) {
        m = (cbrt(p.a) + cbrt(p.b)) / Real(2);
    } else {
        m = (pow(p.a, Real(1) / Real(3)) + pow(p.b, Real(1) / Real(3))) / Real(2);
    }
    return m * m * m;
}

// r-logarithm ln_r(x) = (x^r - 1)/r, dispatching to ln below the switch.
template <class Real>
Real r_log(Real x, const Deformation& d) {
    using std::expm1;
    using std::log;
    if (!(x > Real(0))) {
        throw std::domain_error("r_log requires x > 0");
    }
    if (d.classical()) return log(x);
    return expm1(Real(d.r) * log(x)) / Real(d.r);
}

// The refinement factor 1 + (mu^2/2) q^2 with q the (possibly deformed)
// log-ratio. Always >= 1.
template <class Real>
Real refined_young_factor(const ScalarPair<Real>& p, const WeightSplit& w,
                          const Deformation* d = nullptr) {
    using std::expm1;
    Real q;
    if (d == nullptr || d->classical()) {
        q = p.log_ratio;
    } else {
        // ln_r(a/b) = em(r * Lr) / r
        q = expm1(Real(d->r) * p.log_ratio) / Real(d->r);
    }
    using std::min;
    Real rv(w.v);
    Real mu = min(Real(1) - rv, rv);
    return Real(1) + (mu * mu / Real(2)) * q * q;
}

// Representing function L_v(t) with b * L_v(a/b) = L_v(a,b).
template <class Real>
Real representing_L(Real t, const WeightSplit& w) {
    ScalarPair<Real> p(t, Real(1));
    return weighted_log_mean(p, w);
}

// Dispatch used by the nested-mean compositor and the CLI.
template <class Real>
Real mean_value(MeanKind kind, const ScalarPair<Real>& p, const WeightSplit& w) {
    switch (kind) {
        case MeanKind::Arithmetic: return weighted_arithmetic(p, w);
        case MeanKind::Geometric: return weighted_geometric(p, w);
        case MeanKind::Harmonic: return weighted_harmonic(p, w);
        case MeanKind::Logarithmic: return weighted_log_mean(p, w);
        case MeanKind::Heinz: return heinz(p, w);
        case MeanKind::PowerThird: return power_mean_third(p);
    }
    throw std::logic_error("unreachable mean kind");
}

}  // namespace meanlab

#endif  // MEANLAB_SCALAR_MEANS_HPP
