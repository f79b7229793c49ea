#include "meanlab/explorer.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>

#include "meanlab/bigfloat.hpp"

namespace meanlab {

void SearchConfig::validate() const {
    if (grid_n < 2) throw std::invalid_argument("grid resolution must be >= 2");
    if (!(v_delta > 0.0 && v_delta < 0.5)) {
        throw std::invalid_argument("v_delta must lie in (0, 1/2)");
    }
    if (policy == PrecisionPolicy::Escalate && digits < 30) {
        throw std::invalid_argument("escalation requires >= 30 digits");
    }
    if (log_lo >= log_hi) throw std::invalid_argument("empty log range");
}

const char* witness_status_label(WitnessStatus s) {
    switch (s) {
        case WitnessStatus::Violated: return "violated";
        case WitnessStatus::NoViolationFound: return "no-violation-found";
        case WitnessStatus::Indeterminate: return "indeterminate";
    }
    return "?";
}

GapReport adjudicate(const std::string& case_key, const Point& pt, unsigned digits) {
    if (digits < 30) throw std::invalid_argument("adjudicate requires >= 30 digits");
    return evaluate_gap(case_key, pt, Precision::bigfloat(digits));
}

namespace {

Point with_fixed(const SearchConfig& cfg, Point pt) {
    if (cfg.fixed_r) pt.r = *cfg.fixed_r;
    if (cfg.fixed_p) pt.p = *cfg.fixed_p;
    return pt;
}

// Turns a double-precision minimum into a SearchResult, escalating to the
// high-precision oracle when the sign is negative or below the conditioning
// bound. A violated verdict re-confirms at double the digits.
SearchResult finalize(const std::string& key, const Point& best, double best_gap,
                      long evals, const SearchConfig& cfg) {
    const InequalityCase& c = Catalog::instance().lookup(key);
    SearchResult res;
    res.best = best;
    res.best_gap = best_gap;
    res.precision = Precision::dbl();
    res.evaluations = evals;

    double bound = conditioning_bound(c, best, Precision::dbl());
    Verdict dv = classify_gap(best_gap, bound);
    if (cfg.policy == PrecisionPolicy::DoubleOnly) {
        res.status = dv == Verdict::Violated  ? WitnessStatus::Violated
                     : dv == Verdict::Holds   ? WitnessStatus::NoViolationFound
                                              : WitnessStatus::Indeterminate;
        GapReport rep = evaluate_gap(key, best, Precision::dbl());
        res.gap_decimal = rep.gap_decimal;
        return res;
    }
    if (dv != Verdict::Indeterminate && best_gap >= 0.0) {
        res.status = WitnessStatus::NoViolationFound;
        res.gap_decimal = evaluate_gap(key, best, Precision::dbl()).gap_decimal;
        return res;
    }
    GapReport big = adjudicate(key, best, cfg.digits);
    res.precision = big.precision;
    res.best_gap = big.gap;
    res.gap_decimal = big.gap_decimal;
    if (big.verdict == Verdict::Violated) {
        GapReport confirm = adjudicate(key, best, 2 * cfg.digits);
        if (confirm.verdict == Verdict::Violated && confirm.gap < 0.0) {
            res.status = WitnessStatus::Violated;
        } else {
            res.status = WitnessStatus::Indeterminate;
        }
    } else if (big.verdict == Verdict::Holds) {
        res.status = WitnessStatus::NoViolationFound;
    } else {
        res.status = WitnessStatus::Indeterminate;
    }
    return res;
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        out[static_cast<std::size_t>(i)] =
            lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    return out;
}

}  // namespace

SearchResult grid_scan(const std::string& case_key, const SearchConfig& cfg) {
    cfg.validate();
    const InequalityCase& c = Catalog::instance().lookup(case_key);

    std::vector<double> la =
        c.arity.a ? linspace(cfg.log_lo, cfg.log_hi, cfg.grid_n) : std::vector<double>{0.0};
    std::vector<double> lb =
        c.arity.b ? linspace(cfg.log_lo, cfg.log_hi, cfg.grid_n) : std::vector<double>{0.0};
    std::vector<double> vs = c.arity.v
                                 ? linspace(cfg.v_delta, 1.0 - cfg.v_delta, cfg.grid_n)
                                 : std::vector<double>{0.5};

    std::vector<Point> points;
    points.reserve(la.size() * lb.size() * vs.size());
    for (double x : la)
        for (double y : lb)
            for (double v : vs) {
                Point pt = with_fixed(cfg, {std::exp(x), std::exp(y), v});
                if (c.domain(pt)) points.push_back(pt);
            }
    if (points.empty()) {
        throw DomainViolationError(case_key, "grid does not intersect the domain");
    }

    std::vector<double> gaps(points.size());
    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            gaps[i] = case_gap<double>(c.id, points[i]);
        }
    };
    int nthreads = std::max(1, cfg.threads);
    if (nthreads == 1 || points.size() < 1024) {
        work(0, points.size());
    } else {
        std::vector<std::thread> pool;
        std::size_t chunk = (points.size() + nthreads - 1) / nthreads;
        for (int t = 0; t < nthreads; ++t) {
            std::size_t lo = static_cast<std::size_t>(t) * chunk;
            std::size_t hi = std::min(points.size(), lo + chunk);
            if (lo < hi) pool.emplace_back(work, lo, hi);
        }
        for (auto& th : pool) th.join();
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i < gaps.size(); ++i) {
        if (gaps[i] < gaps[best]) best = i;
    }
    return finalize(case_key, points[best], gaps[best],
                    static_cast<long>(points.size()), cfg);
}

SearchResult refine(const std::string& case_key, const Point& start,
                    const SearchConfig& cfg) {
    cfg.validate();
    const InequalityCase& c = Catalog::instance().lookup(case_key);
    if (!c.domain(start)) {
        throw DomainViolationError(case_key, "refine start point outside domain");
    }

    // active simplex coordinates: (ln a, ln b, v) filtered by arity
    struct Axis {
        int which;  // 0 = ln a, 1 = ln b, 2 = v
        double lo, hi;
    };
    std::vector<Axis> axes;
    if (c.arity.a) axes.push_back({0, cfg.log_lo, cfg.log_hi});
    if (c.arity.b) axes.push_back({1, cfg.log_lo, cfg.log_hi});
    if (c.arity.v) axes.push_back({2, cfg.v_delta, 1.0 - cfg.v_delta});
    const std::size_t n = axes.size();

    auto to_point = [&](const std::vector<double>& x) {
        Point pt = with_fixed(cfg, start);
        for (std::size_t i = 0; i < n; ++i) {
            double xi = std::clamp(x[i], axes[i].lo, axes[i].hi);
            if (axes[i].which == 0) pt.a = std::exp(xi);
            if (axes[i].which == 1) pt.b = std::exp(xi);
            if (axes[i].which == 2) pt.v = xi;
        }
        return pt;
    };

    long evals = 0;
    auto objective = [&](const std::vector<double>& x) {
        Point pt = to_point(x);
        ++evals;
        if (!c.domain(pt)) return std::numeric_limits<double>::infinity();
        return case_gap<double>(c.id, pt);
    };

    std::vector<double> x0(n);
    for (std::size_t i = 0; i < n; ++i) {
        double raw = axes[i].which == 0   ? std::log(start.a)
                     : axes[i].which == 1 ? std::log(start.b)
                                          : start.v;
        x0[i] = std::clamp(raw, axes[i].lo, axes[i].hi);
    }

    double f0 = objective(x0);
    Point best_pt = to_point(x0);
    double best_gap = f0;

    if (n > 0 && cfg.max_refine_iters > 0) {
        // Nelder-Mead with coefficients (1, 2, 0.5) and shrink 0.5
        std::vector<std::vector<double>> simplex(n + 1, x0);
        std::vector<double> fval(n + 1);
        fval[0] = f0;
        for (std::size_t i = 0; i < n; ++i) {
            double step = 0.05 * (axes[i].hi - axes[i].lo);
            if (simplex[i + 1][i] + step > axes[i].hi) step = -step;
            simplex[i + 1][i] += step;
            fval[i + 1] = objective(simplex[i + 1]);
        }

        for (int iter = 0; iter < cfg.max_refine_iters; ++iter) {
            std::vector<std::size_t> order(n + 1);
            for (std::size_t i = 0; i <= n; ++i) order[i] = i;
            std::sort(order.begin(), order.end(),
                      [&](std::size_t i, std::size_t j) { return fval[i] < fval[j]; });
            std::vector<std::vector<double>> sx(n + 1);
            std::vector<double> sf(n + 1);
            for (std::size_t i = 0; i <= n; ++i) {
                sx[i] = simplex[order[i]];
                sf[i] = fval[order[i]];
            }
            simplex = sx;
            fval = sf;

            if (fval[0] < best_gap) {
                best_gap = fval[0];
                best_pt = to_point(simplex[0]);
            }

            double diam = 0.0;
            for (std::size_t i = 1; i <= n; ++i)
                for (std::size_t k = 0; k < n; ++k)
                    diam = std::max(diam, std::abs(simplex[i][k] - simplex[0][k]));
            if (diam < 1e-10) break;

            std::vector<double> centroid(n, 0.0);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t k = 0; k < n; ++k)
                    centroid[k] += simplex[i][k] / static_cast<double>(n);

            auto clamp_coords = [&](std::vector<double> x) {
                for (std::size_t k = 0; k < n; ++k)
                    x[k] = std::clamp(x[k], axes[k].lo, axes[k].hi);
                return x;
            };
            auto combine = [&](double coef) {
                std::vector<double> x(n);
                for (std::size_t k = 0; k < n; ++k)
                    x[k] = centroid[k] + coef * (centroid[k] - simplex[n][k]);
                return clamp_coords(std::move(x));
            };

            std::vector<double> xr = combine(1.0);
            double fr = objective(xr);
            if (fr < fval[0]) {
                std::vector<double> xe = combine(2.0);
                double fe = objective(xe);
                if (fe < fr) {
                    simplex[n] = xe;
                    fval[n] = fe;
                } else {
                    simplex[n] = xr;
                    fval[n] = fr;
                }
            } else if (fr < fval[n - 1]) {
                simplex[n] = xr;
                fval[n] = fr;
            } else {
                std::vector<double> xc = combine(-0.5);
                double fc = objective(xc);
                if (fc < fval[n]) {
                    simplex[n] = xc;
                    fval[n] = fc;
                } else {
                    for (std::size_t i = 1; i <= n; ++i) {
                        for (std::size_t k = 0; k < n; ++k)
                            simplex[i][k] = 0.5 * (simplex[i][k] + simplex[0][k]);
                        fval[i] = objective(simplex[i]);
                    }
                }
            }
        }
        for (std::size_t i = 0; i <= n; ++i) {
            if (fval[i] < best_gap) {
                best_gap = fval[i];
                best_pt = to_point(simplex[i]);
            }
        }
    }

    return finalize(case_key, best_pt, best_gap, evals, cfg);
}

double naive_optimal_p_gap(const Point& pt) {
    double a = pt.a, b = pt.b, v = pt.v, p = pt.p;
    double G = std::pow(a, 1.0 - v) * std::pow(b, v);
    double A = (1.0 - v) * a + v * b;
    double L = ((1.0 - v) / v * (a - G) + v / (1.0 - v) * (G - b)) /
               (std::log(a) - std::log(b));
    return (1.0 - p) * A + p * G - L;
}

namespace {

// Minimum gap of optimal_p_mix over (a, b, v) at fixed p, adjudicated at
// cfg.digits.
SearchResult inner_min_at_p(double p, const SearchConfig& cfg) {
    SearchConfig inner = cfg;
    inner.fixed_p = p;
    SearchResult scan = grid_scan("optimal_p_mix", inner);
    SearchResult refined = refine("optimal_p_mix", scan.best, inner);
    refined.evaluations += scan.evaluations;
    return refined;
}

}  // namespace

OptimalPResult find_optimal_p(const SearchConfig& cfg) {
    cfg.validate();
    if (cfg.policy != PrecisionPolicy::Escalate) throw EscalationDisabledError();

    OptimalPResult out;
    out.witness_lo = inner_min_at_p(0.5, cfg);
    if (out.witness_lo.status == WitnessStatus::Violated) {
        throw std::runtime_error("p = 1/2 failed to verify; kernel defect");
    }
    out.witness_hi = inner_min_at_p(2.0 / 3.0, cfg);
    if (out.witness_hi.status != WitnessStatus::Violated) {
        throw std::runtime_error("p = 2/3 did not produce a confirmed violation");
    }

    double lo = 0.5, hi = 2.0 / 3.0;
    while (hi - lo > 1e-4) {
        double mid = 0.5 * (lo + hi);
        SearchResult r = inner_min_at_p(mid, cfg);
        if (r.status == WitnessStatus::Violated) {
            hi = mid;
            out.witness_hi = r;
        } else {
            lo = mid;
            out.witness_lo = r;
        }
    }
    out.p_lo = lo;
    out.p_hi = hi;
    return out;
}

ConjectureEvidence probe_conjecture(long samples, const SearchConfig& cfg) {
    cfg.validate();
    const std::string key = "conjecture_nested_L";
    const InequalityCase& c = Catalog::instance().lookup(key);

    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> ulog(cfg.log_lo, cfg.log_hi);
    std::uniform_real_distribution<double> uv(cfg.v_delta, 1.0 - cfg.v_delta);

    struct Cand {
        double gap;
        Point pt;
        bool operator<(const Cand& o) const { return gap < o.gap; }
    };
    std::vector<Cand> worst;  // the smallest observed gaps
    const std::size_t keep = 100;

    ConjectureEvidence ev;
    ev.min_gap = std::numeric_limits<double>::infinity();
    for (long i = 0; i < samples; ++i) {
        Point pt{std::exp(ulog(rng)), std::exp(ulog(rng)), uv(rng)};
        double g = case_gap<double>(c.id, pt);
        ++ev.evaluations;
        if (g < ev.min_gap) {
            ev.min_gap = g;
            ev.argmin = pt;
        }
        if (worst.size() < keep) {
            worst.push_back({g, pt});
            std::push_heap(worst.begin(), worst.end());
        } else if (g < worst.front().gap) {
            std::pop_heap(worst.begin(), worst.end());
            worst.back() = {g, pt};
            std::push_heap(worst.begin(), worst.end());
        }
    }

    SearchConfig rcfg = cfg;
    rcfg.max_refine_iters = std::min(cfg.max_refine_iters, 120);
    std::sort(worst.begin(), worst.end());
    bool violated = false;
    bool indeterminate = false;
    for (const Cand& cand : worst) {
        SearchResult r = refine(key, cand.pt, rcfg);
        ev.evaluations += r.evaluations;
        double g = r.best_gap;
        if (g < ev.min_gap) {
            ev.min_gap = g;
            ev.argmin = r.best;
        }
        if (r.status == WitnessStatus::Violated) violated = true;
        if (r.status == WitnessStatus::Indeterminate) indeterminate = true;
    }
    ev.status = violated        ? WitnessStatus::Violated
                : indeterminate ? WitnessStatus::Indeterminate
                                : WitnessStatus::NoViolationFound;
    return ev;
}

}  // namespace meanlab
