#ifndef MEANLAB_TESTS_QUAD_ORACLE_HPP
#define MEANLAB_TESTS_QUAD_ORACLE_HPP

// Test-local Gauss-Legendre oracle for the integral form of the weighted
// logarithmic mean:
//   L_v(t) = (v/(1-v)) int_0^{1-v} t^x dx + ((1-v)/v) int_{1-v}^1 t^x dx.
// Kept independent of the library's quadrature and mean kernels.

#include <cmath>
#include <vector>

namespace meanlab_tests {

struct GaussLegendre {
    std::vector<double> x;  // nodes on [-1,1]
    std::vector<double> w;

    explicit GaussLegendre(int n) : x(n), w(n) {
        for (int i = 0; i < n; ++i) {
            double xi = std::cos(M_PI * (i + 0.75) / (n + 0.5));
            double pp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = 0.0;
                for (int j = 0; j < n; ++j) {
                    double p2 = p1;
                    p1 = p0;
                    p0 = ((2.0 * j + 1.0) * xi * p1 - j * p2) / (j + 1.0);
                }
                pp = n * (xi * p0 - p1) / (xi * xi - 1.0);
                double dx = p0 / pp;
                xi -= dx;
                if (std::abs(dx) < 1e-15) break;
            }
            x[i] = xi;
            w[i] = 2.0 / ((1.0 - xi * xi) * pp * pp);
        }
    }

    template <class F>
    double integrate(double lo, double hi, F f) const {
        double mid = 0.5 * (lo + hi);
        double half = 0.5 * (hi - lo);
        double acc = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) acc += w[i] * f(mid + half * x[i]);
        return acc * half;
    }
};

inline double weighted_log_mean_quadrature(double t, double v, int nodes = 128) {
    GaussLegendre gl(nodes);
    auto pw = [t](double x) { return std::pow(t, x); };
    return v / (1.0 - v) * gl.integrate(0.0, 1.0 - v, pw) +
           (1.0 - v) / v * gl.integrate(1.0 - v, 1.0, pw);
}

}  // namespace meanlab_tests

#endif
