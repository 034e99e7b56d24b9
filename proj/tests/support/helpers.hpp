#pragma once

#include <cmath>
#include <random>
#include <vector>

namespace testsupport {

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on P_n,
// independent of the library's Legendre code.
inline void gauss_legendre(int n, std::vector<double>& nodes,
                           std::vector<double>& weights) {
    nodes.assign(static_cast<std::size_t>(n), 0.0);
    weights.assign(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) {
                weights[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - x * x) * dp * dp);
                break;
            }
        }
        nodes[static_cast<std::size_t>(i)] = x;
    }
}

// Composite 16-point Gauss-Legendre over [a, b] with `panels` subintervals.
template <class F>
double integrate(F&& f, double a, double b, int panels = 40) {
    static std::vector<double> nodes, weights;
    if (nodes.empty()) gauss_legendre(16, nodes, weights);
    double total = 0.0;
    double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        double lo = a + p * h;
        double mid = lo + 0.5 * h;
        for (std::size_t i = 0; i < nodes.size(); ++i)
            total += 0.5 * h * weights[i] * f(mid + 0.5 * h * nodes[i]);
    }
    return total;
}

inline std::mt19937_64 rng(std::uint64_t seed = 20260810ull) {
    return std::mt19937_64(seed);
}

} // namespace testsupport
