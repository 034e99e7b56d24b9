#include "echoloc/bessel.hpp"

#include <cmath>
#include <stdexcept>

#include "echoloc/errors.hpp"

namespace echoloc {

namespace {

// Ascending series  J_m(x) = sum_k (-1)^k (x/2)^{m+2k} / (k! (m+k)!).
// Safe for x <= 12: the largest term exceeds |J_m| by at most ~1e5 there
// (worst case m = 0, x = 12), so double arithmetic keeps ~11 digits.
double series_j(int m, double x) {
    double half = 0.5 * x;
    // leading term (x/2)^m / m!
    double term = 1.0;
    for (int i = 1; i <= m; ++i) term *= half / i;
    double sum = term;
    double x2 = -half * half;
    for (int k = 1; k < 400; ++k) {
        term *= x2 / (static_cast<double>(k) * (m + k));
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum) + 1e-300) break;
    }
    return sum;
}

// Miller's algorithm: run the three-term recurrence downward from a start
// order well above max(m, x), normalize with 1 = f_0 + 2 f_2 + 2 f_4 + ...
double miller_j(int m, double x) {
    int top = static_cast<int>(std::ceil(std::max(static_cast<double>(m), x)));
    top += static_cast<int>(std::ceil(std::sqrt(42.0 * (top + 2)))) + 12;
    if (top % 2) ++top;

    double fkp1 = 0.0, fk = 1e-30;
    double norm = 0.0, fm = 0.0;
    for (int k = top; k >= 1; --k) {
        double fkm1 = (2.0 * k / x) * fk - fkp1;
        fkp1 = fk;
        fk = fkm1;
        if (k - 1 == m) fm = fk;
        if ((k - 1) % 2 == 0) norm += (k - 1 == 0) ? fk : 2.0 * fk;
        if (std::abs(fk) > 1e250) {  // rescale to avoid overflow
            fk *= 1e-250;
            fkp1 *= 1e-250;
            norm *= 1e-250;
            fm *= 1e-250;
        }
    }
    return fm / norm;
}

} // namespace

double bessel_j(int m, double x) {
    if (m < 0) throw ArgumentError("bessel_j: order must be nonnegative");
    if (x < 0.0) throw ArgumentError("bessel_j: argument must be nonnegative");
    if (x == 0.0) return m == 0 ? 1.0 : 0.0;
    return x <= 12.0 ? series_j(m, x) : miller_j(m, x);
}

std::vector<double> bessel_zeros(int m, double upper) {
    std::vector<double> zeros;
    if (upper <= 0.0) return zeros;

    // J_m is positive on (0, j_{m,1}) and j_{m,1} > m, so start the scan at
    // x = m.  Step 1.5 is below half the minimal zero spacing (~3.11 for
    // m = 0, > pi for m >= 1), so no bracket can hold two zeros.
    const double step = 1.5;
    double a = std::max(static_cast<double>(m), 0.25);
    double fa = bessel_j(m, a);
    while (a < upper + step) {
        double b = a + step;
        double fb = bessel_j(m, b);
        if ((fa < 0.0) != (fb < 0.0) || fa == 0.0) {
            double lo = a, hi = b, flo = fa;
            if (fa == 0.0) {
                zeros.push_back(a);
            } else {
                while (hi - lo > 1e-13) {
                    double mid = 0.5 * (lo + hi);
                    double fmid = bessel_j(m, mid);
                    if (fmid == 0.0) { lo = hi = mid; break; }
                    if ((fmid < 0.0) == (flo < 0.0)) {
                        lo = mid;
                        flo = fmid;
                    } else {
                        hi = mid;
                    }
                }
                zeros.push_back(0.5 * (lo + hi));
            }
            if (!zeros.empty() && zeros.back() > upper) {
                zeros.pop_back();
                break;
            }
        }
        a = b;
        fa = fb;
        if (!zeros.empty() && zeros.back() > upper) break;
    }
    while (!zeros.empty() && zeros.back() > upper) zeros.pop_back();
    return zeros;
}

} // namespace echoloc
