#pragma once

#include <vector>

namespace echoloc {

// Bessel function of the first kind, integer order m >= 0.
// Ascending power series for x <= 12, Miller downward recurrence with the
// sum rule J_0 + 2*sum J_{2k} = 1 beyond.  Relative accuracy ~1e-11 or
// better over the range used here (x <= ~250).
double bessel_j(int m, double x);

// Positive zeros j_{m,k} <= upper, ascending.  Brackets come from a sign
// scan in steps of 1.5 starting at x = m (the first zero satisfies
// j_{m,1} > m and consecutive zeros are at least ~3.11 apart), refined by
// bisection to width 1e-13.
std::vector<double> bessel_zeros(int m, double upper);

} // namespace echoloc
