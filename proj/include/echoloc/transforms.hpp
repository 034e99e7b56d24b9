#pragma once

#include <functional>
#include <vector>

#include "echoloc/counting.hpp"
#include "echoloc/models.hpp"

namespace echoloc {

struct HeatTraceResult {
    double value = 0.0;       // sum over jumps of exp(-t lambda^2 (/2)) * w
    double tail_bound = 0.0;  // Weyl-majorant bound on the truncated tail
    double t = 0.0;
    bool half_laplacian = false;  // exponent -t lambda^2 / 2 when set
};

struct WaveTraceSample {
    double t = 0.0;
    double value = 0.0;   // sum cos(t lambda) w exp(-lambda^2 / (2 sigma^2))
    double sigma = 0.0;
};

// Heat trace of dN_x at time t.  Refuses (TailError, naming the minimal
// sufficient cutoff) when the bound on the tail beyond the cutoff exceeds
// 1e-12 of the computed value.  The model is recovered from the counting
// function's provenance.
HeatTraceResult heat_trace(const CountingFunction& cf, double t,
                           bool half_laplacian = false);

// Smallest cutoff for which heat_trace at time t passes its tail gate,
// assuming the diagonal heat kernel is within a factor 2 of (4 pi t)^{-d/2}.
double heat_min_cutoff(const ModelGeometry& geo, double t,
                       bool half_laplacian = false);

// Scalar curvature at x from the small-t heat expansion
// (4 pi t)^{d/2} H(t) = 1 + t K_gauss / 3 + O(t^2), Richardson-extrapolated
// over a ratio-2 geometric schedule (decreasing).  Returns the scalar
// curvature (= 2 K_gauss in dimension 2).  Closed models only.
double estimate_scalar_curvature(const SpectralModel& model, const Point& x,
                                 const std::vector<double>& t_schedule);

std::vector<WaveTraceSample> smoothed_wave_trace(const CountingFunction& cf,
                                                 const std::vector<double>& t_grid,
                                                 double sigma, int threads = 0);

// Local maxima of |value| above threshold_ratio * max|value| on a uniform
// grid, refined by 3-point parabolic interpolation, ascending.
std::vector<double> detect_looping_times(const std::vector<WaveTraceSample>& samples,
                                         double threshold_ratio = 0.25);

// P_Lambda(lambda) = N_x(lambda) / N_x(Lambda), the probability that the
// released particle has energy at most lambda^2.
double quantum_energy_cdf(const CountingFunction& cf, double lambda,
                          double big_lambda);

struct RecoveredCount {
    double value = 0.0;  // omega_d (2 pi)^{-d} P(lambda) Lambda^d
    double band = 0.0;   // the O(Lambda^{d-1}) uncertainty reported alongside
};

RecoveredCount recover_counting_from_cdf(const std::function<double(double)>& cdf,
                                         double lambda, double big_lambda, int d);

// Expected eigenspace probability density at x for the frequency lambda:
// jump weight divided by multiplicity.  lambda must be in the spectrum
// within tol (default 1e-9 relative).
double eigenspace_density(const SpectralModel& model, double lambda,
                          const Point& x, double tol = -1.0);

} // namespace echoloc
