#include "echoloc/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "echoloc/errors.hpp"
#include "echoloc/parallel.hpp"

namespace echoloc {

namespace {

constexpr double kPi = std::numbers::pi;

// Weyl-density majorant constant: dN <= C_d lambda^{d-1} d(lambda) with
// C_d = 2 d omega_d (2 pi)^{-d} vol(M)  (safety factor 2).
double tail_constant(int d, double vol) {
    double omega = d == 1 ? 2.0 : kPi;
    return 2.0 * d * omega * vol / std::pow(2.0 * kPi, d);
}

// integral_Lambda^inf exp(-a lambda^2) lambda^{d-1} dlambda
double tail_integral(int d, double a, double cutoff) {
    if (d == 1) return 0.5 * std::sqrt(kPi / a) * std::erfc(cutoff * std::sqrt(a));
    return std::exp(-a * cutoff * cutoff) / (2.0 * a);
}

double tail_bound_at(const ModelGeometry& geo, double a, double cutoff) {
    return tail_constant(geo.dimension(), geo.volume()) *
           tail_integral(geo.dimension(), a, cutoff);
}

// Smallest cutoff with tail <= eps, by bisection on the closed-form bound.
double min_cutoff_for(const ModelGeometry& geo, double a, double eps) {
    double lo = 0.0, hi = 1.0;
    while (tail_bound_at(geo, a, hi) > eps && hi < 1e9) hi *= 2.0;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        if (tail_bound_at(geo, a, mid) > eps)
            lo = mid;
        else
            hi = mid;
    }
    return hi;
}

ModelGeometry geometry_from_provenance(const CountingFunction& cf) {
    try {
        return parse_model_spec(cf.provenance_model());
    } catch (const ParseError&) {
        throw UnsupportedModelError(
            "heat trace needs a manifold counting function, got provenance `" +
            cf.provenance_model() + "`");
    }
}

} // namespace

HeatTraceResult heat_trace(const CountingFunction& cf, double t,
                           bool half_laplacian) {
    if (!(t > 0.0)) throw ArgumentError("heat trace needs t > 0");
    ModelGeometry geo = geometry_from_provenance(cf);
    double a = half_laplacian ? 0.5 * t : t;

    HeatTraceResult r;
    r.t = t;
    r.half_laplacian = half_laplacian;
    for (const auto& j : cf.jumps())
        r.value += std::exp(-a * j.lambda * j.lambda) * j.weight;
    r.tail_bound = tail_bound_at(geo, a, cf.cutoff());

    if (r.tail_bound > 1e-12 * r.value) {
        double value_est =
            std::max(r.value, std::pow(4.0 * kPi * a, -0.5 * geo.dimension()));
        double need = min_cutoff_for(geo, a, 0.5e-12 * value_est);
        throw TailError("tail not controlled at cutoff " +
                        std::to_string(cf.cutoff()) + " for t = " +
                        std::to_string(t) + "; need cutoff >= " +
                        std::to_string(need));
    }
    return r;
}

double heat_min_cutoff(const ModelGeometry& geo, double t, bool half_laplacian) {
    double a = half_laplacian ? 0.5 * t : t;
    double value_est = std::pow(4.0 * kPi * a, -0.5 * geo.dimension());
    return min_cutoff_for(geo, a, 0.5e-12 * value_est);
}

double estimate_scalar_curvature(const SpectralModel& model, const Point& x,
                                 const std::vector<double>& t_schedule) {
    if (model.has_boundary())
        throw UnsupportedModelError(
            "curvature estimation uses the boundaryless heat expansion; "
            "model `" + model.spec_string() + "` has a boundary");
    if (t_schedule.empty()) throw ArgumentError("empty t schedule");
    for (std::size_t i = 0; i < t_schedule.size(); ++i) {
        if (!(t_schedule[i] > 0.0)) throw ArgumentError("t schedule must be positive");
        if (i > 0 &&
            std::abs(t_schedule[i] - 0.5 * t_schedule[i - 1]) >
                1e-9 * t_schedule[i - 1])
            throw ArgumentError("t schedule must be geometric with ratio 2, decreasing");
    }

    int d = model.dimension();
    double tmin = t_schedule.back();
    double cutoff = 1.1 * heat_min_cutoff(model.geometry(), tmin) + 5.0;
    CountingFunction cf = counting_function(model, x, cutoff);

    // f(t) = 6 ((4 pi t)^{d/2} H(t) - 1) / t -> scalar curvature as t -> 0,
    // with corrections in integer powers of t.
    std::vector<double> f;
    f.reserve(t_schedule.size());
    for (double t : t_schedule) {
        HeatTraceResult h = heat_trace(cf, t, false);
        f.push_back(6.0 * (std::pow(4.0 * kPi * t, 0.5 * d) * h.value - 1.0) / t);
    }

    // Richardson tableau for a ratio-2 schedule, order capped at 2 (the
    // expansion's next term beyond t^2 is not modeled).
    int levels = std::min<int>(2, static_cast<int>(f.size()) - 1);
    std::vector<double> col = f;
    for (int k = 1; k <= levels; ++k) {
        double pow2 = std::pow(2.0, k);
        std::vector<double> next(col.size() - 1);
        for (std::size_t i = 0; i + 1 < col.size(); ++i)
            next[i] = (pow2 * col[i + 1] - col[i]) / (pow2 - 1.0);
        col = std::move(next);
    }
    return col.back();
}

std::vector<WaveTraceSample> smoothed_wave_trace(const CountingFunction& cf,
                                                 const std::vector<double>& t_grid,
                                                 double sigma, int threads) {
    if (!(sigma > 0.0)) throw ArgumentError("sigma must be positive");
    if (sigma > cf.cutoff() / 3.0)
        throw WindowError("smoothing width " + std::to_string(sigma) +
                          " unresolved by cutoff " + std::to_string(cf.cutoff()) +
                          " (need sigma <= cutoff/3)");
    const auto& jumps = cf.jumps();
    std::vector<double> damped(jumps.size());
    for (std::size_t i = 0; i < jumps.size(); ++i)
        damped[i] = jumps[i].weight *
                    std::exp(-jumps[i].lambda * jumps[i].lambda / (2.0 * sigma * sigma));

    std::vector<WaveTraceSample> out(t_grid.size());
    parallel_for(
        t_grid.size(),
        [&](std::size_t k) {
            double t = t_grid[k];
            double s = 0.0;
            for (std::size_t i = 0; i < jumps.size(); ++i)
                s += std::cos(t * jumps[i].lambda) * damped[i];
            out[k] = {t, s, sigma};
        },
        threads);
    return out;
}

std::vector<double> detect_looping_times(const std::vector<WaveTraceSample>& samples,
                                         double threshold_ratio) {
    if (samples.empty()) throw ArgumentError("empty sample set");
    if (samples.size() >= 3) {
        double dt = samples[1].t - samples[0].t;
        for (std::size_t i = 1; i + 1 < samples.size(); ++i)
            if (std::abs(samples[i + 1].t - samples[i].t - dt) > 1e-9 * std::abs(dt))
                throw ArgumentError("samples must lie on a uniform grid");
    }
    double vmax = 0.0;
    for (const auto& s : samples) vmax = std::max(vmax, std::abs(s.value));
    double thresh = threshold_ratio * vmax;

    std::vector<double> times;
    for (std::size_t i = 1; i + 1 < samples.size(); ++i) {
        double v0 = std::abs(samples[i - 1].value);
        double v1 = std::abs(samples[i].value);
        double v2 = std::abs(samples[i + 1].value);
        if (!(v1 > v0 && v1 > v2 && v1 >= thresh)) continue;
        // parabolic vertex through the three points
        double denom = v0 - 2.0 * v1 + v2;
        double shift = denom == 0.0 ? 0.0 : 0.5 * (v0 - v2) / denom;
        double dt = samples[i + 1].t - samples[i].t;
        times.push_back(samples[i].t + shift * dt);
    }
    return times;
}

double quantum_energy_cdf(const CountingFunction& cf, double lambda,
                          double big_lambda) {
    if (!(lambda > 0.0) || !(lambda <= big_lambda))
        throw ArgumentError("quantum CDF needs 0 < lambda <= Lambda");
    double denom = cf.evaluate(big_lambda);
    if (!(denom > 0.0))
        throw DegenerateNormalizationError("N_x(Lambda) = 0: nothing to normalize");
    return cf.evaluate(lambda) / denom;
}

RecoveredCount recover_counting_from_cdf(const std::function<double(double)>& cdf,
                                         double lambda, double big_lambda, int d) {
    if (d != 1 && d != 2) throw ArgumentError("dimension must be 1 or 2");
    if (!(big_lambda > 0.0)) throw ArgumentError("Lambda must be positive");
    double omega = d == 1 ? 2.0 : kPi;
    double weyl = omega / std::pow(2.0 * kPi, d);
    RecoveredCount r;
    r.value = weyl * cdf(lambda) * std::pow(big_lambda, d);
    r.band = 2.0 * d * weyl * std::pow(big_lambda, d - 1);
    return r;
}

double eigenspace_density(const SpectralModel& model, double lambda,
                          const Point& x, double tol) {
    if (!(lambda >= 0.0)) throw ArgumentError("frequency must be nonnegative");
    if (tol < 0.0) tol = 1e-9 * std::max(1.0, lambda);
    auto blocks = model.enumerate_blocks(lambda + tol + 1.0);
    for (const auto& blk : blocks) {
        if (std::abs(blk.frequency - lambda) <= tol)
            return blk.weight(x) / blk.multiplicity;
    }
    throw ArgumentError("frequency " + std::to_string(lambda) +
                        " is not in the spectrum (tolerance " + std::to_string(tol) +
                        ")");
}

} // namespace echoloc
