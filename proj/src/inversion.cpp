#include "echoloc/inversion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "echoloc/errors.hpp"
#include "echoloc/parallel.hpp"

namespace echoloc {

namespace {

constexpr double kPi = std::numbers::pi;

double sq(double v) { return v * v; }

// Clamp a quantity that must lie in [0, 1] up to roundoff; anything farther
// out is an inconsistent signature.
double clamp01_strict(double v, const char* what) {
    if (v < -1e-12 || v > 1.0 + 1e-12)
        throw InfeasibleSignatureError(std::string(what) + " = " +
                                       std::to_string(v) + " outside [0, 1]");
    return std::clamp(v, 0.0, 1.0);
}

bool lex_less(const Point& a, const Point& b) {
    for (int i = 0; i < a.dim; ++i) {
        if (a[i] < b[i]) return true;
        if (a[i] > b[i]) return false;
    }
    return false;
}

void sort_report(LocationReport& rep) {
    for (auto& orbit : rep.orbits)
        std::sort(orbit.begin(), orbit.end(),
                  [](const LocateCandidate& a, const LocateCandidate& b) {
                      if (a.residual != b.residual) return a.residual < b.residual;
                      return lex_less(a.point, b.point);
                  });
    std::sort(rep.orbits.begin(), rep.orbits.end(),
              [](const std::vector<LocateCandidate>& a,
                 const std::vector<LocateCandidate>& b) {
                  if (a.front().residual != b.front().residual)
                      return a.front().residual < b.front().residual;
                  return lex_less(a.front().point, b.front().point);
              });
}

// ---- chart + domain helpers for the numerical matcher ----------------------

struct Chart {
    int dim = 2;
    std::array<double, 2> lo{0.0, 0.0};
    std::array<double, 2> hi{1.0, 1.0};
};

Chart chart_for(const SpectralModel& model) {
    Chart c;
    switch (model.kind()) {
        case ModelKind::interval:
            c.dim = 1;
            c.hi = {model.geometry().interval_length(), 0.0};
            break;
        case ModelKind::rectangle:
            c.hi = {1.0, model.geometry().rect_b()};
            break;
        case ModelKind::square:
            c.hi = {1.0, 1.0};
            break;
        case ModelKind::disk:
            c.hi = {1.0, 2.0 * kPi};
            break;
        case ModelKind::flat_torus:
            c.hi = {2.0 * kPi, 2.0 * kPi};
            break;
        case ModelKind::sphere:
            c.hi = {kPi, 2.0 * kPi};
            break;
    }
    return c;
}

bool in_domain(const SpectralModel& model, const std::vector<double>& v) {
    switch (model.kind()) {
        case ModelKind::interval:
            return v[0] > 0.0 && v[0] < model.geometry().interval_length();
        case ModelKind::rectangle:
            return v[0] > 0.0 && v[0] < 1.0 && v[1] > 0.0 &&
                   v[1] < model.geometry().rect_b();
        case ModelKind::square:
            return v[0] > 0.0 && v[0] < 1.0 && v[1] > 0.0 && v[1] < 1.0;
        case ModelKind::disk:
            return v[0] >= 0.0 && v[0] < 1.0;
        case ModelKind::sphere:
            return v[0] >= 0.0 && v[0] <= kPi;
        case ModelKind::flat_torus:
            return true;
    }
    return false;
}

Point to_point(const std::vector<double>& v) {
    return v.size() == 1 ? Point(v[0]) : Point(v[0], v[1]);
}

// Nelder-Mead over 1 or 2 coordinates, shrink on stagnation, fixed
// iteration cap.  Deterministic.
std::pair<std::vector<double>, double> nelder_mead(
    const std::function<double(const std::vector<double>&)>& f,
    std::vector<double> start, double h, int max_iter) {
    std::size_t d = start.size();
    std::vector<std::vector<double>> xs(d + 1, start);
    for (std::size_t i = 0; i < d; ++i) xs[i + 1][i] += h;
    std::vector<double> fx(d + 1);
    for (std::size_t i = 0; i <= d; ++i) fx[i] = f(xs[i]);

    for (int it = 0; it < max_iter; ++it) {
        std::vector<std::size_t> order(d + 1);
        for (std::size_t i = 0; i <= d; ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return fx[a] < fx[b]; });
        std::size_t best = order[0], worst = order[d];

        double spread = 0.0;
        for (std::size_t i = 0; i < d; ++i)
            spread = std::max(spread,
                              std::abs(xs[worst][i] - xs[best][i]));
        if (spread < 1e-12 && fx[worst] - fx[best] < 1e-24) break;

        std::vector<double> centroid(d, 0.0);
        for (std::size_t k = 0; k <= d; ++k) {
            if (k == worst) continue;
            for (std::size_t i = 0; i < d; ++i) centroid[i] += xs[k][i];
        }
        for (std::size_t i = 0; i < d; ++i) centroid[i] /= static_cast<double>(d);

        auto blend = [&](double alpha) {
            std::vector<double> p(d);
            for (std::size_t i = 0; i < d; ++i)
                p[i] = centroid[i] + alpha * (xs[worst][i] - centroid[i]);
            return p;
        };

        auto xr = blend(-1.0);
        double fr = f(xr);
        if (fr < fx[best]) {
            auto xe = blend(-2.0);
            double fe = f(xe);
            if (fe < fr) {
                xs[worst] = xe;
                fx[worst] = fe;
            } else {
                xs[worst] = xr;
                fx[worst] = fr;
            }
        } else if (fr < fx[order[d - 1]]) {
            xs[worst] = xr;
            fx[worst] = fr;
        } else {
            auto xc = blend(0.5);
            double fc = f(xc);
            if (fc < fx[worst]) {
                xs[worst] = xc;
                fx[worst] = fc;
            } else {
                for (std::size_t k = 0; k <= d; ++k) {
                    if (k == best) continue;
                    for (std::size_t i = 0; i < d; ++i)
                        xs[k][i] = xs[best][i] + 0.5 * (xs[k][i] - xs[best][i]);
                    fx[k] = f(xs[k]);
                }
            }
        }
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i <= d; ++i)
        if (fx[i] < fx[best]) best = i;
    return {xs[best], fx[best]};
}

} // namespace

std::string to_string(LocationReport::Status s) {
    switch (s) {
        case LocationReport::Status::unique_orbit: return "unique-orbit";
        case LocationReport::Status::multiple_orbits: return "multiple-orbits";
        case LocationReport::Status::all_points: return "all-points";
        case LocationReport::Status::no_match: return "no-match";
    }
    return "";
}

// ---- closed-form inversions -------------------------------------------------

std::vector<double> locate_on_interval(double a, double first_jump_weight) {
    if (!(a > 0.0)) throw ArgumentError("interval length must be positive");
    double wmax = 2.0 / a;
    if (!(first_jump_weight > 0.0) || first_jump_weight > wmax * (1.0 + 1e-12))
        throw InfeasibleSignatureError("first jump weight must lie in (0, 2/a]");
    double s2 = std::min(first_jump_weight / wmax, 1.0);  // sin^2(pi x / a)
    double x = a / kPi * std::asin(std::sqrt(s2));
    std::vector<double> out{x};
    if (std::abs((a - x) - x) > 1e-12 * a) out.push_back(a - x);
    return out;
}

LocationReport locate_on_rectangle(double b, double jump11, double jump21) {
    if (!(b > 0.0 && b < 1.0)) throw ArgumentError("rectangle needs 0 < b < 1");
    if (!(jump11 > 0.0))
        throw InfeasibleSignatureError("jump at lambda_{1,1} must be positive "
                                       "for an interior point");
    if (jump21 < 0.0) throw InfeasibleSignatureError("negative jump weight");

    double ratio = jump21 / jump11;  // = 4 cos^2(pi x)
    double cos2 = ratio / 4.0;
    if (cos2 > 1.0 + 1e-12)
        throw InfeasibleSignatureError("jump ratio " + std::to_string(ratio) +
                                       " exceeds 4: no interior x");
    cos2 = std::min(cos2, 1.0);
    double sin2x = 1.0 - cos2;
    if (!(sin2x > 0.0))
        throw InfeasibleSignatureError("signature places x on the boundary");
    double x = std::acos(std::sqrt(cos2)) / kPi;

    double sin2y = clamp01_strict(jump11 * b / (4.0 * sin2x), "sin^2(pi y/b)");
    if (!(sin2y > 0.0))
        throw InfeasibleSignatureError("signature places y on the boundary");
    double y = b / kPi * std::asin(std::sqrt(sin2y));

    SpectralModel model(ModelGeometry::rectangle(b));
    LocationReport rep;
    rep.status = LocationReport::Status::unique_orbit;
    std::vector<LocateCandidate> orbit;
    for (const auto& img : model.isometry_images(Point(x, y))) {
        double f11 = 4.0 / b * sq(std::sin(kPi * img[0])) *
                     sq(std::sin(kPi * img[1] / b));
        double f21 = 4.0 / b * sq(std::sin(2.0 * kPi * img[0])) *
                     sq(std::sin(kPi * img[1] / b));
        orbit.push_back({img, std::hypot(f11 - jump11, f21 - jump21)});
    }
    rep.orbits.push_back(std::move(orbit));
    sort_report(rep);
    return rep;
}

LocationReport locate_on_square(double jump11, double jump_block2) {
    if (!(jump11 > 0.0))
        throw InfeasibleSignatureError("jump at lambda_{1,1} must be positive "
                                       "for an interior point");
    if (jump_block2 < 0.0) throw InfeasibleSignatureError("negative jump weight");

    double prod = jump11 / 4.0;                  // sin^2(pi x) sin^2(pi y)
    double ratio = jump_block2 / jump11;         // 4 (cos^2 + cos^2)
    double sum = 2.0 - ratio / 4.0;              // sin^2 + sin^2
    if (sum < 0.0)
        throw InfeasibleSignatureError("jump ratio exceeds 8: no interior point");
    double disc = sum * sum - 4.0 * prod;
    if (disc < -1e-12)
        throw InfeasibleSignatureError("negative discriminant: inconsistent jumps");
    // snap roundoff-scale discriminants to the exact double root (diagonal
    // points), where sqrt would otherwise amplify eps to ~1e-8
    if (disc < 1e-14 * std::max(sum * sum, 1e-300)) disc = 0.0;
    disc = std::max(disc, 0.0);
    double z1 = clamp01_strict(0.5 * (sum + std::sqrt(disc)), "sin^2(pi x)");
    double z2 = clamp01_strict(0.5 * (sum - std::sqrt(disc)), "sin^2(pi y)");
    if (!(z1 > 0.0) || !(z2 > 0.0))
        throw InfeasibleSignatureError("signature places the point on the boundary");

    double x = std::asin(std::sqrt(z1)) / kPi;
    double y = std::asin(std::sqrt(z2)) / kPi;

    SpectralModel model(ModelGeometry::square());
    LocationReport rep;
    rep.status = LocationReport::Status::unique_orbit;
    std::vector<LocateCandidate> orbit;
    for (const auto& img : model.isometry_images(Point(x, y))) {
        double sx = sq(std::sin(kPi * img[0])), sy = sq(std::sin(kPi * img[1]));
        double f11 = 4.0 * sx * sy;
        double f2 = 4.0 * (sq(std::sin(2.0 * kPi * img[0])) * sy +
                           sx * sq(std::sin(2.0 * kPi * img[1])));
        orbit.push_back({img, std::hypot(f11 - jump11, f2 - jump_block2)});
    }
    rep.orbits.push_back(std::move(orbit));
    sort_report(rep);
    return rep;
}

std::pair<double, double> ellipsoid_z_from_curvature(double K, double a) {
    if (!(a > 0.0)) throw ArgumentError("ellipsoid needs a > 0");
    if (std::abs(a - 1.0) < 1e-12)
        throw ArgumentError("a = 1 is the round sphere: curvature is constant "
                            "and carries no location information");
    if (!(K > 0.0)) throw ArgumentError("Gaussian curvature must be positive here");
    // On x^2 + y^2 + z^2/a^2 = 1 the Gaussian curvature is
    //   K(z) = a^2 / (z^2 (a^{-2} - 1) + a^2)^2,
    // i.e. a^6 / (a^4 - (a^2 - 1) z^2)^2: K = 1/a^2 at the equator and a^2 at
    // the poles.  Inverting:
    double z2 = (a / std::sqrt(K) - a * a) / (1.0 / (a * a) - 1.0);
    double cap = a * a;
    if (z2 < -1e-12 * std::max(1.0, cap) || z2 > cap * (1.0 + 1e-12))
        throw InfeasibleSignatureError("curvature " + std::to_string(K) +
                                       " is not attained on this ellipsoid");
    double z = std::sqrt(std::clamp(z2, 0.0, cap));
    return {z, -z};
}

double disk_radius_from_looping_time(double t_min) {
    if (!(t_min > 0.0 && t_min < 2.0))
        throw InfeasibleSignatureError("looping time must lie in (0, 2): "
                                       "no interior point is that deep");
    return 1.0 - 0.5 * t_min;
}

// ---- numerical matcher -------------------------------------------------------

LocationReport generic_locate(const SpectralModel& model,
                              const CountingFunction& target,
                              const LocateOptions& opts) {
    if (target.jumps().empty() && target.suppressed().empty())
        throw ArgumentError("empty target counting function");
    if (opts.grid_resolution < 2) throw ArgumentError("grid resolution too small");

    auto blocks = model.enumerate_blocks(target.cutoff());

    // Align target jumps with the model spectrum.  Target frequencies with no
    // model block can never be matched and contribute a constant penalty;
    // model blocks absent from the target demand weight zero there.
    std::vector<double> wt(blocks.size(), 0.0);
    double penalty = 0.0;
    {
        std::size_t bi = 0;
        for (const auto& j : target.jumps()) {
            while (bi < blocks.size() &&
                   blocks[bi].frequency < j.lambda - opts.frequency_tol)
                ++bi;
            if (bi < blocks.size() &&
                std::abs(blocks[bi].frequency - j.lambda) <= opts.frequency_tol)
                wt[bi] = j.weight;
            else
                penalty += sq(j.weight);
        }
    }

    auto objective = [&](const std::vector<double>& v) -> double {
        if (!in_domain(model, v)) return 1e30;
        Point p = to_point(v);
        double d = penalty;
        for (std::size_t i = 0; i < blocks.size(); ++i)
            d += sq(blocks[i].weight(p) - wt[i]);
        return d;
    };

    Chart chart = chart_for(model);
    int n = opts.grid_resolution;
    std::size_t total = chart.dim == 1 ? static_cast<std::size_t>(n)
                                       : static_cast<std::size_t>(n) * n;
    auto grid_point = [&](std::size_t idx) {
        std::vector<double> v(static_cast<std::size_t>(chart.dim));
        if (chart.dim == 1) {
            v[0] = chart.lo[0] +
                   (idx + 0.5) * (chart.hi[0] - chart.lo[0]) / n;
        } else {
            std::size_t i = idx / n, k = idx % n;
            v[0] = chart.lo[0] + (i + 0.5) * (chart.hi[0] - chart.lo[0]) / n;
            v[1] = chart.lo[1] + (k + 0.5) * (chart.hi[1] - chart.lo[1]) / n;
        }
        return v;
    };

    std::vector<double> values(total);
    parallel_for(
        total, [&](std::size_t i) { values[i] = objective(grid_point(i)); },
        opts.threads);

    double acceptance = opts.acceptance_residual_generic;
    LocationReport rep;

    if (model.homogeneous()) {
        // Every point carries the same signature; report representatives and
        // never a unique-point claim.
        double res = std::sqrt(values[total / 2]);
        if (res > acceptance) {
            rep.status = LocationReport::Status::no_match;
            return rep;
        }
        rep.status = LocationReport::Status::all_points;
        std::vector<LocateCandidate> orbit;
        std::size_t stride = std::max<std::size_t>(1, total / 8);
        for (std::size_t i = 0; i < total && orbit.size() < 8; i += stride)
            orbit.push_back({to_point(grid_point(i)), std::sqrt(values[i])});
        rep.orbits.push_back(std::move(orbit));
        sort_report(rep);
        return rep;
    }

    double vmin = *std::min_element(values.begin(), values.end());

    // Seeds: grid local minima within 10x the global grid minimum.
    std::vector<std::size_t> seeds;
    auto value_at = [&](long i, long k) {
        return values[static_cast<std::size_t>(i) * n + static_cast<std::size_t>(k)];
    };
    for (std::size_t idx = 0; idx < total; ++idx) {
        if (values[idx] > 10.0 * vmin + 1e-300) continue;
        bool is_min = true;
        if (chart.dim == 1) {
            if (idx > 0 && values[idx - 1] < values[idx]) is_min = false;
            if (idx + 1 < total && values[idx + 1] < values[idx]) is_min = false;
        } else {
            long i = static_cast<long>(idx) / n, k = static_cast<long>(idx) % n;
            for (auto [di, dk] : {std::pair{-1L, 0L}, {1L, 0L}, {0L, -1L}, {0L, 1L}}) {
                long ii = i + di, kk = k + dk;
                if (ii < 0 || ii >= n || kk < 0 || kk >= n) continue;
                if (value_at(ii, kk) < values[idx]) is_min = false;
            }
        }
        if (is_min) seeds.push_back(idx);
    }
    std::sort(seeds.begin(), seeds.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    if (seeds.size() > 32) seeds.resize(32);

    // Simplex refinement from each seed, then a tightening second pass.
    std::vector<LocateCandidate> accepted;
    double cell = (chart.hi[0] - chart.lo[0]) / n;
    for (std::size_t idx : seeds) {
        auto [v1, f1] = nelder_mead(objective, grid_point(idx), 0.7 * cell,
                                    opts.refine_steps);
        auto [v2, f2] = nelder_mead(objective, v1, 1e-4 * cell, opts.refine_steps);
        const auto& v = f2 < f1 ? v2 : v1;
        double fbest = std::min(f1, f2);
        double res = std::sqrt(std::max(fbest, 0.0));
        if (res <= acceptance) accepted.push_back({to_point(v), res});
    }

    if (accepted.empty()) {
        rep.status = LocationReport::Status::no_match;
        return rep;
    }

    std::sort(accepted.begin(), accepted.end(),
              [](const LocateCandidate& a, const LocateCandidate& b) {
                  if (a.residual != b.residual) return a.residual < b.residual;
                  return lex_less(a.point, b.point);
              });
    for (const auto& cand : accepted) {
        bool placed = false;
        for (auto& orbit : rep.orbits) {
            if (model.same_orbit(orbit.front().point, cand.point,
                                 opts.orbit_dedup_tol)) {
                bool dup = false;
                for (const auto& c : orbit) {
                    double d = 0.0;
                    for (int i = 0; i < cand.point.dim; ++i)
                        d = std::max(d, std::abs(c.point[i] - cand.point[i]));
                    if (d <= opts.orbit_dedup_tol) dup = true;
                }
                if (!dup) orbit.push_back(cand);
                placed = true;
                break;
            }
        }
        if (!placed) rep.orbits.push_back({cand});
    }
    rep.status = rep.orbits.size() == 1 ? LocationReport::Status::unique_orbit
                                        : LocationReport::Status::multiple_orbits;
    sort_report(rep);
    return rep;
}

// ---- router ------------------------------------------------------------------

namespace {

// Weight of the target jump at frequency `lambda`, or nullopt when the jump
// is absent (either suppressed at a nodal point or genuinely missing).
std::optional<double> jump_at(const CountingFunction& cf, double lambda,
                              double tol) {
    for (const auto& j : cf.jumps())
        if (std::abs(j.lambda - lambda) <= tol) return j.weight;
    return std::nullopt;
}

LocationReport filter_report(LocationReport rep, double acceptance) {
    LocationReport out;
    for (auto& orbit : rep.orbits) {
        std::vector<LocateCandidate> kept;
        for (auto& c : orbit)
            if (c.residual <= acceptance) kept.push_back(c);
        if (!kept.empty()) out.orbits.push_back(std::move(kept));
    }
    if (out.orbits.empty())
        out.status = LocationReport::Status::no_match;
    else
        out.status = rep.status;
    return out;
}

} // namespace

LocationReport locate(const SpectralModel& model, const CountingFunction& target,
                      const LocateOptions& opts) {
    if (opts.force_generic) return generic_locate(model, target, opts);

    switch (model.kind()) {
        case ModelKind::interval: {
            double a = model.geometry().interval_length();
            double lam1 = kPi / a;
            auto w = jump_at(target, lam1, opts.frequency_tol);
            if (!w) return generic_locate(model, target, opts);
            LocationReport rep;
            rep.status = LocationReport::Status::unique_orbit;
            std::vector<LocateCandidate> orbit;
            for (double x : locate_on_interval(a, *w)) {
                double fwd = 2.0 / a * sq(std::sin(kPi * x / a));
                orbit.push_back({Point(x), std::abs(fwd - *w)});
            }
            rep.orbits.push_back(std::move(orbit));
            sort_report(rep);
            return filter_report(std::move(rep), opts.acceptance_residual_closed);
        }
        case ModelKind::rectangle: {
            double b = model.geometry().rect_b();
            double lam11 = kPi * std::sqrt(1.0 + 1.0 / (b * b));
            double lam21 = kPi * std::sqrt(4.0 + 1.0 / (b * b));
            if (target.cutoff() < lam21 - opts.frequency_tol)
                throw ArgumentError("target cutoff below lambda_{2,1}: "
                                    "not enough spectrum for the closed form");
            auto w11 = jump_at(target, lam11, opts.frequency_tol);
            if (!w11) return generic_locate(model, target, opts);
            double w21 = jump_at(target, lam21, opts.frequency_tol).value_or(0.0);
            return filter_report(locate_on_rectangle(b, *w11, w21),
                                 opts.acceptance_residual_closed);
        }
        case ModelKind::square: {
            double lam11 = kPi * std::sqrt(2.0);
            double lam2 = kPi * std::sqrt(5.0);
            if (target.cutoff() < lam2 - opts.frequency_tol)
                throw ArgumentError("target cutoff below lambda_{2,1}: "
                                    "not enough spectrum for the closed form");
            auto w11 = jump_at(target, lam11, opts.frequency_tol);
            if (!w11) return generic_locate(model, target, opts);
            double w2 = jump_at(target, lam2, opts.frequency_tol).value_or(0.0);
            return filter_report(locate_on_square(*w11, w2),
                                 opts.acceptance_residual_closed);
        }
        default:
            return generic_locate(model, target, opts);
    }
}

} // namespace echoloc
