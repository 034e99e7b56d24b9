#pragma once

#include <string>
#include <utility>
#include <vector>

#include "echoloc/counting.hpp"
#include "echoloc/models.hpp"

namespace echoloc {

struct LocateCandidate {
    Point point;
    double residual = 0.0;
};

// Echolocation output: candidate points grouped into isometry orbits.
// `all_points` is the degenerate status for homogeneous models, where every
// point carries the same signature and no orbit is singled out.
struct LocationReport {
    enum class Status { unique_orbit, multiple_orbits, all_points, no_match };
    Status status = Status::no_match;
    std::vector<std::vector<LocateCandidate>> orbits;
};

std::string to_string(LocationReport::Status s);

// String [0,a], Dirichlet: the first jump 2/a sin^2(pi x / a) determines x
// up to the reflection about a/2.  Returns the one or two solutions.
std::vector<double> locate_on_interval(double a, double first_jump_weight);

// Rectangle [0,1]x[0,b], 0 < b < 1.  From the printed eigenfunctions
// 2/sqrt(b) sin(pi n x) sin(pi m y / b):
//   jump21/jump11 = sin^2(2 pi x)/sin^2(pi x) = 4 cos^2(pi x)
//   sin^2(pi y / b) = jump11 b / (4 sin^2(pi x))
// Candidates are the Klein 4-orbit with forward-evaluation residuals.
LocationReport locate_on_rectangle(double b, double jump11, double jump21);

// Unit square.  P = jump11/4 = sin^2(pi x) sin^2(pi y) and
// jump_block2/jump11 = 4 (cos^2(pi x) + cos^2(pi y)), so
// S = sin^2 + sin^2 = 2 - ratio/4; the roots of z^2 - S z + P split into
// the two sin^2 values, and the dihedral orbit covers all branches.
LocationReport locate_on_square(double jump11, double jump_block2);

// Gaussian curvature K = a^2 / (z^2 (a^{-2} - 1) + a^2)^2 on the ellipsoid
// of revolution x^2 + y^2 + z^2/a^2 = 1, inverted for z.  K ranges over
// [1/a^2, a^2] (equator to poles, or the reverse for a < 1) and determines
// the height up to sign.  Returns {+z, -z}.
std::pair<double, double> ellipsoid_z_from_curvature(double K, double a);

// Shortest looping time on the unit disk is 2 d(x, boundary) = 2 (1 - r).
double disk_radius_from_looping_time(double t_min);

struct LocateOptions {
    int grid_resolution = 64;
    int refine_steps = 200;
    double frequency_tol = 1e-9;
    double acceptance_residual_closed = 1e-8;
    double acceptance_residual_generic = 1e-6;
    double orbit_dedup_tol = 1e-6;
    bool force_generic = false;
    int threads = 0;
};

// Numerical matcher: least-squares jump-weight mismatch over the union of
// model and target frequencies, coarse grid scan plus simplex refinement,
// candidates deduplicated by isometry orbit.
LocationReport generic_locate(const SpectralModel& model,
                              const CountingFunction& target,
                              const LocateOptions& opts = {});

// Router used by the CLI: closed-form inversion on interval/rectangle/square
// when the needed jumps are available (nodal targets fall back to the
// numerical matcher), generic_locate otherwise.
LocationReport locate(const SpectralModel& model, const CountingFunction& target,
                      const LocateOptions& opts = {});

} // namespace echoloc
