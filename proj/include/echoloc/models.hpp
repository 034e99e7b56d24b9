#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace echoloc {

using BigInt = boost::multiprecision::cpp_int;

// A point in the model's chart.
//   interval : (x)                  with 0 < x < a
//   rectangle: (x, y)               open rectangle (0,1) x (0,b)
//   square   : (x, y)               open unit square
//   torus    : (theta1, theta2)     angles, side length 2*pi
//   disk     : (r, theta)           0 <= r < 1
//   sphere   : (colatitude, longitude)
struct Point {
    std::array<double, 2> c{0.0, 0.0};
    int dim = 0;

    Point() = default;
    explicit Point(double x) : c{x, 0.0}, dim(1) {}
    Point(double x, double y) : c{x, y}, dim(2) {}
    double operator[](int i) const { return c[static_cast<std::size_t>(i)]; }
};

enum class ModelKind { interval, rectangle, square, flat_torus, disk, sphere };

// Model geometry with its parameters.  The rectangle keeps b^2 as an exact
// rational: every double is dyadic, so squaring the parsed b gives an exact
// p/q, and `rect:bsq=p/q` covers aspect ratios like b = 1/sqrt(2) whose b
// itself is irrational.  Eigenvalue coincidence is then decided in integer
// arithmetic, never by comparing floating-point frequencies.
class ModelGeometry {
public:
    static ModelGeometry interval(double a);
    static ModelGeometry rectangle(double b);
    static ModelGeometry rectangle_bsq(long long p, long long q);
    static ModelGeometry square();
    static ModelGeometry flat_torus();
    static ModelGeometry disk();
    static ModelGeometry sphere();

    ModelKind kind() const { return kind_; }
    int dimension() const;
    double volume() const;
    double interval_length() const { return interval_a_; }
    double rect_b() const { return rect_b_; }
    const BigInt& bsq_num() const { return bsq_num_; }
    const BigInt& bsq_den() const { return bsq_den_; }
    std::string spec_string() const;

private:
    ModelGeometry() = default;
    ModelKind kind_ = ModelKind::square;
    double interval_a_ = 1.0;
    double rect_b_ = 1.0;
    BigInt bsq_num_ = 1, bsq_den_ = 1;
    bool rect_from_bsq_ = false;
    long long bsq_p_ = 1, bsq_q_ = 1;
};

// CLI model spec: interval:a=1.0 | rect:b=0.5 | rect:bsq=1/2 | square |
// torus | disk | sphere.  Strictly validated.
ModelGeometry parse_model_spec(const std::string& spec);

// One distinct eigenvalue: frequency lambda (so the Laplace eigenvalue is
// lambda^2), its multiplicity, and the basis-independent eigenspace kernel
// E_lambda(x,y) = sum_{lambda_j = lambda} e_j(x) e_j(y).
struct EigenspaceBlock {
    double frequency = 0.0;
    int multiplicity = 0;
    std::function<double(const Point&, const Point&)> kernel;

    double weight(const Point& x) const { return kernel(x, x); }
};

inline double block_weight(const EigenspaceBlock& b, const Point& x) {
    return b.kernel(x, x);
}
inline double eigenspace_kernel(const EigenspaceBlock& b, const Point& x,
                                const Point& y) {
    return b.kernel(x, y);
}

struct OrbitDescriptor {
    enum class Kind { finite, circle, all_points };
    Kind kind = Kind::finite;
    std::vector<Point> points;  // finite orbits only
    double radius = 0.0;        // disk orbits: the common radius
};

struct EnumerationOptions {
    // Cap on the total eigenvalue count (sum of multiplicities).
    std::size_t block_budget = 5'000'000;
};

class SpectralModel {
public:
    explicit SpectralModel(ModelGeometry g) : geo_(std::move(g)) {}

    const ModelGeometry& geometry() const { return geo_; }
    ModelKind kind() const { return geo_.kind(); }
    int dimension() const { return geo_.dimension(); }
    double volume() const { return geo_.volume(); }
    std::string spec_string() const { return geo_.spec_string(); }

    // Torus and sphere are homogeneous: every diagonal quantity is
    // position-independent and echolocation degenerates to "all points".
    bool homogeneous() const {
        return kind() == ModelKind::flat_torus || kind() == ModelKind::sphere;
    }
    bool has_boundary() const {
        return kind() == ModelKind::interval || kind() == ModelKind::rectangle ||
               kind() == ModelKind::square || kind() == ModelKind::disk;
    }

    void validate_point(const Point& x) const;

    // All distinct frequencies <= cutoff, strictly increasing, with exact
    // multiplicities.  Closed models include the lambda = 0 block with
    // multiplicity 1 and kernel 1/vol(M); Dirichlet models start above 0.
    std::vector<EigenspaceBlock> enumerate_blocks(
        double cutoff, const EnumerationOptions& opts = {}) const;

    OrbitDescriptor isometry_orbit(const Point& x) const;

    // Finite-group images of x (the point itself included).  For the disk,
    // torus and sphere the orbit is not finite and this returns just {x}.
    std::vector<Point> isometry_images(const Point& x) const;

    bool same_orbit(const Point& a, const Point& b, double tol) const;

private:
    ModelGeometry geo_;
};

} // namespace echoloc
