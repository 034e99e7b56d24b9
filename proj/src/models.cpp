#include "echoloc/models.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <memory>
#include <numbers>
#include <numeric>
#include <utility>

#include "echoloc/bessel.hpp"
#include "echoloc/errors.hpp"

namespace echoloc {

namespace {

constexpr double kPi = std::numbers::pi;

double legendre_p(int l, double t) {
    if (l == 0) return 1.0;
    double pm1 = 1.0, p = t;
    for (int k = 2; k <= l; ++k) {
        double pn = ((2.0 * k - 1.0) * t * p - (k - 1.0) * pm1) / k;
        pm1 = p;
        p = pn;
    }
    return p;
}

void check_finite(const Point& x) {
    for (int i = 0; i < x.dim; ++i)
        if (!std::isfinite(x[i]))
            throw InvalidPointError("point coordinate is not finite");
}

// Weyl main-term estimate of the eigenvalue count, used as the capacity
// pre-check before any allocation happens.
double weyl_estimate(int d, double vol, double cutoff) {
    double omega = d == 1 ? 2.0 : kPi;
    return vol * omega * std::pow(cutoff, d) / std::pow(2.0 * kPi, d);
}

void check_budget(std::size_t count, const EnumerationOptions& opts) {
    if (count > opts.block_budget)
        throw CapacityError("eigenvalue count exceeds the block budget of " +
                            std::to_string(opts.block_budget));
}

} // namespace

// ---- ModelGeometry ---------------------------------------------------------

ModelGeometry ModelGeometry::interval(double a) {
    if (!(a > 0.0) || !std::isfinite(a))
        throw ArgumentError("interval length must be positive");
    ModelGeometry g;
    g.kind_ = ModelKind::interval;
    g.interval_a_ = a;
    return g;
}

ModelGeometry ModelGeometry::rectangle(double b) {
    if (!(b > 0.0 && b < 1.0))
        throw ArgumentError("rectangle aspect must satisfy 0 < b < 1 "
                            "(b = 1 is the separate `square` kind)");
    ModelGeometry g;
    g.kind_ = ModelKind::rectangle;
    g.rect_b_ = b;
    // b = M * 2^(e-53) exactly; strip factors of two so M is odd.
    int e = 0;
    double fm = std::frexp(b, &e);
    auto mant = static_cast<long long>(std::ldexp(fm, 53));
    int s = 53 - e;
    while (mant % 2 == 0) {
        mant /= 2;
        --s;
    }
    g.bsq_num_ = BigInt(mant) * mant;
    g.bsq_den_ = BigInt(1) << (2 * s);
    return g;
}

ModelGeometry ModelGeometry::rectangle_bsq(long long p, long long q) {
    if (p <= 0 || q <= 0 || p >= q)
        throw ArgumentError("rect bsq=p/q needs 0 < p < q");
    long long g0 = std::gcd(p, q);
    p /= g0;
    q /= g0;
    ModelGeometry g;
    g.kind_ = ModelKind::rectangle;
    g.rect_b_ = std::sqrt(static_cast<double>(p) / static_cast<double>(q));
    g.bsq_num_ = p;
    g.bsq_den_ = q;
    g.rect_from_bsq_ = true;
    g.bsq_p_ = p;
    g.bsq_q_ = q;
    return g;
}

ModelGeometry ModelGeometry::square() {
    ModelGeometry g;
    g.kind_ = ModelKind::square;
    g.rect_b_ = 1.0;
    return g;
}

ModelGeometry ModelGeometry::flat_torus() {
    ModelGeometry g;
    g.kind_ = ModelKind::flat_torus;
    return g;
}

ModelGeometry ModelGeometry::disk() {
    ModelGeometry g;
    g.kind_ = ModelKind::disk;
    return g;
}

ModelGeometry ModelGeometry::sphere() {
    ModelGeometry g;
    g.kind_ = ModelKind::sphere;
    return g;
}

int ModelGeometry::dimension() const {
    return kind_ == ModelKind::interval ? 1 : 2;
}

double ModelGeometry::volume() const {
    switch (kind_) {
        case ModelKind::interval: return interval_a_;
        case ModelKind::rectangle: return rect_b_;
        case ModelKind::square: return 1.0;
        case ModelKind::flat_torus: return 4.0 * kPi * kPi;
        case ModelKind::disk: return kPi;
        case ModelKind::sphere: return 4.0 * kPi;
    }
    return 0.0;
}

std::string ModelGeometry::spec_string() const {
    char buf[64];
    switch (kind_) {
        case ModelKind::interval:
            std::snprintf(buf, sizeof buf, "interval:a=%.17g", interval_a_);
            return buf;
        case ModelKind::rectangle:
            if (rect_from_bsq_) {
                std::snprintf(buf, sizeof buf, "rect:bsq=%lld/%lld", bsq_p_, bsq_q_);
                return buf;
            }
            std::snprintf(buf, sizeof buf, "rect:b=%.17g", rect_b_);
            return buf;
        case ModelKind::square: return "square";
        case ModelKind::flat_torus: return "torus";
        case ModelKind::disk: return "disk";
        case ModelKind::sphere: return "sphere";
    }
    return "";
}

ModelGeometry parse_model_spec(const std::string& spec) {
    auto colon = spec.find(':');
    std::string head = spec.substr(0, colon);
    std::string params = colon == std::string::npos ? "" : spec.substr(colon + 1);

    auto no_params = [&](ModelGeometry g) {
        if (!params.empty())
            throw ParseError("model `" + head + "` takes no parameters");
        return g;
    };

    if (head == "square") return no_params(ModelGeometry::square());
    if (head == "torus") return no_params(ModelGeometry::flat_torus());
    if (head == "disk") return no_params(ModelGeometry::disk());
    if (head == "sphere") return no_params(ModelGeometry::sphere());

    auto eq = params.find('=');
    if (eq == std::string::npos)
        throw ParseError("model spec `" + spec + "`: expected key=value after `:`");
    std::string key = params.substr(0, eq);
    std::string val = params.substr(eq + 1);
    if (val.empty()) throw ParseError("model spec `" + spec + "`: empty value");

    if (head == "interval") {
        if (key != "a") throw ParseError("interval takes a=<length>");
        std::size_t pos = 0;
        double a = 0.0;
        try {
            a = std::stod(val, &pos);
        } catch (const std::exception&) {
            throw ParseError("interval: bad length `" + val + "`");
        }
        if (pos != val.size()) throw ParseError("interval: bad length `" + val + "`");
        return ModelGeometry::interval(a);
    }
    if (head == "rect") {
        if (key == "b") {
            std::size_t pos = 0;
            double b = 0.0;
            try {
                b = std::stod(val, &pos);
            } catch (const std::exception&) {
                throw ParseError("rect: bad aspect `" + val + "`");
            }
            if (pos != val.size()) throw ParseError("rect: bad aspect `" + val + "`");
            return ModelGeometry::rectangle(b);
        }
        if (key == "bsq") {
            auto slash = val.find('/');
            if (slash == std::string::npos)
                throw ParseError("rect: bsq wants p/q");
            try {
                long long p = std::stoll(val.substr(0, slash));
                long long q = std::stoll(val.substr(slash + 1));
                return ModelGeometry::rectangle_bsq(p, q);
            } catch (const Error&) {
                throw;
            } catch (const std::exception&) {
                throw ParseError("rect: bad bsq `" + val + "`");
            }
        }
        throw ParseError("rect takes b=<aspect> or bsq=p/q");
    }
    throw ParseError("unknown model `" + head + "`");
}

// ---- SpectralModel ---------------------------------------------------------

void SpectralModel::validate_point(const Point& x) const {
    if (x.dim != dimension())
        throw InvalidPointError("point dimension " + std::to_string(x.dim) +
                                " does not match model dimension " +
                                std::to_string(dimension()));
    check_finite(x);
    switch (kind()) {
        case ModelKind::interval:
            if (!(x[0] > 0.0 && x[0] < geo_.interval_length()))
                throw InvalidPointError("interval point must lie in (0, a)");
            break;
        case ModelKind::rectangle:
            if (!(x[0] > 0.0 && x[0] < 1.0 && x[1] > 0.0 && x[1] < geo_.rect_b()))
                throw InvalidPointError("rectangle point must lie in (0,1)x(0,b)");
            break;
        case ModelKind::square:
            if (!(x[0] > 0.0 && x[0] < 1.0 && x[1] > 0.0 && x[1] < 1.0))
                throw InvalidPointError("square point must lie in the open unit square");
            break;
        case ModelKind::disk:
            if (!(x[0] >= 0.0 && x[0] < 1.0))
                throw InvalidPointError("disk point needs radius in [0, 1)");
            break;
        case ModelKind::sphere:
            if (!(x[0] >= 0.0 && x[0] <= kPi))
                throw InvalidPointError("sphere colatitude must lie in [0, pi]");
            break;
        case ModelKind::flat_torus:
            break;  // any finite angles
    }
}

std::vector<EigenspaceBlock> SpectralModel::enumerate_blocks(
    double cutoff, const EnumerationOptions& opts) const {
    if (!(cutoff > 0.0) || !std::isfinite(cutoff))
        throw ArgumentError("cutoff must be positive");
    if (weyl_estimate(dimension(), volume(), cutoff) >
        2.0 * static_cast<double>(opts.block_budget) + 64.0)
        throw CapacityError("Weyl estimate for cutoff " + std::to_string(cutoff) +
                            " exceeds the block budget of " +
                            std::to_string(opts.block_budget));

    std::vector<EigenspaceBlock> blocks;
    std::size_t eigencount = 0;

    switch (kind()) {
        case ModelKind::interval: {
            double a = geo_.interval_length();
            for (int j = 1; j * kPi / a <= cutoff; ++j) {
                check_budget(++eigencount, opts);
                EigenspaceBlock blk;
                blk.frequency = j * kPi / a;
                blk.multiplicity = 1;
                blk.kernel = [j, a](const Point& x, const Point& y) {
                    return (2.0 / a) * std::sin(j * kPi * x[0] / a) *
                           std::sin(j * kPi * y[0] / a);
                };
                blocks.push_back(std::move(blk));
            }
            break;
        }
        case ModelKind::rectangle:
        case ModelKind::square: {
            // lambda^2 / pi^2 = n^2 + m^2/b^2 = (n^2 p + m^2 q) / p with
            // b^2 = p/q exactly; grouping by the integer key makes
            // multiplicities exact.
            const BigInt& p = geo_.bsq_num();
            const BigInt& q = geo_.bsq_den();
            double b = geo_.rect_b();
            double pd = p.convert_to<double>();
            std::map<BigInt, std::vector<std::pair<int, int>>> groups;
            int nmax = static_cast<int>(cutoff / kPi) + 1;
            int mmax = static_cast<int>(cutoff * b / kPi) + 1;
            for (int n = 1; n <= nmax; ++n) {
                for (int m = 1; m <= mmax; ++m) {
                    BigInt key = BigInt(n) * n * p + BigInt(m) * m * q;
                    double lam = kPi * std::sqrt(key.convert_to<double>() / pd);
                    if (lam > cutoff) break;
                    check_budget(++eigencount, opts);
                    groups[key].emplace_back(n, m);
                }
            }
            for (auto& [key, pairs] : groups) {
                EigenspaceBlock blk;
                blk.frequency = kPi * std::sqrt(key.convert_to<double>() / pd);
                blk.multiplicity = static_cast<int>(pairs.size());
                auto shared =
                    std::make_shared<std::vector<std::pair<int, int>>>(std::move(pairs));
                blk.kernel = [shared, b](const Point& x, const Point& y) {
                    double s = 0.0;
                    for (auto [n, m] : *shared)
                        s += std::sin(n * kPi * x[0]) * std::sin(m * kPi * x[1] / b) *
                             std::sin(n * kPi * y[0]) * std::sin(m * kPi * y[1] / b);
                    return 4.0 / b * s;
                };
                blocks.push_back(std::move(blk));
            }
            break;
        }
        case ModelKind::flat_torus: {
            // Eigenfunctions e^{i n.x} / (2 pi) on [0,2pi)^2; grouping the
            // integer lattice by |n|^2 and pairing n with -n keeps the
            // kernel real: E(x,y) = sum cos(n.(x-y)) / (4 pi^2).
            long long kmax = static_cast<long long>(cutoff * cutoff + 1e-9);
            int nmax = static_cast<int>(std::floor(cutoff + 1e-12));
            std::map<long long, std::vector<std::pair<int, int>>> groups;
            for (int n1 = -nmax; n1 <= nmax; ++n1)
                for (int n2 = -nmax; n2 <= nmax; ++n2) {
                    long long k =
                        static_cast<long long>(n1) * n1 + static_cast<long long>(n2) * n2;
                    if (k > kmax) continue;
                    check_budget(++eigencount, opts);
                    groups[k].emplace_back(n1, n2);
                }
            double invvol = 1.0 / volume();
            for (auto& [k, vecs] : groups) {
                EigenspaceBlock blk;
                blk.frequency = std::sqrt(static_cast<double>(k));
                blk.multiplicity = static_cast<int>(vecs.size());
                auto shared =
                    std::make_shared<std::vector<std::pair<int, int>>>(std::move(vecs));
                blk.kernel = [shared, invvol](const Point& x, const Point& y) {
                    double d0 = x[0] - y[0], d1 = x[1] - y[1];
                    double s = 0.0;
                    for (auto [n1, n2] : *shared) s += std::cos(n1 * d0 + n2 * d1);
                    return invvol * s;
                };
                blocks.push_back(std::move(blk));
            }
            break;
        }
        case ModelKind::sphere: {
            // lambda_l = sqrt(l(l+1)); the addition theorem gives the
            // eigenspace kernel (2l+1) P_l(cos angle) / (4 pi).
            for (int l = 0;; ++l) {
                double lam = std::sqrt(static_cast<double>(l) * (l + 1));
                if (lam > cutoff) break;
                eigencount += static_cast<std::size_t>(2 * l + 1);
                check_budget(eigencount, opts);
                EigenspaceBlock blk;
                blk.frequency = lam;
                blk.multiplicity = 2 * l + 1;
                blk.kernel = [l](const Point& x, const Point& y) {
                    double cosang = std::cos(x[0]) * std::cos(y[0]) +
                                    std::sin(x[0]) * std::sin(y[0]) *
                                        std::cos(x[1] - y[1]);
                    cosang = std::clamp(cosang, -1.0, 1.0);
                    return (2.0 * l + 1.0) / (4.0 * kPi) * legendre_p(l, cosang);
                };
                blocks.push_back(std::move(blk));
            }
            break;
        }
        case ModelKind::disk: {
            // Dirichlet modes J_m(j_{m,k} r) {cos, sin}(m theta).  The radial
            // normalization integral is J_{m+1}(j_{m,k})^2 / 2, so the kernel
            // constant is 1/(pi J') for m = 0 and 2/(pi J') for m >= 1.
            for (int m = 0;; ++m) {
                auto zeros = bessel_zeros(m, cutoff);
                if (zeros.empty()) break;  // j_{m,1} increases with m
                for (double j : zeros) {
                    eigencount += m == 0 ? 1u : 2u;
                    check_budget(eigencount, opts);
                    double jp = bessel_j(m + 1, j);
                    double c = (m == 0 ? 1.0 : 2.0) / (kPi * jp * jp);
                    EigenspaceBlock blk;
                    blk.frequency = j;
                    blk.multiplicity = m == 0 ? 1 : 2;
                    blk.kernel = [m, j, c](const Point& x, const Point& y) {
                        double v = c * bessel_j(m, j * x[0]) * bessel_j(m, j * y[0]);
                        if (m > 0) v *= std::cos(m * (x[1] - y[1]));
                        return v;
                    };
                    blocks.push_back(std::move(blk));
                }
            }
            break;
        }
    }

    std::sort(blocks.begin(), blocks.end(),
              [](const EigenspaceBlock& a, const EigenspaceBlock& b) {
                  return a.frequency < b.frequency;
              });

    // Distinct exact keys can still collapse to one double frequency; such
    // blocks are indistinguishable at working precision and get merged.
    std::vector<EigenspaceBlock> merged;
    for (auto& blk : blocks) {
        if (!merged.empty() &&
            blk.frequency - merged.back().frequency <=
                1e-14 * std::max(1.0, blk.frequency)) {
            auto k1 = merged.back().kernel;
            auto k2 = blk.kernel;
            merged.back().multiplicity += blk.multiplicity;
            merged.back().kernel = [k1, k2](const Point& x, const Point& y) {
                return k1(x, y) + k2(x, y);
            };
        } else {
            merged.push_back(std::move(blk));
        }
    }
    return merged;
}

OrbitDescriptor SpectralModel::isometry_orbit(const Point& x) const {
    validate_point(x);
    OrbitDescriptor d;
    switch (kind()) {
        case ModelKind::interval:
        case ModelKind::rectangle:
        case ModelKind::square:
            d.kind = OrbitDescriptor::Kind::finite;
            d.points = isometry_images(x);
            break;
        case ModelKind::disk:
            d.kind = OrbitDescriptor::Kind::circle;
            d.radius = x[0];
            break;
        case ModelKind::flat_torus:
        case ModelKind::sphere:
            d.kind = OrbitDescriptor::Kind::all_points;
            break;
    }
    return d;
}

std::vector<Point> SpectralModel::isometry_images(const Point& x) const {
    validate_point(x);
    std::vector<Point> images;
    auto push_unique = [&images](const Point& p) {
        for (const auto& q : images) {
            double d = 0.0;
            for (int i = 0; i < p.dim; ++i) d = std::max(d, std::abs(p[i] - q[i]));
            if (d <= 1e-12) return;
        }
        images.push_back(p);
    };
    switch (kind()) {
        case ModelKind::interval: {
            double a = geo_.interval_length();
            push_unique(Point(x[0]));
            push_unique(Point(a - x[0]));
            break;
        }
        case ModelKind::rectangle: {
            double b = geo_.rect_b();
            for (double u : {x[0], 1.0 - x[0]})
                for (double v : {x[1], b - x[1]}) push_unique(Point(u, v));
            break;
        }
        case ModelKind::square: {
            for (double u : {x[0], 1.0 - x[0]})
                for (double v : {x[1], 1.0 - x[1]}) {
                    push_unique(Point(u, v));
                    push_unique(Point(v, u));
                }
            break;
        }
        default:
            images.push_back(x);
            break;
    }
    return images;
}

bool SpectralModel::same_orbit(const Point& a, const Point& b, double tol) const {
    validate_point(a);
    validate_point(b);
    switch (kind()) {
        case ModelKind::flat_torus:
        case ModelKind::sphere:
            return true;
        case ModelKind::disk:
            return std::abs(a[0] - b[0]) <= tol;
        default: {
            for (const auto& img : isometry_images(a)) {
                double d = 0.0;
                for (int i = 0; i < img.dim; ++i)
                    d = std::max(d, std::abs(img[i] - b[i]));
                if (d <= tol) return true;
            }
            return false;
        }
    }
}

} // namespace echoloc
