#include "echoloc/counting.hpp"

#include <algorithm>
#include <cmath>

#include "echoloc/errors.hpp"

namespace echoloc {

namespace {

// Suppression rule: a jump vanishes when w < 1e-14 * max(1, running mean of
// the raw weights seen so far).  Nodal points produce genuine zeros; keeping
// 1e-17 roundoff instead would corrupt timbre comparison.
struct SuppressionFilter {
    double sum = 0.0;
    std::size_t count = 0;

    bool keep(double w) {
        sum += w;
        ++count;
        double mean = sum / static_cast<double>(count);
        return w >= 1e-14 * std::max(1.0, mean);
    }
};

std::vector<double> point_coords(const Point& p) {
    std::vector<double> v;
    for (int i = 0; i < p.dim; ++i) v.push_back(p[i]);
    return v;
}

} // namespace

CountingFunction::CountingFunction(std::vector<Jump> jumps,
                                   std::vector<double> suppressed, double cutoff,
                                   std::string provenance_model,
                                   std::vector<double> provenance_point)
    : jumps_(std::move(jumps)),
      suppressed_(std::move(suppressed)),
      cutoff_(cutoff),
      model_(std::move(provenance_model)),
      point_(std::move(provenance_point)) {
    for (std::size_t i = 0; i + 1 < jumps_.size(); ++i)
        if (!(jumps_[i].lambda < jumps_[i + 1].lambda))
            throw ArgumentError("counting function frequencies must strictly increase");
    for (const auto& j : jumps_) {
        if (!(j.weight > 0.0))
            throw ArgumentError("counting function weights must be positive");
        if (j.lambda > cutoff_)
            throw ArgumentError("counting function jump above the cutoff");
    }
    prefix_.reserve(jumps_.size());
    double acc = 0.0;
    for (const auto& j : jumps_) {
        acc += j.weight;
        prefix_.push_back(acc);
    }
}

double CountingFunction::evaluate(double lambda) const {
    if (lambda > cutoff_)
        throw OutOfRangeError("evaluate at " + std::to_string(lambda) +
                              " past cutoff " + std::to_string(cutoff_));
    // Right-continuous: include the jump at lambda itself.
    auto it = std::upper_bound(
        jumps_.begin(), jumps_.end(), lambda,
        [](double v, const Jump& j) { return v < j.lambda; });
    if (it == jumps_.begin()) return 0.0;
    return prefix_[static_cast<std::size_t>(it - jumps_.begin()) - 1];
}

double CountingFunction::total() const {
    return prefix_.empty() ? 0.0 : prefix_.back();
}

CountingFunction counting_function_from_blocks(
    const SpectralModel& model, const std::vector<EigenspaceBlock>& blocks,
    const Point& x, double cutoff) {
    model.validate_point(x);
    std::vector<Jump> jumps;
    std::vector<double> suppressed;
    SuppressionFilter filter;
    for (const auto& blk : blocks) {
        if (blk.frequency > cutoff) break;
        double w = blk.weight(x);
        if (filter.keep(w))
            jumps.push_back({blk.frequency, w});
        else
            suppressed.push_back(blk.frequency);
    }
    return CountingFunction(std::move(jumps), std::move(suppressed), cutoff,
                            model.spec_string(), point_coords(x));
}

CountingFunction counting_function(const SpectralModel& model, const Point& x,
                                   double cutoff, const EnumerationOptions& opts) {
    return counting_function_from_blocks(model, model.enumerate_blocks(cutoff, opts),
                                         x, cutoff);
}

CountingFunction two_point_counting(const SpectralModel& model, const Point& x,
                                    const Point& y, double cutoff,
                                    const EnumerationOptions& opts) {
    model.validate_point(x);
    model.validate_point(y);
    auto blocks = model.enumerate_blocks(cutoff, opts);
    std::vector<Jump> jumps;
    std::vector<double> suppressed;
    SuppressionFilter filter;
    std::vector<double> prov = point_coords(x);
    for (double c : point_coords(y)) prov.push_back(c);
    for (const auto& blk : blocks) {
        if (blk.frequency > cutoff) break;
        // |e_j(x)+e_j(y)|^2 summed over the block, basis-independently.
        double w = blk.kernel(x, x) + blk.kernel(y, y) + 2.0 * blk.kernel(x, y);
        if (w < 0.0) w = 0.0;  // roundoff below exact zero
        if (filter.keep(w))
            jumps.push_back({blk.frequency, w});
        else
            suppressed.push_back(blk.frequency);
    }
    return CountingFunction(std::move(jumps), std::move(suppressed), cutoff,
                            model.spec_string(), std::move(prov));
}

Timbre timbre(const CountingFunction& cf) {
    Timbre t;
    t.notes.reserve(cf.jumps().size());
    for (const auto& j : cf.jumps())
        t.notes.push_back({j.lambda, std::sqrt(j.weight)});
    return t;
}

CompareReport compare(const CountingFunction& a, const CountingFunction& b,
                      double frequency_tol, double weight_tol) {
    if (a.cutoff() != b.cutoff())
        throw CutoffMismatchError("compare: cutoffs differ");
    CompareReport rep;
    const auto& ja = a.jumps();
    const auto& jb = b.jumps();
    std::size_t i = 0, k = 0;
    while (i < ja.size() && k < jb.size()) {
        if (std::abs(ja[i].lambda - jb[k].lambda) > frequency_tol) {
            rep.equal = false;
            rep.lambda = std::min(ja[i].lambda, jb[k].lambda);
            rep.weight_delta =
                ja[i].lambda < jb[k].lambda ? ja[i].weight : jb[k].weight;
            rep.detail = "jump present in only one function";
            return rep;
        }
        if (std::abs(ja[i].weight - jb[k].weight) > weight_tol) {
            rep.equal = false;
            rep.lambda = ja[i].lambda;
            rep.weight_delta = std::abs(ja[i].weight - jb[k].weight);
            rep.detail = "weights differ";
            return rep;
        }
        ++i;
        ++k;
    }
    if (i < ja.size() || k < jb.size()) {
        rep.equal = false;
        const Jump& j = i < ja.size() ? ja[i] : jb[k];
        rep.lambda = j.lambda;
        rep.weight_delta = j.weight;
        rep.detail = "jump present in only one function";
    }
    return rep;
}

} // namespace echoloc
