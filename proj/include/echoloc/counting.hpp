#pragma once

#include <optional>
#include <string>
#include <vector>

#include "echoloc/models.hpp"

namespace echoloc {

struct Jump {
    double lambda = 0.0;
    double weight = 0.0;
};

// Pointwise Weyl counting function N_x: a right-continuous step function
// stored as its jumps.  N(lambda) = sum of weights at frequencies <= lambda.
// Jumps below the suppression threshold (nodal-set zeros) are dropped from
// `jumps` but their frequencies are kept in `suppressed`.
class CountingFunction {
public:
    CountingFunction() = default;
    CountingFunction(std::vector<Jump> jumps, std::vector<double> suppressed,
                     double cutoff, std::string provenance_model,
                     std::vector<double> provenance_point);

    const std::vector<Jump>& jumps() const { return jumps_; }
    const std::vector<double>& suppressed() const { return suppressed_; }
    double cutoff() const { return cutoff_; }
    const std::string& provenance_model() const { return model_; }
    const std::vector<double>& provenance_point() const { return point_; }

    // Right-continuous evaluation; lambda past the cutoff is an error (the
    // tail is unknown and never extrapolated).
    double evaluate(double lambda) const;

    // Total mass sum(w) = evaluate(cutoff).
    double total() const;

    bool empty() const { return jumps_.empty(); }

private:
    std::vector<Jump> jumps_;
    std::vector<double> suppressed_;
    std::vector<double> prefix_;
    double cutoff_ = 0.0;
    std::string model_;
    std::vector<double> point_;
};

struct Timbre {
    struct Note {
        double lambda = 0.0;
        double amplitude = 0.0;  // sqrt of the counting-function jump
    };
    std::vector<Note> notes;
};

struct CompareReport {
    bool equal = true;
    // First discrepancy when not equal.
    double lambda = 0.0;
    double weight_delta = 0.0;
    std::string detail;
};

// Build N_x from the model's eigenspace blocks up to `cutoff`.
CountingFunction counting_function(const SpectralModel& model, const Point& x,
                                   double cutoff,
                                   const EnumerationOptions& opts = {});

// Same, reusing an existing enumeration (blocks must come from `model` with
// a cutoff >= `cutoff`).
CountingFunction counting_function_from_blocks(
    const SpectralModel& model, const std::vector<EigenspaceBlock>& blocks,
    const Point& x, double cutoff);

// Two-point Kuznecov sum N_{x,y}: jump at lambda equals
// E(x,x) + E(y,y) + 2 E(x,y) = sum |e_j(x) + e_j(y)|^2.
CountingFunction two_point_counting(const SpectralModel& model, const Point& x,
                                    const Point& y, double cutoff,
                                    const EnumerationOptions& opts = {});

Timbre timbre(const CountingFunction& cf);

// Reports the first (lambda, |delta w|) exceeding the tolerances, or equality.
// Cutoffs must agree.
CompareReport compare(const CountingFunction& a, const CountingFunction& b,
                      double frequency_tol = 1e-9, double weight_tol = 1e-9);

} // namespace echoloc
