#pragma once

#include <stdexcept>
#include <string>

namespace echoloc {

// Base for all domain errors.  `name()` is the short machine-readable tag the
// CLI prints on stderr before exiting with code 1.
class Error : public std::runtime_error {
public:
    Error(std::string name, const std::string& what)
        : std::runtime_error(what), name_(std::move(name)) {}
    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

// Requested enumeration would exceed the configured block budget.
struct CapacityError : Error {
    explicit CapacityError(const std::string& w) : Error("capacity", w) {}
};

// Heat-trace tail beyond the cutoff is not provably negligible.
struct TailError : Error {
    explicit TailError(const std::string& w) : Error("tail-not-controlled", w) {}
};

// Gaussian smoothing window too wide for the enumerated spectrum.
struct WindowError : Error {
    explicit WindowError(const std::string& w) : Error("window-unresolved", w) {}
};

// Spectral signature inconsistent with any interior point.
struct InfeasibleSignatureError : Error {
    explicit InfeasibleSignatureError(const std::string& w)
        : Error("infeasible-signature", w) {}
};

// N_x(Lambda) = 0, so the quantum CDF has no normalization.
struct DegenerateNormalizationError : Error {
    explicit DegenerateNormalizationError(const std::string& w)
        : Error("degenerate-normalization", w) {}
};

// Evaluation past the known cutoff (the tail is unknown, never extrapolated).
struct OutOfRangeError : Error {
    explicit OutOfRangeError(const std::string& w) : Error("out-of-range", w) {}
};

// Operation not defined for this model kind (e.g. curvature on a boundary model).
struct UnsupportedModelError : Error {
    explicit UnsupportedModelError(const std::string& w)
        : Error("unsupported-model", w) {}
};

// Two counting functions with different cutoffs cannot be compared.
struct CutoffMismatchError : Error {
    explicit CutoffMismatchError(const std::string& w)
        : Error("cutoff-mismatch", w) {}
};

// Malformed input text (graph6, edge list, JSON, model spec, config file).
struct ParseError : Error {
    explicit ParseError(const std::string& w) : Error("parse", w) {}
};

// Input exceeds a hard size limit (e.g. automorphism search bound).
struct SizeError : Error {
    explicit SizeError(const std::string& w) : Error("size", w) {}
};

// Numerical method failed to converge.
struct NumericError : Error {
    explicit NumericError(const std::string& w) : Error("numeric", w) {}
};

// Point outside the model's open domain.
struct InvalidPointError : Error {
    explicit InvalidPointError(const std::string& w) : Error("invalid-point", w) {}
};

// Bad argument values not covered by a more specific class.
struct ArgumentError : Error {
    explicit ArgumentError(const std::string& w) : Error("invalid-argument", w) {}
};

} // namespace echoloc
