#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace evmf {

// Governs all special-function evaluation: series truncation, term caps and
// quadrature budget.  One policy object is threaded through every evaluation
// so a caller can trade accuracy for speed globally.
struct PrecisionPolicy {
    double rel_tol = 1e-10;          // relative tolerance for series/quadrature
    std::int64_t max_terms = 100000; // cap on series terms (degree groups for multivariate)
    int quad_nodes = 512;            // max adaptive panels per integral (15 evals each)
    double quad_upper_cutoff = 1e6;  // hard truncation point for semi-infinite integrals

    void validate() const {
        if (!(rel_tol > 0.0 && rel_tol < 1e-3))
            throw std::invalid_argument("PrecisionPolicy: rel_tol must lie in (0, 1e-3)");
        if (max_terms < 100)
            throw std::invalid_argument("PrecisionPolicy: max_terms must be >= 100");
        if (quad_nodes < 32)
            throw std::invalid_argument("PrecisionPolicy: quad_nodes must be >= 32");
        if (!(quad_upper_cutoff > 0.0))
            throw std::invalid_argument("PrecisionPolicy: quad_upper_cutoff must be positive");
    }

    // Arguments this negative trigger the exponential shift transform inside
    // the confluent Lauricella series; e^{|x|} is the cancellation
    // amplification the direct series would suffer.
    double shift_threshold() const {
        const double t = 0.25 * std::log(1.0 / rel_tol);
        return t < 1.0 ? 1.0 : t;
    }
};

inline const PrecisionPolicy& default_policy() {
    static const PrecisionPolicy p{};
    return p;
}

// Argument outside the supported domain (x < 0 for a pdf, x >= 1 for F_D, ...).
class domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A required moment does not exist (mu <= 0.5 makes E[g^-1/2] infinite).
class divergence_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Valid input for which no implemented method applies (e.g. noise formulas
// with shadowed interferers, for which no closed form exists).
class unsupported_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Series or quadrature failed to reach the requested tolerance within the
// policy's budget; carries the best value obtained.
class precision_error : public std::runtime_error {
public:
    precision_error(const std::string& what, double partial)
        : std::runtime_error(what), partial_value_(partial) {}
    double partial_value() const { return partial_value_; }

private:
    double partial_value_;
};

} // namespace evmf
