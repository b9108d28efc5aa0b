#pragma once

#include <functional>

#include "evmf/precision.hpp"
#include "evmf/scaled.hpp"

namespace evmf {

struct QuadResult {
    ScaledReal value;
    double rel_err_est = 0.0;
    long evaluations = 0;
};

// Integrand returning a scaled value so that factors like exp(-t) * Phi2(x*t)
// can be integrated without overflow at any point of the domain.
using ScaledIntegrand = std::function<ScaledReal(double)>;

// Globally adaptive Gauss-Kronrod (G7,K15) on [a, b].  Panels are bisected
// worst-error-first until the summed error estimate drops below
// rel_tol * |integral| or the panel budget from the policy runs out.
QuadResult integrate_adaptive(const ScaledIntegrand& f, double a, double b,
                              const PrecisionPolicy& policy);

// Same scheme on [0, inf): geometrically growing panels are appended until
// the running tail contribution is negligible (or quad_upper_cutoff is hit),
// then the whole collection is refined adaptively.
QuadResult integrate_semi_infinite(const ScaledIntegrand& f,
                                   const PrecisionPolicy& policy);

// Plain double-valued convenience wrappers.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const PrecisionPolicy& policy = default_policy());

} // namespace evmf
