#pragma once

#include <limits>
#include <variant>
#include <vector>

#include "evmf/precision.hpp"
#include "evmf/rng.hpp"

namespace evmf {

constexpr double kInfShadow = std::numeric_limits<double>::infinity();

// One kappa-mu shadowed power law of unit mean.  m == +inf is the explicit
// sentinel for the unshadowed (kappa-mu) limit and dispatches to dedicated
// limit formulas; a huge finite m is never used to impersonate it.
struct ShadowedFadingParams {
    double kappa = 0.0;  // dominant-to-scattered power ratio, >= 0
    double mu = 1.0;     // cluster parameter, > 0
    double m = kInfShadow;  // shadowing severity, > 0 or +inf

    void validate() const;
    bool shadow_infinite() const { return std::isinf(m); }
    bool no_fading() const { return std::isinf(kappa); }

    double theta1() const { return 1.0 / (mu * (1.0 + kappa)); }
    double theta2() const {
        if (shadow_infinite()) return theta1();
        return (mu * kappa + m) / (mu * (1.0 + kappa) * m);
    }

    friend bool operator==(const ShadowedFadingParams& a,
                           const ShadowedFadingParams& b) {
        return a.kappa == b.kappa && a.mu == b.mu && a.m == b.m;
    }
};

// Named special cases and their embedding into (kappa, mu, m).
struct RicianCase { double K = 0.0; };
struct NakagamiCase { double m = 1.0; };
struct RayleighCase {};
struct NoFadingCase {};
struct KappaMuCase { double kappa = 0.0; double mu = 1.0; };
struct KappaMuShadowedCase { ShadowedFadingParams params; };

using SpecialCaseTag = std::variant<KappaMuShadowedCase, KappaMuCase, RicianCase,
                                    NakagamiCase, RayleighCase, NoFadingCase>;

ShadowedFadingParams special_case_params(const SpecialCaseTag& tag);

// Ordered list of per-interferer parameter triples.
struct InterfererProfile {
    std::vector<ShadowedFadingParams> entries;

    static InterfererProfile iid(const ShadowedFadingParams& p, int count);

    void validate() const;
    int count() const { return static_cast<int>(entries.size()); }

    bool is_iid() const {
        for (const auto& e : entries)
            if (!(e == entries.front())) return false;
        return true;
    }
};

// Density of the fading power at x (unit mean).
double power_pdf(const ShadowedFadingParams& p, double x,
                 const PrecisionPolicy& policy = default_policy());

// Density of the sum of independent, non-identical fading powers at x.
double sum_power_pdf(const InterfererProfile& profile, double x,
                     const PrecisionPolicy& policy = default_policy());

// One unit-mean power draw via the gamma-mixture construction
// (shadow -> Poisson cluster excess -> conditional gamma), valid for all
// mu > 0.
double sample_power(const ShadowedFadingParams& p, Xoshiro256pp& stream);

// Physical cluster construction (sums of Gaussians around shadowed dominant
// components); requires integer mu.  Kept as an independent cross-check of
// the mixture sampler.
double sample_power_physical(const ShadowedFadingParams& p, Xoshiro256pp& stream);

} // namespace evmf
