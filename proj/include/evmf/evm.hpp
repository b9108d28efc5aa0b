#pragma once

#include <string>
#include <vector>

#include "evmf/fading.hpp"
#include "evmf/precision.hpp"

namespace evmf {

// Desired link, interferer profile and noise level; selects which closed
// form applies.  Symbol energy is fixed at 1 throughout.
struct EvmScenario {
    ShadowedFadingParams desired;
    InterfererProfile interferers;
    double noise_variance = 0.0;  // sigma^2; zero means interference-limited

    void validate() const;
};

struct EvmResult {
    double value = 0.0;
    std::string formula_used;
    std::vector<std::string> notes;
};

// ---- interference-limited closed forms ------------------------------------

// General i.n.i.d. kappa-mu shadowed interferers (Lauricella form).  All
// interferer shadowing parameters must be finite; the desired link may use
// the m = inf sentinel.
EvmResult evm_inid_shadowed(const EvmScenario& s,
                            const PrecisionPolicy& policy = default_policy());

// i.i.d. kappa-mu shadowed desired/interferers (two Gauss-hypergeometric
// factors).
EvmResult evm_iid_shadowed(const EvmScenario& s,
                           const PrecisionPolicy& policy = default_policy());

// kappa-mu (unshadowed) desired and interferers.
EvmResult evm_iid_kappamu(const EvmScenario& s,
                          const PrecisionPolicy& policy = default_policy());

// Rician desired (factor K) and i.i.d. Rician interferers (K_I); K or K_I
// may be +inf, in which case the analytic no-fading limits are used.
EvmResult evm_iid_rician(double K, double K_I, int L,
                         const PrecisionPolicy& policy = default_policy());

// Nakagami desired (m > 0.5) and i.i.d. Nakagami interferers.
EvmResult evm_iid_nakagami(double m, double m_I, int L);

// EVM when neither the desired signal nor the interferers fade: sqrt(L).
double evm_no_fading_limit(int L);

// Large-L expansion of the Rayleigh/Rayleigh closed form:
// sqrt(pi L) (1 - 1/(8L)).
double evm_rayleigh_large_L(int L);

// ---- interference + noise closed forms -------------------------------------

// kappa-mu shadowed desired link, i.i.d. Nakagami interferers, AWGN.
EvmResult evm_noise_shadowed(const EvmScenario& s,
                             const PrecisionPolicy& policy = default_policy());

// kappa-mu desired link (m = inf).
EvmResult evm_noise_kappamu(const EvmScenario& s,
                            const PrecisionPolicy& policy = default_policy());

// Nakagami desired link.
EvmResult evm_noise_nakagami(double m, double m_I, int L, double sigma2,
                             const PrecisionPolicy& policy = default_policy());

// Rayleigh desired link and interferers.
double evm_noise_rayleigh(int L, double sigma2,
                          const PrecisionPolicy& policy = default_policy());

// Routes a scenario to the most specific closed form that applies.
EvmResult evaluate_evm(const EvmScenario& s,
                       const PrecisionPolicy& policy = default_policy());

} // namespace evmf
