#include "evmf/evm.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "evmf/specfun.hpp"

namespace evmf {
namespace {

void require_mu_above_half(double mu, const char* who) {
    if (!(mu > 0.5)) {
        std::ostringstream os;
        os << who << ": E[g^-1/2] diverges for mu <= 0.5 (got mu = " << mu
           << "); every closed form requires mu > 0.5";
        throw divergence_error(os.str());
    }
}

void require_interference_limited(double sigma2, const char* who) {
    if (sigma2 != 0.0) {
        std::ostringstream os;
        os << who << ": formula applies to the interference-limited case only "
           << "(sigma^2 = 0); got sigma^2 = " << sigma2;
        throw domain_error(os.str());
    }
}

void require_noise_present(double sigma2, const char* who) {
    if (!(sigma2 > 0.0)) {
        std::ostringstream os;
        os << who << ": requires sigma^2 > 0; use the interference-limited "
           << "formulas when noise is absent";
        throw domain_error(os.str());
    }
}

// E[g_d^{-1/2}] for the desired link; the common left factor of every
// closed form.
double desired_rsqrt_moment(const ShadowedFadingParams& p,
                            const PrecisionPolicy& policy,
                            std::vector<std::string>* notes) {
    if (p.no_fading()) {
        if (!p.shadow_infinite())
            throw unsupported_error(
                "desired link: kappa = inf with finite shadowing is not supported");
        if (notes) notes->push_back("desired link: no-fading limit, E[g^-1/2] = 1");
        return 1.0;
    }
    p.validate();
    require_mu_above_half(p.mu, "desired link");

    const double mu = p.mu;
    const double gr = std::exp(std::lgamma(mu - 0.5) - std::lgamma(mu));
    if (p.kappa == 0.0) return std::sqrt(mu) * gr;
    if (p.shadow_infinite()) {
        if (notes) notes->push_back("desired link: unshadowed limit (1F1 factor)");
        return std::sqrt(mu * (1.0 + p.kappa)) * gr *
               kummer_1f1(0.5, mu, -p.kappa * mu, policy);
    }
    const double x = mu * p.kappa / (p.m + mu * p.kappa);
    return std::sqrt(mu * (1.0 + p.kappa)) * pow1p(mu * p.kappa / p.m, -p.m) * gr *
           gauss_2f1(mu - 0.5, p.m, mu, x, policy);
}

// E[sqrt(g_I)] when all L interferers share one parameter triple.
double iid_interferer_sqrt_moment(const ShadowedFadingParams& p, int L,
                                  const PrecisionPolicy& policy,
                                  std::vector<std::string>* notes) {
    if (p.no_fading()) {
        if (!p.shadow_infinite())
            throw unsupported_error(
                "interferers: kappa = inf with finite shadowing is not supported");
        if (notes) notes->push_back("interferers: no-fading limit, E[sqrt(g_I)] = sqrt(L)");
        return std::sqrt(static_cast<double>(L));
    }
    p.validate();
    const double Lmu = L * p.mu;
    const double gr = std::exp(std::lgamma(Lmu + 0.5) - std::lgamma(Lmu));
    if (p.kappa == 0.0) return gr / std::sqrt(p.mu);
    if (p.shadow_infinite()) {
        if (notes) notes->push_back("interferers: unshadowed limit (1F1 factor)");
        return gr * kummer_1f1(-0.5, Lmu, -L * p.kappa * p.mu, policy) /
               std::sqrt(p.mu * (1.0 + p.kappa));
    }
    const double x = p.mu * p.kappa / (p.mu * p.kappa + p.m);
    return gr * pow1p(p.mu * p.kappa / p.m, -p.m * L) *
           gauss_2f1(Lmu + 0.5, L * p.m, Lmu, x, policy) /
           std::sqrt(p.mu * (1.0 + p.kappa));
}

// E[sqrt(g_I)] for non-identical interferers, through the Lauricella form.
// Interferers are sorted by descending theta_1 before anchoring, which makes
// the result deterministic under permutation and keeps every F_D argument
// strictly below 1.
double inid_interferer_sqrt_moment(const InterfererProfile& profile,
                                   const PrecisionPolicy& policy,
                                   std::vector<std::string>* notes) {
    std::vector<ShadowedFadingParams> entries = profile.entries;
    for (auto& e : entries) {
        if (e.no_fading())
            throw unsupported_error(
                "inid interferers: no-fading entries are not covered by the "
                "Lauricella form");
        e.validate();
        if (e.kappa == 0.0 && e.shadow_infinite()) e.m = e.mu;  // exactly Nakagami
        if (e.shadow_infinite())
            throw unsupported_error(
                "inid interferers: all shadowing parameters must be finite; "
                "use i.i.d. parameters or the Monte Carlo estimator");
    }

    std::sort(entries.begin(), entries.end(),
              [](const ShadowedFadingParams& u, const ShadowedFadingParams& v) {
                  const double au = 1.0 / u.theta1(), av = 1.0 / v.theta1();
                  if (au != av) return au < av;
                  if (u.kappa != v.kappa) return u.kappa < v.kappa;
                  if (u.mu != v.mu) return u.mu < v.mu;
                  return u.m < v.m;
              });

    const std::size_t L = entries.size();
    double mu_sum = 0.0, log_g1 = 0.0;
    for (const auto& e : entries) {
        mu_sum += e.mu;
        log_g1 -= (e.mu - e.m) * std::log(e.theta1()) + e.m * std::log(e.theta2());
    }

    const double a1 = 1.0 / entries.front().theta1();
    FdArguments fd;
    fd.a = mu_sum + 0.5;
    fd.c = mu_sum;
    fd.b.reserve(2 * L - 1);
    fd.x.reserve(2 * L - 1);
    for (std::size_t l = 1; l < L; ++l) {
        fd.b.push_back(entries[l].mu - entries[l].m);
        fd.x.push_back(1.0 - (1.0 / entries[l].theta1()) / a1);
    }
    for (const auto& e : entries) {
        fd.b.push_back(e.m);
        fd.x.push_back(1.0 - (1.0 / e.theta2()) / a1);
    }

    const double fdval = lauricella_fd(fd, policy);
    const double log_pref = log_g1 + std::lgamma(mu_sum + 0.5) - std::lgamma(mu_sum) -
                            (mu_sum + 0.5) * std::log(a1);
    if (notes) {
        std::ostringstream os;
        os << "Lauricella F_D of dimension " << (2 * L - 1)
           << ", anchored on the largest theta_1";
        notes->push_back(os.str());
    }
    return fdval * std::exp(log_pref);
}

// E[sqrt(g_I + sigma^2)] for i.i.d. Nakagami interferers of shape m_I.
double noise_interferer_moment(double m_I, int L, double sigma2,
                               const PrecisionPolicy& policy) {
    if (!(m_I > 0.0) || std::isinf(m_I))
        throw domain_error("noise formulas: interferer shape m_I must be finite and positive");
    const double z = sigma2 * m_I;
    return std::sqrt(sigma2) * std::exp(m_I * L * std::log(z)) *
           tricomi_u(m_I * L, 1.5 + m_I * L, z, policy);
}

EvmResult finish(double value, std::string formula, std::vector<std::string> notes) {
    if (!(value > 0.0) || !std::isfinite(value))
        throw precision_error("EVM evaluation produced a non-positive or non-finite value",
                              value);
    EvmResult r;
    r.value = value;
    r.formula_used = std::move(formula);
    r.notes = std::move(notes);
    return r;
}

// Interferers of a noise scenario must be i.i.d. Nakagami; returns the shape.
double noise_interferer_shape(const EvmScenario& s, const char* who) {
    if (!s.interferers.is_iid())
        throw unsupported_error(std::string(who) +
                                ": noise formulas require i.i.d. interferers");
    const ShadowedFadingParams& pI = s.interferers.entries.front();
    if (pI.no_fading() || pI.kappa != 0.0)
        throw unsupported_error(
            std::string(who) +
            ": no closed form exists for sigma^2 > 0 unless the interferers are "
            "Nakagami (kappa = 0); use the Monte Carlo estimator");
    return pI.mu;  // kappa = 0 makes the law Nakagami of shape mu, any m
}

} // namespace

void EvmScenario::validate() const {
    if (!desired.no_fading()) desired.validate();
    interferers.validate();
    if (!(noise_variance >= 0.0))
        throw domain_error("EvmScenario: noise variance must be non-negative");
}

EvmResult evm_inid_shadowed(const EvmScenario& s, const PrecisionPolicy& policy) {
    s.validate();
    require_interference_limited(s.noise_variance, "evm_inid_shadowed");
    std::vector<std::string> notes;
    const double d = desired_rsqrt_moment(s.desired, policy, &notes);
    const double i = inid_interferer_sqrt_moment(s.interferers, policy, &notes);
    return finish(d * i, "inid_shadowed", std::move(notes));
}

EvmResult evm_iid_shadowed(const EvmScenario& s, const PrecisionPolicy& policy) {
    s.validate();
    require_interference_limited(s.noise_variance, "evm_iid_shadowed");
    if (!s.interferers.is_iid())
        throw domain_error("evm_iid_shadowed: interferer profile is not i.i.d.");
    std::vector<std::string> notes;
    const double d = desired_rsqrt_moment(s.desired, policy, &notes);
    const double i = iid_interferer_sqrt_moment(s.interferers.entries.front(),
                                                s.interferers.count(), policy, &notes);
    return finish(d * i, "iid_shadowed", std::move(notes));
}

EvmResult evm_iid_kappamu(const EvmScenario& s, const PrecisionPolicy& policy) {
    s.validate();
    require_interference_limited(s.noise_variance, "evm_iid_kappamu");
    if (!s.interferers.is_iid())
        throw domain_error("evm_iid_kappamu: interferer profile is not i.i.d.");
    const ShadowedFadingParams& d = s.desired;
    const ShadowedFadingParams& pI = s.interferers.entries.front();
    if (!d.shadow_infinite() || !pI.shadow_infinite())
        throw domain_error(
            "evm_iid_kappamu: requires the unshadowed limit (m = inf) on both "
            "links; use evm_iid_shadowed for finite m");
    require_mu_above_half(d.mu, "evm_iid_kappamu");

    const int L = s.interferers.count();
    const double Lmu = L * pI.mu;
    const double value =
        std::exp(std::lgamma(d.mu - 0.5) - std::lgamma(d.mu) +
                 std::lgamma(Lmu + 0.5) - std::lgamma(Lmu)) *
        kummer_1f1(0.5, d.mu, -d.kappa * d.mu, policy) *
        kummer_1f1(-0.5, Lmu, -L * pI.kappa * pI.mu, policy) *
        std::sqrt(d.mu * (1.0 + d.kappa) / (pI.mu * (1.0 + pI.kappa)));
    return finish(value, "iid_kappamu", {});
}

EvmResult evm_iid_rician(double K, double K_I, int L, const PrecisionPolicy& policy) {
    if (!(K >= 0.0) || !(K_I >= 0.0))
        throw domain_error("evm_iid_rician: Rician factors must be non-negative");
    if (L < 1) throw domain_error("evm_iid_rician: L must be >= 1");

    std::vector<std::string> notes;
    // K -> inf: 1F1(1/2, 1, -K) sqrt(1+K) -> 1/sqrt(pi)
    double desired_part;
    if (std::isinf(K)) {
        desired_part = 1.0 / std::sqrt(M_PI);
        notes.push_back("desired link: K = inf handled by the analytic limit");
    } else {
        desired_part = kummer_1f1(0.5, 1.0, -K, policy) * std::sqrt(1.0 + K);
    }
    // K_I -> inf: 1F1(-1/2, L, -L K_I) / sqrt(1+K_I) -> sqrt(L) Gamma(L) / Gamma(L+1/2)
    double interferer_part;
    const double dL = static_cast<double>(L);
    if (std::isinf(K_I)) {
        interferer_part = std::sqrt(dL) *
                          std::exp(std::lgamma(dL) - std::lgamma(dL + 0.5));
        notes.push_back("interferers: K_I = inf handled by the analytic limit");
    } else {
        interferer_part =
            kummer_1f1(-0.5, dL, -dL * K_I, policy) / std::sqrt(1.0 + K_I);
    }
    const double value = std::sqrt(M_PI) *
                         std::exp(std::lgamma(dL + 0.5) - std::lgamma(dL)) *
                         desired_part * interferer_part;
    return finish(value, (K == 0.0 && K_I == 0.0) ? "rayleigh" : "iid_rician",
                  std::move(notes));
}

EvmResult evm_iid_nakagami(double m, double m_I, int L) {
    require_mu_above_half(m, "evm_iid_nakagami");
    if (!(m_I > 0.0)) throw domain_error("evm_iid_nakagami: m_I must be positive");
    if (L < 1) throw domain_error("evm_iid_nakagami: L must be >= 1");
    const double LmI = L * m_I;
    const double value = std::exp(std::lgamma(m - 0.5) - std::lgamma(m) +
                                  std::lgamma(LmI + 0.5) - std::lgamma(LmI)) *
                         std::sqrt(m / m_I);
    return finish(value, (m == 1.0 && m_I == 1.0) ? "rayleigh" : "iid_nakagami", {});
}

double evm_no_fading_limit(int L) {
    if (L < 1) throw domain_error("evm_no_fading_limit: L must be >= 1");
    return std::sqrt(static_cast<double>(L));
}

double evm_rayleigh_large_L(int L) {
    if (L < 1) throw domain_error("evm_rayleigh_large_L: L must be >= 1");
    const double dL = static_cast<double>(L);
    return std::sqrt(M_PI * dL) * (1.0 - 1.0 / (8.0 * dL));
}

EvmResult evm_noise_shadowed(const EvmScenario& s, const PrecisionPolicy& policy) {
    s.validate();
    require_noise_present(s.noise_variance, "evm_noise_shadowed");
    const double m_I = noise_interferer_shape(s, "evm_noise_shadowed");
    std::vector<std::string> notes;
    const double d = desired_rsqrt_moment(s.desired, policy, &notes);
    const double i = noise_interferer_moment(m_I, s.interferers.count(),
                                             s.noise_variance, policy);
    return finish(d * i, "noise_shadowed", std::move(notes));
}

EvmResult evm_noise_kappamu(const EvmScenario& s, const PrecisionPolicy& policy) {
    s.validate();
    require_noise_present(s.noise_variance, "evm_noise_kappamu");
    if (!s.desired.shadow_infinite())
        throw domain_error(
            "evm_noise_kappamu: requires the unshadowed desired link (m = inf)");
    const double m_I = noise_interferer_shape(s, "evm_noise_kappamu");
    std::vector<std::string> notes;
    const double d = desired_rsqrt_moment(s.desired, policy, &notes);
    const double i = noise_interferer_moment(m_I, s.interferers.count(),
                                             s.noise_variance, policy);
    return finish(d * i, s.desired.mu == 1.0 ? "noise_rician" : "noise_kappamu",
                  std::move(notes));
}

EvmResult evm_noise_nakagami(double m, double m_I, int L, double sigma2,
                             const PrecisionPolicy& policy) {
    require_mu_above_half(m, "evm_noise_nakagami");
    require_noise_present(sigma2, "evm_noise_nakagami");
    if (L < 1) throw domain_error("evm_noise_nakagami: L must be >= 1");
    const double d = std::sqrt(m) * std::exp(std::lgamma(m - 0.5) - std::lgamma(m));
    const double i = noise_interferer_moment(m_I, L, sigma2, policy);
    return finish(d * i, (m == 1.0 && m_I == 1.0) ? "noise_rayleigh" : "noise_nakagami",
                  {});
}

double evm_noise_rayleigh(int L, double sigma2, const PrecisionPolicy& policy) {
    return evm_noise_nakagami(1.0, 1.0, L, sigma2, policy).value;
}

EvmResult evaluate_evm(const EvmScenario& s, const PrecisionPolicy& policy) {
    s.validate();
    const int L = s.interferers.count();

    if (s.noise_variance == 0.0) {
        if (!s.interferers.is_iid()) return evm_inid_shadowed(s, policy);

        const ShadowedFadingParams& d = s.desired;
        const ShadowedFadingParams& pI = s.interferers.entries.front();
        const bool d_rician_like = d.mu == 1.0 && d.shadow_infinite();
        const bool i_rician_like = pI.mu == 1.0 && pI.shadow_infinite();

        if (d.no_fading() || pI.no_fading()) {
            if (d.no_fading() && pI.no_fading()) {
                EvmResult r;
                r.value = evm_no_fading_limit(L);
                r.formula_used = "no_fading";
                return r;
            }
            if ((d.no_fading() || d_rician_like) && (pI.no_fading() || i_rician_like))
                return evm_iid_rician(d.kappa, pI.kappa, L, policy);
            throw unsupported_error(
                "evaluate_evm: a no-fading link can only be combined with "
                "Rician-type fading (mu = 1, m = inf) on the other link");
        }
        if (d_rician_like && i_rician_like)
            return evm_iid_rician(d.kappa, pI.kappa, L, policy);
        if (d.kappa == 0.0 && pI.kappa == 0.0)
            return evm_iid_nakagami(d.mu, pI.mu, L);
        if (d.shadow_infinite() && pI.shadow_infinite())
            return evm_iid_kappamu(s, policy);
        return evm_iid_shadowed(s, policy);
    }

    // interference + noise
    const ShadowedFadingParams& d = s.desired;
    if (d.no_fading())
        throw unsupported_error(
            "evaluate_evm: no closed form for a non-fading desired link with noise");
    if (d.kappa == 0.0) {
        const double m_I = noise_interferer_shape(s, "evaluate_evm");
        return evm_noise_nakagami(d.mu, m_I, L, s.noise_variance, policy);
    }
    if (d.shadow_infinite()) return evm_noise_kappamu(s, policy);
    return evm_noise_shadowed(s, policy);
}

} // namespace evmf
