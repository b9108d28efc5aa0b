#include "evmf/fading.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "evmf/specfun.hpp"

namespace evmf {

void ShadowedFadingParams::validate() const {
    if (!(kappa >= 0.0))
        throw domain_error("ShadowedFadingParams: kappa must be >= 0");
    if (!(mu > 0.0) || std::isinf(mu))
        throw domain_error("ShadowedFadingParams: mu must be positive and finite");
    if (!(m > 0.0))
        throw domain_error("ShadowedFadingParams: m must be positive");
}

ShadowedFadingParams special_case_params(const SpecialCaseTag& tag) {
    struct Visitor {
        ShadowedFadingParams operator()(const KappaMuShadowedCase& c) const {
            return c.params;
        }
        ShadowedFadingParams operator()(const KappaMuCase& c) const {
            return {c.kappa, c.mu, kInfShadow};
        }
        ShadowedFadingParams operator()(const RicianCase& c) const {
            return {c.K, 1.0, kInfShadow};
        }
        ShadowedFadingParams operator()(const NakagamiCase& c) const {
            return {0.0, c.m, kInfShadow};
        }
        ShadowedFadingParams operator()(const RayleighCase&) const {
            return {0.0, 1.0, kInfShadow};
        }
        ShadowedFadingParams operator()(const NoFadingCase&) const {
            // Rician K -> inf limit; the power is deterministic, so only the
            // analytic limit formulas apply to this triple.
            return {std::numeric_limits<double>::infinity(), 1.0, kInfShadow};
        }
    };
    ShadowedFadingParams p = std::visit(Visitor{}, tag);
    if (!p.no_fading()) p.validate();
    return p;
}

InterfererProfile InterfererProfile::iid(const ShadowedFadingParams& p, int count) {
    if (count < 1)
        throw domain_error("InterfererProfile: interferer count must be >= 1");
    InterfererProfile profile;
    profile.entries.assign(static_cast<std::size_t>(count), p);
    return profile;
}

void InterfererProfile::validate() const {
    if (entries.empty())
        throw domain_error("InterfererProfile: at least one interferer required");
    for (const auto& e : entries) e.validate();
}

double power_pdf(const ShadowedFadingParams& p, double x,
                 const PrecisionPolicy& policy) {
    p.validate();
    if (p.no_fading())
        throw unsupported_error("power_pdf: the no-fading limit has no density");
    if (x < 0.0)
        throw domain_error("power_pdf: power must be non-negative");

    const double mu = p.mu;
    if (x == 0.0) {
        if (mu > 1.0) return 0.0;
        if (mu < 1.0) return std::numeric_limits<double>::infinity();
        // mu == 1: finite intercept
        if (p.shadow_infinite())
            return std::exp(-mu * p.kappa) / p.theta1();
        return std::pow(p.theta1(), p.m - 1.0) * std::pow(p.theta2(), -p.m);
    }

    const double t1 = p.theta1();
    if (p.shadow_infinite()) {
        if (p.kappa == 0.0) {
            // Gamma(mu, 1/mu)
            return std::exp(mu * std::log(mu) + (mu - 1.0) * std::log(x) - mu * x -
                            std::lgamma(mu));
        }
        // kappa-mu limit of the shadowed density
        const ScaledReal bessel = hyp0f1_scaled(mu, mu * p.kappa * x / t1, policy);
        const double lg = -mu * p.kappa - std::lgamma(mu) - mu * std::log(t1) +
                          (mu - 1.0) * std::log(x) - x / t1 + bessel.log_abs();
        return bessel.sign() * std::exp(lg);
    }

    const double t2 = p.theta2();
    const double zeta = 1.0 / t1 - 1.0 / t2;
    const ScaledReal f = kummer_1f1_scaled(p.m, mu, zeta * x, policy);
    const double lg = (p.m - mu) * std::log(t1) - p.m * std::log(t2) +
                      (mu - 1.0) * std::log(x) - std::lgamma(mu) - x / t1 +
                      f.log_abs();
    return f.sign() * std::exp(lg);
}

double sum_power_pdf(const InterfererProfile& profile, double x,
                     const PrecisionPolicy& policy) {
    profile.validate();
    if (x < 0.0)
        throw domain_error("sum_power_pdf: power must be non-negative");

    // A zero-kappa entry is exactly Nakagami and independent of its m; give
    // it a finite m so the confluent-Lauricella form below applies.
    std::vector<ShadowedFadingParams> entries = profile.entries;
    for (auto& e : entries) {
        if (e.no_fading())
            throw unsupported_error("sum_power_pdf: no-fading entries have no density");
        if (e.kappa == 0.0 && e.shadow_infinite()) e.m = e.mu;
        if (e.shadow_infinite())
            throw unsupported_error(
                "sum_power_pdf: closed form requires finite shadowing for "
                "kappa > 0 entries; use the Monte Carlo sampler instead");
    }

    double mu_sum = 0.0, log_g1 = 0.0;
    for (const auto& e : entries) {
        mu_sum += e.mu;
        log_g1 += (e.mu - e.m) * std::log(1.0 / e.theta1()) +
                  e.m * std::log(1.0 / e.theta2());
    }

    if (x == 0.0) {
        if (mu_sum > 1.0) return 0.0;
        if (mu_sum < 1.0) return std::numeric_limits<double>::infinity();
        return std::exp(log_g1);  // single interferer with mu == 1
    }

    Phi2Arguments args;
    const std::size_t L = entries.size();
    args.c = mu_sum;
    args.b.reserve(2 * L);
    args.x.reserve(2 * L);
    for (const auto& e : entries) args.b.push_back(e.mu - e.m);
    for (const auto& e : entries) args.b.push_back(e.m);
    for (const auto& e : entries) args.x.push_back(-x / e.theta1());
    for (const auto& e : entries) args.x.push_back(-x / e.theta2());

    const ScaledReal v = phi2_n(args, policy);
    const double lg = log_g1 + (mu_sum - 1.0) * std::log(x) - std::lgamma(mu_sum) +
                      v.log_abs();
    return v.sign() * std::exp(lg);
}

double sample_power(const ShadowedFadingParams& p, Xoshiro256pp& stream) {
    if (p.no_fading()) return 1.0;

    double shadow = 1.0;
    if (!p.shadow_infinite())
        shadow = std::gamma_distribution<double>(p.m, 1.0 / p.m)(stream);

    double clusters = p.mu;
    if (p.kappa > 0.0) {
        const double rate = p.mu * p.kappa * shadow;
        clusters += static_cast<double>(
            std::poisson_distribution<long long>(rate)(stream));
    }
    return std::gamma_distribution<double>(clusters, p.theta1())(stream);
}

double sample_power_physical(const ShadowedFadingParams& p, Xoshiro256pp& stream) {
    const double mu_round = std::round(p.mu);
    if (std::fabs(p.mu - mu_round) > 1e-9 || mu_round < 1.0) {
        std::ostringstream os;
        os << "sample_power_physical: cluster construction requires integer mu; got "
           << p.mu << " (use the gamma-mixture sampler)";
        throw unsupported_error(os.str());
    }
    if (p.no_fading()) return 1.0;

    double shadow = 1.0;
    if (!p.shadow_infinite())
        shadow = std::gamma_distribution<double>(p.m, 1.0 / p.m)(stream);
    const double xi = std::sqrt(shadow);

    const int n = static_cast<int>(mu_round);
    const double sigma_c = std::sqrt(1.0 / (2.0 * p.mu * (1.0 + p.kappa)));
    const double dominant = std::sqrt(p.kappa / (p.mu * (1.0 + p.kappa)));

    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        const double re = sigma_c * standard_normal(stream) + xi * dominant;
        const double im = sigma_c * standard_normal(stream);
        acc += re * re + im * im;
    }
    return acc;
}

} // namespace evmf
