#include "evmf/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace evmf {
namespace {

// (G7, K15) abscissae and weights, positive half; node 0 is the midpoint.
// Gauss weights are zero at the Kronrod-only nodes.
constexpr int kHalfNodes = 8;
constexpr double kAbscissa[kHalfNodes] = {
    0.000000000000000000, 0.207784955007898468, 0.405845151377397167,
    0.586087235467691130, 0.741531185599394440, 0.864864423359769073,
    0.949107912342758525, 0.991455371120812639};
constexpr double kWeightGauss[kHalfNodes] = {
    0.417959183673469388, 0.0,                  0.381830050505118945,
    0.0,                  0.279705391489276668, 0.0,
    0.129484966168869693, 0.0};
constexpr double kWeightKronrod[kHalfNodes] = {
    0.209482141084727828, 0.204432940075298892, 0.190350578064785410,
    0.169004726639267903, 0.140653259715525919, 0.104790010322250184,
    0.063092092629978553, 0.022935322010529225};

struct Panel {
    double a, b;
    ScaledReal value;  // K15 estimate
    double err_log;    // log of absolute error estimate
};

// One K15 evaluation over [a, b].  Node values are summed relative to the
// largest log-scale among them so wildly scaled integrands stay finite.
Panel eval_panel(const ScaledIntegrand& f, double a, double b, long& evals) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    ScaledReal fv[15];
    int n = 0;
    fv[n++] = f(mid);
    for (int i = 1; i < kHalfNodes; ++i) {
        const double dx = half * kAbscissa[i];
        fv[n++] = f(mid - dx);
        fv[n++] = f(mid + dx);
    }
    evals += 15;

    double lmax = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < 15; ++i) lmax = std::max(lmax, fv[i].log_abs());
    if (!std::isfinite(lmax))  // integrand vanishes on this panel
        return Panel{a, b, ScaledReal::zero(), -std::numeric_limits<double>::infinity()};

    auto rel = [&](const ScaledReal& v) {
        return v.is_zero() ? 0.0 : v.frac * std::exp(v.logscale - lmax);
    };

    double g7 = kWeightGauss[0] * rel(fv[0]);
    double k15 = kWeightKronrod[0] * rel(fv[0]);
    int idx = 1;
    for (int i = 1; i < kHalfNodes; ++i) {
        const double pair = rel(fv[idx]) + rel(fv[idx + 1]);
        idx += 2;
        g7 += kWeightGauss[i] * pair;
        k15 += kWeightKronrod[i] * pair;
    }
    g7 *= half;
    k15 *= half;

    // QUADPACK-style sharpened error estimate.
    double err = std::fabs(k15 - g7);
    const double scale = std::fabs(k15);
    if (err > 0.0 && scale > 0.0) {
        const double r = 200.0 * err / scale;
        err = scale * std::min(1.0, r * std::sqrt(r));
    }

    Panel p;
    p.a = a;
    p.b = b;
    p.value = ScaledReal{k15, lmax};
    p.value.normalize();
    p.err_log = (err > 0.0) ? std::log(err) + lmax
                            : -std::numeric_limits<double>::infinity();
    return p;
}

// log(exp(a) + exp(b)) without overflow
double log_add(double a, double b) {
    if (a == -std::numeric_limits<double>::infinity()) return b;
    if (b == -std::numeric_limits<double>::infinity()) return a;
    if (a < b) std::swap(a, b);
    return a + std::log1p(std::exp(b - a));
}

QuadResult refine(std::vector<Panel> panels, const ScaledIntegrand& f,
                  const PrecisionPolicy& policy, long evals) {
    const std::size_t max_panels = static_cast<std::size_t>(policy.quad_nodes);

    auto summarize = [&panels](ScaledReal& total, double& err_log) {
        total = ScaledReal::zero();
        err_log = -std::numeric_limits<double>::infinity();
        for (const Panel& p : panels) {
            total += p.value;
            err_log = log_add(err_log, p.err_log);
        }
    };

    ScaledReal total;
    double err_log;
    summarize(total, err_log);

    while (panels.size() < max_panels) {
        if (total.is_zero()) break;
        const double tol_log = std::log(policy.rel_tol) + total.log_abs();
        if (err_log <= tol_log) break;

        std::size_t worst = 0;
        for (std::size_t i = 1; i < panels.size(); ++i)
            if (panels[i].err_log > panels[worst].err_log) worst = i;
        if (panels[worst].err_log == -std::numeric_limits<double>::infinity()) break;

        const Panel w = panels[worst];
        const double mid = 0.5 * (w.a + w.b);
        if (!(mid > w.a && mid < w.b)) break;  // panel no longer bisectable
        panels[worst] = eval_panel(f, w.a, mid, evals);
        panels.push_back(eval_panel(f, mid, w.b, evals));
        summarize(total, err_log);
    }

    QuadResult r;
    r.value = total;
    r.evaluations = evals;
    r.rel_err_est = total.is_zero() ? 0.0 : std::exp(err_log - total.log_abs());
    return r;
}

} // namespace

QuadResult integrate_adaptive(const ScaledIntegrand& f, double a, double b,
                              const PrecisionPolicy& policy) {
    long evals = 0;
    std::vector<Panel> init;
    init.push_back(eval_panel(f, a, b, evals));
    return refine(std::move(init), f, policy, evals);
}

QuadResult integrate_semi_infinite(const ScaledIntegrand& f,
                                   const PrecisionPolicy& policy) {
    long evals = 0;
    std::vector<Panel> panels;
    panels.push_back(eval_panel(f, 0.0, 1.0, evals));

    double lo = 1.0, hi = 2.0;
    double peak_log = panels[0].value.log_abs();
    int negligible_run = 0;
    while (lo < policy.quad_upper_cutoff) {
        Panel p = eval_panel(f, lo, hi, evals);
        panels.push_back(p);
        peak_log = std::max(peak_log, p.value.log_abs());

        // Tail is done once two successive panels contribute < rel_tol^2
        // relative to the peak panel.
        const double cut = peak_log + 2.0 * std::log(policy.rel_tol);
        if (p.value.log_abs() < cut)
            ++negligible_run;
        else
            negligible_run = 0;
        if (negligible_run >= 2) break;

        lo = hi;
        hi *= 2.0;
        if (hi > policy.quad_upper_cutoff) hi = policy.quad_upper_cutoff;
        if (lo >= hi) break;
    }
    return refine(std::move(panels), f, policy, evals);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 const PrecisionPolicy& policy) {
    auto wrapped = [&f](double t) { return ScaledReal::from_value(f(t)); };
    return integrate_adaptive(wrapped, a, b, policy).value.value();
}

} // namespace evmf
