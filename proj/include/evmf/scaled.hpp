#pragma once

#include <cmath>
#include <limits>

namespace evmf {

// Real number held as frac * exp(logscale).  Series and integrands in this
// library routinely pass through magnitudes like exp(+-2000) that cancel
// against prefactors before the final result, so intermediate values carry
// an explicit log-scale instead of relying on double range.
struct ScaledReal {
    double frac = 0.0;      // signed mantissa
    double logscale = 0.0;  // natural-log scale factor

    static ScaledReal from_value(double v) { return ScaledReal{v, 0.0}; }

    // exp(l), optionally negated
    static ScaledReal from_log(double l, double sign = 1.0) { return ScaledReal{sign, l}; }

    static ScaledReal zero() { return ScaledReal{0.0, 0.0}; }

    bool is_zero() const { return frac == 0.0; }

    double value() const { return frac * std::exp(logscale); }

    double log_abs() const {
        if (frac == 0.0) return -std::numeric_limits<double>::infinity();
        return logscale + std::log(std::fabs(frac));
    }

    double sign() const { return frac < 0.0 ? -1.0 : (frac > 0.0 ? 1.0 : 0.0); }

    // Pull the mantissa back toward O(1), moving magnitude into logscale.
    void normalize() {
        const double a = std::fabs(frac);
        if (a == 0.0) { logscale = 0.0; return; }
        if (a > 1e150 || a < 1e-150) {
            const double l = std::log(a);
            logscale += l;
            frac = (frac < 0.0) ? -1.0 : 1.0;
        }
    }

    ScaledReal& operator*=(double s) { frac *= s; normalize(); return *this; }

    ScaledReal& operator*=(const ScaledReal& o) {
        frac *= o.frac;
        logscale += o.logscale;
        normalize();
        return *this;
    }

    friend ScaledReal operator*(ScaledReal a, const ScaledReal& b) { a *= b; return a; }
    friend ScaledReal operator*(ScaledReal a, double s) { a *= s; return a; }
    friend ScaledReal operator*(double s, ScaledReal a) { a *= s; return a; }

    // Addition aligns both operands to the larger scale; the smaller one may
    // flush to zero if it is > ~700 nats below, which is beyond double
    // precision anyway.
    friend ScaledReal operator+(const ScaledReal& a, const ScaledReal& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        if (a.logscale >= b.logscale) {
            ScaledReal r{a.frac + b.frac * std::exp(b.logscale - a.logscale), a.logscale};
            r.normalize();
            return r;
        }
        ScaledReal r{b.frac + a.frac * std::exp(a.logscale - b.logscale), b.logscale};
        r.normalize();
        return r;
    }

    ScaledReal& operator+=(const ScaledReal& o) { *this = *this + o; return *this; }
};

} // namespace evmf
