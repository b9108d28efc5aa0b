#pragma once

#include <cassert>
#include <cmath>
#include <cstdint>
#include <limits>

namespace evmf {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// xoshiro256++ — the workhorse uniform generator for the simulator.
class Xoshiro256pp {
public:
    using result_type = std::uint64_t;

    explicit Xoshiro256pp(std::uint64_t seed = 1) { reseed(seed); }

    void reseed(std::uint64_t seed) {
        std::uint64_t sm = seed;
        bool nonzero = false;
        for (auto& w : s_) {
            w = splitmix64(sm);
            nonzero |= (w != 0);
        }
        if (!nonzero) s_[0] = 1;
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type(0); }

    result_type operator()() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // uniform in [0, 1)
    double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    // uniform in (0, 1]
    double uniform_pos() {
        return (static_cast<double>((*this)() >> 11) + 1.0) * 0x1.0p-53;
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    std::uint64_t s_[4];
};

// Independent stream for one Monte Carlo block, derived from (seed, index)
// only.  Any partition of blocks over workers therefore reproduces the same
// per-block draws.
inline Xoshiro256pp substream_for_block(std::uint64_t seed, std::uint64_t block_index) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (block_index + 1);
    std::uint64_t mixed = splitmix64(z);
    Xoshiro256pp eng(mixed ^ seed);
    return eng;
}

// Marsaglia-style ziggurat for standard normals.  Tables are built once at
// startup: the base-layer edge r is solved numerically so that all 256
// regions have exactly equal area, which removes any dependence on
// transcribed constants.
class ZigguratNormal {
public:
    static const ZigguratNormal& instance() {
        static const ZigguratNormal z;
        return z;
    }

    template <typename Engine>
    double sample(Engine& eng) const {
        for (;;) {
            const std::uint64_t j = eng();
            const int i = static_cast<int>(j & 255u);
            const double u = static_cast<double>(j >> 11) * 0x1.0p-53;
            const double s = 2.0 * u - 1.0;
            if (i == 0) {
                const double xx = s * base_width_;
                if (std::fabs(xx) < x_[0]) return xx;
                // Marsaglia tail sampler beyond r
                double a, b;
                do {
                    a = -std::log(uniform_pos(eng)) / x_[0];
                    b = -std::log(uniform_pos(eng));
                } while (b + b < a * a);
                return (s < 0.0) ? -(x_[0] + a) : (x_[0] + a);
            }
            const double xx = s * x_[i - 1];
            if (std::fabs(xx) < x_[i]) return xx;
            const double y = f_[i - 1] + uniform_pos(eng) * (f_[i] - f_[i - 1]);
            if (y < std::exp(-0.5 * xx * xx)) return xx;
        }
    }

private:
    static constexpr int kLayers = 256;

    template <typename Engine>
    static double uniform_pos(Engine& eng) {
        return (static_cast<double>(eng() >> 11) + 1.0) * 0x1.0p-53;
    }

    // 1 - (v / x_{N-2} + f_{N-2}) given base edge r; zero when the layer
    // stack closes exactly at the density peak.
    static double closure_defect(double r, double* x, double* f) {
        const double fr = std::exp(-0.5 * r * r);
        const double tail = std::sqrt(M_PI / 2.0) * std::erfc(r / std::sqrt(2.0));
        const double v = r * fr + tail;
        x[0] = r;
        f[0] = fr;
        for (int i = 1; i < kLayers - 1; ++i) {
            f[i] = v / x[i - 1] + f[i - 1];
            if (f[i] >= 1.0) return -1.0;  // overshot the peak: r too large
            x[i] = std::sqrt(-2.0 * std::log(f[i]));
        }
        return 1.0 - (v / x[kLayers - 2] + f[kLayers - 2]);
    }

    ZigguratNormal() {
        double lo = 3.0, hi = 4.2;
        double xs[kLayers], fs[kLayers];
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (closure_defect(mid, xs, fs) > 0.0)
                lo = mid;
            else
                hi = mid;
        }
        const double r = lo;
        const double defect = closure_defect(r, xs, fs);
        assert(std::fabs(defect) < 1e-9);
        (void)defect;
        for (int i = 0; i < kLayers - 1; ++i) {
            x_[i] = xs[i];
            f_[i] = fs[i];
        }
        x_[kLayers - 1] = 0.0;
        f_[kLayers - 1] = 1.0;
        const double fr = std::exp(-0.5 * r * r);
        const double tail = std::sqrt(M_PI / 2.0) * std::erfc(r / std::sqrt(2.0));
        base_width_ = (r * fr + tail) / fr;
    }

    double x_[kLayers];
    double f_[kLayers];
    double base_width_ = 0.0;
};

template <typename Engine>
inline double standard_normal(Engine& eng) {
    return ZigguratNormal::instance().sample(eng);
}

} // namespace evmf
