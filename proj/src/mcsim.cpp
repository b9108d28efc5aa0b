#include "evmf/mcsim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "evmf/fading.hpp"

namespace evmf {
namespace {

constexpr std::int64_t kBinSize = 4096;  // blocks per reduction bin
constexpr int kMaxTupleBits = 12;        // table kernels up to 4096 entries

int bits_per_symbol(Constellation c) {
    switch (c) {
        case Constellation::bpsk: return 1;
        case Constellation::qpsk: return 2;
        case Constellation::qam16: return 4;
    }
    throw std::logic_error("unknown constellation");
}

int resolve_workers(int requested) {
#ifdef _OPENMP
    if (requested <= 0) return omp_get_max_threads();
    return requested;
#else
    (void)requested;
    return 1;
#endif
}

// Little-endian bit buffer over the uniform stream; tuples of up to
// `width` bits per call, refilled from whole 64-bit draws.
struct BitSource {
    Xoshiro256pp& eng;
    std::uint64_t buf = 0;
    int avail = 0;

    explicit BitSource(Xoshiro256pp& e) : eng(e) {}

    std::uint32_t next(int width) {
        if (avail < width) {
            buf = eng();
            avail = 64;
        }
        const std::uint32_t v = static_cast<std::uint32_t>(buf & ((1u << width) - 1u));
        buf >>= width;
        avail -= width;
        return v;
    }
};

// sum_l I_l h_l for every interferer symbol tuple, built level by level.
std::vector<std::complex<double>> build_tuple_sums(
    const std::vector<std::complex<double>>& pts,
    const std::vector<std::complex<double>>& gains) {
    std::vector<std::complex<double>> sums{std::complex<double>(0.0, 0.0)};
    const std::size_t m = pts.size();
    for (const auto& g : gains) {
        std::vector<std::complex<double>> next(sums.size() * m);
        for (std::size_t i = 0; i < sums.size(); ++i)
            for (std::size_t d = 0; d < m; ++d)
                next[(i * m) + d] = sums[i] + pts[d] * g;
        sums.swap(next);
    }
    return sums;
}

struct BinTotals {
    double sum = 0.0;
    double sum_sq = 0.0;
    std::int64_t redraws = 0;
};

template <typename Kernel>
BinTotals run_bin(const EvmScenario& scenario, const McConfig& cfg,
                  std::int64_t first_block, std::int64_t last_block,
                  Kernel&& kernel) {
    BinTotals t;
    for (std::int64_t b = first_block; b < last_block; ++b) {
        Xoshiro256pp stream = substream_for_block(cfg.seed, static_cast<std::uint64_t>(b));
        const BlockRealization block =
            draw_block_realization(scenario, stream, &t.redraws);
        const double v = kernel(block, stream);
        t.sum += v;
        t.sum_sq += v * v;
    }
    return t;
}

EvmEstimate combine(const std::vector<BinTotals>& bins, std::int64_t n) {
    double sum = 0.0, sum_sq = 0.0;
    std::int64_t redraws = 0;
    for (const BinTotals& b : bins) {
        sum += b.sum;
        sum_sq += b.sum_sq;
        redraws += b.redraws;
    }
    EvmEstimate e;
    e.blocks = n;
    e.zero_redraws = redraws;
    e.mean = sum / static_cast<double>(n);
    if (n > 1) {
        const double var =
            std::max(0.0, (sum_sq - static_cast<double>(n) * e.mean * e.mean) /
                              static_cast<double>(n - 1));
        e.std_error = std::sqrt(var / static_cast<double>(n));
    }
    return e;
}

} // namespace

Constellation constellation_from_name(const std::string& name) {
    if (name == "bpsk") return Constellation::bpsk;
    if (name == "qpsk") return Constellation::qpsk;
    if (name == "16qam" || name == "qam16") return Constellation::qam16;
    throw std::invalid_argument("unknown constellation '" + name +
                                "' (expected bpsk, qpsk or 16qam)");
}

std::string constellation_name(Constellation c) {
    switch (c) {
        case Constellation::bpsk: return "bpsk";
        case Constellation::qpsk: return "qpsk";
        case Constellation::qam16: return "16qam";
    }
    return "?";
}

std::vector<std::complex<double>> constellation_points(Constellation c) {
    using cd = std::complex<double>;
    switch (c) {
        case Constellation::bpsk:
            return {cd(1.0, 0.0), cd(-1.0, 0.0)};
        case Constellation::qpsk: {
            const double s = 1.0 / std::sqrt(2.0);
            return {cd(s, s), cd(-s, s), cd(s, -s), cd(-s, -s)};
        }
        case Constellation::qam16: {
            // Gray-free square grid {±1, ±3}^2 scaled to unit average energy.
            std::vector<cd> pts;
            const double s = 1.0 / std::sqrt(10.0);
            for (double re : {-3.0, -1.0, 1.0, 3.0})
                for (double im : {-3.0, -1.0, 1.0, 3.0})
                    pts.emplace_back(re * s, im * s);
            return pts;
        }
    }
    throw std::logic_error("unknown constellation");
}

void McConfig::validate() const {
    if (block_length < 1) throw domain_error("McConfig: block_length must be >= 1");
    if (num_blocks < 1) throw domain_error("McConfig: num_blocks must be >= 1");
    if (workers < 0) throw domain_error("McConfig: workers must be >= 0");
}

BlockRealization draw_block_realization(const EvmScenario& scenario,
                                        Xoshiro256pp& stream,
                                        std::int64_t* zero_redraws) {
    auto draw_gain = [&](const ShadowedFadingParams& p) {
        double power = sample_power(p, stream);
        while (power == 0.0) {  // probability-zero underflow; redraw
            if (zero_redraws) ++(*zero_redraws);
            power = sample_power(p, stream);
        }
        const double phase = 2.0 * M_PI * stream.uniform();
        return std::polar(std::sqrt(power), phase);
    };

    BlockRealization block;
    block.h = draw_gain(scenario.desired);
    block.h_l.reserve(scenario.interferers.entries.size());
    for (const auto& p : scenario.interferers.entries)
        block.h_l.push_back(draw_gain(p));
    block.noise_variance = scenario.noise_variance;
    return block;
}

double block_evm_literal(const BlockRealization& block, Constellation c,
                         std::int64_t n_symbols, Xoshiro256pp& stream) {
    const auto pts = constellation_points(c);
    const int sym_bits = bits_per_symbol(c);
    const double sigma_half = std::sqrt(block.noise_variance / 2.0);
    BitSource bits(stream);

    double acc = 0.0;
    for (std::int64_t i = 0; i < n_symbols; ++i) {
        const std::complex<double> d = pts[bits.next(sym_bits)];
        std::complex<double> y = d * block.h;
        for (const auto& g : block.h_l) y += pts[bits.next(sym_bits)] * g;
        if (sigma_half > 0.0)
            y += std::complex<double>(sigma_half * standard_normal(stream),
                                      sigma_half * standard_normal(stream));
        acc += std::norm(y / block.h - d);
    }
    return std::sqrt(acc / static_cast<double>(n_symbols));
}

double block_evm(const BlockRealization& block, Constellation c,
                 std::int64_t n_symbols, Xoshiro256pp& stream) {
    const auto pts = constellation_points(c);
    const int sym_bits = bits_per_symbol(c);
    const int tuple_bits = sym_bits * static_cast<int>(block.h_l.size());
    if (tuple_bits > kMaxTupleBits)
        return block_evm_literal(block, c, n_symbols, stream);

    const auto sums = build_tuple_sums(pts, block.h_l);
    BitSource bits(stream);
    double acc = 0.0;

    if (block.noise_variance == 0.0) {
        std::vector<double> energy(sums.size());
        for (std::size_t i = 0; i < sums.size(); ++i) energy[i] = std::norm(sums[i]);
        if (energy.size() == 1) {  // no interferers, no noise
            acc = 0.0;
        } else {
            for (std::int64_t i = 0; i < n_symbols; ++i)
                acc += energy[bits.next(tuple_bits)];
        }
    } else {
        const double sigma_half = std::sqrt(block.noise_variance / 2.0);
        const ZigguratNormal& zig = ZigguratNormal::instance();
        for (std::int64_t i = 0; i < n_symbols; ++i) {
            const std::complex<double> v =
                (tuple_bits > 0) ? sums[bits.next(tuple_bits)] : sums[0];
            const double re = v.real() + sigma_half * zig.sample(stream);
            const double im = v.imag() + sigma_half * zig.sample(stream);
            acc += re * re + im * im;
        }
    }
    return std::sqrt(acc / static_cast<double>(n_symbols)) / std::abs(block.h);
}

double simulate_block(const EvmScenario& scenario, const McConfig& cfg,
                      Xoshiro256pp& stream) {
    scenario.validate();
    cfg.validate();
    const BlockRealization block = draw_block_realization(scenario, stream);
    return block_evm_literal(block, cfg.constellation, cfg.block_length, stream);
}

EvmEstimate empirical_evm(const EvmScenario& scenario, const McConfig& cfg) {
    scenario.validate();
    cfg.validate();

    const std::int64_t n = cfg.num_blocks;
    const std::int64_t n_bins = (n + kBinSize - 1) / kBinSize;
    std::vector<BinTotals> bins(static_cast<std::size_t>(n_bins));

    auto kernel = [&](const BlockRealization& b, Xoshiro256pp& s) {
        return cfg.literal_kernel
                   ? block_evm_literal(b, cfg.constellation, cfg.block_length, s)
                   : block_evm(b, cfg.constellation, cfg.block_length, s);
    };

    const int workers = resolve_workers(cfg.workers);
    (void)workers;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
#endif
    for (std::int64_t bin = 0; bin < n_bins; ++bin) {
        const std::int64_t first = bin * kBinSize;
        const std::int64_t last = std::min(n, first + kBinSize);
        bins[static_cast<std::size_t>(bin)] =
            run_bin(scenario, cfg, first, last, kernel);
    }
    return combine(bins, n);
}

EvmEstimate empirical_evm_serial(const EvmScenario& scenario, const McConfig& cfg) {
    scenario.validate();
    cfg.validate();

    double sum = 0.0, sum_sq = 0.0;
    std::int64_t redraws = 0;
    for (std::int64_t b = 0; b < cfg.num_blocks; ++b) {
        Xoshiro256pp stream = substream_for_block(cfg.seed, static_cast<std::uint64_t>(b));
        const BlockRealization block = draw_block_realization(scenario, stream, &redraws);
        const double v = cfg.literal_kernel
                             ? block_evm_literal(block, cfg.constellation,
                                                 cfg.block_length, stream)
                             : block_evm(block, cfg.constellation,
                                         cfg.block_length, stream);
        sum += v;
        sum_sq += v * v;
    }

    EvmEstimate e;
    e.blocks = cfg.num_blocks;
    e.zero_redraws = redraws;
    e.mean = sum / static_cast<double>(cfg.num_blocks);
    if (cfg.num_blocks > 1) {
        const double var = std::max(
            0.0, (sum_sq - static_cast<double>(cfg.num_blocks) * e.mean * e.mean) /
                     static_cast<double>(cfg.num_blocks - 1));
        e.std_error = std::sqrt(var / static_cast<double>(cfg.num_blocks));
    }
    return e;
}

ReductionReport reduction_check(const EvmScenario& scenario, const McConfig& cfg) {
    scenario.validate();
    cfg.validate();

    Xoshiro256pp stream = substream_for_block(cfg.seed, 0);
    const BlockRealization block = draw_block_realization(scenario, stream);
    const auto pts = constellation_points(cfg.constellation);
    const int sym_bits = bits_per_symbol(cfg.constellation);
    const std::size_t L = block.h_l.size();
    const std::int64_t n = cfg.block_length;
    const double sigma_half = std::sqrt(block.noise_variance / 2.0);

    std::vector<std::complex<double>> faded(L);
    std::vector<std::complex<double>> cross(L * L, {0.0, 0.0});
    std::vector<std::complex<double>> noise_cross(L, {0.0, 0.0});
    double noise_energy = 0.0;
    BitSource bits(stream);

    for (std::int64_t i = 0; i < n; ++i) {
        for (std::size_t l = 0; l < L; ++l)
            faded[l] = pts[bits.next(sym_bits)] * block.h_l[l];
        std::complex<double> nsamp(0.0, 0.0);
        if (sigma_half > 0.0) {
            nsamp = {sigma_half * standard_normal(stream),
                     sigma_half * standard_normal(stream)};
            noise_energy += std::norm(nsamp);
        }
        for (std::size_t l = 0; l < L; ++l) {
            const std::complex<double> cl = std::conj(faded[l]);
            for (std::size_t j = 0; j < L; ++j) cross[l * L + j] += cl * faded[j];
            noise_cross[l] += cl * nsamp;
        }
    }

    ReductionReport rep;
    rep.n_symbols = n;
    rep.clt_bound = 5.0 / std::sqrt(static_cast<double>(n));
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t l = 0; l < L; ++l) {
        const double self_expected = std::norm(block.h_l[l]);
        for (std::size_t j = 0; j < L; ++j) {
            const double mag = std::abs(cross[l * L + j]) * inv_n;
            if (l == j)
                rep.max_self_rel_dev = std::max(
                    rep.max_self_rel_dev,
                    std::fabs(mag - self_expected) / self_expected);
            else
                rep.max_cross_offdiag = std::max(rep.max_cross_offdiag, mag);
        }
        rep.max_noise_cross =
            std::max(rep.max_noise_cross, std::abs(noise_cross[l]) * inv_n);
    }
    if (block.noise_variance > 0.0)
        rep.noise_rel_dev = std::fabs(noise_energy * inv_n - block.noise_variance) /
                            block.noise_variance;
    return rep;
}

} // namespace evmf
