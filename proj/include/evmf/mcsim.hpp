#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "evmf/evm.hpp"
#include "evmf/rng.hpp"

namespace evmf {

enum class Constellation { bpsk, qpsk, qam16 };

Constellation constellation_from_name(const std::string& name);
std::string constellation_name(Constellation c);

// Zero-mean, unit-average-energy symbol set.
std::vector<std::complex<double>> constellation_points(Constellation c);

struct McConfig {
    std::int64_t block_length = 10000;  // symbols per fading block (N)
    std::int64_t num_blocks = 1000000;  // fading realizations
    Constellation constellation = Constellation::bpsk;
    std::uint64_t seed = 1;
    int workers = 0;             // 0 = all hardware threads
    bool literal_kernel = false; // force the explicit symbol-level kernel

    void validate() const;
};

// Channel gains held constant over one block of symbols.
struct BlockRealization {
    std::complex<double> h;                  // desired gain a e^{j theta}
    std::vector<std::complex<double>> h_l;   // interferer gains
    double noise_variance = 0.0;             // sigma^2, split sigma^2/2 per quadrature
};

// Draws gains from the scenario's fading laws with uniform phases.  Powers
// that underflow to exactly zero are redrawn and counted.
BlockRealization draw_block_realization(const EvmScenario& scenario,
                                        Xoshiro256pp& stream,
                                        std::int64_t* zero_redraws = nullptr);

// Block EVM with every symbol, interferer symbol and noise sample drawn
// explicitly and the received signal equalized by h.
double block_evm_literal(const BlockRealization& block, Constellation c,
                         std::int64_t n_symbols, Xoshiro256pp& stream);

// Same estimator through the algebraically reduced error term
// (y/h - D = (sum_l I_l h_l + n)/h): interferer symbol tuples index a
// precomputed table of sum_l I_l h_l.  Used for throughput.
double block_evm(const BlockRealization& block, Constellation c,
                 std::int64_t n_symbols, Xoshiro256pp& stream);

// One full block draw + literal symbol simulation (the oracle-grade path).
double simulate_block(const EvmScenario& scenario, const McConfig& cfg,
                      Xoshiro256pp& stream);

struct EvmEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::int64_t blocks = 0;
    std::int64_t zero_redraws = 0;
};

// Mean block EVM over cfg.num_blocks fading realizations.  Blocks are
// partitioned into fixed bins whose partial sums are combined in index
// order, so the result is bit-identical for a given (seed, num_blocks)
// regardless of the worker count.
EvmEstimate empirical_evm(const EvmScenario& scenario, const McConfig& cfg);

// Plain sequential implementation kept as the reference for the parallel
// one (agrees to rounding; the parallel path is additionally bit-stable
// across worker counts).
EvmEstimate empirical_evm_serial(const EvmScenario& scenario, const McConfig& cfg);

// Empirical verification of the large-N reductions behind the closed forms:
// interferer cross terms vanish, self terms give |h_l|^2 E_s, noise terms
// give sigma^2.
struct ReductionReport {
    std::int64_t n_symbols = 0;
    double clt_bound = 0.0;          // 5 / sqrt(N)
    double max_cross_offdiag = 0.0;  // max |(1/N) sum I_l* h_l* I_j h_j|, l != j
    double max_self_rel_dev = 0.0;   // max_l |(1/N) sum |I_l|^2 |h_l|^2 - |h_l|^2| / |h_l|^2
    double max_noise_cross = 0.0;    // max_l |(1/N) sum I_l* h_l* n|
    double noise_rel_dev = 0.0;      // |(1/N) sum |n|^2 - sigma^2| / sigma^2
};

ReductionReport reduction_check(const EvmScenario& scenario, const McConfig& cfg);

} // namespace evmf
