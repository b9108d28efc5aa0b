#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace evmf {

// Exit-code contract shared by every subcommand:
//   0 success, 2 validation/usage failure, 3 Monte Carlo disagreement.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitMcDisagreement = 3;

struct CliOptions {
    std::string scenario_path;
    std::string out_path;
    std::string format = "csv";  // "csv" or "json"
    std::optional<std::uint64_t> seed;
    std::optional<std::int64_t> blocks;
    std::optional<int> workers;
    // Test hook: scales the analytic value in `validate` so the disagreement
    // path (exit 3) can be exercised deliberately.
    double corrupt_analytic_scale = 1.0;
};

// Evaluates the closed form for every sweep value and writes ResultRows.
int cmd_analytic(const CliOptions& opt);

// Runs the Monte Carlo estimator next to the closed form; succeeds iff every
// row satisfies |analytic - mc| <= max(1% * analytic, 3 * stderr).
int cmd_validate(const CliOptions& opt);

// Emits one of the four reference figure datasets (CSV + JSON manifest)
// into the output directory.
int cmd_figure(int id, const std::string& out_dir);

} // namespace evmf
