#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "evmf/evm.hpp"
#include "evmf/mcsim.hpp"

namespace evmf {

// Self-describing scenario document: desired link, interferers (explicit
// list or shared-parameters + count), noise, optional sweep, optional Monte
// Carlo settings.  Round-trips losslessly through JSON.
struct ScenarioFile {
    struct IidSpec {
        ShadowedFadingParams params;
        int count = 1;
    };
    struct Sweep {
        std::string variable;
        std::vector<double> values;
    };

    ShadowedFadingParams desired;
    std::optional<std::vector<ShadowedFadingParams>> interferer_list;
    std::optional<IidSpec> interferer_iid;
    double sigma2 = 0.0;
    std::optional<Sweep> sweep;
    McConfig mc;

    static ScenarioFile load(const std::string& path);
    static ScenarioFile parse(const std::string& json_text);
    std::string serialize() const;  // canonical JSON text
    void save(const std::string& path) const;

    // Structural validation beyond parsing (exactly one interferer form,
    // known sweep variable, positive values where required).
    void validate() const;

    EvmScenario base_scenario() const;

    // One (sweep value, scenario) pair per sweep entry; a single pair with
    // the base scenario when no sweep is present.
    std::vector<std::pair<double, EvmScenario>> expand() const;
};

struct ResultRow {
    double sweep_value = 0.0;
    double analytic_evm = 0.0;
    std::optional<double> mc_evm;
    std::optional<double> mc_stderr;
    std::string formula_used;
    double eval_time_ms = 0.0;
};

// Locale-independent CSV with a fixed header:
// sweep_value,analytic_evm,mc_evm,mc_stderr,formula_used,eval_time_ms
std::string rows_to_csv(const std::vector<ResultRow>& rows);
std::string rows_to_json(const std::vector<ResultRow>& rows);

void write_text_file(const std::string& path, const std::string& content);

} // namespace evmf
