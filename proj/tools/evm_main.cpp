// Command-line front end: evaluates scenario files analytically, validates
// closed forms against the Monte Carlo estimator, and emits figure datasets.
#include <CLI11.hpp>

#include "evmf/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Data-aided EVM under generalized fading with co-channel interference"};
    app.require_subcommand(1);

    evmf::CliOptions opt;
    std::uint64_t seed = 0;
    std::int64_t blocks = 0;
    int workers = 0;

    auto add_common = [&](CLI::App* cmd, bool with_mc) {
        cmd->add_option("--scenario", opt.scenario_path, "scenario file (JSON)")
            ->required()
            ->check(CLI::ExistingFile);
        cmd->add_option("--out", opt.out_path, "output path ('-' for stdout)");
        cmd->add_option("--format", opt.format, "output format: csv|json")
            ->check(CLI::IsMember({"csv", "json"}));
        if (with_mc) {
            cmd->add_option("--seed", seed, "override the Monte Carlo seed")
                ->each([&](const std::string&) { opt.seed = seed; });
            cmd->add_option("--blocks", blocks, "override the number of Monte Carlo blocks")
                ->each([&](const std::string&) { opt.blocks = blocks; });
            cmd->add_option("--workers", workers, "override the worker count (0 = all cores)")
                ->each([&](const std::string&) { opt.workers = workers; });
        }
    };

    CLI::App* analytic = app.add_subcommand("analytic", "evaluate the closed forms");
    add_common(analytic, false);

    CLI::App* validate = app.add_subcommand(
        "validate", "compare closed forms against the Monte Carlo estimator");
    add_common(validate, true);
    validate
        ->add_option("--corrupt-analytic", opt.corrupt_analytic_scale,
                     "scale analytic values (negative-control test hook)")
        ->group("");  // hidden

    int figure_id = 0;
    std::string figure_dir = ".";
    CLI::App* figure = app.add_subcommand("figure", "emit a reference figure dataset");
    figure->add_option("id", figure_id, "figure id (1-4)")->required();
    figure->add_option("--out", figure_dir, "output directory");

    CLI11_PARSE(app, argc, argv);

    if (analytic->parsed()) return evmf::cmd_analytic(opt);
    if (validate->parsed()) return evmf::cmd_validate(opt);
    if (figure->parsed()) return evmf::cmd_figure(figure_id, figure_dir);
    return evmf::kExitValidation;
}
