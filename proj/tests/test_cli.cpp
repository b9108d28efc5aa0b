#include <doctest.h>

#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "evmf/cli.hpp"
#include "evmf/scenario.hpp"

using namespace evmf;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("evmf_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter++));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
    static int counter;
};
int TempDir::counter = 0;

std::string slurp(const std::string& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        std::vector<std::string> cells;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

const char* kRayleighSweep = R"({
  "desired": {"kappa": 0.0, "mu": 1.0, "m": "inf"},
  "interferers": {"iid": {"kappa": 0.0, "mu": 1.0, "m": "inf"}, "L": 1},
  "sigma2": 0.0,
  "sweep": {"variable": "L", "values": [1, 2, 3, 4, 5]},
  "mc": {"N": 500, "blocks": 20000, "seed": 3, "workers": 0}
})";

} // namespace

TEST_CASE("scenario file round-trips through JSON") {
    ScenarioFile f = ScenarioFile::parse(kRayleighSweep);
    const std::string text = f.serialize();
    ScenarioFile g = ScenarioFile::parse(text);
    CHECK(g.serialize() == text);

    // explicit-list form round-trips too, including the "inf" sentinel
    const char* inid = R"({
      "desired": {"kappa": 2.0, "mu": 1.5, "m": 3.0},
      "interferers": [{"kappa": 1.0, "mu": 1.0, "m": 2.0},
                      {"kappa": 3.0, "mu": 2.0, "m": "inf"}],
      "sigma2": 0.25
    })";
    ScenarioFile h = ScenarioFile::parse(inid);
    CHECK(ScenarioFile::parse(h.serialize()).serialize() == h.serialize());
    CHECK(std::isinf(h.interferer_list->at(1).m));
}

TEST_CASE("scenario validation rejects malformed documents") {
    CHECK_THROWS(ScenarioFile::parse(R"({"desired": {"kappa":0,"mu":1,"m":1}})"));

    // both interferer forms at once
    CHECK_THROWS(ScenarioFile::parse(R"({
      "desired": {"kappa":0,"mu":1,"m":1},
      "interferers": {"iid": {"kappa":0,"mu":1,"m":1}, "L": 2,
                      "list": []}})"));

    // unknown sweep variable
    CHECK_THROWS(ScenarioFile::parse(R"({
      "desired": {"kappa":0,"mu":1,"m":1},
      "interferers": {"iid": {"kappa":0,"mu":1,"m":1}, "L": 2},
      "sweep": {"variable": "bananas", "values": [1]}})"));

    // sweeping L needs the iid form
    CHECK_THROWS(ScenarioFile::parse(R"({
      "desired": {"kappa":0,"mu":1,"m":1},
      "interferers": [{"kappa":0,"mu":1,"m":1}],
      "sweep": {"variable": "L", "values": [1, 2]}})"));
}

TEST_CASE("snr_db sweep maps to sigma2 under the documented convention") {
    ScenarioFile f = ScenarioFile::parse(R"({
      "desired": {"kappa":0,"mu":2,"m":"inf"},
      "interferers": {"iid": {"kappa":0,"mu":1,"m":"inf"}, "L": 1},
      "sweep": {"variable": "snr_db", "values": [0, 10, 20]}})");
    const auto expanded = f.expand();
    REQUIRE(expanded.size() == 3);
    CHECK(expanded[0].second.noise_variance == doctest::Approx(1.0));
    CHECK(expanded[1].second.noise_variance == doctest::Approx(0.1));
    CHECK(expanded[2].second.noise_variance == doctest::Approx(0.01));
}

TEST_CASE("cmd_analytic writes the Rayleigh sweep") {
    TempDir tmp;
    write_text_file(tmp.file("scenario.json"), kRayleighSweep);

    CliOptions opt;
    opt.scenario_path = tmp.file("scenario.json");
    opt.out_path = tmp.file("out.csv");
    CHECK(cmd_analytic(opt) == kExitOk);

    const auto rows = parse_csv(slurp(opt.out_path));
    REQUIRE(rows.size() == 6);  // header + 5 sweep values
    CHECK(rows[0][0] == "sweep_value");
    for (int L = 1; L <= 5; ++L) {
        const double want =
            std::sqrt(M_PI) * std::exp(std::lgamma(L + 0.5) - std::lgamma(L));
        const double got = std::stod(rows[static_cast<std::size_t>(L)][1]);
        CHECK(std::fabs(got - want) / want < 1e-12);
        CHECK(rows[static_cast<std::size_t>(L)][4] == "rayleigh");
    }

    // stable across runs (time column excluded)
    CliOptions opt2 = opt;
    opt2.out_path = tmp.file("out2.csv");
    CHECK(cmd_analytic(opt2) == kExitOk);
    auto a = parse_csv(slurp(opt.out_path));
    auto b = parse_csv(slurp(opt2.out_path));
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j + 1 < a[i].size(); ++j)  // drop eval_time_ms
            CHECK(a[i][j] == b[i][j]);
}

TEST_CASE("cmd_analytic JSON output") {
    TempDir tmp;
    write_text_file(tmp.file("scenario.json"), kRayleighSweep);
    CliOptions opt;
    opt.scenario_path = tmp.file("scenario.json");
    opt.out_path = tmp.file("out.json");
    opt.format = "json";
    CHECK(cmd_analytic(opt) == kExitOk);
    const std::string text = slurp(opt.out_path);
    CHECK(text.find("\"schema\": 1") != std::string::npos);
    CHECK(text.find("\"analytic_evm\"") != std::string::npos);
}

TEST_CASE("cmd_analytic rejects a diverging scenario with exit 2") {
    TempDir tmp;
    write_text_file(tmp.file("bad.json"), R"({
      "desired": {"kappa": 1.0, "mu": 0.5, "m": 2.0},
      "interferers": {"iid": {"kappa": 0.0, "mu": 1.0, "m": "inf"}, "L": 1}
    })");
    CliOptions opt;
    opt.scenario_path = tmp.file("bad.json");
    opt.out_path = tmp.file("out.csv");
    CHECK(cmd_analytic(opt) == kExitValidation);

    // the library error names the violated precondition
    ScenarioFile f = ScenarioFile::load(tmp.file("bad.json"));
    try {
        evaluate_evm(f.base_scenario());
        FAIL("expected divergence_error");
    } catch (const divergence_error& e) {
        CHECK(std::string(e.what()).find("mu > 0.5") != std::string::npos);
    }
}

TEST_CASE("cmd_validate passes honest runs and fails corrupted ones") {
    TempDir tmp;
    write_text_file(tmp.file("scenario.json"), R"({
      "desired": {"kappa": 0.0, "mu": 1.0, "m": "inf"},
      "interferers": {"iid": {"kappa": 0.0, "mu": 1.0, "m": "inf"}, "L": 1},
      "mc": {"N": 500, "blocks": 20000, "seed": 11}
    })");

    CliOptions opt;
    opt.scenario_path = tmp.file("scenario.json");
    opt.out_path = tmp.file("out.csv");
    CHECK(cmd_validate(opt) == kExitOk);

    const auto rows = parse_csv(slurp(opt.out_path));
    REQUIRE(rows.size() == 2);
    CHECK(!rows[1][2].empty());  // mc_evm present
    CHECK(!rows[1][3].empty());  // mc_stderr present

    // negative control: a corrupted analytic value must exit 3
    opt.corrupt_analytic_scale = 1.5;
    opt.out_path = tmp.file("corrupt.csv");
    CHECK(cmd_validate(opt) == kExitMcDisagreement);
}

TEST_CASE("cmd_figure emits datasets and manifests") {
    TempDir tmp;
    for (int id = 1; id <= 4; ++id) {
        CHECK(cmd_figure(id, tmp.path.string()) == kExitOk);
        CHECK(fs::exists(tmp.path / ("fig" + std::to_string(id) + ".csv")));
        CHECK(fs::exists(tmp.path / ("fig" + std::to_string(id) + ".json")));
    }
    CHECK(cmd_figure(9, tmp.path.string()) == kExitValidation);

    // figure 4: the noise curve approaches the interference-limited line
    // with a monotonically shrinking gap
    const auto rows = parse_csv(slurp(tmp.file("fig4.csv")));
    REQUIRE(rows.size() > 3);
    double prev_gap = 1e18;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double gap = std::stod(rows[i][4]);
        CHECK(gap > 0.0);
        CHECK(gap < prev_gap);
        prev_gap = gap;
    }

    // figure 1: monotone in L for fixed (K, K_I)
    const auto f1 = parse_csv(slurp(tmp.file("fig1.csv")));
    double prev = 0.0;
    for (std::size_t i = 1; i <= 10; ++i) {
        const double v = std::stod(f1[i][3]);
        CHECK(v > prev);
        prev = v;
    }

    // manifests carry the schema version and the SNR convention
    const std::string manifest = slurp(tmp.file("fig2.json"));
    CHECK(manifest.find("\"schema\": 1") != std::string::npos);
    CHECK(manifest.find("SNR = E_s / sigma^2") != std::string::npos);
}
