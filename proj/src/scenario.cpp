#include "evmf/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace evmf {
namespace {

using nlohmann::json;

json params_to_json(const ShadowedFadingParams& p) {
    json j;
    j["kappa"] = p.kappa;
    j["mu"] = p.mu;
    if (std::isinf(p.m))
        j["m"] = "inf";
    else
        j["m"] = p.m;
    return j;
}

ShadowedFadingParams params_from_json(const json& j, const char* where) {
    if (!j.is_object())
        throw domain_error(std::string(where) + ": expected an object with kappa/mu/m");
    ShadowedFadingParams p;
    p.kappa = j.at("kappa").get<double>();
    p.mu = j.at("mu").get<double>();
    const json& m = j.at("m");
    if (m.is_string()) {
        if (m.get<std::string>() != "inf")
            throw domain_error(std::string(where) + ": m must be a number or \"inf\"");
        p.m = kInfShadow;
    } else {
        p.m = m.get<double>();
    }
    return p;
}

const char* kKnownSweeps[] = {"L",
                              "sigma2",
                              "snr_db",
                              "desired.kappa",
                              "desired.mu",
                              "desired.m",
                              "interferer.kappa",
                              "interferer.mu",
                              "interferer.m"};

bool sweep_known(const std::string& v) {
    for (const char* k : kKnownSweeps)
        if (v == k) return true;
    return false;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

} // namespace

ScenarioFile ScenarioFile::parse(const std::string& json_text) {
    json j = json::parse(json_text);
    ScenarioFile f;
    f.desired = params_from_json(j.at("desired"), "desired");

    const json& intf = j.at("interferers");
    if (intf.is_array()) {
        std::vector<ShadowedFadingParams> list;
        for (const auto& e : intf) list.push_back(params_from_json(e, "interferers[]"));
        f.interferer_list = std::move(list);
    } else if (intf.is_object() && intf.contains("iid")) {
        IidSpec spec;
        spec.params = params_from_json(intf.at("iid"), "interferers.iid");
        spec.count = intf.at("L").get<int>();
        f.interferer_iid = spec;
    } else {
        throw domain_error(
            "interferers: expected an array of parameter triples or "
            "{\"iid\": {...}, \"L\": n}");
    }

    f.sigma2 = j.value("sigma2", 0.0);

    if (j.contains("sweep")) {
        Sweep s;
        s.variable = j.at("sweep").at("variable").get<std::string>();
        s.values = j.at("sweep").at("values").get<std::vector<double>>();
        f.sweep = std::move(s);
    }

    if (j.contains("mc")) {
        const json& m = j.at("mc");
        f.mc.block_length = m.value("N", f.mc.block_length);
        f.mc.num_blocks = m.value("blocks", f.mc.num_blocks);
        f.mc.seed = m.value("seed", f.mc.seed);
        f.mc.workers = m.value("workers", f.mc.workers);
        if (m.contains("constellation"))
            f.mc.constellation =
                constellation_from_name(m.at("constellation").get<std::string>());
    }
    f.validate();
    return f;
}

ScenarioFile ScenarioFile::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open scenario file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

std::string ScenarioFile::serialize() const {
    json j;
    j["desired"] = params_to_json(desired);
    if (interferer_list) {
        json arr = json::array();
        for (const auto& e : *interferer_list) arr.push_back(params_to_json(e));
        j["interferers"] = arr;
    } else if (interferer_iid) {
        j["interferers"] = {{"iid", params_to_json(interferer_iid->params)},
                            {"L", interferer_iid->count}};
    }
    j["sigma2"] = sigma2;
    if (sweep) j["sweep"] = {{"variable", sweep->variable}, {"values", sweep->values}};
    j["mc"] = {{"N", mc.block_length},
               {"blocks", mc.num_blocks},
               {"seed", mc.seed},
               {"workers", mc.workers},
               {"constellation", constellation_name(mc.constellation)}};
    return j.dump(2) + "\n";
}

void ScenarioFile::save(const std::string& path) const {
    write_text_file(path, serialize());
}

void ScenarioFile::validate() const {
    if (interferer_list.has_value() == interferer_iid.has_value())
        throw domain_error(
            "scenario must use exactly one interferer form: an explicit list or "
            "iid parameters with a count");
    if (interferer_list && interferer_list->empty())
        throw domain_error("interferer list must not be empty");
    if (interferer_iid && interferer_iid->count < 1)
        throw domain_error("interferer count L must be >= 1");
    if (sigma2 < 0.0) throw domain_error("sigma2 must be non-negative");
    mc.validate();
    if (sweep) {
        if (!sweep_known(sweep->variable))
            throw domain_error("unknown sweep variable '" + sweep->variable + "'");
        if (sweep->values.empty())
            throw domain_error("sweep values must not be empty");
        if (sweep->variable == "L" && !interferer_iid)
            throw domain_error("sweeping L requires the iid interferer form");
        if ((sweep->variable == "interferer.kappa" ||
             sweep->variable == "interferer.mu" ||
             sweep->variable == "interferer.m") &&
            !interferer_iid)
            throw domain_error("sweeping interferer parameters requires the iid form");
    }
}

EvmScenario ScenarioFile::base_scenario() const {
    EvmScenario s;
    s.desired = desired;
    if (interferer_list)
        s.interferers.entries = *interferer_list;
    else
        s.interferers = InterfererProfile::iid(interferer_iid->params,
                                               interferer_iid->count);
    s.noise_variance = sigma2;
    return s;
}

std::vector<std::pair<double, EvmScenario>> ScenarioFile::expand() const {
    validate();
    std::vector<std::pair<double, EvmScenario>> out;
    if (!sweep) {
        out.emplace_back(0.0, base_scenario());
        return out;
    }
    for (double v : sweep->values) {
        ScenarioFile varied = *this;
        varied.sweep.reset();
        const std::string& var = sweep->variable;
        if (var == "L") {
            varied.interferer_iid->count = static_cast<int>(std::llround(v));
        } else if (var == "sigma2") {
            varied.sigma2 = v;
        } else if (var == "snr_db") {
            // SNR = E_s / sigma^2 = 1 / sigma^2 under the unit-energy,
            // unit-mean-power normalization.
            varied.sigma2 = std::pow(10.0, -v / 10.0);
        } else if (var == "desired.kappa") {
            varied.desired.kappa = v;
        } else if (var == "desired.mu") {
            varied.desired.mu = v;
        } else if (var == "desired.m") {
            varied.desired.m = v;
        } else if (var == "interferer.kappa") {
            varied.interferer_iid->params.kappa = v;
        } else if (var == "interferer.mu") {
            varied.interferer_iid->params.mu = v;
        } else if (var == "interferer.m") {
            varied.interferer_iid->params.m = v;
        }
        out.emplace_back(v, varied.base_scenario());
    }
    return out;
}

std::string rows_to_csv(const std::vector<ResultRow>& rows) {
    std::string out = "sweep_value,analytic_evm,mc_evm,mc_stderr,formula_used,eval_time_ms\n";
    for (const ResultRow& r : rows) {
        out += format_double(r.sweep_value);
        out += ',';
        out += format_double(r.analytic_evm);
        out += ',';
        if (r.mc_evm) out += format_double(*r.mc_evm);
        out += ',';
        if (r.mc_stderr) out += format_double(*r.mc_stderr);
        out += ',';
        out += r.formula_used;
        out += ',';
        out += format_double(r.eval_time_ms);
        out += '\n';
    }
    return out;
}

std::string rows_to_json(const std::vector<ResultRow>& rows) {
    json arr = json::array();
    for (const ResultRow& r : rows) {
        json j;
        j["sweep_value"] = r.sweep_value;
        j["analytic_evm"] = r.analytic_evm;
        if (r.mc_evm) j["mc_evm"] = *r.mc_evm;
        if (r.mc_stderr) j["mc_stderr"] = *r.mc_stderr;
        j["formula_used"] = r.formula_used;
        j["eval_time_ms"] = r.eval_time_ms;
        arr.push_back(j);
    }
    json root;
    root["schema"] = 1;
    root["rows"] = arr;
    return root.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << content;
}

} // namespace evmf
