#include "wmw/scenario.hpp"

#include "wmw/errors.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace wmw {

namespace {

std::uint64_t unsigned_field(const Json& j, const std::string& key, const std::string& path) {
    const Json& v = j.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 0) {
        throw ParameterError(path + "." + key + ": expected a non-negative integer");
    }
    return v.get<std::uint64_t>();
}

Scenario scenario_from_json(const Json& j, const std::string& path) {
    if (!j.is_object()) throw ParameterError(path + ": expected an object");
    for (const char* key : {"name", "F", "G"}) {
        if (!j.contains(key)) throw ParameterError(path + "." + key + ": missing required field");
    }
    Scenario s;
    if (!j.at("name").is_string()) throw ParameterError(path + ".name: expected a string");
    s.name = j.at("name").get<std::string>();
    if (j.contains("panel")) {
        if (!j.at("panel").is_string()) throw ParameterError(path + ".panel: expected a string");
        s.panel = j.at("panel").get<std::string>();
    }
    s.F = spec_from_json(j.at("F"), path + ".F");
    s.G = spec_from_json(j.at("G"), path + ".G");
    if (j.contains("N")) {
        if (!j.at("N").is_number_integer()) throw ParameterError(path + ".N: expected an integer");
        s.total = j.at("N").get<long>();
    }
    if (j.contains("alpha")) {
        if (!j.at("alpha").is_number()) throw ParameterError(path + ".alpha: expected a number");
        s.alpha = j.at("alpha").get<double>();
    }
    if (j.contains("side")) {
        if (!j.at("side").is_string()) throw ParameterError(path + ".side: expected a string");
        try {
            s.side = parse_side(j.at("side").get<std::string>());
        } catch (const ParameterError& e) {
            throw ParameterError(path + ".side: " + e.what());
        }
    }
    if (j.contains("trials")) s.trials = unsigned_field(j, "trials", path);
    if (j.contains("seed")) s.seed = unsigned_field(j, "seed", path);
    return s;
}

Json scenario_to_json(const Scenario& s) {
    Json j = {{"name", s.name}, {"panel", s.panel}, {"F", to_json(s.F)}, {"G", to_json(s.G)},
              {"N", s.total},   {"alpha", s.alpha}, {"side", to_string(s.side)}};
    if (s.trials) j["trials"] = *s.trials;
    if (s.seed) j["seed"] = *s.seed;
    return j;
}

} // namespace

void ScenarioFile::validate() const {
    std::set<std::string> names;
    for (std::size_t i = 0; i < scenarios.size(); ++i) {
        const Scenario& s = scenarios[i];
        const std::string where = "scenarios[" + std::to_string(i) + "]";
        if (s.name.empty()) throw ParameterError(where + ".name: must not be empty");
        if (!names.insert(s.name).second) {
            throw ParameterError(where + ".name: duplicate scenario name '" + s.name + "'");
        }
        s.F.validate();
        s.G.validate();
        if (s.total < 2) throw ParameterError(where + ".N: must be >= 2");
        if (!(s.alpha > 0.0 && s.alpha < 1.0)) throw ParameterError(where + ".alpha: must lie in (0, 1)");
        if (s.trials && *s.trials == 0) throw ParameterError(where + ".trials: must be >= 1");
    }
}

ScenarioFile scenarios_from_json(const Json& j) {
    if (!j.is_object()) throw ParameterError("scenario file: expected an object");
    ScenarioFile file;
    if (j.contains("version")) {
        if (!j.at("version").is_number_integer()) throw ParameterError("version: expected an integer");
        file.version = j.at("version").get<int>();
    }
    if (!j.contains("scenarios") || !j.at("scenarios").is_array()) {
        throw ParameterError("scenarios: expected an array");
    }
    const Json& list = j.at("scenarios");
    for (std::size_t i = 0; i < list.size(); ++i) {
        file.scenarios.push_back(scenario_from_json(list[i], "scenarios[" + std::to_string(i) + "]"));
    }
    file.validate();
    return file;
}

Json to_json(const ScenarioFile& file) {
    Json list = Json::array();
    for (const auto& s : file.scenarios) list.push_back(scenario_to_json(s));
    return {{"version", file.version}, {"scenarios", list}};
}

ScenarioFile load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParameterError("cannot open scenario file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    Json j;
    try {
        j = Json::parse(buffer.str());
    } catch (const Json::parse_error& e) {
        throw ParameterError(path + ": malformed JSON: " + e.what());
    }
    return scenarios_from_json(j);
}

ScenarioFile bundled_power_scenarios() {
    ScenarioFile file;
    file.version = kBundledScenarioVersion;
    auto add = [&](std::string panel, std::string name, DistributionSpec F, DistributionSpec G,
                   long total = 50, double alpha = 0.05) {
        Scenario s;
        s.name = panel + "_" + name;
        s.panel = std::move(panel);
        s.F = F;
        s.G = G;
        s.total = total;
        s.alpha = alpha;
        file.scenarios.push_back(std::move(s));
    };

    const DistributionSpec std_normal = make_normal(0.0, 1.0);
    // (a) varied sd of the first group
    add("a", "sd_1_3", make_normal(0.75, 1.0 / 3.0), std_normal);
    add("a", "sd_1_2", make_normal(0.75, 0.5), std_normal);
    add("a", "sd_1", make_normal(0.75, 1.0), std_normal);
    add("a", "sd_2", make_normal(0.75, 2.0), std_normal);
    add("a", "sd_3", make_normal(0.75, 3.0), std_normal);
    // (b) varied N
    for (long total : {20L, 50L, 100L}) {
        add("b", "N_" + std::to_string(total), make_normal(0.75, 2.0), std_normal, total);
    }
    // (c) varied alpha
    add("c", "alpha_0.01", make_normal(0.75, 0.7), std_normal, 50, 0.01);
    add("c", "alpha_0.05", make_normal(0.75, 0.7), std_normal, 50, 0.05);
    add("c", "alpha_0.10", make_normal(0.75, 0.7), std_normal, 50, 0.10);
    // (d) same shape, shifted: shifts chosen so that P(X >= Y) is about 0.65
    add("d", "chisq5_shift1.5", make_chisquare(5.0, 1.5), make_chisquare(5.0));
    add("d", "lnorm_shift0.5", make_lognormal(0.0, 1.0, 0.5), make_lognormal(0.0, 1.0));
    add("d", "exp0.75_shift0.5", make_exponential(0.75, 0.5), make_exponential(0.75));
    // (e) varied N for the shifted chi-square pair
    for (long total : {20L, 50L, 100L}) {
        add("e", "N_" + std::to_string(total), make_chisquare(5.0, 1.5), make_chisquare(5.0), total);
    }
    // (f) different shapes against chi-square(3)
    add("f", "chisq6", make_chisquare(6.0), make_chisquare(3.0));
    add("f", "lnorm1.5_0.5", make_lognormal(1.5, 0.5), make_chisquare(3.0));
    add("f", "exp0.2", make_exponential(0.2), make_chisquare(3.0));
    // (g) different shapes against Exp(0.75)
    add("g", "exp0.4", make_exponential(0.4), make_exponential(0.75));
    add("g", "chisq3", make_chisquare(3.0), make_exponential(0.75));
    add("g", "lnorm0.5_0.8", make_lognormal(0.5, 0.8), make_exponential(0.75));
    // (h) varied alpha for two exponentials
    add("h", "alpha_0.01", make_exponential(0.25), make_exponential(0.75), 50, 0.01);
    add("h", "alpha_0.05", make_exponential(0.25), make_exponential(0.75), 50, 0.05);
    add("h", "alpha_0.10", make_exponential(0.25), make_exponential(0.75), 50, 0.10);
    file.validate();
    return file;
}

} // namespace wmw
