#pragma once

#include "wmw/distributions.hpp"
#include "wmw/json_io.hpp"
#include "wmw/power.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace wmw {

struct Scenario {
    std::string name;
    /// Free-form grouping label, e.g. "a" for a figure panel.
    std::string panel;
    DistributionSpec F;
    DistributionSpec G;
    long total = 50;
    double alpha = 0.05;
    Side side = Side::OneSidedUpper;
    std::optional<std::uint64_t> trials;
    std::optional<std::uint64_t> seed;
};

struct ScenarioFile {
    int version = 1;
    std::vector<Scenario> scenarios;

    /// Throws ParameterError on duplicate names or invalid entries.
    void validate() const;
};

ScenarioFile scenarios_from_json(const Json& j);
Json to_json(const ScenarioFile& file);
/// Reads and validates a scenario file from disk.
ScenarioFile load_scenario_file(const std::string& path);

/// Power-curve configurations for panels (a)-(h) of the standard comparison
/// set: normal pairs, shifted skewed pairs and skewed pairs with different
/// shapes. Versioned so reruns can be tied to a fixed configuration.
ScenarioFile bundled_power_scenarios();
inline constexpr int kBundledScenarioVersion = 1;

} // namespace wmw
