#pragma once

#include "wmw/design.hpp"
#include "wmw/distributions.hpp"
#include "wmw/exact_null.hpp"
#include "wmw/exceedance.hpp"
#include "wmw/moments.hpp"
#include "wmw/power.hpp"
#include "wmw/simulate.hpp"

#include <json.hpp>

#include <string>

namespace wmw {

using Json = nlohmann::ordered_json;

/// Parses {"family": "normal", "params": {...}, "shift": 0.0}. Errors are
/// ParameterError with the offending field path, e.g. "params.sd: ...".
DistributionSpec spec_from_json(const Json& j, const std::string& path = "");
DistributionSpec spec_from_string(const std::string& text, const std::string& path = "");
Json to_json(const DistributionSpec& spec);

/// Round-trips through 10 significant digits so JSON output is stable.
double round_significant(double value);
/// Locale-independent, 10 significant digits.
std::string format_number(double value);
/// Pretty-prints like Json::dump(indent), but floating-point values go through
/// format_number so output is stable across platforms. Non-finite values print as null.
std::string dump_json(const Json& j, int indent = 2);

Json to_json(const Design& d);
Json to_json(const ExceedanceSummary& s);
Json to_json(const MomentSummary& s);
Json to_json(const PowerResult& r);
Json to_json(const DesignReport& r);
Json to_json(const SimulationResult& r);
Json to_json(const IdentityReport& r);
Json to_json(const DeficiencyResult& r);
Json to_json(const CriticalRegion& r);
/// Moment summary of the table (mean, variance, exact checks), not the pmf.
Json summary_json(const ExactNullTable& t);

} // namespace wmw
