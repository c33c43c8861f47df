#include "wmw/json_io.hpp"

#include "wmw/errors.hpp"

#include <charconv>
#include <cmath>
#include <set>
#include <variant>

namespace wmw {

namespace {

std::string join(const std::string& path, const std::string& field) {
    return path.empty() ? field : path + "." + field;
}

[[noreturn]] void fail(const std::string& path, const std::string& message) {
    throw ParameterError((path.empty() ? std::string("spec") : path) + ": " + message);
}

double number_field(const Json& params, const std::string& name, const std::string& path,
                    std::optional<double> fallback = std::nullopt) {
    const std::string where = join(path, name);
    if (!params.contains(name)) {
        if (fallback) return *fallback;
        fail(where, "missing required field");
    }
    const Json& v = params.at(name);
    if (!v.is_number()) fail(where, "expected a number");
    return v.get<double>();
}

void reject_unknown(const Json& params, const std::set<std::string>& known, const std::string& path) {
    for (const auto& [key, value] : params.items()) {
        if (!known.contains(key)) fail(join(path, key), "unknown parameter");
    }
}

Json number(double v) {
    if (!std::isfinite(v)) return Json(nullptr);
    return Json(round_significant(v));
}

} // namespace

double round_significant(double value) {
    if (!std::isfinite(value) || value == 0.0) return value;
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 10);
    double out = value;
    std::from_chars(buf, end, out);
    return out;
}

std::string format_number(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 10);
    return std::string(buf, end);
}

namespace {

void dump_into(const Json& j, int indent, int depth, std::string& out) {
    const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
    const std::string close_pad(static_cast<std::size_t>(indent * depth), ' ');
    switch (j.type()) {
    case Json::value_t::object: {
        if (j.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        bool first = true;
        for (const auto& [key, value] : j.items()) {
            if (!first) out += ",\n";
            first = false;
            out += pad + Json(key).dump() + ": ";
            dump_into(value, indent, depth + 1, out);
        }
        out += "\n" + close_pad + "}";
        return;
    }
    case Json::value_t::array: {
        if (j.empty()) {
            out += "[]";
            return;
        }
        out += "[\n";
        for (std::size_t i = 0; i < j.size(); ++i) {
            if (i > 0) out += ",\n";
            out += pad;
            dump_into(j[i], indent, depth + 1, out);
        }
        out += "\n" + close_pad + "]";
        return;
    }
    case Json::value_t::number_float: {
        const double v = j.get<double>();
        out += std::isfinite(v) ? format_number(v) : "null";
        return;
    }
    default:
        out += j.dump();
    }
}

} // namespace

std::string dump_json(const Json& j, int indent) {
    std::string out;
    dump_into(j, indent, 0, out);
    return out;
}

DistributionSpec spec_from_json(const Json& j, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
    if (!j.contains("family")) fail(join(path, "family"), "missing required field");
    if (!j.at("family").is_string()) fail(join(path, "family"), "expected a string");
    const std::string family = j.at("family").get<std::string>();

    const std::string ppath = join(path, "params");
    Json params = Json::object();
    if (j.contains("params")) {
        params = j.at("params");
        if (!params.is_object()) fail(ppath, "expected an object");
    }
    for (const auto& [key, value] : j.items()) {
        if (key != "family" && key != "params" && key != "shift") fail(join(path, key), "unknown field");
    }

    DistributionSpec spec;
    if (family == "normal") {
        reject_unknown(params, {"mean", "sd"}, ppath);
        spec.family = Normal{number_field(params, "mean", ppath, 0.0), number_field(params, "sd", ppath)};
    } else if (family == "exponential") {
        reject_unknown(params, {"rate"}, ppath);
        spec.family = Exponential{number_field(params, "rate", ppath)};
    } else if (family == "lognormal") {
        reject_unknown(params, {"logMean", "logSd"}, ppath);
        spec.family = LogNormal{number_field(params, "logMean", ppath, 0.0),
                                number_field(params, "logSd", ppath)};
    } else if (family == "chisquare") {
        reject_unknown(params, {"df"}, ppath);
        spec.family = ChiSquare{number_field(params, "df", ppath)};
    } else if (family == "studentt") {
        reject_unknown(params, {"df", "location", "scale"}, ppath);
        spec.family = StudentT{number_field(params, "df", ppath),
                               number_field(params, "location", ppath, 0.0),
                               number_field(params, "scale", ppath, 1.0)};
    } else {
        fail(join(path, "family"),
             "unknown family '" + family + "' (expected normal, exponential, lognormal, chisquare, studentt)");
    }
    spec.shift = number_field(j, "shift", path, 0.0);
    try {
        spec.validate();
    } catch (const ParameterError& e) {
        fail(ppath, e.what());
    }
    return spec;
}

DistributionSpec spec_from_string(const std::string& text, const std::string& path) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        fail(path, std::string("malformed JSON: ") + e.what());
    }
    return spec_from_json(j, path);
}

Json to_json(const DistributionSpec& spec) {
    Json params = std::visit(
        [](const auto& d) -> Json {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, Normal>) return {{"mean", d.mean}, {"sd", d.sd}};
            if constexpr (std::is_same_v<T, Exponential>) return {{"rate", d.rate}};
            if constexpr (std::is_same_v<T, LogNormal>) return {{"logMean", d.logMean}, {"logSd", d.logSd}};
            if constexpr (std::is_same_v<T, ChiSquare>) return {{"df", d.df}};
            if constexpr (std::is_same_v<T, StudentT>) {
                return {{"df", d.df}, {"location", d.location}, {"scale", d.scale}};
            }
        },
        spec.family);
    return {{"family", spec.family_name()}, {"params", params}, {"shift", spec.shift}};
}

Json to_json(const Design& d) {
    return {{"totalN", d.total()}, {"m", d.m()}, {"n", d.n()}, {"omega", number(d.omega())}};
}

Json to_json(const ExceedanceSummary& s) {
    return {{"pXgeY", number(s.pXgeY)},
            {"intG2f", number(s.intG2f)},
            {"int1mF2g", number(s.int1mF2g)},
            {"quadratureErrorBound", s.quadratureErrorBound},
            {"converged", s.converged}};
}

Json to_json(const MomentSummary& s) {
    return {{"e0", number(s.e0)},           {"var0", number(s.var0)},
            {"e1", number(s.e1)},           {"var1", number(s.var1)},
            {"muN", number(s.muN)},         {"sigma2N", number(s.sigma2N)},
            {"varianceClamped", s.varianceClamped}};
}

Json to_json(const PowerResult& r) {
    return {{"approxPower", number(r.approxPower)},
            {"muN", number(r.muN)},
            {"sigma2N", number(r.sigma2N)},
            {"method", to_string(r.method)},
            {"flags",
             {{"degenerateVariance", r.degenerateVariance},
              {"lowConfidence", r.lowConfidence},
              {"varianceClamped", r.varianceClamped}}}};
}

Json to_json(const DesignReport& r) {
    Json curve = Json::array();
    for (const auto& p : r.powerCurve) {
        curve.push_back({{"omega", number(p.omega)}, {"m", p.m}, {"n", p.n}, {"power", number(p.power)}});
    }
    return {{"optimal", to_json(r.optimal)},
            {"optimalPower", number(r.optimalPower)},
            {"deficiencyAtHalf", number(r.deficiencyAtHalf)},
            {"epsilon", r.epsilon},
            {"integrals", to_json(r.integrals)},
            {"powerCurve", curve}};
}

Json to_json(const SimulationResult& r) {
    Json j = {{"rejectionRate", number(r.rejectionRate)},
              {"standardError", number(r.standardError)},
              {"testUsed", to_string(r.testUsed)},
              {"trials", r.trials},
              {"fellBackToNormal", r.fellBackToNormal}};
    if (r.testUsed == TestKind::WmwExact) j["exactSize"] = number(r.exactSize);
    return j;
}

Json to_json(const IdentityReport& r) {
    return {{"varianceRelationResidual", r.varianceRelationResidual},
            {"nestedIdentityResidual", r.nestedIdentityResidual},
            {"complementResidual", r.complementResidual},
            {"lhs", number(r.lhs)},
            {"nestedRhs", number(r.nestedRhs)}};
}

Json to_json(const DeficiencyResult& r) {
    return {{"deficiency", number(r.deficiency)},
            {"matchedTotal", r.matchedTotal},
            {"optimal", to_json(r.optimal)},
            {"optimalPower", number(r.optimalPower)},
            {"capReached", r.capReached}};
}

Json to_json(const CriticalRegion& r) {
    Json j = {{"degenerate", r.degenerate}, {"achievedSize", number(r.achievedSize)}};
    j["upper"] = r.upper ? Json(*r.upper) : Json(nullptr);
    j["lower"] = r.lower ? Json(*r.lower) : Json(nullptr);
    return j;
}

Json summary_json(const ExactNullTable& t) {
    const ExactMomentSums sums = exact_moment_sums(t);
    const long long mn = static_cast<long long>(t.m) * t.n;
    // mean = sum_u / total; compare against mn/2 and mn(m+n+1)/12 exactly.
    const bool mean_exact = sums.sum_u * 2 == t.total * mn;
    const BigCount lhs = sums.sum_u2 * 12;
    const BigCount rhs = t.total * (BigCount(mn) * (t.m + t.n + 1) + BigCount(mn) * mn * 3);
    double mean = 0.0;
    double var = 0.0;
    for (std::size_t u = 0; u < t.pmf.size(); ++u) mean += static_cast<double>(u) * t.pmf[u];
    for (std::size_t u = 0; u < t.pmf.size(); ++u) {
        const double d = static_cast<double>(u) - mean;
        var += d * d * t.pmf[u];
    }
    return {{"m", t.m},
            {"n", t.n},
            {"support", {0, mn}},
            {"totalArrangements", t.total.str()},
            {"mean", number(mean)},
            {"variance", number(var)},
            {"e0", number(static_cast<double>(mn) / 2.0)},
            {"var0", number(static_cast<double>(mn * (t.m + t.n + 1)) / 12.0)},
            {"meanMatchesExactly", mean_exact},
            {"varianceMatchesExactly", lhs == rhs}};
}

} // namespace wmw
