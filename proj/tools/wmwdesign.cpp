// wmwdesign: power, optimal allocation and simulation for the
// Wilcoxon-Mann-Whitney test from the command line.
//
// JSON goes to stdout, CSV to --out (or stdout when no --out is given).
// Exit codes: 0 ok, 1 usage or parse error, 2 numerical failure, 3 resource limit.

#include "wmw/design.hpp"
#include "wmw/errors.hpp"
#include "wmw/exact_null.hpp"
#include "wmw/exceedance.hpp"
#include "wmw/figures.hpp"
#include "wmw/json_io.hpp"
#include "wmw/moments.hpp"
#include "wmw/power.hpp"
#include "wmw/scenario.hpp"
#include "wmw/simulate.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace wmw;

constexpr int kExitUsage = 1;
constexpr int kExitNumeric = 2;
constexpr int kExitResource = 3;

// Inline JSON when the value starts with '{', otherwise a path to a JSON file.
DistributionSpec read_spec(const std::string& value, const std::string& flag) {
    std::size_t first = value.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && value[first] == '{') return spec_from_string(value, flag);
    std::ifstream in(value);
    if (!in) throw ParameterError(flag + ": not inline JSON and cannot open file '" + value + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return spec_from_string(buffer.str(), flag);
}

// Writes to the file at `path`, or to stdout when `path` is empty.
class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
            if (!*file_) throw ParameterError("cannot open output file '" + path + "'");
        }
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

void print_json(const Json& j) { std::cout << dump_json(j) << '\n'; }

void warn(const std::string& message) { std::cerr << "warning: " << message << '\n'; }

void warn_flags(const PowerResult& r) {
    if (r.lowConfidence) warn("a group has fewer than 7 observations; normal approximation is rough");
    if (r.degenerateVariance) warn("alternative variance is zero; power is a step function");
    if (r.varianceClamped) warn("alternative variance was negative from rounding and clamped to 0");
}

// Flags shared by the commands that take a pair of distributions.
struct PairFlags {
    std::string f_spec;
    std::string g_spec;
    long total = 50;
    double alpha = 0.05;
    std::string side = "upper";

    void add(CLI::App* app, bool with_total = true) {
        app->add_option("--f-spec", f_spec, "First group distribution (inline JSON or file)")->required();
        app->add_option("--g-spec", g_spec, "Second group distribution (inline JSON or file)")->required();
        if (with_total) app->add_option("--n", total, "Total sample size N")->capture_default_str();
        app->add_option("--alpha", alpha, "Significance level")->capture_default_str();
        app->add_option("--side", side, "upper, lower or two-sided")->capture_default_str();
    }
    DistributionSpec F() const { return read_spec(f_spec, "--f-spec"); }
    DistributionSpec G() const { return read_spec(g_spec, "--g-spec"); }
    Side parsed_side() const { return parse_side(side); }
};

// Either --omega or explicit group sizes --m/--n2.
struct DesignFlags {
    double omega = 0.5;
    std::optional<long> m;
    std::optional<long> n2;

    void add(CLI::App* app) {
        auto* om = app->add_option("--omega", omega, "Fraction of N in the first group")->capture_default_str();
        auto* mm = app->add_option("--m", m, "First group size (overrides --omega)");
        app->add_option("--n2", n2, "Second group size (default N - m)")->needs(mm);
        om->excludes(mm);
    }
    Design resolve(long total) const {
        if (m) {
            const long second = n2 ? *n2 : total - *m;
            return Design(*m, second);
        }
        if (!(omega > 0.0 && omega < 1.0)) throw ParameterError("--omega must lie in (0, 1)");
        if (total < 2) throw ParameterError("--n must be >= 2");
        return Design::from_omega(total, omega);
    }
};

int run(int argc, char** argv) {
    CLI::App app{"Power and optimal allocation for the Wilcoxon-Mann-Whitney test"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "wmwdesign 1.0");

    // power
    PairFlags power_pair;
    DesignFlags power_design;
    bool power_welch = false;
    auto* power = app.add_subcommand("power", "Normal-approximation power at one design");
    power_pair.add(power);
    power_design.add(power);
    power->add_flag("--welch", power_welch, "Also report Welch t-test power (normal specs only)");

    // moments
    PairFlags mom_pair;
    DesignFlags mom_design;
    auto* moments = app.add_subcommand("moments", "Null and alternative moments of U");
    mom_pair.add(moments);
    mom_design.add(moments);

    // optimal-design
    PairFlags opt_pair;
    double opt_eps = 0.1;
    std::string opt_out;
    auto* optimal = app.add_subcommand("optimal-design", "Power-maximizing allocation of N");
    opt_pair.add(optimal);
    optimal->add_option("--epsilon", opt_eps, "Grid restricted to [eps, 1 - eps]")->capture_default_str();
    optimal->add_option("--out", opt_out, "Also write the power curve as CSV here");

    // power-curve
    PairFlags curve_pair;
    double curve_eps = 0.1;
    std::string curve_out;
    std::uint64_t curve_trials = 0;
    std::uint64_t curve_seed = 1;
    std::string curve_test = "wmw-exact";
    auto* curve_cmd = app.add_subcommand("power-curve", "Power over the allocation grid as CSV");
    curve_pair.add(curve_cmd);
    curve_cmd->add_option("--epsilon", curve_eps, "Grid restricted to [eps, 1 - eps]")->capture_default_str();
    curve_cmd->add_option("--out", curve_out, "CSV output path (default stdout)");
    curve_cmd->add_option("--trials", curve_trials, "Monte Carlo trials per point (0 = none)")
        ->capture_default_str();
    curve_cmd->add_option("--seed", curve_seed, "Base seed")->capture_default_str();
    curve_cmd->add_option("--test", curve_test, "wmw-exact, wmw-normal, t-hom or t-het")
        ->capture_default_str();

    // deficiency
    std::string def_f;
    std::string def_g;
    long def_total = 50;
    double def_omega = 0.5;
    double def_alpha = 0.05;
    std::string def_side = "upper";
    double def_eps = 0.1;
    bool def_welch = false;
    auto* deficiency = app.add_subcommand(
        "deficiency", "Deficiency of a design; closed form when no specs are given");
    deficiency->add_option("--f-spec", def_f, "First group distribution");
    deficiency->add_option("--g-spec", def_g, "Second group distribution");
    deficiency->add_option("--n", def_total, "Total sample size N")->capture_default_str();
    deficiency->add_option("--omega", def_omega, "Design to evaluate")->capture_default_str();
    deficiency->add_option("--alpha", def_alpha, "Significance level")->capture_default_str();
    deficiency->add_option("--side", def_side, "upper, lower or two-sided")->capture_default_str();
    deficiency->add_option("--epsilon", def_eps, "Grid restriction")->capture_default_str();
    deficiency->add_flag("--welch", def_welch, "Also report the Welch t-test deficiency");

    // exact-null
    long null_m = 0;
    long null_n = 0;
    std::string null_out;
    std::optional<double> null_alpha;
    std::string null_side = "upper";
    std::size_t null_limit = kDefaultTableLimit;
    auto* exact = app.add_subcommand("exact-null", "Exact null distribution of U");
    exact->add_option("--m", null_m, "First group size")->required();
    exact->add_option("--n", null_n, "Second group size")->required();
    exact->add_option("--out", null_out,
                      "CSV pmf path; the JSON summary then goes to stdout (default: CSV to stdout)");
    exact->add_option("--alpha", null_alpha, "Also report the critical region at this level");
    exact->add_option("--side", null_side, "upper, lower or two-sided")->capture_default_str();
    exact->add_option("--max-entries", null_limit, "Largest table allowed")->capture_default_str();

    // simulate
    PairFlags sim_pair;
    DesignFlags sim_design;
    std::uint64_t sim_trials = 10000;
    std::uint64_t sim_seed = 1;
    std::string sim_test = "wmw-exact";
    unsigned sim_threads = 0;
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo rejection rate");
    sim_pair.add(simulate);
    sim_design.add(simulate);
    simulate->add_option("--trials", sim_trials, "Number of trials")->capture_default_str();
    simulate->add_option("--seed", sim_seed, "Seed")->capture_default_str();
    simulate->add_option("--test", sim_test, "wmw-exact, wmw-normal, t-hom or t-het")->capture_default_str();
    simulate->add_option("--threads", sim_threads, "Worker threads (0 = WMW_THREADS or hardware)");

    // check-identities
    std::string id_f;
    std::string id_g;
    auto* identities = app.add_subcommand("check-identities", "Residuals of the exceedance identities");
    identities->add_option("--f-spec", id_f, "First group distribution")->required();
    identities->add_option("--g-spec", id_g, "Second group distribution")->required();

    // reproduce
    std::string rep_figure;
    std::string rep_out;
    std::uint64_t rep_trials = 10000;
    std::uint64_t rep_seed = 1;
    std::string rep_scenarios;
    std::string rep_write_scenarios;
    std::string rep_test = "wmw-exact";
    double rep_eps = 0.1;
    auto* reproduce = app.add_subcommand("reproduce", "Batch reproduction of standard figures");
    reproduce->add_option("--figure", rep_figure, "deficiency, epping or power-curves")
        ->required()
        ->check(CLI::IsMember({"deficiency", "epping", "power-curves"}));
    reproduce->add_option("--out", rep_out, "CSV output path (default stdout)");
    reproduce->add_option("--trials", rep_trials, "Monte Carlo trials per point for power-curves (0 = none)")
        ->capture_default_str();
    reproduce->add_option("--seed", rep_seed, "Base seed")->capture_default_str();
    reproduce->add_option("--scenario-file", rep_scenarios, "Scenario file (default: bundled set)");
    reproduce->add_option("--write-scenarios", rep_write_scenarios, "Write the bundled scenario file here");
    reproduce->add_option("--test", rep_test, "Test used for the Monte Carlo columns")->capture_default_str();
    reproduce->add_option("--epsilon", rep_eps, "Grid restriction")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    if (*power) {
        const DistributionSpec F = power_pair.F();
        const DistributionSpec G = power_pair.G();
        const Design d = power_design.resolve(power_pair.total);
        const Side side = power_pair.parsed_side();
        const PowerResult r = wmw_power({F, G, d, power_pair.alpha, side});
        warn_flags(r);
        Json j = {{"design", to_json(d)}, {"alpha", power_pair.alpha}, {"side", to_string(side)}};
        j["result"] = to_json(r);
        if (power_welch) {
            if (!std::holds_alternative<Normal>(F.family) || !std::holds_alternative<Normal>(G.family)) {
                throw ParameterError("--welch: both distributions must be normal");
            }
            j["welch"] = to_json(welch_power(F.mean(), F.sd(), G.mean(), G.sd(), d, power_pair.alpha, side));
        }
        print_json(j);
    } else if (*moments) {
        const DistributionSpec F = mom_pair.F();
        const DistributionSpec G = mom_pair.G();
        const Design d = mom_design.resolve(mom_pair.total);
        const ExceedanceSummary integrals = pair_integrals(F, G);
        print_json({{"design", to_json(d)},
                    {"integrals", to_json(integrals)},
                    {"moments", to_json(alt_moments(d, integrals))}});
    } else if (*optimal) {
        const DesignReport report = optimal_design(opt_pair.F(), opt_pair.G(), opt_pair.total,
                                                   opt_pair.alpha, opt_pair.parsed_side(), opt_eps);
        if (!opt_out.empty()) {
            Output out(opt_out);
            write_curve_csv(out.stream(), report.powerCurve, nullptr);
        }
        print_json(to_json(report));
    } else if (*curve_cmd) {
        const DistributionSpec F = curve_pair.F();
        const DistributionSpec G = curve_pair.G();
        const Side side = curve_pair.parsed_side();
        const TestKind test = parse_test(curve_test);
        const auto curve = grid_curve(pair_integrals(F, G), curve_pair.total, curve_pair.alpha, side, curve_eps);
        Output out(curve_out);
        if (curve_trials > 0) {
            const auto mc = simulate_curve(F, G, curve, curve_pair.alpha, side, curve_trials, curve_seed, test, 0);
            write_curve_csv(out.stream(), curve, &mc);
        } else {
            write_curve_csv(out.stream(), curve, nullptr);
        }
    } else if (*deficiency) {
        if (def_f.empty() != def_g.empty()) throw ParameterError("give both --f-spec and --g-spec, or neither");
        Json j = {{"omega", def_omega}, {"symmetricDeficiency", round_significant(deficiency_symmetric(def_omega))}};
        if (!def_f.empty()) {
            const DistributionSpec F = read_spec(def_f, "--f-spec");
            const DistributionSpec G = read_spec(def_g, "--g-spec");
            const Side side = parse_side(def_side);
            DeficiencyOptions opts;
            opts.epsilon = def_eps;
            const DeficiencyResult r = deficiency_general(F, G, def_total, def_omega, def_alpha, side, opts);
            if (r.capReached) warn("no matching N found below the search cap; deficiency is a lower bound");
            j["wmw"] = to_json(r);
            if (def_welch) j["welch"] = to_json(welch_deficiency(F, G, def_total, def_omega, def_alpha, side, opts));
        }
        print_json(j);
    } else if (*exact) {
        const ExactNullTable table = build_table(null_m, null_n, null_limit);
        Output out(null_out);
        out.stream() << "u,probability\n";
        for (std::size_t u = 0; u < table.pmf.size(); ++u) {
            out.stream() << u << ',' << format_number(table.pmf[u]) << '\n';
        }
        if (!null_out.empty()) {
            Json j = summary_json(table);
            if (null_alpha) {
                const Side side = parse_side(null_side);
                const CriticalSide cs = side == Side::OneSidedUpper   ? CriticalSide::Upper
                                        : side == Side::OneSidedLower ? CriticalSide::Lower
                                                                      : CriticalSide::TwoSided;
                j["critical"] = to_json(critical_value(table, *null_alpha, cs));
            }
            print_json(j);
        }
    } else if (*simulate) {
        SimulationPlan plan;
        plan.F = sim_pair.F();
        plan.G = sim_pair.G();
        plan.design = sim_design.resolve(sim_pair.total);
        plan.alpha = sim_pair.alpha;
        plan.side = sim_pair.parsed_side();
        plan.trials = sim_trials;
        plan.seed = sim_seed;
        plan.threads = sim_threads;
        const SimulationResult r = simulate_power(plan, parse_test(sim_test));
        if (r.fellBackToNormal) warn("exact table too large; used the normal-approximation rule");
        print_json({{"design", to_json(plan.design)}, {"seed", sim_seed}, {"result", to_json(r)}});
    } else if (*identities) {
        const DistributionSpec F = read_spec(id_f, "--f-spec");
        const DistributionSpec G = read_spec(id_g, "--g-spec");
        print_json(to_json(check_identities(F, G)));
    } else if (*reproduce) {
        if (!rep_write_scenarios.empty()) {
            Output out(rep_write_scenarios);
            out.stream() << dump_json(to_json(bundled_power_scenarios())) << '\n';
        }
        if (rep_figure == "deficiency") {
            Output out(rep_out);
            write_deficiency_csv(out.stream());
        } else if (rep_figure == "epping") {
            const CaseStudy cs = epping_case_study(rep_eps);
            if (!rep_out.empty()) {
                Output out(rep_out);
                write_curve_csv(out.stream(), cs.report.powerCurve, nullptr);
            }
            Json j = to_json(cs.report);
            j["groups"] = {{"F", to_json(cs.F)}, {"G", to_json(cs.G)}};
            j["secondGroupShare"] = round_significant(1.0 - cs.report.optimal.omega());
            print_json(j);
        } else {
            const ScenarioFile file =
                rep_scenarios.empty() ? bundled_power_scenarios() : load_scenario_file(rep_scenarios);
            CurveRunOptions opts;
            opts.trials = rep_trials;
            opts.seed = rep_seed;
            opts.test = parse_test(rep_test);
            opts.epsilon = rep_eps;
            Output out(rep_out);
            write_power_curves_csv(out.stream(), file, opts);
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const wmw::ParameterError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const wmw::NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << " (achieved bound " << e.achieved_bound() << ")\n";
        return kExitNumeric;
    } catch (const wmw::ResourceError& e) {
        std::cerr << "resource limit: " << e.what() << '\n';
        return kExitResource;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumeric;
    }
}
