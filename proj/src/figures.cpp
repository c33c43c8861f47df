#include "wmw/figures.hpp"

#include "wmw/json_io.hpp"
#include "wmw/power.hpp"

namespace wmw {

void write_deficiency_csv(std::ostream& out) {
    out << "omega,deficiency\n";
    for (int k = 1; k <= 99; ++k) {
        const double omega = k / 100.0;
        out << format_number(omega) << ',' << format_number(deficiency_symmetric(omega)) << '\n';
    }
}

CaseStudy epping_case_study(double epsilon) {
    CaseStudy cs{make_student_t(3.0, 17.0, 2.8), make_chisquare(14.0), 67, {}};
    cs.report = optimal_design(cs.F, cs.G, cs.total, 0.05, Side::OneSidedUpper, epsilon);
    return cs;
}

std::vector<CurvePoint> grid_curve(const ExceedanceSummary& integrals, long total, double alpha, Side side,
                                   double epsilon) {
    std::vector<CurvePoint> curve;
    for (long m : design_grid(total, epsilon)) {
        const Design d(m, total - m);
        curve.push_back({d.omega(), m, d.n(), wmw_power(integrals, d, alpha, side).approxPower});
    }
    return curve;
}

std::uint64_t point_seed(std::uint64_t seed, std::size_t scenario, long m) {
    return seed + 1'000'003ULL * scenario + static_cast<std::uint64_t>(m);
}

std::vector<SimulationResult> simulate_curve(const DistributionSpec& F, const DistributionSpec& G,
                                             const std::vector<CurvePoint>& curve, double alpha, Side side,
                                             std::uint64_t trials, std::uint64_t seed, TestKind test,
                                             std::size_t scenario_index) {
    std::vector<SimulationResult> out;
    out.reserve(curve.size());
    for (const auto& p : curve) {
        SimulationPlan plan;
        plan.F = F;
        plan.G = G;
        plan.design = Design(p.m, p.n);
        plan.alpha = alpha;
        plan.side = side;
        plan.trials = trials;
        plan.seed = point_seed(seed, scenario_index, p.m);
        out.push_back(simulate_power(plan, test));
    }
    return out;
}

void write_curve_csv(std::ostream& out, const std::vector<CurvePoint>& curve,
                     const std::vector<SimulationResult>* mc) {
    out << "omega,m,n,power_approx";
    if (mc) out << ",power_mc,mc_se";
    out << '\n';
    for (std::size_t i = 0; i < curve.size(); ++i) {
        const auto& p = curve[i];
        out << format_number(p.omega) << ',' << p.m << ',' << p.n << ',' << format_number(p.power);
        if (mc) out << ',' << format_number((*mc)[i].rejectionRate) << ',' << format_number((*mc)[i].standardError);
        out << '\n';
    }
}

void write_power_curves_csv(std::ostream& out, const ScenarioFile& file, const CurveRunOptions& options) {
    const bool with_mc = options.trials > 0;
    out << "scenario,panel,N,alpha,omega,m,n,power_approx";
    if (with_mc) out << ",power_mc,mc_se";
    out << '\n';
    for (std::size_t s = 0; s < file.scenarios.size(); ++s) {
        const Scenario& sc = file.scenarios[s];
        const auto curve = grid_curve(pair_integrals(sc.F, sc.G), sc.total, sc.alpha, sc.side, options.epsilon);
        std::vector<SimulationResult> mc;
        if (with_mc) {
            mc = simulate_curve(sc.F, sc.G, curve, sc.alpha, sc.side, sc.trials.value_or(options.trials),
                                sc.seed.value_or(options.seed), options.test, s);
        }
        for (std::size_t i = 0; i < curve.size(); ++i) {
            const auto& p = curve[i];
            out << sc.name << ',' << sc.panel << ',' << sc.total << ',' << format_number(sc.alpha) << ','
                << format_number(p.omega) << ',' << p.m << ',' << p.n << ',' << format_number(p.power);
            if (with_mc) out << ',' << format_number(mc[i].rejectionRate) << ',' << format_number(mc[i].standardError);
            out << '\n';
        }
    }
}

} // namespace wmw
