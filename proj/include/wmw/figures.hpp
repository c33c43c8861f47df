#pragma once

#include "wmw/design.hpp"
#include "wmw/scenario.hpp"
#include "wmw/simulate.hpp"

#include <cstdint>
#include <ostream>
#include <vector>

namespace wmw {

/// CSV "omega,deficiency" of the closed-form deficiency for omega = 0.01..0.99.
void write_deficiency_csv(std::ostream& out);

/// Cognitive-avoidance case study: t(3, 17, 2.8) for the recovered group
/// against chi-square(14) for the group that did not recover, N = 67,
/// one-sided. omega in the report is the share of the t group.
struct CaseStudy {
    DistributionSpec F;
    DistributionSpec G;
    long total;
    DesignReport report;
};
CaseStudy epping_case_study(double epsilon = 0.1);

/// Normal-approximation power over design_grid(total, epsilon).
std::vector<CurvePoint> grid_curve(const ExceedanceSummary& integrals, long total, double alpha, Side side,
                                   double epsilon);

/// Seed for point m of scenario s. Distinct per point and reproducible.
std::uint64_t point_seed(std::uint64_t seed, std::size_t scenario, long m);

/// Simulated rejection rate at each point of `curve`.
std::vector<SimulationResult> simulate_curve(const DistributionSpec& F, const DistributionSpec& G,
                                             const std::vector<CurvePoint>& curve, double alpha, Side side,
                                             std::uint64_t trials, std::uint64_t seed, TestKind test,
                                             std::size_t scenario_index = 0);

/// CSV "omega,m,n,power_approx[,power_mc,mc_se]"; MC columns only when `mc` is given.
void write_curve_csv(std::ostream& out, const std::vector<CurvePoint>& curve,
                     const std::vector<SimulationResult>* mc);

struct CurveRunOptions {
    std::uint64_t trials = 10000;  // 0 skips the Monte Carlo columns
    std::uint64_t seed = 1;
    TestKind test = TestKind::WmwExact;
    double epsilon = 0.1;
};

/// One CSV for all scenarios: "scenario,panel,N,alpha,omega,m,n,power_approx[,power_mc,mc_se]".
/// Per-scenario trials/seed override the options.
void write_power_curves_csv(std::ostream& out, const ScenarioFile& file, const CurveRunOptions& options);

} // namespace wmw
