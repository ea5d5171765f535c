#pragma once

#include "ndsr/instance.hpp"
#include "ndsr/lp.hpp"

namespace ndsr::arcflow {

/// Linear relaxation of the arc-flow model: activation variables z per arc,
/// flow variables y per (commodity, arc), flow conservation per (commodity,
/// node), one metric budget row per (commodity, metric) and linking rows
/// y <= z, everything relaxed to [0, 1].
struct ArcFlowLp {
    lp::LpModel model;
    int z_offset = 0;                      // z columns come first
    int y_offset = 0;                      // then y, commodity-major
    int y_index(int k, int a, int num_arcs) const { return y_offset + k * num_arcs + a; }
};

ArcFlowLp build(const Instance& inst);

struct ArcFlowResult {
    lp::SolveStatus status = lp::SolveStatus::Infeasible;
    double objective = 0.0;
    std::vector<double> z;                 // per arc
    std::vector<std::vector<double>> y;    // [commodity][arc]
};

ArcFlowResult build_and_solve(const Instance& inst);

/// Observation check helper: maps a path-LP point (z, per-path values) to an
/// arc-flow point via y_a^k = sum of x_p over paths through a, and reports
/// the largest constraint violation of the arc-flow relaxation at that point.
double mapped_point_violation(const Instance& inst, const std::vector<double>& z,
                              const std::vector<std::vector<std::pair<Path, double>>>& path_values);

}  // namespace ndsr::arcflow
