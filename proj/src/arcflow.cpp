#include "ndsr/arcflow.hpp"

#include <cmath>

#include "ndsr/csp.hpp"

namespace ndsr::arcflow {

ArcFlowLp build(const Instance& inst) {
    const int na = inst.num_arcs();
    const int nk = inst.num_commodities();
    const int nm = inst.num_metrics;

    ArcFlowLp af;
    lp::LpModel& m = af.model;
    af.z_offset = 0;
    for (int a = 0; a < na; ++a) m.add_column(inst.arcs[a].activation_cost, 0.0, 1.0, {});
    af.y_offset = na;
    for (int k = 0; k < nk; ++k)
        for (int a = 0; a < na; ++a) m.add_column(inst.cost(k, a), 0.0, 1.0, {});

    // flow conservation per (commodity, node)
    for (int k = 0; k < nk; ++k) {
        const Commodity& com = inst.commodities[k];
        for (int v = 0; v < inst.num_nodes; ++v) {
            std::vector<lp::Entry> row;
            for (int a = 0; a < na; ++a) {
                if (inst.arcs[a].tail == v) row.push_back({af.y_index(k, a, na), 1.0});
                if (inst.arcs[a].head == v) row.push_back({af.y_index(k, a, na), -1.0});
            }
            double rhs = v == com.source ? 1.0 : (v == com.sink ? -1.0 : 0.0);
            m.add_row(lp::Sense::EQ, rhs, row);
        }
    }
    // metric budgets
    for (int k = 0; k < nk; ++k)
        for (int mm = 0; mm < nm; ++mm) {
            std::vector<lp::Entry> row;
            for (int a = 0; a < na; ++a) {
                double w = inst.weight(k, a, mm);
                if (w != 0.0) row.push_back({af.y_index(k, a, na), w});
            }
            m.add_row(lp::Sense::LE, inst.limit(k, mm), row);
        }
    // linking y <= z
    for (int a = 0; a < na; ++a)
        for (int k = 0; k < nk; ++k) {
            std::vector<lp::Entry> row{{af.y_index(k, a, na), 1.0}, {a, -1.0}};
            m.add_row(lp::Sense::LE, 0.0, row);
        }
    return af;
}

ArcFlowResult build_and_solve(const Instance& inst) {
    ArcFlowLp af = build(inst);

    // Seed a primal-feasible all-slack basis by routing every commodity on a
    // feasible path with the touched activations open; skips phase 1. When a
    // commodity has no feasible single path the LP may still be feasible
    // fractionally, so fall back to a cold start.
    const int na = inst.num_arcs();
    lp::Basis start;
    start.status.assign(af.model.num_cols() + af.model.num_rows(), lp::VarStatus::AtLower);
    bool seeded = true;
    for (int k = 0; k < inst.num_commodities() && seeded; ++k) {
        CspQuery q;
        q.commodity = k;
        CspResult r = constrained_shortest_path(inst, q);
        if (!r.path) {
            seeded = false;
            break;
        }
        for (int a : r.path->arcs) {
            start.status[af.y_index(k, a, na)] = lp::VarStatus::AtUpper;
            start.status[a] = lp::VarStatus::AtUpper;
        }
    }
    for (int r = 0; r < af.model.num_rows(); ++r)
        start.status[af.model.num_cols() + r] = lp::VarStatus::Basic;

    lp::LpSolution sol = lp::solve(af.model, seeded ? &start : nullptr);
    ArcFlowResult r;
    r.status = sol.status;
    r.objective = sol.objective;
    if (sol.status != lp::SolveStatus::Optimal) return r;
    r.z.assign(sol.primal.begin(), sol.primal.begin() + na);
    r.y.assign(inst.num_commodities(), std::vector<double>(na, 0.0));
    for (int k = 0; k < inst.num_commodities(); ++k)
        for (int a = 0; a < na; ++a) r.y[k][a] = sol.primal[af.y_index(k, a, na)];
    return r;
}

double mapped_point_violation(const Instance& inst, const std::vector<double>& z,
                              const std::vector<std::vector<std::pair<Path, double>>>& path_values) {
    const int na = inst.num_arcs();
    const int nk = inst.num_commodities();
    std::vector<std::vector<double>> y(nk, std::vector<double>(na, 0.0));
    for (int k = 0; k < nk; ++k)
        for (const auto& [p, v] : path_values[k])
            for (int a : p.arcs) y[k][a] += v;

    double worst = 0.0;
    for (int k = 0; k < nk; ++k) {
        const Commodity& com = inst.commodities[k];
        for (int v = 0; v < inst.num_nodes; ++v) {
            double net = 0.0;
            for (int a = 0; a < na; ++a) {
                if (inst.arcs[a].tail == v) net += y[k][a];
                if (inst.arcs[a].head == v) net -= y[k][a];
            }
            double rhs = v == com.source ? 1.0 : (v == com.sink ? -1.0 : 0.0);
            worst = std::max(worst, std::abs(net - rhs));
        }
        for (int mm = 0; mm < inst.num_metrics; ++mm) {
            double total = 0.0;
            for (int a = 0; a < na; ++a) total += inst.weight(k, a, mm) * y[k][a];
            worst = std::max(worst, total - inst.limit(k, mm));
        }
        for (int a = 0; a < na; ++a) worst = std::max(worst, y[k][a] - z[a]);
    }
    return worst;
}

}  // namespace ndsr::arcflow
