#include "ndsr/validate.hpp"

#include <cmath>
#include <set>

#include "ndsr/csp.hpp"

namespace ndsr {

ValidationReport validate_instance(const Instance& inst) {
    ValidationReport report;
    auto issue = [&](const std::string& s) { report.structural_issues.push_back(s); };

    std::set<std::pair<int, int>> seen;
    for (int a = 0; a < inst.num_arcs(); ++a) {
        const Arc& arc = inst.arcs[a];
        if (arc.tail < 0 || arc.tail >= inst.num_nodes || arc.head < 0 ||
            arc.head >= inst.num_nodes)
            issue("arc " + std::to_string(a) + ": endpoint out of range");
        else if (arc.tail == arc.head)
            issue("arc " + std::to_string(a) + ": self-loop");
        else if (!seen.insert({arc.tail, arc.head}).second)
            issue("arc " + std::to_string(a) + ": duplicate of an earlier arc");
        if (!std::isfinite(arc.activation_cost) || arc.activation_cost < 0.0)
            issue("arc " + std::to_string(a) + ": bad activation cost");
    }
    for (int k = 0; k < inst.num_commodities(); ++k) {
        const Commodity& c = inst.commodities[k];
        if (c.source < 0 || c.source >= inst.num_nodes || c.sink < 0 || c.sink >= inst.num_nodes)
            issue("commodity " + std::to_string(k) + ": endpoint out of range");
        else if (c.source == c.sink)
            issue("commodity " + std::to_string(k) + ": source equals sink");
        for (double w : c.limit)
            if (!std::isfinite(w) || w < 0.0)
                issue("commodity " + std::to_string(k) + ": bad limit");
        for (int a = 0; a < inst.num_arcs(); ++a) {
            if (!std::isfinite(inst.cost(k, a)) || inst.cost(k, a) < 0.0)
                issue("commodity " + std::to_string(k) + ": bad flow cost on arc " +
                      std::to_string(a));
            for (int m = 0; m < inst.num_metrics; ++m)
                if (!std::isfinite(inst.weight(k, a, m)) || inst.weight(k, a, m) < 0.0)
                    issue("commodity " + std::to_string(k) + ": bad weight on arc " +
                          std::to_string(a));
        }
    }

    report.commodity_feasible.assign(inst.num_commodities(), 0);
    if (!report.structural_issues.empty()) return report;
    for (int k = 0; k < inst.num_commodities(); ++k) {
        CspQuery q;
        q.commodity = k;
        q.arc_costs.assign(inst.num_arcs(), 0.0);
        report.commodity_feasible[k] = constrained_shortest_path(inst, q).path.has_value();
    }
    return report;
}

}  // namespace ndsr
