#include "ndsr/instance.hpp"

#include <algorithm>

namespace ndsr {

const std::vector<std::vector<int>>& Instance::out_arcs() const {
    if (out_arcs_.empty() && num_nodes > 0) {
        out_arcs_.assign(num_nodes, {});
        for (int a = 0; a < num_arcs(); ++a) out_arcs_[arcs[a].tail].push_back(a);
    }
    return out_arcs_;
}

PathMetrics path_metrics(const Instance& inst, int k, std::span<const int> arc_ids) {
    const Commodity& com = inst.commodities[k];
    PathMetrics pm;
    pm.weights.assign(inst.num_metrics, 0.0);

    int at = com.source;
    std::vector<char> seen(inst.num_nodes, 0);
    seen[at] = 1;
    bool simple = true;
    for (int a : arc_ids) {
        if (a < 0 || a >= inst.num_arcs()) throw BrokenChainError("arc id out of range");
        const Arc& arc = inst.arcs[a];
        if (arc.tail != at) throw BrokenChainError("arcs do not chain tail-to-head");
        at = arc.head;
        if (seen[at]) simple = false;
        seen[at] = 1;
        pm.cost += inst.cost(k, a);
        for (int m = 0; m < inst.num_metrics; ++m) pm.weights[m] += inst.weight(k, a, m);
    }
    if (at != com.sink) throw BrokenChainError("chain does not end at the commodity sink");

    pm.feasible = simple;
    for (int m = 0; m < inst.num_metrics && pm.feasible; ++m)
        if (pm.weights[m] > com.limit[m] + kWeightTol) pm.feasible = false;
    return pm;
}

Path make_path(const Instance& inst, int k, std::vector<int> arc_ids) {
    PathMetrics pm = path_metrics(inst, k, arc_ids);
    Path p;
    p.commodity = k;
    p.arcs = std::move(arc_ids);
    p.cost = pm.cost;
    p.weight_total = std::move(pm.weights);
    return p;
}

}  // namespace ndsr
