#include "ndsr/csp.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

#include "ndsr/graph.hpp"
#include "label_arena.hpp"

namespace ndsr {

bool dominates(const Label& l1, const Label& l2) {
    if (l1.node != l2.node) throw std::invalid_argument("dominates: labels at different nodes");
    if (l1.weights.size() != l2.weights.size())
        throw std::invalid_argument("dominates: metric dimensions differ");
    if (l1.cost > l2.cost) return false;
    bool strict = l1.cost < l2.cost;
    for (std::size_t m = 0; m < l1.weights.size(); ++m) {
        if (l1.weights[m] > l2.weights[m]) return false;
        if (l1.weights[m] < l2.weights[m]) strict = true;
    }
    if (strict) return true;
    return l1.id < l2.id;  // exact tie: the earlier label survives
}

namespace {

// Dominance on arena records; comparisons are exact, so noise can only make
// us keep an extra label, never drop a needed one.
bool rec_dominates(double c1, const double* w1, std::int64_t id1, double c2, const double* w2,
                   std::int64_t id2, int nm) {
    if (c1 > c2) return false;
    bool strict = c1 < c2;
    for (int m = 0; m < nm; ++m) {
        if (w1[m] > w2[m]) return false;
        if (w1[m] < w2[m]) strict = true;
    }
    return strict || id1 < id2;
}

}  // namespace

CspResult constrained_shortest_path(const Instance& inst, const CspQuery& query) {
    const int k = query.commodity;
    const Commodity& com = inst.commodities[k];
    const int nm = inst.num_metrics;
    const auto& out = inst.out_arcs();

    const std::vector<double>& costs =
        query.arc_costs.empty() ? inst.flow_cost[k] : query.arc_costs;
    if (costs.size() != static_cast<std::size_t>(inst.num_arcs()))
        throw std::invalid_argument("csp: arc cost override has wrong length");
    const std::vector<double>& limits = query.limits.empty() ? com.limit : query.limits;
    if (limits.size() != static_cast<std::size_t>(nm))
        throw std::invalid_argument("csp: limit override has wrong length");
    if (!query.allow_negative_costs)
        for (double c : costs)
            if (c < -1e-12) throw std::invalid_argument("csp: negative arc cost without opt-in");

    std::vector<char> enabled(inst.num_arcs(), 1);
    for (int a : query.forbidden_arcs) enabled[a] = 0;

    // Per-metric and cost lower bounds to the sink, on the enabled arc set.
    std::vector<std::vector<double>> wbound;
    if (query.prune_by_sink_bounds) {
        std::vector<double> lengths(inst.num_arcs());
        for (int m = 0; m < nm; ++m) {
            for (int a = 0; a < inst.num_arcs(); ++a) lengths[a] = inst.weight(k, a, m);
            wbound.push_back(single_sink_distances(inst, com.sink, lengths, &enabled));
        }
    }
    std::vector<double> cbound;
    const bool cost_prune = query.cost_bound_pruning && !query.allow_negative_costs;
    if (cost_prune) cbound = single_sink_distances(inst, com.sink, costs, &enabled);

    detail::LabelArena arena(inst.num_nodes, nm);
    std::vector<std::vector<std::int64_t>> by_node(inst.num_nodes);  // sorted by (cost, id)
    std::vector<std::vector<std::int64_t>> pending(inst.num_nodes);
    std::vector<std::int64_t> at_sink;
    std::deque<int> queue;
    std::vector<char> queued(inst.num_nodes, 0);
    double upper = kInf;
    std::int64_t dominated_count = 0;

    std::int64_t root = arena.push_root(com.source);
    by_node[com.source].push_back(root);
    pending[com.source].push_back(root);
    queue.push_back(com.source);
    queued[com.source] = 1;

    std::vector<double> cw(nm);
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        queued[u] = 0;
        std::vector<std::int64_t> todo;
        todo.swap(pending[u]);
        for (std::int64_t li : todo) {
            if (arena.rec(li).marked) continue;  // dominated while waiting
            arena.rec(li).marked = true;
            const double lcost = arena.rec(li).cost;
            for (int a : out[u]) {
                if (!enabled[a]) continue;
                const int v = inst.arcs[a].head;
                if (arena.visited(li, v)) continue;
                const double* lw = arena.weights_of(li);
                bool ok = true;
                for (int m = 0; m < nm; ++m) {
                    cw[m] = lw[m] + inst.weight(k, a, m);
                    if (cw[m] > limits[m] + kWeightTol) { ok = false; break; }
                }
                if (!ok) continue;
                if (query.prune_by_sink_bounds) {
                    for (int m = 0; m < nm; ++m)
                        if (cw[m] + wbound[m][v] > limits[m] + kWeightTol) { ok = false; break; }
                    if (!ok) continue;
                }
                const double ncost = lcost + costs[a];
                if (cost_prune && ncost + cbound[v] > upper) continue;

                std::int64_t ni = arena.push_child(li, v, a, ncost);
                double* nw = arena.weights_of(ni);
                for (int m = 0; m < nm; ++m) nw[m] = cw[m];

                bool is_dominated = false;
                if (query.use_dominance) {
                    auto& list = by_node[v];
                    // Existing labels are all older, so on exact ties they win.
                    for (std::int64_t oi : list) {
                        const auto& orec = arena.rec(oi);
                        if (orec.cost > ncost) break;
                        if (rec_dominates(orec.cost, arena.weights_of(oi), oi, ncost, nw, ni, nm)) {
                            is_dominated = true;
                            break;
                        }
                    }
                    // The new label may retire older, worse ones.
                    for (auto it = list.rbegin(); it != list.rend(); ++it) {
                        const auto& orec = arena.rec(*it);
                        if (orec.cost < ncost) break;
                        if (!orec.marked &&
                            rec_dominates(ncost, nw, ni, orec.cost, arena.weights_of(*it), *it, nm)) {
                            arena.rec(*it).marked = true;
                            ++dominated_count;
                        }
                    }
                    auto pos = std::upper_bound(list.begin(), list.end(), ncost,
                                                [&](double c, std::int64_t idx) {
                                                    return c < arena.rec(idx).cost;
                                                });
                    list.insert(pos, ni);
                }
                if (is_dominated) {
                    arena.rec(ni).marked = true;
                    ++dominated_count;
                    continue;
                }
                if (v == com.sink) {
                    at_sink.push_back(ni);
                    upper = std::min(upper, ncost);
                } else {
                    pending[v].push_back(ni);
                    if (!queued[v]) { queue.push_back(v); queued[v] = 1; }
                }
            }
        }
    }

    CspResult result;
    result.labels_created = arena.size();
    result.labels_dominated = dominated_count;

    double best = kInf;
    for (std::int64_t li : at_sink)
        if (!arena.rec(li).marked) best = std::min(best, arena.rec(li).cost);
    if (best == kInf) return result;

    std::vector<int> best_chain;
    for (std::int64_t li : at_sink) {
        if (arena.rec(li).marked || arena.rec(li).cost != best) continue;
        std::vector<int> chain = arena.arc_chain(li);
        if (best_chain.empty() || chain < best_chain) best_chain = std::move(chain);
    }
    result.path = make_path(inst, k, best_chain);
    result.objective = best;
    return result;
}

}  // namespace ndsr
