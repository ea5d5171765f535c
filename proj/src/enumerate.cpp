#include "ndsr/enumerate.hpp"

#include <algorithm>
#include <deque>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ndsr/graph.hpp"
#include "label_arena.hpp"

namespace ndsr {

std::vector<double> sink_bounds(const Instance& inst, int k) {
    const int nm = inst.num_metrics;
    std::vector<double> d(static_cast<std::size_t>(inst.num_nodes) * nm, 0.0);
    std::vector<double> lengths(inst.num_arcs());
    for (int m = 0; m < nm; ++m) {
        for (int a = 0; a < inst.num_arcs(); ++a) lengths[a] = inst.weight(k, a, m);
        std::vector<double> dm = single_sink_distances(inst, inst.commodities[k].sink, lengths);
        for (int v = 0; v < inst.num_nodes; ++v) d[static_cast<std::size_t>(v) * nm + m] = dm[v];
    }
    return d;
}

std::vector<Path> enumerate_feasible_paths(const Instance& inst, int k,
                                           const EnumerateOptions& opts) {
    const Commodity& com = inst.commodities[k];
    const int nm = inst.num_metrics;
    const auto& out = inst.out_arcs();

    std::vector<double> bounds;
    if (opts.prune) bounds = sink_bounds(inst, k);

    detail::LabelArena arena(inst.num_nodes, nm);
    std::vector<std::vector<std::int64_t>> pending(inst.num_nodes);
    std::vector<std::int64_t> at_sink;
    std::deque<int> queue;
    std::vector<char> queued(inst.num_nodes, 0);

    pending[com.source].push_back(arena.push_root(com.source));
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
            arena.rec(li).marked = true;
            const double lcost = arena.rec(li).cost;
            for (int a : out[u]) {
                int v = inst.arcs[a].head;
                if (arena.visited(li, v)) continue;
                const double* lw = arena.weights_of(li);
                bool ok = true;
                for (int m = 0; m < nm; ++m) {
                    cw[m] = lw[m] + inst.weight(k, a, m);
                    if (cw[m] > com.limit[m] + kWeightTol) { ok = false; break; }
                }
                if (!ok) continue;
                if (opts.prune) {
                    for (int m = 0; m < nm; ++m)
                        if (cw[m] + bounds[static_cast<std::size_t>(v) * nm + m] >
                            com.limit[m] + kWeightTol) { ok = false; break; }
                    if (!ok) continue;
                }
                if (arena.size() >= opts.max_labels)
                    throw EnumerationCapError("label cap exceeded while enumerating commodity " +
                                              std::to_string(k));
                std::int64_t ni = arena.push_child(li, v, a, lcost + inst.cost(k, a));
                double* nw = arena.weights_of(ni);
                for (int m = 0; m < nm; ++m) nw[m] = cw[m];
                if (v == com.sink) {
                    at_sink.push_back(ni);
                } else {
                    pending[v].push_back(ni);
                    if (!queued[v]) { queue.push_back(v); queued[v] = 1; }
                }
            }
        }
    }

    std::vector<Path> paths;
    paths.reserve(at_sink.size());
    for (std::int64_t li : at_sink) {
        Path p;
        p.commodity = k;
        p.arcs = arena.arc_chain(li);
        p.cost = arena.rec(li).cost;
        p.weight_total.assign(arena.weights_of(li), arena.weights_of(li) + nm);
        paths.push_back(std::move(p));
    }
    std::sort(paths.begin(), paths.end(), path_less);
    return paths;
}

std::vector<std::vector<Path>> enumerate_all(const Instance& inst, const EnumerateOptions& opts,
                                             bool parallel) {
    const int nk = inst.num_commodities();
    std::vector<std::vector<Path>> result(nk);
    std::exception_ptr error;
    inst.out_arcs();  // build the adjacency cache before threads share it
    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int k = 0; k < nk; ++k) {
            try {
                result[k] = enumerate_feasible_paths(inst, k, opts);
            } catch (...) {
#pragma omp critical
                if (!error) error = std::current_exception();
            }
        }
    } else {
        for (int k = 0; k < nk; ++k) result[k] = enumerate_feasible_paths(inst, k, opts);
    }
    if (error) std::rethrow_exception(error);
    return result;
}

PathCounts count_all_paths(const Instance& inst, const EnumerateOptions& opts, bool parallel) {
    PathCounts counts;
    auto all = enumerate_all(inst, opts, parallel);
    counts.per_commodity.resize(all.size());
    for (std::size_t k = 0; k < all.size(); ++k) {
        counts.per_commodity[k] = static_cast<std::int64_t>(all[k].size());
        counts.total += counts.per_commodity[k];
    }
    return counts;
}

}  // namespace ndsr
