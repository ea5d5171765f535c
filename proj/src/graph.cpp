#include "ndsr/graph.hpp"

#include <queue>

namespace ndsr {

namespace {

// Plain binary-heap Dijkstra over an adjacency list of (arc length, next node).
std::vector<double> dijkstra(int num_nodes, int origin,
                             const std::vector<std::vector<std::pair<double, int>>>& adj) {
    std::vector<double> dist(num_nodes, kInf);
    using Entry = std::pair<double, int>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    dist[origin] = 0.0;
    heap.push({0.0, origin});
    while (!heap.empty()) {
        auto [d, u] = heap.top();
        heap.pop();
        if (d > dist[u]) continue;
        for (auto [len, v] : adj[u]) {
            double nd = d + len;
            if (nd < dist[v]) {
                dist[v] = nd;
                heap.push({nd, v});
            }
        }
    }
    return dist;
}

}  // namespace

std::vector<double> single_sink_distances(const Instance& inst, int sink,
                                          std::span<const double> arc_lengths,
                                          const std::vector<char>* enabled) {
    std::vector<std::vector<std::pair<double, int>>> radj(inst.num_nodes);
    for (int a = 0; a < inst.num_arcs(); ++a) {
        if (enabled && !(*enabled)[a]) continue;
        radj[inst.arcs[a].head].push_back({arc_lengths[a], inst.arcs[a].tail});
    }
    return dijkstra(inst.num_nodes, sink, radj);
}

std::vector<double> single_source_distances(const Instance& inst, int source,
                                            std::span<const double> arc_lengths,
                                            const std::vector<char>* enabled) {
    std::vector<std::vector<std::pair<double, int>>> adj(inst.num_nodes);
    for (int a = 0; a < inst.num_arcs(); ++a) {
        if (enabled && !(*enabled)[a]) continue;
        adj[inst.arcs[a].tail].push_back({arc_lengths[a], inst.arcs[a].head});
    }
    return dijkstra(inst.num_nodes, source, adj);
}

}  // namespace ndsr
