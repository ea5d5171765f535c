#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ndsr {

/// Absolute tolerance used for every weight-vs-limit comparison in the
/// library. Kept in one place so enumeration, pricing and validation agree
/// on what "feasible" means.
inline constexpr double kWeightTol = 1e-9;

struct Arc {
    int tail = -1;
    int head = -1;
    double activation_cost = 0.0;  // F_a
};

struct Commodity {
    int source = -1;
    int sink = -1;
    std::vector<double> limit;  // W[m], one entry per metric
};

class BrokenChainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A directed network design instance: arcs with activation costs,
/// commodities with per-metric service limits, and per-commodity arc flow
/// costs and metric weights. Immutable once built; arcs are identified by
/// their 0-based position in `arcs` everywhere in the library.
struct Instance {
    std::string name;
    int num_nodes = 0;
    int num_metrics = 0;
    std::vector<Arc> arcs;
    std::vector<Commodity> commodities;

    // Expanded data, indexed [commodity][arc] and [commodity][arc][metric].
    // When `shared_costs` / `shared_weights` is set the data is identical
    // across commodities and the file format stores a single block.
    std::vector<std::vector<double>> flow_cost;
    std::vector<double> weight_data;  // k-major, then arc, then metric
    bool shared_costs = true;
    bool shared_weights = true;

    int num_arcs() const { return static_cast<int>(arcs.size()); }
    int num_commodities() const { return static_cast<int>(commodities.size()); }

    double cost(int k, int a) const { return flow_cost[k][a]; }
    double weight(int k, int a, int m) const {
        return weight_data[(static_cast<std::size_t>(k) * arcs.size() + a) * num_metrics + m];
    }
    double limit(int k, int m) const { return commodities[k].limit[m]; }

    /// Outgoing arc ids per node, in arc-id order. Built on first use.
    const std::vector<std::vector<int>>& out_arcs() const;

private:
    mutable std::vector<std::vector<int>> out_arcs_;
};

/// A simple source-to-sink path for one commodity with cached totals.
struct Path {
    int commodity = -1;
    std::vector<int> arcs;           // ordered arc ids, tail-to-head chained
    double cost = 0.0;               // sum of flow costs
    std::vector<double> weight_total;  // per metric

    bool operator==(const Path& o) const {
        return commodity == o.commodity && arcs == o.arcs;
    }
};

struct PathMetrics {
    double cost = 0.0;
    std::vector<double> weights;
    bool feasible = false;
};

/// Sums flow cost and per-metric weights of an arc chain for commodity `k`
/// and checks simplicity plus the metric limits. Throws BrokenChainError if
/// the arcs do not chain from the commodity source to its sink.
PathMetrics path_metrics(const Instance& inst, int k, std::span<const int> arcs);

/// Convenience: build a Path (with cached totals) from an arc chain.
Path make_path(const Instance& inst, int k, std::vector<int> arcs);

/// Lexicographic order on the arc-id sequence; the canonical path order.
inline bool path_less(const Path& a, const Path& b) { return a.arcs < b.arcs; }

}  // namespace ndsr
