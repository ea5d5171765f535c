#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ndsr/instance.hpp"

namespace ndsr {

/// A budget-constrained shortest path query. Arc costs default to the
/// commodity's flow costs and may be overridden (pricing passes
/// dual-adjusted costs); forbidden arcs implement branching decisions
/// without copying the instance; limits default to the commodity's W.
struct CspQuery {
    int commodity = 0;
    std::vector<double> arc_costs;    // empty = use flow costs
    std::vector<int> forbidden_arcs;  // arc ids, any order
    std::vector<double> limits;       // empty = use commodity limits
    bool prune_by_sink_bounds = true; // weight-infeasibility pruning
    bool cost_bound_pruning = true;   // needs nonnegative costs; keeps optimum
    bool use_dominance = true;        // disabled only by test harnesses
    bool allow_negative_costs = false;
};

struct CspResult {
    std::optional<Path> path;   // cost field holds the flow cost, as always
    double objective = 0.0;     // query-cost total of the returned path
    std::int64_t labels_created = 0;
    std::int64_t labels_dominated = 0;
};

/// Minimum query-cost metric-feasible simple path for the query, or an
/// empty optional when none exists. Ties on the optimum are broken by
/// lexicographic arc-id sequence. Exact under nonnegative query costs.
CspResult constrained_shortest_path(const Instance& inst, const CspQuery& query);

/// Partial-path record exposed for dominance checks in tests and callers
/// that inspect the labeling.
struct Label {
    int node = -1;
    double cost = 0.0;
    std::vector<double> weights;
    std::int64_t id = 0;  // creation order
};

/// True when l1 dominates l2: cost and every weight no larger, and either
/// strictly better somewhere or (on exact equality) created earlier, so of
/// two identical labels exactly one survives. Throws std::invalid_argument
/// when the labels sit at different nodes.
bool dominates(const Label& l1, const Label& l2);

}  // namespace ndsr
