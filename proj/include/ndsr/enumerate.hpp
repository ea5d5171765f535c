#pragma once

#include <cstdint>
#include <vector>

#include "ndsr/instance.hpp"

namespace ndsr {

/// Raised when an enumeration exceeds its live-label cap; callers are
/// expected to fall back to column generation instead of enumerating.
class EnumerationCapError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct EnumerateOptions {
    bool prune = true;                       // sink-distance feasibility pruning
    std::int64_t max_labels = 50'000'000;    // per-commodity live-label cap
};

/// d[v * num_metrics + m] = shortest distance from v to the sink of
/// commodity k using the metric-m weights as lengths; +inf if unreachable.
std::vector<double> sink_bounds(const Instance& inst, int k);

/// All metric-feasible simple source-to-sink paths of commodity k, in
/// canonical order (lexicographic by arc-id sequence). The prune flag must
/// not change the returned set, only the amount of work done.
std::vector<Path> enumerate_feasible_paths(const Instance& inst, int k,
                                           const EnumerateOptions& opts = {});

struct PathCounts {
    std::vector<std::int64_t> per_commodity;
    std::int64_t total = 0;
};

/// Feasible-path counts for every commodity. Commodities are independent,
/// so the loop runs under OpenMP when `parallel` is set; results are
/// identical either way (the serial variant is the reference in tests).
PathCounts count_all_paths(const Instance& inst, const EnumerateOptions& opts = {},
                           bool parallel = true);

/// Full enumeration for every commodity, same parallelism contract.
std::vector<std::vector<Path>> enumerate_all(const Instance& inst,
                                             const EnumerateOptions& opts = {},
                                             bool parallel = true);

}  // namespace ndsr
