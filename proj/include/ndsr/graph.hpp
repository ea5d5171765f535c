#pragma once

#include <limits>
#include <span>
#include <vector>

#include "ndsr/instance.hpp"

namespace ndsr {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Shortest distance from every node to `sink` under nonnegative arc
/// lengths (Dijkstra on the reversed graph). Arcs with `enabled[a] == 0`
/// are skipped when `enabled` is non-null. Unreachable nodes get +inf.
std::vector<double> single_sink_distances(const Instance& inst, int sink,
                                          std::span<const double> arc_lengths,
                                          const std::vector<char>* enabled = nullptr);

/// Shortest distance from `source` to every node, same conventions.
std::vector<double> single_source_distances(const Instance& inst, int source,
                                            std::span<const double> arc_lengths,
                                            const std::vector<char>* enabled = nullptr);

}  // namespace ndsr
