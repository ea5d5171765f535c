#pragma once

#include <cstdint>
#include <string>

#include "ndsr/instance.hpp"

namespace ndsr::gen {

enum class Level : char { L = 'L', M = 'M', H = 'H' };

Level parse_level(char c);

/// A benchmark scenario: network size plus the four L/M/H knobs controlling
/// cost structure and service tightness. `levels` strings look like "MMMM"
/// (beta, gamma, q_avg, delta_q in that order).
struct ScenarioSpec {
    int num_nodes = 30;
    int num_arcs = 120;
    int num_commodities = 90;
    Level beta = Level::M;     // weight-to-activation anticorrelation strength
    Level gamma = Level::M;    // flow-to-activation cost ratio
    Level q_avg = Level::M;    // center of the q-th shortest path rank
    Level delta_q = Level::M;  // width of the rank interval
    std::uint64_t seed = 1;
    double grid_width = 100.0;
    double grid_height = 100.0;

    static ScenarioSpec from_levels(int nodes, int arcs, int commodities,
                                    const std::string& levels, std::uint64_t seed);
    std::string scenario_name() const;  // "30/120/90/MMMM"
    std::string instance_name() const;  // "30/120/90/MMMM#seed"
};

class SpecError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Concrete values behind the levels.
double gamma_value(Level);    // 0.1 / 0.5 / 1.0
double beta_value(Level);     // 0.5 / 1.0 / 2.0
int q_avg_value(Level);       // 3 / 6 / 12
int delta_q_value(Level);     // 0 / 4 / 8

/// Builds a random strongly connected instance: nodes on a grid, a spanning
/// arborescence plus its reverse plus random arcs, distance-driven
/// activation costs, anticorrelated metric weights (|M| = 2) and service
/// limits taken from q-th shortest path lengths. Identical scenarios and
/// seeds always produce identical instances.
Instance generate(const ScenarioSpec& spec);

/// Weight of the q-th shortest simple source-to-sink path of commodity k
/// under metric m (deviation-based ranking). If fewer than q simple paths
/// exist, the longest one's weight. Throws SpecError when no path exists.
double kth_shortest_weight(const Instance& inst, int k, int m, int q);

/// Returns a copy with every limit multiplied by alpha (alpha >= 1).
Instance scale_limits(const Instance& inst, double alpha);

}  // namespace ndsr::gen
