#pragma once

// The two small worked instances used throughout the suites.

#include "ndsr/instance.hpp"

namespace ndsr::fixtures {

/// Three nodes s=0, 1, t=2; one commodity s->t, one metric with W=2, no
/// flow costs. Arcs (tail, head, F, w): (s,1,0,2), (s,t,1,1), (1,t,0,1).
/// The only feasible path is {(s,t)} with activation cost 1, while the
/// arc-flow LP relaxation can split flow half/half for cost 0.5.
inline Instance figure1() {
    Instance inst;
    inst.name = "figure1";
    inst.num_nodes = 3;
    inst.num_metrics = 1;
    inst.arcs = {{0, 1, 0.0}, {0, 2, 1.0}, {1, 2, 0.0}};
    inst.commodities = {{0, 2, {2.0}}};
    inst.shared_costs = true;
    inst.shared_weights = true;
    inst.flow_cost = {{0.0, 0.0, 0.0}};
    inst.weight_data = {2.0, 1.0, 1.0};
    return inst;
}

/// Twelve nodes, fifteen arcs, three commodities with two disjoint-route
/// choices each. The three middle arcs (3,6), (4,7), (5,8) cost 1, the rest
/// cost 0; no flow costs and a single slack metric. The path LP splits each
/// commodity half/half for cost 1.5, while any integer solution pays for at
/// least two middle arcs.
///
/// Node ids: s1=0, s2=1, s3=2, 3..8 as drawn, t2=9, t3=10, t1=11.
inline Instance figure2() {
    Instance inst;
    inst.name = "figure2";
    inst.num_nodes = 12;
    inst.num_metrics = 1;
    inst.arcs = {
        {0, 3, 0.0},   // 0: s1 -> 3
        {0, 5, 0.0},   // 1: s1 -> 5
        {1, 3, 0.0},   // 2: s2 -> 3
        {1, 4, 0.0},   // 3: s2 -> 4
        {2, 4, 0.0},   // 4: s3 -> 4
        {2, 5, 0.0},   // 5: s3 -> 5
        {3, 6, 1.0},   // 6: the costly middle arcs
        {4, 7, 1.0},   // 7
        {5, 8, 1.0},   // 8
        {6, 11, 0.0},  // 9:  6 -> t1
        {6, 9, 0.0},   // 10: 6 -> t2
        {7, 9, 0.0},   // 11: 7 -> t2
        {7, 10, 0.0},  // 12: 7 -> t3
        {8, 10, 0.0},  // 13: 8 -> t3
        {8, 11, 0.0},  // 14: 8 -> t1
    };
    inst.commodities = {{0, 11, {100.0}}, {1, 9, {100.0}}, {2, 10, {100.0}}};
    inst.shared_costs = true;
    inst.shared_weights = true;
    inst.flow_cost = {std::vector<double>(15, 0.0), std::vector<double>(15, 0.0),
                      std::vector<double>(15, 0.0)};
    inst.weight_data.assign(static_cast<std::size_t>(3) * 15 * 1, 1.0);
    return inst;
}

/// Arc ids of the costly middle arcs in figure2().
inline constexpr int kFig2Mid36 = 6;
inline constexpr int kFig2Mid47 = 7;
inline constexpr int kFig2Mid58 = 8;

}  // namespace ndsr::fixtures
