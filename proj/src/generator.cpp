#include "ndsr/generator.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "ndsr/csp.hpp"
#include "ndsr/graph.hpp"
#include "ndsr/rng.hpp"

namespace ndsr::gen {

Level parse_level(char c) {
    switch (c) {
        case 'L': case 'l': return Level::L;
        case 'M': case 'm': return Level::M;
        case 'H': case 'h': return Level::H;
    }
    throw SpecError(std::string("unknown level '") + c + "' (expected L, M or H)");
}

double gamma_value(Level l) { return l == Level::L ? 0.1 : (l == Level::M ? 0.5 : 1.0); }
double beta_value(Level l) { return l == Level::L ? 0.5 : (l == Level::M ? 1.0 : 2.0); }
int q_avg_value(Level l) { return l == Level::L ? 3 : (l == Level::M ? 6 : 12); }
int delta_q_value(Level l) { return l == Level::L ? 0 : (l == Level::M ? 4 : 8); }

ScenarioSpec ScenarioSpec::from_levels(int nodes, int arcs, int commodities,
                                       const std::string& levels, std::uint64_t seed) {
    if (levels.size() != 4)
        throw SpecError("levels must be four characters (beta gamma q_avg delta_q)");
    ScenarioSpec s;
    s.num_nodes = nodes;
    s.num_arcs = arcs;
    s.num_commodities = commodities;
    s.beta = parse_level(levels[0]);
    s.gamma = parse_level(levels[1]);
    s.q_avg = parse_level(levels[2]);
    s.delta_q = parse_level(levels[3]);
    s.seed = seed;
    return s;
}

std::string ScenarioSpec::scenario_name() const {
    std::string name = std::to_string(num_nodes) + "/" + std::to_string(num_arcs) + "/" +
                       std::to_string(num_commodities) + "/";
    name += static_cast<char>(beta);
    name += static_cast<char>(gamma);
    name += static_cast<char>(q_avg);
    name += static_cast<char>(delta_q);
    return name;
}

std::string ScenarioSpec::instance_name() const {
    return scenario_name() + "#" + std::to_string(seed);
}

namespace {

// Dijkstra that reconstructs the arc chain; deterministic via arc-order
// scans and strict improvement only.
struct DijkstraPath {
    bool found = false;
    double length = 0.0;
    std::vector<int> arcs;
};

DijkstraPath shortest_path(const Instance& inst, const std::vector<double>& lengths, int from,
                           int to, const std::vector<char>& banned_arc,
                           const std::vector<char>& banned_node) {
    const int n = inst.num_nodes;
    std::vector<double> dist(n, kInf);
    std::vector<int> pred_arc(n, -1);
    std::vector<char> done(n, 0);
    dist[from] = 0.0;
    for (int it = 0; it < n; ++it) {
        int u = -1;
        for (int v = 0; v < n; ++v)
            if (!done[v] && dist[v] < kInf && (u < 0 || dist[v] < dist[u])) u = v;
        if (u < 0) break;
        done[u] = 1;
        if (u == to) break;
        for (int a : inst.out_arcs()[u]) {
            if (banned_arc[a]) continue;
            int v = inst.arcs[a].head;
            if (banned_node[v] || done[v]) continue;
            double nd = dist[u] + lengths[a];
            if (nd < dist[v]) {
                dist[v] = nd;
                pred_arc[v] = a;
            }
        }
    }
    DijkstraPath r;
    if (dist[to] == kInf) return r;
    r.found = true;
    r.length = dist[to];
    for (int v = to; v != from;) {
        int a = pred_arc[v];
        r.arcs.push_back(a);
        v = inst.arcs[a].tail;
    }
    std::reverse(r.arcs.begin(), r.arcs.end());
    return r;
}

struct RankedPath {
    double length;
    std::vector<int> arcs;
    bool operator<(const RankedPath& o) const {
        if (length != o.length) return length < o.length;
        return arcs < o.arcs;
    }
};

// Yen's deviation scheme for the q smallest simple-path lengths.
std::vector<RankedPath> yen_paths(const Instance& inst, int k, int m, int q) {
    const Commodity& com = inst.commodities[k];
    std::vector<double> lengths(inst.num_arcs());
    for (int a = 0; a < inst.num_arcs(); ++a) lengths[a] = inst.weight(k, a, m);

    std::vector<char> no_arc(inst.num_arcs(), 0), no_node(inst.num_nodes, 0);
    DijkstraPath first = shortest_path(inst, lengths, com.source, com.sink, no_arc, no_node);
    if (!first.found)
        throw SpecError("no path from " + std::to_string(com.source) + " to " +
                        std::to_string(com.sink));

    std::vector<RankedPath> ranked{{first.length, first.arcs}};
    std::set<RankedPath> candidates;
    while (static_cast<int>(ranked.size()) < q) {
        const std::vector<int> prev = ranked.back().arcs;
        std::vector<char> banned_arc(inst.num_arcs(), 0), banned_node(inst.num_nodes, 0);
        std::vector<int> root;
        double root_len = 0.0;
        int spur_node = com.source;
        for (std::size_t i = 0; i < prev.size(); ++i) {
            // ban the i-th arc of every accepted path sharing this root
            for (const RankedPath& rp : ranked) {
                if (rp.arcs.size() <= i) continue;
                if (std::equal(root.begin(), root.end(), rp.arcs.begin())) banned_arc[rp.arcs[i]] = 1;
            }
            DijkstraPath spur =
                shortest_path(inst, lengths, spur_node, com.sink, banned_arc, banned_node);
            if (spur.found) {
                RankedPath cand;
                cand.length = root_len + spur.length;
                cand.arcs = root;
                cand.arcs.insert(cand.arcs.end(), spur.arcs.begin(), spur.arcs.end());
                bool known = std::any_of(ranked.begin(), ranked.end(), [&](const RankedPath& rp) {
                    return rp.arcs == cand.arcs;
                });
                if (!known) candidates.insert(std::move(cand));
            }
            // advance the root along prev; the old spur node becomes interior
            banned_node[spur_node] = 1;
            root.push_back(prev[i]);
            root_len += lengths[prev[i]];
            spur_node = inst.arcs[prev[i]].head;
            // arc bans are rebuilt per position, node bans accumulate
            std::fill(banned_arc.begin(), banned_arc.end(), 0);
        }
        if (candidates.empty()) break;
        ranked.push_back(*candidates.begin());
        candidates.erase(candidates.begin());
    }
    return ranked;
}

}  // namespace

double kth_shortest_weight(const Instance& inst, int k, int m, int q) {
    if (q < 1) throw SpecError("path rank must be at least 1");
    std::vector<RankedPath> ranked = yen_paths(inst, k, m, q);
    int idx = std::min<int>(q, static_cast<int>(ranked.size())) - 1;
    return ranked[idx].length;
}

Instance generate(const ScenarioSpec& spec) {
    const int nv = spec.num_nodes;
    const int na = spec.num_arcs;
    const int nk = spec.num_commodities;
    if (nv < 2) throw SpecError("need at least two nodes");
    if (na < 2 * (nv - 1))
        throw SpecError("need at least 2(|V|-1) arcs for strong connectivity");
    if (na > nv * (nv - 1)) throw SpecError("more arcs than distinct node pairs");
    if (nk < 1) throw SpecError("need at least one commodity");

    // one substream per stage so later stages never perturb earlier ones
    Rng coord_rng = Rng::substream(spec.seed, 0);
    Rng tree_rng = Rng::substream(spec.seed, 1);
    Rng extra_rng = Rng::substream(spec.seed, 2);
    Rng fcost_rng = Rng::substream(spec.seed, 3);
    Rng ccost_rng = Rng::substream(spec.seed, 4);
    Rng weight_rng = Rng::substream(spec.seed, 5);
    Rng commodity_rng = Rng::substream(spec.seed, 6);
    Rng rank_rng = Rng::substream(spec.seed, 7);

    Instance inst;
    inst.name = spec.instance_name();
    inst.num_nodes = nv;
    inst.num_metrics = 2;

    std::vector<std::pair<double, double>> xy(nv);
    for (auto& [x, y] : xy) {
        x = coord_rng.uniform(0.0, spec.grid_width);
        y = coord_rng.uniform(0.0, spec.grid_height);
    }

    // random recursive tree over a shuffled node order, arcs root-to-leaf
    std::vector<int> order(nv);
    for (int v = 0; v < nv; ++v) order[v] = v;
    for (int i = nv - 1; i > 0; --i)
        std::swap(order[i], order[tree_rng.uniform_int(0, i)]);
    std::set<std::pair<int, int>> used;
    for (int i = 1; i < nv; ++i) {
        int parent = order[tree_rng.uniform_int(0, i - 1)];
        inst.arcs.push_back({parent, order[i], 0.0});
        used.insert({parent, order[i]});
    }
    // reverse arcs make the arborescence strongly connected
    const int tree_count = nv - 1;
    for (int i = 0; i < tree_count; ++i) {
        inst.arcs.push_back({inst.arcs[i].head, inst.arcs[i].tail, 0.0});
        used.insert({inst.arcs[i].head, inst.arcs[i].tail});
    }
    while (static_cast<int>(inst.arcs.size()) < na) {
        int t = static_cast<int>(extra_rng.uniform_int(0, nv - 1));
        int h = static_cast<int>(extra_rng.uniform_int(0, nv - 1));
        if (t == h || used.count({t, h})) continue;
        inst.arcs.push_back({t, h, 0.0});
        used.insert({t, h});
    }

    double f_max = 0.0;
    for (Arc& a : inst.arcs) {
        double dx = xy[a.tail].first - xy[a.head].first;
        double dy = xy[a.tail].second - xy[a.head].second;
        a.activation_cost =
            static_cast<double>(std::llround(std::hypot(dx, dy) * fcost_rng.uniform(0.8, 1.2)));
        f_max = std::max(f_max, a.activation_cost);
    }

    const double gval = gamma_value(spec.gamma);
    inst.shared_costs = true;
    std::vector<double> c_row(na);
    for (int a = 0; a < na; ++a)
        c_row[a] = gval * inst.arcs[a].activation_cost * ccost_rng.uniform(0.8, 1.2);
    inst.flow_cost.assign(nk, c_row);

    // weights anticorrelated with the activation cost, never below 1
    const double bval = beta_value(spec.beta);
    inst.shared_weights = true;
    std::vector<double> w_row(static_cast<std::size_t>(na) * 2);
    for (int a = 0; a < na; ++a)
        for (int m = 0; m < 2; ++m)
            w_row[static_cast<std::size_t>(a) * 2 + m] = std::max(
                1.0, static_cast<double>(std::llround(
                         bval * f_max / (1.0 + inst.arcs[a].activation_cost) *
                         weight_rng.uniform(0.8, 1.2))));
    inst.weight_data.resize(static_cast<std::size_t>(nk) * na * 2);
    for (int k = 0; k < nk; ++k)
        std::copy(w_row.begin(), w_row.end(),
                  inst.weight_data.begin() + static_cast<std::size_t>(k) * na * 2);

    for (int k = 0; k < nk; ++k) {
        Commodity com;
        com.source = static_cast<int>(commodity_rng.uniform_int(0, nv - 1));
        do {
            com.sink = static_cast<int>(commodity_rng.uniform_int(0, nv - 1));
        } while (com.sink == com.source);
        inst.commodities.push_back(com);
    }

    const int qa = q_avg_value(spec.q_avg);
    const int dq = delta_q_value(spec.delta_q);
    for (int k = 0; k < nk; ++k) {
        for (int m = 0; m < 2; ++m) {
            int q = static_cast<int>(rank_rng.uniform_int(qa - dq / 2, qa + dq / 2));
            q = std::max(q, 1);
            inst.commodities[k].limit.push_back(kth_shortest_weight(inst, k, m, q));
        }
        // the per-metric ranks come from different paths, so in rare cases no
        // single path satisfies both limits; lift the limits to an actual
        // path's weights to keep every commodity serviceable
        CspQuery probe;
        probe.commodity = k;
        probe.arc_costs.assign(na, 0.0);
        if (!constrained_shortest_path(inst, probe).path) {
            std::vector<RankedPath> ranked = yen_paths(inst, k, 0, qa);
            const RankedPath& witness = ranked.back();
            for (int m = 0; m < 2; ++m) {
                double w = 0.0;
                for (int a : witness.arcs) w += inst.weight(k, a, m);
                inst.commodities[k].limit[m] = std::max(inst.commodities[k].limit[m], w);
            }
        }
    }
    return inst;
}

Instance scale_limits(const Instance& inst, double alpha) {
    if (alpha < 1.0) throw SpecError("alpha must be at least 1");
    Instance scaled = inst;
    for (Commodity& c : scaled.commodities)
        for (double& w : c.limit) w *= alpha;
    return scaled;
}

}  // namespace ndsr::gen
