#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

#include "ndsr/graph.hpp"

namespace ndsr::oracles {

namespace {

struct DfsState {
    const Instance* inst = nullptr;
    int k = 0;
    const std::vector<double>* costs = nullptr;    // optional override
    const std::vector<char>* enabled = nullptr;    // optional mask
    std::vector<char> visited;
    std::vector<int> chain;
    std::vector<double> weight;
    double cost = 0.0;
    std::function<void(const std::vector<int>&, double)> emit;
};

void dfs(DfsState& s, int node) {
    const Instance& inst = *s.inst;
    if (node == inst.commodities[s.k].sink) {
        s.emit(s.chain, s.cost);
        return;
    }
    for (int a = 0; a < inst.num_arcs(); ++a) {
        if (inst.arcs[a].tail != node) continue;
        if (s.enabled && !(*s.enabled)[a]) continue;
        int v = inst.arcs[a].head;
        if (s.visited[v]) continue;
        bool ok = true;
        for (int m = 0; m < inst.num_metrics; ++m)
            if (s.weight[m] + inst.weight(s.k, a, m) >
                inst.commodities[s.k].limit[m] + kWeightTol) {
                ok = false;
                break;
            }
        if (!ok) continue;
        s.visited[v] = 1;
        s.chain.push_back(a);
        for (int m = 0; m < inst.num_metrics; ++m) s.weight[m] += inst.weight(s.k, a, m);
        double c = s.costs ? (*s.costs)[a] : inst.cost(s.k, a);
        s.cost += c;
        dfs(s, v);
        s.cost -= c;
        for (int m = 0; m < inst.num_metrics; ++m) s.weight[m] -= inst.weight(s.k, a, m);
        s.chain.pop_back();
        s.visited[v] = 0;
    }
}

DfsState make_state(const Instance& inst, int k) {
    DfsState s;
    s.inst = &inst;
    s.k = k;
    s.visited.assign(inst.num_nodes, 0);
    s.visited[inst.commodities[k].source] = 1;
    s.weight.assign(inst.num_metrics, 0.0);
    return s;
}

}  // namespace

std::vector<Path> dfs_enumerate(const Instance& inst, int k) {
    std::vector<Path> out;
    DfsState s = make_state(inst, k);
    s.emit = [&](const std::vector<int>& chain, double) {
        out.push_back(make_path(inst, k, chain));
    };
    dfs(s, inst.commodities[k].source);
    std::sort(out.begin(), out.end(), path_less);
    return out;
}

std::optional<double> dfs_min_cost(const Instance& inst, int k,
                                   const std::vector<double>& arc_costs,
                                   const std::vector<char>& enabled) {
    std::optional<double> best;
    DfsState s = make_state(inst, k);
    s.costs = &arc_costs;
    s.enabled = &enabled;
    s.emit = [&](const std::vector<int>&, double cost) {
        if (!best || cost < *best) best = cost;
    };
    dfs(s, inst.commodities[k].source);
    return best;
}

std::vector<double> bellman_sink_distances(const Instance& inst, int sink,
                                           const std::vector<double>& lengths) {
    std::vector<double> dist(inst.num_nodes, kInf);
    dist[sink] = 0.0;
    for (int round = 0; round < inst.num_nodes; ++round) {
        bool changed = false;
        for (int a = 0; a < inst.num_arcs(); ++a) {
            double cand = lengths[a] + dist[inst.arcs[a].head];
            if (cand < dist[inst.arcs[a].tail] - 1e-15) {
                dist[inst.arcs[a].tail] = cand;
                changed = true;
            }
        }
        if (!changed) break;
    }
    return dist;
}

double exact_toy_solver(const Instance& inst, std::int64_t max_combinations) {
    const int nk = inst.num_commodities();
    std::vector<std::vector<Path>> paths(nk);
    double combos = 1.0;
    for (int k = 0; k < nk; ++k) {
        paths[k] = dfs_enumerate(inst, k);
        if (paths[k].empty()) return kInf;
        combos *= static_cast<double>(paths[k].size());
    }
    if (combos > static_cast<double>(max_combinations))
        throw OracleSizeError("exact_toy_solver: cross product too large");

    double best = kInf;
    std::vector<int> used(inst.num_arcs(), 0);
    std::function<void(int, double)> recurse = [&](int k, double partial) {
        if (partial >= best - 1e-12) return;  // all additions are nonnegative
        if (k == nk) {
            best = partial;
            return;
        }
        for (const Path& p : paths[k]) {
            double added = p.cost;
            for (int a : p.arcs)
                if (used[a]++ == 0) added += inst.arcs[a].activation_cost;
            recurse(k + 1, partial + added);
            for (int a : p.arcs) --used[a];
        }
    };
    recurse(0, 0.0);
    return best;
}

std::optional<double> lp_vertex_optimum(const lp::LpModel& model) {
    const int n = model.num_cols();
    const int m = model.num_rows();
    if (n > 10 || m > 10) throw OracleSizeError("lp_vertex_optimum: model too large");

    // dense row-major copy
    std::vector<std::vector<double>> A(m, std::vector<double>(n, 0.0));
    for (int j = 0; j < n; ++j)
        for (const auto& e : model.cols[j]) A[e.index][j] += e.value;

    auto feasible = [&](const std::vector<double>& x) {
        for (int j = 0; j < n; ++j)
            if (x[j] < model.lower[j] - 1e-7 || x[j] > model.upper[j] + 1e-7) return false;
        for (int i = 0; i < m; ++i) {
            double v = 0.0;
            for (int j = 0; j < n; ++j) v += A[i][j] * x[j];
            switch (model.sense[i]) {
                case lp::Sense::LE:
                    if (v > model.rhs[i] + 1e-7) return false;
                    break;
                case lp::Sense::GE:
                    if (v < model.rhs[i] - 1e-7) return false;
                    break;
                case lp::Sense::EQ:
                    if (std::abs(v - model.rhs[i]) > 1e-7) return false;
                    break;
            }
        }
        return true;
    };

    std::optional<double> best;
    auto consider = [&](const std::vector<double>& x) {
        if (!feasible(x)) return;
        double obj = 0.0;
        for (int j = 0; j < n; ++j) obj += model.obj[j] * x[j];
        if (!best || obj < *best) best = obj;
    };

    // iterate over free-variable subsets and tight-row subsets of equal size
    for (int fmask = 0; fmask < (1 << n); ++fmask) {
        std::vector<int> free_vars;
        for (int j = 0; j < n; ++j)
            if (fmask & (1 << j)) free_vars.push_back(j);
        int f = static_cast<int>(free_vars.size());
        std::vector<int> fixed_vars;
        for (int j = 0; j < n; ++j)
            if (!(fmask & (1 << j))) fixed_vars.push_back(j);

        for (int rmask = 0; rmask < (1 << m); ++rmask) {
            std::vector<int> tight;
            for (int i = 0; i < m; ++i)
                if (rmask & (1 << i)) tight.push_back(i);
            if (static_cast<int>(tight.size()) != f) continue;

            for (int bmask = 0; bmask < (1 << fixed_vars.size()); ++bmask) {
                std::vector<double> x(n, 0.0);
                bool skip = false;
                for (std::size_t t = 0; t < fixed_vars.size(); ++t) {
                    int j = fixed_vars[t];
                    double v = (bmask & (1 << t)) ? model.upper[j] : model.lower[j];
                    if (!std::isfinite(v)) { skip = true; break; }
                    x[j] = v;
                }
                if (skip) continue;
                if (f > 0) {
                    // solve tight rows for the free variables (Gaussian elim.)
                    std::vector<std::vector<double>> M(f, std::vector<double>(f + 1, 0.0));
                    for (int t = 0; t < f; ++t) {
                        int i = tight[t];
                        double rhs = model.rhs[i];
                        for (int j : fixed_vars) rhs -= A[i][j] * x[j];
                        for (int c = 0; c < f; ++c) M[t][c] = A[i][free_vars[c]];
                        M[t][f] = rhs;
                    }
                    bool singular = false;
                    for (int c = 0; c < f && !singular; ++c) {
                        int piv = -1;
                        double pv = 1e-10;
                        for (int r = c; r < f; ++r)
                            if (std::abs(M[r][c]) > pv) { pv = std::abs(M[r][c]); piv = r; }
                        if (piv < 0) { singular = true; break; }
                        std::swap(M[c], M[piv]);
                        for (int r = 0; r < f; ++r) {
                            if (r == c) continue;
                            double factor = M[r][c] / M[c][c];
                            for (int cc = c; cc <= f; ++cc) M[r][cc] -= factor * M[c][cc];
                        }
                    }
                    if (singular) continue;
                    for (int c = 0; c < f; ++c) x[free_vars[c]] = M[c][f] / M[c][c];
                }
                consider(x);
            }
        }
    }
    return best;
}

Instance make_random_toy(std::uint64_t seed, const ToyOptions& opts) {
    Rng structure = Rng::substream(seed, 1);
    Rng cost_rng = Rng::substream(seed, 2);
    Rng weight_rng = Rng::substream(seed, 3);
    Rng commodity_rng = Rng::substream(seed, 4);
    Rng limit_rng = Rng::substream(seed, 5);

    Instance inst;
    inst.name = "toy-" + std::to_string(seed);
    inst.num_nodes = static_cast<int>(structure.uniform_int(3, opts.max_nodes));
    inst.num_metrics = static_cast<int>(structure.uniform_int(0, 2));

    const int max_pairs = inst.num_nodes * (inst.num_nodes - 1);
    int target_arcs =
        static_cast<int>(structure.uniform_int(inst.num_nodes, std::min(opts.max_arcs, max_pairs)));
    std::set<std::pair<int, int>> chosen;
    while (static_cast<int>(chosen.size()) < target_arcs) {
        int t = static_cast<int>(structure.uniform_int(0, inst.num_nodes - 1));
        int h = static_cast<int>(structure.uniform_int(0, inst.num_nodes - 1));
        if (t == h) continue;
        if (chosen.insert({t, h}).second) inst.arcs.push_back({t, h, 0.0});
    }
    for (Arc& a : inst.arcs) a.activation_cost = static_cast<double>(structure.uniform_int(0, 20));

    const int nk = static_cast<int>(commodity_rng.uniform_int(1, opts.max_commodities));
    const int na = inst.num_arcs();

    inst.shared_costs = cost_rng.uniform() < 0.5;
    inst.flow_cost.assign(nk, std::vector<double>(na, 0.0));
    for (int k = 0; k < nk; ++k) {
        if (inst.shared_costs && k > 0) {
            inst.flow_cost[k] = inst.flow_cost[0];
            continue;
        }
        for (int a = 0; a < na; ++a)
            inst.flow_cost[k][a] = opts.positive_flow_costs
                                       ? cost_rng.uniform(0.1, 10.0)
                                       : static_cast<double>(cost_rng.uniform_int(0, 10));
    }

    inst.shared_weights = weight_rng.uniform() < 0.5;
    inst.weight_data.assign(static_cast<std::size_t>(nk) * na * inst.num_metrics, 0.0);
    for (int k = 0; k < nk; ++k)
        for (int a = 0; a < na; ++a)
            for (int m = 0; m < inst.num_metrics; ++m) {
                double w = (inst.shared_weights && k > 0)
                               ? inst.weight_data[(static_cast<std::size_t>(0) * na + a) *
                                                      inst.num_metrics + m]
                               : static_cast<double>(weight_rng.uniform_int(1, 9));
                inst.weight_data[(static_cast<std::size_t>(k) * na + a) * inst.num_metrics + m] = w;
            }

    // commodities: pick connected endpoints; optionally derive limits from an
    // actual path so the commodity is feasible by construction
    for (int k = 0; k < nk; ++k) {
        Commodity com;
        std::vector<int> path_arcs;
        for (int attempt = 0; attempt < 50; ++attempt) {
            int s = static_cast<int>(commodity_rng.uniform_int(0, inst.num_nodes - 1));
            // first simple path found by arc-ordered DFS
            std::vector<char> vis(inst.num_nodes, 0);
            std::vector<int> chain;
            std::function<bool(int, int)> walk = [&](int node, int goal) {
                if (node == goal) return true;
                for (int a = 0; a < na; ++a) {
                    if (inst.arcs[a].tail != node || vis[inst.arcs[a].head]) continue;
                    vis[inst.arcs[a].head] = 1;
                    chain.push_back(a);
                    if (walk(inst.arcs[a].head, goal)) return true;
                    chain.pop_back();
                }
                return false;
            };
            std::vector<int> reach;
            for (int v = 0; v < inst.num_nodes; ++v) {
                if (v == s) continue;
                vis.assign(inst.num_nodes, 0);
                vis[s] = 1;
                chain.clear();
                if (walk(s, v)) reach.push_back(v);
            }
            if (reach.empty()) continue;
            int t = reach[commodity_rng.uniform_int(0, static_cast<int>(reach.size()) - 1)];
            vis.assign(inst.num_nodes, 0);
            vis[s] = 1;
            chain.clear();
            walk(s, t);
            com.source = s;
            com.sink = t;
            path_arcs = chain;
            break;
        }
        if (com.source < 0) {  // pathological graph: fall back to arc 0
            com.source = inst.arcs[0].tail;
            com.sink = inst.arcs[0].head;
            path_arcs = {0};
        }
        for (int m = 0; m < inst.num_metrics; ++m) {
            if (opts.force_feasible) {
                double w = 0.0;
                for (int a : path_arcs) w += inst.weight(k, a, m);
                com.limit.push_back(w * limit_rng.uniform(1.0, 1.6) + 1.0);
            } else {
                com.limit.push_back(static_cast<double>(limit_rng.uniform_int(3, 30)));
            }
        }
        inst.commodities.push_back(com);
    }
    return inst;
}

}  // namespace ndsr::oracles
