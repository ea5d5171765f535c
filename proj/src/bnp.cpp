#include "ndsr/bnp.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <queue>
#include <set>

#include "ndsr/csp.hpp"
#include "ndsr/cuts.hpp"
#include "ndsr/enumerate.hpp"
#include "ndsr/graph.hpp"

namespace ndsr::bnp {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

double prune_tolerance(double upper, double gap_limit_pct) {
    double tol = 1e-6 * (1.0 + std::abs(upper));
    if (gap_limit_pct > 0.0 && std::isfinite(upper))
        tol = std::max(tol, gap_limit_pct / 100.0 * std::abs(upper));
    return tol;
}

struct NodeOrder {
    bool operator()(const BnpNode& a, const BnpNode& b) const {
        if (a.bound != b.bound) return a.bound > b.bound;  // min-heap on bound
        return a.seq > b.seq;                              // FIFO on ties
    }
};

}  // namespace

std::string mode_name(Mode m) {
    switch (m) {
        case Mode::AllPath: return "allpath";
        case Mode::BranchAndPrice: return "bnp";
        case Mode::BranchCutPrice: return "bcp";
    }
    return "?";
}

std::optional<Mode> parse_mode(const std::string& name) {
    if (name == "allpath") return Mode::AllPath;
    if (name == "bnp") return Mode::BranchAndPrice;
    if (name == "bcp") return Mode::BranchCutPrice;
    return std::nullopt;
}

std::string status_name(SolveStatusKind s) {
    switch (s) {
        case SolveStatusKind::Optimal: return "optimal";
        case SolveStatusKind::Feasible: return "feasible";
        case SolveStatusKind::Infeasible: return "infeasible";
        case SolveStatusKind::TimeLimit: return "time-limit";
    }
    return "?";
}

int select_branch_variable(const std::vector<double>& z, const Instance& inst) {
    int best = -1;
    double best_frac = 0.0;
    for (int a = 0; a < inst.num_arcs(); ++a) {
        double v = z[a];
        if (v < 1e-6 || v > 1.0 - 1e-6) continue;
        double score = std::abs(v - 0.5);
        if (best < 0 || score < best_frac - 1e-12 ||
            (score < best_frac + 1e-12 &&
             inst.arcs[a].activation_cost > inst.arcs[best].activation_cost + 1e-12)) {
            best = a;
            best_frac = score;
        }
    }
    return best;
}

IntegralityCheck check_integral_x(const colgen::MasterModel& master, const lp::LpSolution& sol,
                                  double int_tol) {
    const Instance& inst = master.instance();
    IntegralityCheck result;
    result.chosen_cols.assign(inst.num_commodities(), -1);

    std::vector<std::vector<const colgen::MasterModel::PathCol*>> support(inst.num_commodities());
    for (const auto& pc : master.path_cols()) {
        double v = sol.primal[pc.col];
        if (v > int_tol && v < 1.0 - int_tol) result.x_integral = false;
        if (v > int_tol) support[pc.commodity].push_back(&pc);
    }
    for (int k = 0; k < inst.num_commodities(); ++k) {
        const colgen::MasterModel::PathCol* pick = nullptr;
        for (const auto* pc : support[k]) {
            if (!pick) { pick = pc; continue; }
            // cheapest supported path; ties prefer the larger value, then
            // the smaller column id
            double dc = pc->path.cost - pick->path.cost;
            if (dc < -1e-12 ||
                (std::abs(dc) <= 1e-12 &&
                 (sol.primal[pc->col] > sol.primal[pick->col] + 1e-12 ||
                  (std::abs(sol.primal[pc->col] - sol.primal[pick->col]) <= 1e-12 &&
                   pc->col < pick->col))))
                pick = pc;
        }
        if (pick) result.chosen_cols[k] = pick->col;
    }

    // the rounded selection must not change the objective
    double rounded = 0.0;
    for (int j = 0; j < static_cast<int>(inst.num_arcs()); ++j)
        rounded += inst.arcs[j].activation_cost * sol.primal[master.z_col(j)];
    for (const auto& pc : master.path_cols())
        if (result.chosen_cols[pc.commodity] == pc.col) rounded += pc.path.cost;
    if (std::abs(rounded - sol.objective) > 1e-6 * (1.0 + std::abs(sol.objective)))
        result.objective_preserved = false;
    return result;
}

namespace {

struct TreeState {
    const Instance* inst;
    SolveParams params;
    Statistics stats;
    double upper = kInf;
    std::optional<Incumbent> incumbent;
    Clock::time_point t0;
};

Incumbent build_incumbent(const Instance& inst, const std::vector<Path>& paths) {
    Incumbent inc;
    inc.open_arcs.assign(inst.num_arcs(), 0);
    inc.paths = paths;
    double value = 0.0;
    for (int k = 0; k < inst.num_commodities(); ++k) {
        // re-validate against the instance, never trust LP numbers
        PathMetrics pm = path_metrics(inst, k, paths[k].arcs);
        if (!pm.feasible) throw std::logic_error("incumbent path fails instance validation");
        value += pm.cost;
        for (int a : paths[k].arcs) inc.open_arcs[a] = 1;
    }
    for (int a = 0; a < inst.num_arcs(); ++a)
        if (inc.open_arcs[a]) value += inst.arcs[a].activation_cost;
    inc.value = value;
    return inc;
}

void try_incumbent(TreeState& ts, const std::vector<Path>& paths) {
    Incumbent inc = build_incumbent(*ts.inst, paths);
    if (inc.value < ts.upper - 1e-9) {
        ts.upper = inc.value;
        ts.incumbent = std::move(inc);
    }
}

// Round-up heuristic: open every arc at value >= 1/2, route each commodity
// inside the open set, and fall back to activation-penalized costs for
// commodities the open set cannot serve.
void primal_heuristic(TreeState& ts, const lp::LpSolution& sol,
                      const colgen::MasterModel& master) {
    const Instance& inst = *ts.inst;
    if (inst.num_commodities() == 0) {
        try_incumbent(ts, {});
        return;
    }
    std::vector<char> open(inst.num_arcs(), 0);
    for (int a = 0; a < inst.num_arcs(); ++a)
        if (sol.primal[master.z_col(a)] >= 0.5) open[a] = 1;

    std::vector<Path> chosen;
    for (int k = 0; k < inst.num_commodities(); ++k) {
        CspQuery q;
        q.commodity = k;
        for (int a = 0; a < inst.num_arcs(); ++a)
            if (!open[a]) q.forbidden_arcs.push_back(a);
        CspResult r = constrained_shortest_path(inst, q);
        if (!r.path) {
            // stuck: allow closed arcs at their activation price
            CspQuery q2;
            q2.commodity = k;
            q2.arc_costs.resize(inst.num_arcs());
            for (int a = 0; a < inst.num_arcs(); ++a)
                q2.arc_costs[a] = inst.cost(k, a) + (open[a] ? 0.0 : inst.arcs[a].activation_cost);
            r = constrained_shortest_path(inst, q2);
            if (!r.path) return;  // validated instances always have a path
        }
        for (int a : r.path->arcs) open[a] = 1;  // later commodities reuse it
        chosen.push_back(*r.path);
    }
    try_incumbent(ts, chosen);
}

}  // namespace

SolveResult solve(const Instance& inst, const SolveParams& params) {
    TreeState ts;
    ts.inst = &inst;
    ts.params = params;
    ts.t0 = Clock::now();

    SolveResult result;
    result.mode = params.mode;

    colgen::ColgenOptions mopts;
    mopts.pricing_enabled = params.mode != Mode::AllPath;
    mopts.parallel_pricing = params.parallel;
    mopts.lp = params.lp;
    mopts.deadline =
        ts.t0 + std::chrono::duration_cast<Clock::duration>(
                    std::chrono::duration<double>(params.time_limit_s));

    std::optional<colgen::MasterModel> master_box;
    try {
        master_box.emplace(inst, mopts);
    } catch (const colgen::InfeasibleCommodityError&) {
        result.status = SolveStatusKind::Infeasible;
        result.lower = kInf;
        result.upper = kInf;
        result.stats.wall_time_s = seconds_since(ts.t0);
        return result;
    }
    colgen::MasterModel& master = *master_box;

    if (params.mode == Mode::AllPath) {
        EnumerateOptions eopts;
        eopts.max_labels = params.max_enum_labels;
        auto all = enumerate_all(inst, eopts, params.parallel);
        for (const auto& paths : all) {
            ts.stats.path_count += static_cast<std::int64_t>(paths.size());
            for (const Path& p : paths) master.add_path_column(p);
        }
    }

    std::priority_queue<BnpNode, std::vector<BnpNode>, NodeOrder> open_nodes;
    std::int64_t seq = 0;
    open_nodes.push({{}, {}, -kInf, 0, {}, seq++});

    bool timed_out = false;
    bool proved_within_gap = false;
    double pruned_at_bound = kInf;
    cuts::RelationshipDetector detector(inst);

    while (!open_nodes.empty()) {
        if (seconds_since(ts.t0) > params.time_limit_s) { timed_out = true; break; }

        BnpNode node = open_nodes.top();
        open_nodes.pop();
        if (node.bound >= ts.upper - prune_tolerance(ts.upper, params.gap_limit_pct)) {
            // best-bound order: every remaining node is at least as bad
            proved_within_gap = true;
            pruned_at_bound = node.bound;
            break;
        }
        ++ts.stats.nodes;

        colgen::NodeContext ctx{node.fixed_open, node.fixed_closed};
        master.set_basis(node.basis);
        lp::LpSolution sol;
        colgen::ColgenOutcome outcome = master.solve_by_colgen(ctx, sol);
        ts.stats.lp_time_s += outcome.lp_seconds;
        ts.stats.pricing_time_s += outcome.pricing_seconds;
        ts.stats.colgen_rounds += outcome.rounds;
        ts.stats.columns_generated += outcome.columns_generated;

        if (outcome.status == lp::SolveStatus::Infeasible) continue;  // prune
        if (outcome.status == lp::SolveStatus::IterationLimit &&
            seconds_since(ts.t0) > params.time_limit_s) {
            open_nodes.push(std::move(node));  // keep its bound for the gap
            timed_out = true;
            break;
        }
        if (outcome.status != lp::SolveStatus::Optimal)
            throw lp::NumericalError("node LP did not reach optimality");

        if (node.depth > 0 && outcome.value < node.bound - 1e-5 * (1.0 + std::abs(node.bound)))
            ++ts.stats.bound_monotonicity_violations;

        if (node.depth == 0) {
            ts.stats.root_lp = outcome.value;
            if (params.mode == Mode::BranchCutPrice) {
                for (int round = 0; round < params.cut_rounds; ++round) {
                    std::vector<double> z(sol.primal.begin(),
                                          sol.primal.begin() + inst.num_arcs());
                    auto cut = cuts::find_violated_cut(inst, z, detector, master.cut_list());
                    if (!cut) break;
                    master.add_cut(*cut);
                    ++ts.stats.cuts_added;
                    outcome = master.solve_by_colgen(ctx, sol);
                    if (outcome.status != lp::SolveStatus::Optimal)
                        throw lp::NumericalError("root re-solve after a cut failed");
                    ts.stats.colgen_rounds += outcome.rounds;
                    ts.stats.columns_generated += outcome.columns_generated;
                    ts.stats.lp_time_s += outcome.lp_seconds;
                    ts.stats.pricing_time_s += outcome.pricing_seconds;
                }
            }
            ts.stats.root_lp_after_cuts = outcome.value;
        }

        double bound = outcome.value;
        if (bound >= ts.upper - prune_tolerance(ts.upper, params.gap_limit_pct)) continue;

        std::vector<double> z(sol.primal.begin(), sol.primal.begin() + inst.num_arcs());
        int branch_arc = select_branch_variable(z, inst);

        if (branch_arc < 0) {
            IntegralityCheck chk = check_integral_x(master, sol);
            if (!chk.x_integral || !chk.objective_preserved) ++ts.stats.x_integrality_anomalies;
            std::vector<Path> paths(inst.num_commodities());
            bool complete = true;
            for (int k = 0; k < inst.num_commodities(); ++k) {
                if (chk.chosen_cols[k] < 0) { complete = false; break; }
                for (const auto& pc : master.path_cols())
                    if (pc.col == chk.chosen_cols[k]) { paths[k] = pc.path; break; }
            }
            if (complete) try_incumbent(ts, paths);
            continue;  // fathomed: the LP bound is attained by an integer point
        }

        if (node.depth == 0 ||
            (params.heuristic_interval > 0 && ts.stats.nodes % params.heuristic_interval == 0))
            primal_heuristic(ts, sol, master);

        BnpNode open_child{node.fixed_open, node.fixed_closed, bound, node.depth + 1,
                           master.basis(), seq++};
        open_child.fixed_open.push_back(branch_arc);
        BnpNode closed_child{node.fixed_open, node.fixed_closed, bound, node.depth + 1,
                             master.basis(), seq++};
        closed_child.fixed_closed.push_back(branch_arc);
        open_nodes.push(std::move(open_child));
        open_nodes.push(std::move(closed_child));
    }

    // proven bound: the cheapest node left unexplored, or the incumbent value
    // when the tree was exhausted
    double lower;
    if (timed_out) {
        lower = open_nodes.empty() ? ts.upper : std::min(ts.upper, open_nodes.top().bound);
    } else if (proved_within_gap) {
        lower = std::min(ts.upper, pruned_at_bound);
    } else {
        lower = ts.upper;  // every node explored
    }

    result.stats = ts.stats;
    result.stats.wall_time_s = seconds_since(ts.t0);
    result.incumbent = ts.incumbent;
    result.cuts = master.cut_list();
    if (!ts.incumbent) {
        result.status = timed_out ? SolveStatusKind::TimeLimit : SolveStatusKind::Infeasible;
        result.upper = kInf;
        result.lower = timed_out ? lower : kInf;
        result.gap_pct = timed_out ? 100.0 : 0.0;
        return result;
    }
    result.upper = ts.upper;
    result.lower = lower;
    double u = result.upper;
    auto gap_of = [&](double l) {
        if (u == 0.0) return std::abs(u - l) <= 1e-9 ? 0.0 : 100.0;
        return std::max(0.0, 100.0 * (u - l) / std::abs(u));
    };
    result.gap_pct = gap_of(result.lower);
    // a bound within the integrality tolerance is a clean optimum
    if (!timed_out && u - result.lower <= 1e-6 * (1.0 + std::abs(u))) {
        result.lower = u;
        result.gap_pct = 0.0;
    }
    if (timed_out)
        result.status = SolveStatusKind::TimeLimit;
    else if (result.gap_pct <= params.gap_limit_pct + 1e-12)
        result.status = SolveStatusKind::Optimal;
    else
        result.status = SolveStatusKind::Feasible;
    return result;
}

}  // namespace ndsr::bnp
