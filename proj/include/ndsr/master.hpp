#pragma once

#include <chrono>
#include <map>
#include <optional>
#include <vector>

#include "ndsr/cuts.hpp"
#include "ndsr/instance.hpp"
#include "ndsr/lp.hpp"

namespace ndsr::colgen {

class InfeasibleCommodityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Branching state a node imposes on the master: arcs fixed open or closed.
/// Closed arcs are also forbidden during pricing.
struct NodeContext {
    std::vector<int> fixed_open;
    std::vector<int> fixed_closed;
};

struct ColgenOptions {
    double opt_tol = 1e-7;
    int max_rounds = 10'000;
    bool pricing_enabled = true;
    bool parallel_pricing = true;
    lp::SolverOptions lp;
    // wall-clock cutoff checked between master solves and pricing rounds
    std::optional<std::chrono::steady_clock::time_point> deadline;
};

struct ColgenOutcome {
    lp::SolveStatus status = lp::SolveStatus::Infeasible;
    double value = 0.0;
    int rounds = 0;
    int columns_generated = 0;
    double lp_seconds = 0.0;
    double pricing_seconds = 0.0;
};

/// Restricted master over all activation columns, all linking rows
/// (one per arc and commodity), one covering row per commodity, the cut
/// rows added so far, and a growing pool of path columns. Path columns are
/// never deleted; nodes enable or disable them through bounds.
class MasterModel {
public:
    /// Seeds one cheapest feasible path per commodity; throws
    /// InfeasibleCommodityError when a commodity has no feasible path.
    explicit MasterModel(const Instance& inst, const ColgenOptions& opts = {});

    const Instance& instance() const { return inst_; }
    const lp::LpModel& model() const { return model_; }
    lp::LpModel& model() { return model_; }

    int z_col(int a) const { return a; }
    int linking_row(int a, int k) const { return linking_row_[static_cast<std::size_t>(a) * nk_ + k]; }
    int convexity_row(int k) const { return convexity_row_[k]; }

    struct PathCol {
        int commodity;
        Path path;
        int col;
    };
    const std::vector<PathCol>& path_cols() const { return path_cols_; }

    /// Registers and prices in a new path column; returns its LP column id,
    /// or -1 when an identical column already exists (registry-enforced).
    int add_path_column(const Path& p);

    /// Materializes the cut as an LP row; its dual feeds back into pricing
    /// through the (arc, commodity) pairs of the x part.
    void add_cut(const cuts::Cut& cut);
    const std::vector<cuts::Cut>& cut_list() const { return cuts_; }

    /// Rewrites every column bound from the node's fixings: z bounds, and
    /// upper bound 0 for path columns through a closed arc.
    void apply_node(const NodeContext& ctx);

    /// Warm-started LP solve of the current master.
    lp::LpSolution solve_lp();

    /// Reduced cost of a path against the duals of an optimal solve.
    double reduced_cost(int k, const Path& p, const lp::LpSolution& sol) const;

    /// Dual-adjusted pricing costs for one commodity (flow cost + linking
    /// dual + cut duals), clamped at zero against tolerance noise.
    std::vector<double> pricing_costs(int k, const lp::LpSolution& sol) const;

    struct PricedColumn {
        int commodity;
        Path path;
        double reduced_cost;
    };
    /// One best negative-reduced-cost path per commodity, via the
    /// constrained shortest path under dual-adjusted costs. Commodities
    /// price independently (optionally in parallel); results are merged in
    /// commodity order so the outcome is thread-count independent.
    std::vector<PricedColumn> price_all(const lp::LpSolution& sol,
                                        const std::vector<int>& forbidden_arcs) const;

    /// Alternates master solves and pricing until no improving column
    /// exists (or pricing is disabled). On success `out` holds the final
    /// LP solution.
    ColgenOutcome solve_by_colgen(const NodeContext& ctx, lp::LpSolution& out);

    /// Ensures every commodity has an enabled column under the node's
    /// fixings, pricing new ones if needed. Returns false when a commodity
    /// has no feasible path at all under the fixings.
    bool repair_feasibility(const NodeContext& ctx);

    const lp::Basis& basis() const { return basis_; }
    void set_basis(const lp::Basis& b) { basis_ = b; }

private:
    void check_duals(const lp::LpSolution& sol) const;

    Instance inst_;  // owned copy: the master outlives caller temporaries
    ColgenOptions opts_;
    lp::LpModel model_;
    lp::Basis basis_;
    int nk_ = 0;
    std::vector<int> linking_row_;
    std::vector<int> convexity_row_;
    std::vector<PathCol> path_cols_;
    std::map<std::pair<int, std::vector<int>>, int> registry_;
    std::vector<cuts::Cut> cuts_;
    std::vector<int> cut_rows_;
};

}  // namespace ndsr::colgen
