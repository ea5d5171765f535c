#include "ndsr/master.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ndsr/csp.hpp"

namespace ndsr::colgen {

namespace {
constexpr double kDualTol = 1e-6;  // hard-error threshold for dual signs
}

MasterModel::MasterModel(const Instance& inst, const ColgenOptions& opts)
    : inst_(inst), opts_(opts) {
    const int na = inst.num_arcs();
    nk_ = inst.num_commodities();

    for (int a = 0; a < na; ++a)
        model_.add_column(inst.arcs[a].activation_cost, 0.0, 1.0, {});

    // linking rows z_a - sum of paths through a >= 0, for every (arc, commodity)
    linking_row_.resize(static_cast<std::size_t>(na) * nk_);
    for (int a = 0; a < na; ++a)
        for (int k = 0; k < nk_; ++k) {
            std::vector<lp::Entry> row{{a, 1.0}};
            linking_row_[static_cast<std::size_t>(a) * nk_ + k] =
                model_.add_row(lp::Sense::GE, 0.0, row);
        }
    // covering rows: at least one path per commodity
    for (int k = 0; k < nk_; ++k)
        convexity_row_.push_back(model_.add_row(lp::Sense::GE, 1.0, {}));

    // seed: the cheapest feasible path of each commodity
    for (int k = 0; k < nk_; ++k) {
        CspQuery q;
        q.commodity = k;
        CspResult r = constrained_shortest_path(inst, q);
        if (!r.path)
            throw InfeasibleCommodityError("commodity " + std::to_string(k) +
                                           " has no feasible path");
        add_path_column(*r.path);
    }
}

int MasterModel::add_path_column(const Path& p) {
    auto key = std::make_pair(p.commodity, p.arcs);
    if (registry_.contains(key)) return -1;

    std::vector<lp::Entry> entries;
    for (int a : p.arcs) entries.push_back({linking_row(a, p.commodity), -1.0});
    entries.push_back({convexity_row(p.commodity), 1.0});
    for (std::size_t ci = 0; ci < cuts_.size(); ++ci) {
        int count = 0;
        for (auto [a, k] : cuts_[ci].x_pairs)
            if (k == p.commodity &&
                std::find(p.arcs.begin(), p.arcs.end(), a) != p.arcs.end())
                ++count;
        if (count > 0) entries.push_back({cut_rows_[ci], -static_cast<double>(count)});
    }
    int col = model_.add_column(p.cost, 0.0, 1.0, entries);
    if (!basis_.empty()) basis_.append_column(lp::VarStatus::AtLower, model_.num_rows());
    registry_.emplace(std::move(key), col);
    path_cols_.push_back({p.commodity, p, col});
    return col;
}

void MasterModel::add_cut(const cuts::Cut& cut) {
    std::vector<lp::Entry> entries;
    for (int a : cut.z_arcs) entries.push_back({z_col(a), 1.0});
    for (const PathCol& pc : path_cols_) {
        int count = 0;
        for (auto [a, k] : cut.x_pairs)
            if (k == pc.commodity &&
                std::find(pc.path.arcs.begin(), pc.path.arcs.end(), a) != pc.path.arcs.end())
                ++count;
        if (count > 0) entries.push_back({pc.col, -static_cast<double>(count)});
    }
    int row = model_.add_row(lp::Sense::GE, cut.rhs, entries);
    if (!basis_.empty()) basis_.append_row();
    cuts_.push_back(cut);
    cut_rows_.push_back(row);
}

void MasterModel::apply_node(const NodeContext& ctx) {
    const int na = inst_.num_arcs();
    std::vector<char> closed(na, 0);
    for (int a : ctx.fixed_closed) closed[a] = 1;
    for (int a = 0; a < na; ++a) model_.set_bounds(z_col(a), 0.0, 1.0);
    for (int a : ctx.fixed_open) model_.set_bounds(z_col(a), 1.0, 1.0);
    for (int a : ctx.fixed_closed) model_.set_bounds(z_col(a), 0.0, 0.0);
    for (const PathCol& pc : path_cols_) {
        bool disabled = false;
        for (int a : pc.path.arcs)
            if (closed[a]) { disabled = true; break; }
        model_.set_bounds(pc.col, 0.0, disabled ? 0.0 : 1.0);
    }
}

lp::LpSolution MasterModel::solve_lp() {
    if (basis_.empty()) {
        // all-slack basis with every activation open and the first enabled
        // path of each commodity selected: primal feasible by construction,
        // so the solver skips phase 1
        basis_.status.assign(model_.num_cols() + model_.num_rows(), lp::VarStatus::AtLower);
        for (int a = 0; a < inst_.num_arcs(); ++a)
            basis_.status[z_col(a)] = lp::VarStatus::AtUpper;
        std::vector<char> covered(nk_, 0);
        for (const PathCol& pc : path_cols_) {
            if (covered[pc.commodity] || model_.upper[pc.col] <= 0.0) continue;
            covered[pc.commodity] = 1;
            basis_.status[pc.col] = lp::VarStatus::AtUpper;
        }
        for (int r = 0; r < model_.num_rows(); ++r)
            basis_.status[model_.num_cols() + r] = lp::VarStatus::Basic;
    }
    lp::LpSolution sol = lp::solve(model_, &basis_, opts_.lp);
    if (sol.status == lp::SolveStatus::Optimal || sol.status == lp::SolveStatus::IterationLimit)
        basis_ = sol.basis;
    return sol;
}

void MasterModel::check_duals(const lp::LpSolution& sol) const {
    for (double d : sol.duals)
        if (d < -kDualTol)
            throw lp::NumericalError("negative dual on a >= row: " + std::to_string(d));
}

std::vector<double> MasterModel::pricing_costs(int k, const lp::LpSolution& sol) const {
    const int na = inst_.num_arcs();
    std::vector<double> costs(na);
    for (int a = 0; a < na; ++a) {
        double gamma = std::max(0.0, sol.duals[linking_row(a, k)]);
        costs[a] = inst_.cost(k, a) + gamma;
    }
    for (std::size_t ci = 0; ci < cuts_.size(); ++ci) {
        double phi = std::max(0.0, sol.duals[cut_rows_[ci]]);
        if (phi == 0.0) continue;
        for (auto [a, kk] : cuts_[ci].x_pairs)
            if (kk == k) costs[a] += phi;
    }
    return costs;
}

double MasterModel::reduced_cost(int k, const Path& p, const lp::LpSolution& sol) const {
    std::vector<double> costs = pricing_costs(k, sol);
    double rc = -sol.duals[convexity_row(k)];
    for (int a : p.arcs) rc += costs[a];
    return rc;
}

std::vector<MasterModel::PricedColumn> MasterModel::price_all(
    const lp::LpSolution& sol, const std::vector<int>& forbidden_arcs) const {
    check_duals(sol);
    inst_.out_arcs();  // warm the shared adjacency cache before threading
    std::vector<std::optional<PricedColumn>> found(nk_);
    std::exception_ptr error;
#pragma omp parallel for schedule(dynamic) if (opts_.parallel_pricing)
    for (int k = 0; k < nk_; ++k) {
        try {
            CspQuery q;
            q.commodity = k;
            q.arc_costs = pricing_costs(k, sol);
            q.forbidden_arcs = forbidden_arcs;
            CspResult r = constrained_shortest_path(inst_, q);
            if (!r.path) continue;
            double rc = r.objective - sol.duals[convexity_row(k)];
            if (rc < -opts_.opt_tol) found[k] = PricedColumn{k, *r.path, rc};
        } catch (...) {
#pragma omp critical
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
    std::vector<PricedColumn> result;
    for (int k = 0; k < nk_; ++k)
        if (found[k]) result.push_back(std::move(*found[k]));
    return result;
}

bool MasterModel::repair_feasibility(const NodeContext& ctx) {
    std::vector<char> closed(inst_.num_arcs(), 0);
    for (int a : ctx.fixed_closed) closed[a] = 1;
    std::vector<char> has_enabled(nk_, 0);
    for (const PathCol& pc : path_cols_) {
        if (has_enabled[pc.commodity]) continue;
        bool disabled = false;
        for (int a : pc.path.arcs)
            if (closed[a]) { disabled = true; break; }
        if (!disabled) has_enabled[pc.commodity] = 1;
    }
    for (int k = 0; k < nk_; ++k) {
        if (has_enabled[k]) continue;
        if (!opts_.pricing_enabled) return false;  // full pool: truly infeasible
        CspQuery q;
        q.commodity = k;
        q.forbidden_arcs = ctx.fixed_closed;
        CspResult r = constrained_shortest_path(inst_, q);
        if (!r.path) return false;
        add_path_column(*r.path);
    }
    return true;
}

ColgenOutcome MasterModel::solve_by_colgen(const NodeContext& ctx, lp::LpSolution& out) {
    ColgenOutcome outcome;
    if (!repair_feasibility(ctx)) {
        outcome.status = lp::SolveStatus::Infeasible;
        return outcome;
    }
    apply_node(ctx);
    for (int round = 0; round < opts_.max_rounds; ++round) {
        if (opts_.deadline && std::chrono::steady_clock::now() > *opts_.deadline) {
            outcome.status = lp::SolveStatus::IterationLimit;
            return outcome;
        }
        auto t_lp = std::chrono::steady_clock::now();
        out = solve_lp();
        outcome.lp_seconds += std::chrono::duration<double>(
            std::chrono::steady_clock::now() - t_lp).count();
        outcome.rounds = round + 1;
        if (out.status != lp::SolveStatus::Optimal) {
            outcome.status = out.status;
            return outcome;
        }
        if (!opts_.pricing_enabled) break;
        auto t_price = std::chrono::steady_clock::now();
        std::vector<PricedColumn> cols = price_all(out, ctx.fixed_closed);
        outcome.pricing_seconds += std::chrono::duration<double>(
            std::chrono::steady_clock::now() - t_price).count();
        bool added = false;
        for (const PricedColumn& pc : cols) {
            if (add_path_column(pc.path) >= 0) {
                ++outcome.columns_generated;
                added = true;
            }
        }
        if (!added) break;
        // freshly added columns start disabled-agnostic; re-apply the node
        apply_node(ctx);
    }
    if (outcome.rounds >= opts_.max_rounds)
        throw lp::NumericalError("column generation did not converge within the round cap");
    outcome.status = lp::SolveStatus::Optimal;
    outcome.value = out.objective;
    return outcome;
}

}  // namespace ndsr::colgen
