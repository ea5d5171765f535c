#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ndsr/instance.hpp"
#include "ndsr/lp.hpp"
#include "ndsr/master.hpp"

namespace ndsr::bnp {

enum class Mode { AllPath, BranchAndPrice, BranchCutPrice };

std::string mode_name(Mode m);
std::optional<Mode> parse_mode(const std::string& name);

struct SolveParams {
    Mode mode = Mode::BranchAndPrice;
    double time_limit_s = 3600.0;
    double gap_limit_pct = 0.0;  // 0 means tolerance-optimal (1e-6 relative)
    std::int64_t max_enum_labels = 50'000'000;
    int cut_rounds = 25;          // root separation rounds in bcp mode
    int heuristic_interval = 50;  // nodes between primal heuristic runs
    bool parallel = true;
    lp::SolverOptions lp;
};

struct Statistics {
    std::int64_t nodes = 0;
    std::int64_t columns_generated = 0;
    std::int64_t colgen_rounds = 0;
    int cuts_added = 0;
    std::int64_t path_count = 0;  // enumerated paths in allpath mode
    double root_lp = 0.0;         // before cuts
    double root_lp_after_cuts = 0.0;
    std::int64_t x_integrality_anomalies = 0;  // fractional x at integral-z nodes
    std::int64_t bound_monotonicity_violations = 0;
    double lp_time_s = 0.0;
    double pricing_time_s = 0.0;
    double wall_time_s = 0.0;
};

struct Incumbent {
    double value = 0.0;
    std::vector<char> open_arcs;  // per arc
    std::vector<Path> paths;      // one per commodity
};

enum class SolveStatusKind { Optimal, Feasible, Infeasible, TimeLimit };

std::string status_name(SolveStatusKind s);

struct SolveResult {
    SolveStatusKind status = SolveStatusKind::Infeasible;
    double upper = 0.0;  // incumbent value
    double lower = 0.0;  // proven bound
    double gap_pct = 0.0;
    std::optional<Incumbent> incumbent;
    Statistics stats;
    Mode mode = Mode::BranchAndPrice;
    std::vector<cuts::Cut> cuts;  // emitted at the root, in separation order
};

/// Branch-and-bound node state: arc fixings plus the parent's bound and
/// basis snapshot for warm starts.
struct BnpNode {
    std::vector<int> fixed_open;
    std::vector<int> fixed_closed;
    double bound = 0.0;
    int depth = 0;
    lp::Basis basis;
    std::int64_t seq = 0;  // FIFO tie-break for best-bound selection
};

/// Branching rule: the arc with the most fractional activation value
/// (closest to 1/2); ties prefer the larger activation cost, then the
/// smaller arc id. Returns -1 when every z is within 1e-6 of an integer.
int select_branch_variable(const std::vector<double>& z, const Instance& inst);

struct IntegralityCheck {
    bool x_integral = true;          // every x within 1e-6 of {0, 1}
    bool objective_preserved = true; // rounding kept the LP objective
    std::vector<int> chosen_cols;    // one master column per commodity
};

/// At an all-integral-z node, verifies the basic solution carries integral
/// path values and extracts one path per commodity (rounding to the
/// cheapest supported path when values are fractional, which provably
/// cannot increase the objective). Violations are counted, never silent.
IntegralityCheck check_integral_x(const colgen::MasterModel& master, const lp::LpSolution& sol,
                                  double int_tol = 1e-6);

/// Full solve in one of the three modes. `allpath` enumerates every
/// feasible path up front and runs the same tree with pricing disabled;
/// `bnp` prices at every node; `bcp` additionally separates cuts at the
/// root. Deterministic for fixed inputs and parameters.
SolveResult solve(const Instance& inst, const SolveParams& params = {});

}  // namespace ndsr::bnp
