#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ndsr::lp {

enum class Sense : char { LE = 'L', GE = 'G', EQ = 'E' };
enum class SolveStatus { Optimal, Infeasible, Unbounded, IterationLimit };

/// Variable position in a basis snapshot. Snapshots cover the structural
/// columns first, then one logical slack per row, so they stay valid when
/// columns or rows are appended (the caller extends them accordingly).
enum class VarStatus : std::uint8_t { AtLower = 0, AtUpper = 1, Basic = 2 };

struct Entry {
    int index = 0;    // row id inside a column, column id inside a row
    double value = 0.0;
};

class DimensionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Sparse bounded-variable LP in column-major form:
///   min obj'x  s.t.  rows, lower <= x <= upper.
struct LpModel {
    std::vector<double> obj, lower, upper;
    std::vector<std::vector<Entry>> cols;  // (row, coef), sorted by row
    std::vector<Sense> sense;
    std::vector<double> rhs;

    int num_cols() const { return static_cast<int>(cols.size()); }
    int num_rows() const { return static_cast<int>(rhs.size()); }

    /// Entries reference existing rows; throws DimensionError otherwise.
    int add_column(double objective, double lb, double ub, std::span<const Entry> entries);
    /// Entries reference existing columns; throws DimensionError otherwise.
    int add_row(Sense s, double rhs_value, std::span<const Entry> entries);
    void set_bounds(int col, double lb, double ub);
};

struct Basis {
    std::vector<VarStatus> status;  // structurals, then slacks
    bool empty() const { return status.empty(); }

    void append_column(VarStatus s, int num_rows);  // insert before the slack block
    void append_row();                              // new slack starts basic
};

struct LpSolution {
    SolveStatus status = SolveStatus::Infeasible;
    double objective = 0.0;
    std::vector<double> primal;         // per structural column
    std::vector<double> duals;          // per row
    std::vector<double> reduced_costs;  // per structural column
    Basis basis;
    std::int64_t iterations = 0;
};

struct SolverOptions {
    std::int64_t max_pivots = 200'000;
    int refactor_interval = 100;    // pivots between dense refactorizations
    double feas_tol = 1e-7;
    double opt_tol = 1e-7;
    int bland_after_degenerate = 1000;
};

/// Two-phase bounded-variable revised simplex. A warm basis is used as-is
/// when primal feasible, repaired by the dual simplex when only dual
/// feasible, and discarded otherwise. Deterministic: identical model and
/// warm start give an identical pivot sequence.
LpSolution solve(const LpModel& model, const Basis* warm = nullptr,
                 const SolverOptions& opts = {});

/// Writes the model in CPLEX LP text format for external cross-checking.
/// Names default to c<j> / r<i> when not provided.
void write_lp_format(const LpModel& model, std::ostream& out,
                     std::span<const std::string> col_names = {},
                     std::span<const std::string> row_names = {});

}  // namespace ndsr::lp
