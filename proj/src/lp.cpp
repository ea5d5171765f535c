#include "ndsr/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

extern "C" {
void dgetrf_(const int* m, const int* n, double* a, const int* lda, int* ipiv, int* info);
void dgetrs_(const char* trans, const int* n, const int* nrhs, const double* a, const int* lda,
             const int* ipiv, double* b, const int* ldb, int* info);
}

namespace ndsr::lp {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPivotTol = 1e-9;
}  // namespace

int LpModel::add_column(double objective, double lb, double ub, std::span<const Entry> entries) {
    for (const Entry& e : entries)
        if (e.index < 0 || e.index >= num_rows())
            throw DimensionError("add_column: entry references a missing row");
    obj.push_back(objective);
    lower.push_back(lb);
    upper.push_back(ub);
    std::vector<Entry> col(entries.begin(), entries.end());
    std::sort(col.begin(), col.end(), [](const Entry& a, const Entry& b) { return a.index < b.index; });
    cols.push_back(std::move(col));
    return num_cols() - 1;
}

int LpModel::add_row(Sense s, double rhs_value, std::span<const Entry> entries) {
    for (const Entry& e : entries)
        if (e.index < 0 || e.index >= num_cols())
            throw DimensionError("add_row: entry references a missing column");
    int r = num_rows();
    sense.push_back(s);
    rhs.push_back(rhs_value);
    for (const Entry& e : entries) cols[e.index].push_back({r, e.value});
    return r;
}

void LpModel::set_bounds(int col, double lb, double ub) {
    lower[col] = lb;
    upper[col] = ub;
}

void Basis::append_column(VarStatus s, int num_rows) {
    status.insert(status.end() - num_rows, s);
}

void Basis::append_row() { status.push_back(VarStatus::Basic); }

namespace {

// Revised simplex working state over the augmented model
// (structurals, then one slack per row, then phase-1 artificials).
class Simplex {
public:
    Simplex(const LpModel& model, const SolverOptions& opts) : model_(model), opts_(opts) {
        n_ = model.num_cols();
        m_ = model.num_rows();
        total_ = n_ + m_;
        lower_.assign(model.lower.begin(), model.lower.end());
        upper_.assign(model.upper.begin(), model.upper.end());
        for (int i = 0; i < m_; ++i) {
            switch (model.sense[i]) {
                case Sense::LE: lower_.push_back(0.0); upper_.push_back(kInf); break;
                case Sense::GE: lower_.push_back(-kInf); upper_.push_back(0.0); break;
                case Sense::EQ: lower_.push_back(0.0); upper_.push_back(0.0); break;
            }
        }
        for (int j = 0; j < n_; ++j)
            if (lower_[j] > upper_[j]) throw DimensionError("column with lower > upper");
    }

    LpSolution run(const Basis* warm);

private:
    // --- column access over the augmented index space -------------------
    int col_nnz(int j) const {
        if (j < n_) return static_cast<int>(model_.cols[j].size());
        return 1;  // slack or artificial
    }
    // Visit (row, coef) of augmented column j.
    template <class F>
    void for_col(int j, F&& f) const {
        if (j < n_) {
            for (const Entry& e : model_.cols[j]) f(e.index, e.value);
        } else if (j < total_) {
            f(j - n_, 1.0);
        } else {
            f(art_row_[j - total_], art_sign_[j - total_]);
        }
    }
    double dot_col(int j, const std::vector<double>& v) const {
        double s = 0.0;
        for_col(j, [&](int r, double c) { s += v[r] * c; });
        return s;
    }

    int num_vars() const { return total_ + static_cast<int>(art_row_.size()); }
    bool is_fixed(int j) const { return lower_[j] == upper_[j]; }
    double bound_value(int j) const {
        return status_[j] == VarStatus::AtLower ? lower_[j] : upper_[j];
    }

    // --- factorization ---------------------------------------------------
    void factorize();
    void ftran(std::vector<double>& v) const;  // v := B^{-1} v
    void btran(std::vector<double>& v) const;  // v := B^{-T} v
    void compute_basic_values();

    // --- simplex machinery -----------------------------------------------
    void set_phase1_costs();
    void set_phase2_costs();
    double current_cost(int j) const { return cost_[j]; }
    void compute_duals_and_rc();
    double primal_infeasibility() const;
    bool primal_feasible() const { return primal_infeasibility() <= opts_.feas_tol; }
    bool dual_feasible() const;

    enum class LoopResult { Optimal, Unbounded, Infeasible, IterationLimit, PrimalFeasible };
    LoopResult primal_loop();
    LoopResult dual_loop();
    void pivot(int entering, int leaving_row, const std::vector<double>& dir, double theta,
               int direction);

    void init_cold_basis();
    bool adopt_warm_basis(const Basis& warm);
    void install_artificials();
    void remove_artificials();

    LpSolution extract(SolveStatus status);

    // --- data -------------------------------------------------------------
    const LpModel& model_;
    SolverOptions opts_;
    int n_ = 0, m_ = 0, total_ = 0;

    std::vector<double> lower_, upper_;   // augmented bounds
    std::vector<double> cost_;            // augmented, phase dependent
    std::vector<VarStatus> status_;       // augmented
    std::vector<int> basic_;              // per row: basic variable
    std::vector<double> x_;               // augmented variable values

    std::vector<int> art_row_;            // artificial -> row
    std::vector<double> art_sign_;
    bool phase1_ = false;

    // dense factorization of the non-singleton part of the basis
    std::vector<int> t_rows_;             // rows owned by non-singleton basics
    std::vector<int> t_pos_;              // row -> position in t_rows_ or -1
    std::vector<int> nsb_cols_;           // non-singleton basic columns, T order
    std::vector<double> dense_;           // |T| x |T|, column major
    std::vector<int> ipiv_;
    std::vector<double> sing_sign_;       // per row in S: coefficient of its singleton basic
    struct Eta {
        int row;
        std::vector<std::pair<int, double>> d;  // sparse direction
        double dr;
    };
    std::vector<Eta> etas_;

    std::int64_t pivots_ = 0;
    int pivots_since_refactor_ = 0;
    int degenerate_streak_ = 0;
    bool bland_ = false;

    std::vector<double> duals_, rc_;      // per row / per augmented var
};

void Simplex::factorize() {
    etas_.clear();
    pivots_since_refactor_ = 0;
    // Reassign basic variables to rows: singleton columns own their row, the
    // rest fill the remaining rows in their current order. The assignment is
    // bookkeeping only; values live per variable, not per row.
    std::vector<int> owner(m_, -1);
    std::vector<int> rest;
    for (int j : basic_) {
        if (col_nnz(j) == 1) {
            int row = -1;
            for_col(j, [&](int rr, double) { row = rr; });
            if (owner[row] >= 0)
                throw NumericalError("singular basis: two singleton columns on one row");
            owner[row] = j;
        } else {
            rest.push_back(j);
        }
    }
    t_rows_.clear();
    nsb_cols_.clear();
    t_pos_.assign(m_, -1);
    sing_sign_.assign(m_, 0.0);
    std::size_t ri = 0;
    for (int r = 0; r < m_; ++r) {
        if (owner[r] >= 0) {
            basic_[r] = owner[r];
            for_col(owner[r], [&](int, double c) { sing_sign_[r] = c; });
        } else {
            if (ri >= rest.size()) throw NumericalError("basis row assignment failed");
            basic_[r] = rest[ri++];
            t_pos_[r] = static_cast<int>(t_rows_.size());
            t_rows_.push_back(r);
            nsb_cols_.push_back(basic_[r]);
        }
    }
    if (ri != rest.size()) throw NumericalError("basis row assignment failed");
    const int t = static_cast<int>(t_rows_.size());
    dense_.assign(static_cast<std::size_t>(t) * t, 0.0);
    ipiv_.assign(std::max(t, 1), 0);
    for (int jj = 0; jj < t; ++jj)
        for_col(nsb_cols_[jj], [&](int r, double c) {
            if (t_pos_[r] >= 0) dense_[static_cast<std::size_t>(jj) * t + t_pos_[r]] = c;
        });
    if (t > 0) {
        int info = 0;
        dgetrf_(&t, &t, dense_.data(), &t, ipiv_.data(), &info);
        if (info != 0) throw NumericalError("basis factorization failed (singular basis)");
    }
}

void Simplex::ftran(std::vector<double>& v) const {
    const int t = static_cast<int>(t_rows_.size());
    std::vector<double> y(t);
    for (int i = 0; i < t; ++i) y[i] = v[t_rows_[i]];
    if (t > 0) {
        int info = 0, nrhs = 1;
        char no = 'N';
        dgetrs_(&no, &t, &nrhs, dense_.data(), &t, ipiv_.data(), y.data(), &t, &info);
        if (info != 0) throw NumericalError("ftran failed");
    }
    // substitute into singleton rows
    std::vector<double> acc(m_, 0.0);
    for (int i = 0; i < t; ++i)
        for_col(nsb_cols_[i], [&](int r, double c) {
            if (t_pos_[r] < 0) acc[r] += c * y[i];
        });
    for (int r = 0; r < m_; ++r)
        v[r] = (t_pos_[r] >= 0) ? y[t_pos_[r]] : (v[r] - acc[r]) / sing_sign_[r];
    // apply the eta chain in creation order
    for (const Eta& e : etas_) {
        double alpha = v[e.row] / e.dr;
        if (alpha != 0.0)
            for (auto [r, dv] : e.d)
                if (r != e.row) v[r] -= alpha * dv;
        v[e.row] = alpha;
    }
}

void Simplex::btran(std::vector<double>& v) const {
    // transposed etas, newest first
    for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
        double s = 0.0;
        for (auto [r, dv] : it->d)
            if (r != it->row) s += v[r] * dv;
        v[it->row] = (v[it->row] - s) / it->dr;
    }
    const int t = static_cast<int>(t_rows_.size());
    for (int r = 0; r < m_; ++r)
        if (t_pos_[r] < 0) v[r] /= sing_sign_[r];
    if (t > 0) {
        std::vector<double> y(t);
        for (int i = 0; i < t; ++i) {
            double s = 0.0;
            for_col(nsb_cols_[i], [&](int r, double c) {
                if (t_pos_[r] < 0) s += c * v[r];
            });
            y[i] = v[t_rows_[i]] - s;
        }
        int info = 0, nrhs = 1;
        char tr = 'T';
        dgetrs_(&tr, &t, &nrhs, dense_.data(), &t, ipiv_.data(), y.data(), &t, &info);
        if (info != 0) throw NumericalError("btran failed");
        for (int i = 0; i < t; ++i) v[t_rows_[i]] = y[i];
    }
}

void Simplex::compute_basic_values() {
    std::vector<double> rhs(model_.rhs);
    for (int j = 0; j < num_vars(); ++j) {
        if (status_[j] == VarStatus::Basic) continue;
        double val = bound_value(j);
        x_[j] = val;
        if (val != 0.0)
            for_col(j, [&](int r, double c) { rhs[r] -= c * val; });
    }
    ftran(rhs);
    for (int r = 0; r < m_; ++r) x_[basic_[r]] = rhs[r];
}

void Simplex::set_phase1_costs() {
    phase1_ = true;
    cost_.assign(num_vars(), 0.0);
    for (int a = total_; a < num_vars(); ++a) cost_[a] = 1.0;
}

void Simplex::set_phase2_costs() {
    phase1_ = false;
    cost_.assign(num_vars(), 0.0);
    for (int j = 0; j < n_; ++j) cost_[j] = model_.obj[j];
}

void Simplex::compute_duals_and_rc() {
    duals_.assign(m_, 0.0);
    for (int r = 0; r < m_; ++r) duals_[r] = cost_[basic_[r]];
    btran(duals_);
    rc_.assign(num_vars(), 0.0);
    for (int j = 0; j < num_vars(); ++j) {
        if (status_[j] == VarStatus::Basic) continue;
        rc_[j] = cost_[j] - dot_col(j, duals_);
    }
}

double Simplex::primal_infeasibility() const {
    double worst = 0.0;
    for (int r = 0; r < m_; ++r) {
        int j = basic_[r];
        if (x_[j] < lower_[j]) worst = std::max(worst, lower_[j] - x_[j]);
        if (x_[j] > upper_[j]) worst = std::max(worst, x_[j] - upper_[j]);
    }
    return worst;
}

bool Simplex::dual_feasible() const {
    for (int j = 0; j < num_vars(); ++j) {
        if (status_[j] == VarStatus::Basic || is_fixed(j)) continue;
        if (status_[j] == VarStatus::AtLower && rc_[j] < -opts_.opt_tol) return false;
        if (status_[j] == VarStatus::AtUpper && rc_[j] > opts_.opt_tol) return false;
    }
    return true;
}

void Simplex::pivot(int entering, int leaving_row, const std::vector<double>& dir, double theta,
                    int direction) {
    // x_B moves against the entering direction
    for (int r = 0; r < m_; ++r) x_[basic_[r]] -= direction * theta * dir[r];
    x_[entering] = bound_value(entering) + direction * theta;

    int leaving = basic_[leaving_row];
    // leaving variable settles on the bound it ran into
    double rate = -direction * dir[leaving_row];
    status_[leaving] = rate < 0.0 ? VarStatus::AtLower : VarStatus::AtUpper;
    if (lower_[leaving] == -kInf && status_[leaving] == VarStatus::AtLower)
        status_[leaving] = VarStatus::AtUpper;
    if (upper_[leaving] == kInf && status_[leaving] == VarStatus::AtUpper)
        status_[leaving] = VarStatus::AtLower;
    x_[leaving] = bound_value(leaving);

    basic_[leaving_row] = entering;
    status_[entering] = VarStatus::Basic;

    Eta e;
    e.row = leaving_row;
    e.dr = dir[leaving_row];
    for (int r = 0; r < m_; ++r)
        if (dir[r] != 0.0) e.d.push_back({r, dir[r]});
    etas_.push_back(std::move(e));

    ++pivots_;
    ++pivots_since_refactor_;
    if (theta <= 1e-10) {
        if (++degenerate_streak_ > opts_.bland_after_degenerate) bland_ = true;
    } else {
        degenerate_streak_ = 0;
        bland_ = false;
    }
    if (pivots_since_refactor_ >= opts_.refactor_interval) {
        factorize();
        compute_basic_values();
    }
}

Simplex::LoopResult Simplex::primal_loop() {
    while (true) {
        if (pivots_ >= opts_.max_pivots) return LoopResult::IterationLimit;
        compute_duals_and_rc();

        int entering = -1;
        double best_score = opts_.opt_tol;
        for (int j = 0; j < num_vars(); ++j) {
            if (status_[j] == VarStatus::Basic || is_fixed(j)) continue;
            if (phase1_ == false && j >= total_) continue;  // artificials stay out
            double score = 0.0;
            if (status_[j] == VarStatus::AtLower && rc_[j] < -opts_.opt_tol)
                score = -rc_[j];
            else if (status_[j] == VarStatus::AtUpper && rc_[j] > opts_.opt_tol)
                score = rc_[j];
            else
                continue;
            if (bland_) { entering = j; break; }
            if (score > best_score) {
                best_score = score;
                entering = j;
            }
        }
        if (entering < 0) return LoopResult::Optimal;

        const int direction = status_[entering] == VarStatus::AtLower ? 1 : -1;
        std::vector<double> dir(m_, 0.0);
        for_col(entering, [&](int r, double c) { dir[r] = c; });
        ftran(dir);

        // ratio test: flip distance of the entering variable vs. first basic
        // variable to hit a bound
        double theta = upper_[entering] - lower_[entering];  // may be inf
        int leaving_row = -1;
        double leaving_piv = 0.0;
        for (int r = 0; r < m_; ++r) {
            double rate = -direction * dir[r];
            if (std::abs(rate) <= kPivotTol) continue;
            int bj = basic_[r];
            double t;
            if (rate < 0.0) {
                if (lower_[bj] == -kInf) continue;
                t = (x_[bj] - lower_[bj]) / -rate;
            } else {
                if (upper_[bj] == kInf) continue;
                t = (upper_[bj] - x_[bj]) / rate;
            }
            if (t < 0.0) t = 0.0;
            if (t < theta - 1e-12 ||
                (t < theta + 1e-12 &&
                 (leaving_row < 0 || std::abs(dir[r]) > std::abs(leaving_piv)))) {
                theta = t;
                leaving_row = r;
                leaving_piv = dir[r];
            }
        }
        if (theta == kInf) return LoopResult::Unbounded;

        if (leaving_row < 0) {
            // bound flip, no basis change
            for (int r = 0; r < m_; ++r) x_[basic_[r]] -= direction * theta * dir[r];
            status_[entering] =
                status_[entering] == VarStatus::AtLower ? VarStatus::AtUpper : VarStatus::AtLower;
            x_[entering] = bound_value(entering);
            ++pivots_;
            continue;
        }
        pivot(entering, leaving_row, dir, theta, direction);
    }
}

Simplex::LoopResult Simplex::dual_loop() {
    while (true) {
        if (pivots_ >= opts_.max_pivots) return LoopResult::IterationLimit;

        int leaving_row = -1;
        double worst = opts_.feas_tol;
        bool below = false;
        for (int r = 0; r < m_; ++r) {
            int j = basic_[r];
            double v = 0.0;
            bool b = false;
            if (x_[j] < lower_[j] - opts_.feas_tol) { v = lower_[j] - x_[j]; b = true; }
            else if (x_[j] > upper_[j] + opts_.feas_tol) v = x_[j] - upper_[j];
            if (v > worst) { worst = v; leaving_row = r; below = b; }
        }
        if (leaving_row < 0) return LoopResult::PrimalFeasible;

        compute_duals_and_rc();

        std::vector<double> rho(m_, 0.0);
        rho[leaving_row] = 1.0;
        btran(rho);

        // choose the entering variable by the bounded dual ratio test
        int entering = -1;
        double best_ratio = kInf, best_alpha = 0.0;
        for (int j = 0; j < num_vars(); ++j) {
            if (status_[j] == VarStatus::Basic || is_fixed(j)) continue;
            if (j >= total_) continue;
            double alpha = dot_col(j, rho);
            if (std::abs(alpha) <= kPivotTol) continue;
            // eligibility: moving j from its bound must push x_r toward the
            // violated bound (up when below, down when above)
            bool ok = below ? ((status_[j] == VarStatus::AtLower && alpha < 0.0) ||
                               (status_[j] == VarStatus::AtUpper && alpha > 0.0))
                            : ((status_[j] == VarStatus::AtLower && alpha > 0.0) ||
                               (status_[j] == VarStatus::AtUpper && alpha < 0.0));
            if (!ok) continue;
            double ratio = std::abs(rc_[j]) / std::abs(alpha);
            if (ratio < best_ratio - 1e-12 ||
                (ratio < best_ratio + 1e-12 &&
                 (entering < 0 || std::abs(alpha) > std::abs(best_alpha)))) {
                best_ratio = ratio;
                best_alpha = alpha;
                entering = j;
            }
        }
        if (entering < 0) return LoopResult::Infeasible;

        int jl = basic_[leaving_row];
        double target = below ? lower_[jl] : upper_[jl];
        double delta_q = (x_[jl] - target) / best_alpha;

        std::vector<double> dir(m_, 0.0);
        for_col(entering, [&](int r, double c) { dir[r] = c; });
        ftran(dir);

        for (int r = 0; r < m_; ++r) x_[basic_[r]] -= delta_q * dir[r];
        double entering_value = bound_value(entering) + delta_q;

        status_[jl] = below ? VarStatus::AtLower : VarStatus::AtUpper;
        x_[jl] = target;
        basic_[leaving_row] = entering;
        status_[entering] = VarStatus::Basic;
        x_[entering] = entering_value;

        Eta e;
        e.row = leaving_row;
        e.dr = dir[leaving_row];
        for (int r = 0; r < m_; ++r)
            if (dir[r] != 0.0) e.d.push_back({r, dir[r]});
        etas_.push_back(std::move(e));
        ++pivots_;
        if (++pivots_since_refactor_ >= opts_.refactor_interval) {
            factorize();
            compute_basic_values();
        }
    }
}

void Simplex::init_cold_basis() {
    art_row_.clear();
    art_sign_.clear();
    status_.assign(total_, VarStatus::AtLower);
    for (int j = 0; j < n_; ++j) {
        if (lower_[j] == -kInf) {
            if (upper_[j] == kInf) throw DimensionError("free structural columns unsupported");
            status_[j] = VarStatus::AtUpper;
        }
    }
    basic_.assign(m_, 0);
    for (int r = 0; r < m_; ++r) {
        basic_[r] = n_ + r;
        status_[n_ + r] = VarStatus::Basic;
    }
    x_.assign(total_, 0.0);
}

bool Simplex::adopt_warm_basis(const Basis& warm) {
    if (static_cast<int>(warm.status.size()) != total_) return false;
    int nb = 0;
    for (VarStatus s : warm.status)
        if (s == VarStatus::Basic) ++nb;
    if (nb != m_) return false;
    status_.assign(warm.status.begin(), warm.status.end());
    for (int j = 0; j < total_; ++j) {
        if (status_[j] == VarStatus::Basic) continue;
        if (status_[j] == VarStatus::AtLower && lower_[j] == -kInf) status_[j] = VarStatus::AtUpper;
        if (status_[j] == VarStatus::AtUpper && upper_[j] == kInf) status_[j] = VarStatus::AtLower;
    }
    basic_.clear();
    for (int j = 0; j < total_; ++j)
        if (status_[j] == VarStatus::Basic) basic_.push_back(j);
    x_.assign(total_, 0.0);
    try {
        factorize();
        compute_basic_values();
    } catch (const NumericalError&) {
        return false;
    }
    return true;
}

void Simplex::install_artificials() {
    // start from the cold slack basis; rows whose slack value falls outside
    // the slack bounds get an artificial carrying the residual
    init_cold_basis();
    std::vector<double> resid(model_.rhs);
    for (int j = 0; j < n_; ++j) {
        double v = bound_value(j);
        x_[j] = v;
        if (v != 0.0)
            for_col(j, [&](int r, double c) { resid[r] -= c * v; });
    }
    for (int r = 0; r < m_; ++r) {
        int sj = n_ + r;
        double s = resid[r];
        double clamped = std::min(std::max(s, lower_[sj]), upper_[sj]);
        if (std::abs(s - clamped) <= opts_.feas_tol) {
            x_[sj] = s;  // slack stays basic
            continue;
        }
        status_[sj] = clamped == lower_[sj] ? VarStatus::AtLower : VarStatus::AtUpper;
        x_[sj] = clamped;
        double t = s - clamped;
        art_row_.push_back(r);
        art_sign_.push_back(t >= 0.0 ? 1.0 : -1.0);
        lower_.push_back(0.0);
        upper_.push_back(kInf);
        status_.push_back(VarStatus::Basic);
        x_.push_back(std::abs(t));
        basic_[r] = num_vars() - 1;
    }
    factorize();
    compute_basic_values();
}

void Simplex::remove_artificials() {
    // swap every basic artificial with its own row's slack (parallel
    // singleton columns, so the basis stays nonsingular), then drop them
    bool swapped = false;
    for (int r = 0; r < m_; ++r) {
        int j = basic_[r];
        if (j < total_) continue;
        int sj = n_ + r;
        basic_[r] = sj;
        status_[sj] = VarStatus::Basic;
        swapped = true;
    }
    art_row_.clear();
    art_sign_.clear();
    lower_.resize(total_);
    upper_.resize(total_);
    status_.resize(total_);
    x_.resize(total_);
    if (swapped) {
        factorize();
        compute_basic_values();
    }
}

LpSolution Simplex::extract(SolveStatus st) {
    LpSolution sol;
    sol.status = st;
    sol.iterations = pivots_;
    sol.basis.status.assign(status_.begin(), status_.begin() + total_);
    if (st != SolveStatus::Optimal && st != SolveStatus::IterationLimit) return sol;

    set_phase2_costs();
    compute_duals_and_rc();
    sol.primal.assign(x_.begin(), x_.begin() + n_);
    sol.duals = duals_;
    sol.reduced_costs.assign(rc_.begin(), rc_.begin() + n_);
    double obj = 0.0;
    for (int j = 0; j < n_; ++j) obj += model_.obj[j] * x_[j];
    sol.objective = obj;
    return sol;
}

LpSolution Simplex::run(const Basis* warm) {
    set_phase2_costs();

    bool have_basis = false;
    if (warm && !warm->empty()) have_basis = adopt_warm_basis(*warm);

    if (have_basis && !primal_feasible()) {
        compute_duals_and_rc();
        if (dual_feasible()) {
            LoopResult dr = dual_loop();
            if (dr == LoopResult::Infeasible) return extract(SolveStatus::Infeasible);
            if (dr == LoopResult::IterationLimit) return extract(SolveStatus::IterationLimit);
        } else {
            have_basis = false;  // neither feasible: restart cold
        }
    }

    if (!have_basis) {
        init_cold_basis();
        factorize();
        compute_basic_values();
        // slack bases are often infeasible; patch with artificials
        if (!primal_feasible()) {
            install_artificials();
            set_phase1_costs();
            LoopResult p1 = primal_loop();
            if (p1 == LoopResult::IterationLimit) return extract(SolveStatus::IterationLimit);
            if (p1 == LoopResult::Unbounded) throw NumericalError("phase 1 unbounded");
            double infeas = 0.0;
            for (int a = total_; a < num_vars(); ++a) infeas += x_[a];
            if (infeas > 10 * opts_.feas_tol * (1.0 + std::abs(infeas)))
                return extract(SolveStatus::Infeasible);
            remove_artificials();
            set_phase2_costs();
        }
    }

    // phase 2, possibly with numerical repair rounds
    for (int attempt = 0; attempt < 3; ++attempt) {
        LoopResult p2 = primal_loop();
        if (p2 == LoopResult::Unbounded) return extract(SolveStatus::Unbounded);
        if (p2 == LoopResult::IterationLimit) return extract(SolveStatus::IterationLimit);

        // verify before declaring optimality
        factorize();
        compute_basic_values();
        if (!primal_feasible()) {
            if (attempt == 2) throw NumericalError("lost primal feasibility at optimum");
            LoopResult dr = dual_loop();
            if (dr == LoopResult::Infeasible) return extract(SolveStatus::Infeasible);
            if (dr == LoopResult::IterationLimit) return extract(SolveStatus::IterationLimit);
            continue;
        }
        compute_duals_and_rc();
        if (!dual_feasible()) continue;

        double obj = 0.0;
        for (int j = 0; j < n_; ++j) obj += model_.obj[j] * x_[j];
        double dual_obj = 0.0;
        for (int r = 0; r < m_; ++r) dual_obj += duals_[r] * model_.rhs[r];
        for (int j = 0; j < total_; ++j) {
            if (status_[j] == VarStatus::Basic) continue;
            double v = bound_value(j);
            if (v != 0.0) dual_obj += rc_[j] * v;
        }
        if (std::abs(obj - dual_obj) > opts_.opt_tol * (1.0 + std::abs(obj))) {
            if (attempt == 2) throw NumericalError("duality gap exceeds tolerance");
            continue;
        }
        return extract(SolveStatus::Optimal);
    }
    throw NumericalError("simplex failed to verify optimality");
}

}  // namespace

LpSolution solve(const LpModel& model, const Basis* warm, const SolverOptions& opts) {
    Simplex s(model, opts);
    return s.run(warm);
}

void write_lp_format(const LpModel& model, std::ostream& out,
                     std::span<const std::string> col_names,
                     std::span<const std::string> row_names) {
    auto cname = [&](int j) {
        return j < static_cast<int>(col_names.size()) ? col_names[j] : "c" + std::to_string(j);
    };
    auto rname = [&](int i) {
        return i < static_cast<int>(row_names.size()) ? row_names[i] : "r" + std::to_string(i);
    };
    out << "Minimize\n obj:";
    bool first = true;
    for (int j = 0; j < model.num_cols(); ++j) {
        if (model.obj[j] == 0.0) continue;
        out << (model.obj[j] >= 0.0 && !first ? " + " : " ") << model.obj[j] << " " << cname(j);
        first = false;
    }
    if (first) out << " 0 " << cname(0);
    out << "\nSubject To\n";
    std::vector<std::vector<Entry>> rows(model.num_rows());
    for (int j = 0; j < model.num_cols(); ++j)
        for (const Entry& e : model.cols[j]) rows[e.index].push_back({j, e.value});
    for (int i = 0; i < model.num_rows(); ++i) {
        out << " " << rname(i) << ":";
        for (const Entry& e : rows[i])
            out << (e.value >= 0.0 ? " + " : " ") << e.value << " " << cname(e.index);
        if (rows[i].empty()) out << " 0 " << cname(0);
        switch (model.sense[i]) {
            case Sense::LE: out << " <= "; break;
            case Sense::GE: out << " >= "; break;
            case Sense::EQ: out << " = "; break;
        }
        out << model.rhs[i] << "\n";
    }
    out << "Bounds\n";
    for (int j = 0; j < model.num_cols(); ++j) {
        out << " ";
        if (model.lower[j] == -kInf)
            out << "-inf";
        else
            out << model.lower[j];
        out << " <= " << cname(j) << " <= ";
        if (model.upper[j] == kInf)
            out << "+inf";
        else
            out << model.upper[j];
        out << "\n";
    }
    out << "End\n";
}

}  // namespace ndsr::lp
