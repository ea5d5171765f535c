#include <doctest.h>

#include <cmath>

#include "ndsr/lp.hpp"
#include "ndsr/rng.hpp"

// Randomized stress on the simplex with an independent optimality
// certificate: every reported optimum must satisfy primal feasibility,
// dual sign conditions, reduced-cost sign conditions and complementary
// slackness. This scales past what vertex enumeration can check.

using namespace ndsr;
using lp::Entry;
using lp::LpModel;
using lp::Sense;
using lp::SolveStatus;

namespace {

constexpr double kTol = 1e-5;

void check_kkt(const LpModel& m, const lp::LpSolution& s) {
    REQUIRE(s.primal.size() == static_cast<std::size_t>(m.num_cols()));
    REQUIRE(s.duals.size() == static_cast<std::size_t>(m.num_rows()));

    std::vector<double> row_activity(m.num_rows(), 0.0);
    for (int j = 0; j < m.num_cols(); ++j) {
        CHECK(s.primal[j] >= m.lower[j] - kTol);
        CHECK(s.primal[j] <= m.upper[j] + kTol);
        for (const Entry& e : m.cols[j]) row_activity[e.index] += e.value * s.primal[j];
    }
    for (int i = 0; i < m.num_rows(); ++i) {
        double slack = row_activity[i] - m.rhs[i];
        switch (m.sense[i]) {
            case Sense::LE:
                CHECK(slack <= kTol);
                CHECK(s.duals[i] <= kTol);  // minimization
                if (s.duals[i] < -kTol) CHECK(std::abs(slack) <= kTol);
                break;
            case Sense::GE:
                CHECK(slack >= -kTol);
                CHECK(s.duals[i] >= -kTol);
                if (s.duals[i] > kTol) CHECK(std::abs(slack) <= kTol);
                break;
            case Sense::EQ:
                CHECK(std::abs(slack) <= kTol);
                break;
        }
    }
    for (int j = 0; j < m.num_cols(); ++j) {
        double rc = m.obj[j];
        for (const Entry& e : m.cols[j]) rc -= s.duals[e.index] * e.value;
        bool at_lower = s.primal[j] <= m.lower[j] + kTol;
        bool at_upper = s.primal[j] >= m.upper[j] - kTol;
        if (at_lower && !at_upper) CHECK(rc >= -kTol);
        if (at_upper && !at_lower) CHECK(rc <= kTol);
        if (!at_lower && !at_upper) CHECK(std::abs(rc) <= kTol);
    }
}

LpModel random_model(Rng& rng, int n, int rows, bool degenerate) {
    LpModel m;
    for (int j = 0; j < n; ++j) {
        double lb = rng.uniform() < 0.2 ? rng.uniform(-1.0, 0.0) : 0.0;
        m.add_column(rng.uniform(-3.0, 3.0), lb, lb + rng.uniform(0.5, 2.5), {});
    }
    for (int i = 0; i < rows; ++i) {
        std::vector<Entry> row;
        for (int j = 0; j < n; ++j) {
            if (rng.uniform() < 0.5) continue;
            // degenerate instances use small integer coefficients so many
            // bases share objective values
            double coef = degenerate ? static_cast<double>(rng.uniform_int(1, 2))
                                     : rng.uniform(-2.0, 2.0);
            row.push_back({j, coef});
        }
        if (row.empty()) continue;
        double r = rng.uniform();
        Sense sense = r < 0.4 ? Sense::LE : (r < 0.85 ? Sense::GE : Sense::EQ);
        double rhs = degenerate ? static_cast<double>(rng.uniform_int(0, 2))
                                : rng.uniform(-1.0, 2.0);
        m.add_row(sense, rhs, row);
    }
    return m;
}

}  // namespace

TEST_CASE("optimal solutions carry a full KKT certificate") {
    Rng rng(777001);
    int optimal = 0, infeasible = 0;
    for (int trial = 0; trial < 300; ++trial) {
        int n = 2 + static_cast<int>(rng.uniform_int(0, 18));
        int rows = 1 + static_cast<int>(rng.uniform_int(0, 14));
        LpModel m = random_model(rng, n, rows, false);
        lp::LpSolution s = lp::solve(m);
        if (s.status == SolveStatus::Optimal) {
            check_kkt(m, s);
            ++optimal;
        } else {
            REQUIRE(s.status == SolveStatus::Infeasible);
            ++infeasible;
        }
    }
    CHECK(optimal > 100);
    CHECK(infeasible > 10);  // both branches genuinely exercised
}

TEST_CASE("degenerate set-covering style models still verify") {
    Rng rng(777002);
    for (int trial = 0; trial < 120; ++trial) {
        int n = 4 + static_cast<int>(rng.uniform_int(0, 10));
        int rows = 2 + static_cast<int>(rng.uniform_int(0, 10));
        LpModel m = random_model(rng, n, rows, true);
        lp::LpSolution s = lp::solve(m);
        if (s.status == SolveStatus::Optimal) check_kkt(m, s);
    }
}

TEST_CASE("warm starts after random bound fixes reach the cold optimum") {
    Rng rng(777003);
    int reoptimized = 0;
    for (int trial = 0; trial < 120; ++trial) {
        int n = 3 + static_cast<int>(rng.uniform_int(0, 7));
        LpModel m = random_model(rng, n, 1 + static_cast<int>(rng.uniform_int(0, 5)), false);
        lp::LpSolution root = lp::solve(m);
        if (root.status != SolveStatus::Optimal) continue;
        // fix a couple of variables to a feasible corner of their box
        for (int fixes = 0; fixes < 2; ++fixes) {
            int j = static_cast<int>(rng.uniform_int(0, n - 1));
            double v = rng.uniform() < 0.5 ? m.lower[j] : m.upper[j];
            m.set_bounds(j, v, v);
        }
        lp::LpSolution warm = lp::solve(m, &root.basis);
        lp::LpSolution cold = lp::solve(m);
        REQUIRE(warm.status == cold.status);
        if (warm.status == SolveStatus::Optimal) {
            CHECK(warm.objective == doctest::Approx(cold.objective).epsilon(1e-6));
            check_kkt(m, warm);
            ++reoptimized;
        }
    }
    CHECK(reoptimized > 30);
}

TEST_CASE("iteration cap reports honestly") {
    Rng rng(777004);
    LpModel m = random_model(rng, 12, 8, false);
    lp::SolverOptions opts;
    opts.max_pivots = 1;
    lp::LpSolution s = lp::solve(m, nullptr, opts);
    CHECK((s.status == SolveStatus::IterationLimit || s.status == SolveStatus::Optimal ||
           s.status == SolveStatus::Infeasible));
}
