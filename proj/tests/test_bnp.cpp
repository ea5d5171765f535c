#include <doctest.h>

#include <cmath>

#include "ndsr/bnp.hpp"
#include "ndsr/enumerate.hpp"
#include "ndsr/graph.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace ndsr;
using bnp::Mode;
using bnp::SolveParams;
using bnp::SolveResult;
using bnp::SolveStatusKind;

TEST_CASE("figure 1 solves to one in every mode") {
    for (Mode mode : {Mode::AllPath, Mode::BranchAndPrice, Mode::BranchCutPrice}) {
        SolveParams params;
        params.mode = mode;
        SolveResult r = bnp::solve(fixtures::figure1(), params);
        REQUIRE(r.status == SolveStatusKind::Optimal);
        CHECK(r.upper == doctest::Approx(1.0));
        CHECK(r.lower == doctest::Approx(1.0));
        CHECK(r.gap_pct == doctest::Approx(0.0));
        REQUIRE(r.incumbent.has_value());
        CHECK(r.incumbent->open_arcs == std::vector<char>{0, 1, 0});
        if (mode == Mode::AllPath) CHECK(r.stats.path_count == 1);
    }
}

TEST_CASE("figure 2 solves to two; cuts close the root gap in bcp mode") {
    for (Mode mode : {Mode::AllPath, Mode::BranchAndPrice, Mode::BranchCutPrice}) {
        SolveParams params;
        params.mode = mode;
        SolveResult r = bnp::solve(fixtures::figure2(), params);
        REQUIRE(r.status == SolveStatusKind::Optimal);
        CHECK(r.upper == doctest::Approx(2.0));
        CHECK(r.stats.root_lp == doctest::Approx(1.5));
        if (mode == Mode::BranchCutPrice) {
            CHECK(r.stats.cuts_added >= 1);
            CHECK(r.stats.root_lp_after_cuts == doctest::Approx(2.0));
        }
        if (mode == Mode::AllPath) CHECK(r.stats.path_count == 6);
    }
}

TEST_CASE("figure 1 with the limit scaled by 1.5 costs nothing") {
    Instance inst = fixtures::figure1();
    inst.commodities[0].limit[0] *= 1.5;
    SolveResult r = bnp::solve(inst, {});
    REQUIRE(r.status == SolveStatusKind::Optimal);
    CHECK(r.upper == doctest::Approx(0.0));
    CHECK(r.gap_pct == 0.0);
    REQUIRE(r.incumbent.has_value());
    CHECK(r.incumbent->paths[0].arcs == std::vector<int>{0, 2});
}

TEST_CASE("branch variable selection") {
    Instance inst = fixtures::figure2();
    SUBCASE("integral values select nothing") {
        std::vector<double> z(inst.num_arcs(), 1.0);
        z[3] = 0.0;
        CHECK(bnp::select_branch_variable(z, inst) == -1);
    }
    SUBCASE("equal fractionality and cost: smallest arc id") {
        std::vector<double> z(inst.num_arcs(), 0.0);
        z[fixtures::kFig2Mid36] = z[fixtures::kFig2Mid47] = z[fixtures::kFig2Mid58] = 0.5;
        CHECK(bnp::select_branch_variable(z, inst) == fixtures::kFig2Mid36);
    }
    SUBCASE("most fractional wins, then larger activation cost") {
        std::vector<double> z(inst.num_arcs(), 0.0);
        z[2] = 0.2;
        z[5] = 0.7;  // closer to 1/2
        CHECK(bnp::select_branch_variable(z, inst) == 5);
        z[2] = 0.7;  // tie on fractionality, F equal: smaller id
        CHECK(bnp::select_branch_variable(z, inst) == 2);
        Instance priced = inst;
        priced.arcs[5].activation_cost = 9.0;  // tie broken by larger F
        CHECK(bnp::select_branch_variable(z, priced) == 5);
    }
}

TEST_CASE("all three modes agree with the exact oracle on random toys") {
    int solved = 0;
    for (std::uint64_t seed = 1200; solved < 12; ++seed) {
        Instance inst = oracles::make_random_toy(
            seed, {.max_nodes = 9, .max_arcs = 18, .max_commodities = 3,
                   .force_feasible = true, .positive_flow_costs = true});
        double expect;
        try {
            expect = oracles::exact_toy_solver(inst);
        } catch (const oracles::OracleSizeError&) {
            continue;
        }
        REQUIRE(std::isfinite(expect));
        for (Mode mode : {Mode::AllPath, Mode::BranchAndPrice, Mode::BranchCutPrice}) {
            SolveParams params;
            params.mode = mode;
            SolveResult r = bnp::solve(inst, params);
            REQUIRE(r.status == SolveStatusKind::Optimal);
            CHECK(r.upper == doctest::Approx(expect).epsilon(1e-6));
            CHECK(r.stats.x_integrality_anomalies == 0);
            CHECK(r.stats.bound_monotonicity_violations == 0);
        }
        ++solved;
    }
}

TEST_CASE("incumbents are re-validated against the instance") {
    for (std::uint64_t seed = 1300; seed < 1310; ++seed) {
        Instance inst = oracles::make_random_toy(
            seed, {.max_nodes = 10, .force_feasible = true, .positive_flow_costs = true});
        SolveResult r = bnp::solve(inst, {});
        REQUIRE(r.status == SolveStatusKind::Optimal);
        REQUIRE(r.incumbent.has_value());
        double value = 0.0;
        std::vector<char> open(inst.num_arcs(), 0);
        for (int k = 0; k < inst.num_commodities(); ++k) {
            PathMetrics pm = path_metrics(inst, k, r.incumbent->paths[k].arcs);
            CHECK(pm.feasible);
            value += pm.cost;
            for (int a : r.incumbent->paths[k].arcs) open[a] = 1;
        }
        for (int a = 0; a < inst.num_arcs(); ++a)
            if (open[a]) value += inst.arcs[a].activation_cost;
        CHECK(value == doctest::Approx(r.upper));
        CHECK(open == r.incumbent->open_arcs);
    }
}

TEST_CASE("infeasible commodity reports infeasible") {
    Instance inst = fixtures::figure1();
    inst.commodities[0].limit[0] = 0.0;
    SolveResult r = bnp::solve(inst, {});
    CHECK(r.status == SolveStatusKind::Infeasible);
    CHECK_FALSE(r.incumbent.has_value());
}

TEST_CASE("gap limits stop early but never overstate optimality") {
    SUBCASE("a huge allowance accepts the first incumbent") {
        SolveParams params;
        params.gap_limit_pct = 100.0;
        SolveResult r = bnp::solve(fixtures::figure2(), params);
        REQUIRE(r.incumbent.has_value());
        CHECK(r.gap_pct <= 100.0 + 1e-9);
        CHECK(r.upper >= 2.0 - 1e-9);  // never below the true optimum
    }
    SUBCASE("a 0.1% limit still brackets the true optimum") {
        int solved = 0;
        for (std::uint64_t seed = 1600; solved < 10; ++seed) {
            Instance inst = oracles::make_random_toy(
                seed, {.max_nodes = 9, .max_arcs = 18, .max_commodities = 3,
                       .force_feasible = true, .positive_flow_costs = true});
            double expect;
            try {
                expect = oracles::exact_toy_solver(inst);
            } catch (const oracles::OracleSizeError&) {
                continue;
            }
            SolveParams params;
            params.gap_limit_pct = 0.1;
            SolveResult r = bnp::solve(inst, params);
            REQUIRE(r.status == SolveStatusKind::Optimal);
            // reported optimal within 0.1%: the true value must sit inside
            CHECK(r.upper >= expect - 1e-9);
            CHECK(r.lower <= expect + 1e-9);
            CHECK(100.0 * (r.upper - expect) <= 0.1 * std::abs(r.upper) + 1e-9);
            ++solved;
        }
    }
}

TEST_CASE("a zero-second time limit reports time-limit status") {
    SolveParams params;
    params.time_limit_s = 0.0;
    SolveResult r = bnp::solve(fixtures::figure2(), params);
    CHECK(r.status == SolveStatusKind::TimeLimit);
}

TEST_CASE("the enumeration cap surfaces as a distinct error in allpath mode") {
    SolveParams params;
    params.mode = Mode::AllPath;
    params.max_enum_labels = 2;
    CHECK_THROWS_AS(bnp::solve(fixtures::figure2(), params), EnumerationCapError);
}

TEST_CASE("identical runs produce identical results") {
    Instance inst = oracles::make_random_toy(
        4242, {.max_nodes = 10, .force_feasible = true, .positive_flow_costs = true});
    SolveParams params;
    params.mode = Mode::BranchCutPrice;
    SolveResult a = bnp::solve(inst, params);
    SolveResult b = bnp::solve(inst, params);
    CHECK(a.upper == b.upper);
    CHECK(a.lower == b.lower);
    CHECK(a.stats.nodes == b.stats.nodes);
    CHECK(a.stats.columns_generated == b.stats.columns_generated);
    CHECK(a.stats.cuts_added == b.stats.cuts_added);
    REQUIRE((a.incumbent.has_value() && b.incumbent.has_value()));
    CHECK(a.incumbent->open_arcs == b.incumbent->open_arcs);
    for (std::size_t k = 0; k < a.incumbent->paths.size(); ++k)
        CHECK(a.incumbent->paths[k].arcs == b.incumbent->paths[k].arcs);
}

TEST_CASE("solves are independent of the pricing thread count") {
    Instance inst = oracles::make_random_toy(
        8899, {.max_nodes = 10, .force_feasible = true, .positive_flow_costs = true});
    SolveResult results[2];
    for (bool parallel : {false, true}) {
        SolveParams params;
        params.mode = Mode::BranchCutPrice;
        params.parallel = parallel;
        results[parallel] = bnp::solve(inst, params);
    }
    CHECK(results[0].upper == results[1].upper);
    CHECK(results[0].stats.nodes == results[1].stats.nodes);
    CHECK(results[0].stats.columns_generated == results[1].stats.columns_generated);
    REQUIRE((results[0].incumbent && results[1].incumbent));
    CHECK(results[0].incumbent->open_arcs == results[1].incumbent->open_arcs);
}

TEST_CASE("observation 1 rounding path: equal-cost twin routes") {
    // two parallel zero-cost routes for one commodity, both open by fixing:
    // the LP may sit anywhere on the face; the incumbent must pick one path
    Instance inst;
    inst.name = "twin-routes";
    inst.num_nodes = 4;
    inst.num_metrics = 0;
    inst.arcs = {{0, 1, 0.0}, {1, 3, 0.0}, {0, 2, 0.0}, {2, 3, 0.0}};
    inst.commodities = {{0, 3, {}}};
    inst.shared_costs = true;
    inst.shared_weights = true;
    inst.flow_cost = {std::vector<double>(4, 0.0)};
    SolveResult r = bnp::solve(inst, {});
    REQUIRE(r.status == SolveStatusKind::Optimal);
    CHECK(r.upper == doctest::Approx(0.0));
    REQUIRE(r.incumbent.has_value());
    CHECK(r.incumbent->paths[0].arcs.size() == 2);
}
