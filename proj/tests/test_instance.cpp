#include <doctest.h>

#include <sstream>

#include "ndsr/instance.hpp"
#include "ndsr/instance_io.hpp"
#include "ndsr/validate.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace ndsr;

namespace {

const char* kFigure1Json = R"({
  "name": "figure1",
  "num_nodes": 3,
  "arcs": [
    {"tail": 0, "head": 1, "F": 0},
    {"tail": 0, "head": 2, "F": 1},
    {"tail": 1, "head": 2, "F": 0}
  ],
  "commodities": [{"source": 0, "sink": 2, "W": [2]}],
  "num_metrics": 1,
  "flow_costs": {"shared": true, "c": [0, 0, 0]},
  "weights": {"shared": true, "w": [[2], [1], [1]]}
})";

Instance parse(const std::string& text) {
    std::istringstream in(text);
    return load_instance(in);
}

}  // namespace

TEST_CASE("figure 1 document loads with expected data") {
    Instance inst = parse(kFigure1Json);
    REQUIRE(inst.num_nodes == 3);
    REQUIRE(inst.num_arcs() == 3);
    REQUIRE(inst.num_commodities() == 1);
    REQUIRE(inst.num_metrics == 1);
    CHECK(inst.arcs[0].activation_cost == 0.0);
    CHECK(inst.arcs[1].activation_cost == 1.0);
    CHECK(inst.arcs[2].activation_cost == 0.0);
    CHECK(inst.weight(0, 0, 0) == 2.0);
    CHECK(inst.weight(0, 1, 0) == 1.0);
    CHECK(inst.weight(0, 2, 0) == 1.0);
    CHECK(inst.limit(0, 0) == 2.0);
    CHECK(instances_equal(inst, fixtures::figure1()));
}

TEST_CASE("minimal document: one arc, zero metrics") {
    Instance inst = parse(R"({
      "name": "tiny", "num_nodes": 2,
      "arcs": [{"tail": 0, "head": 1, "F": 0}],
      "commodities": [{"source": 0, "sink": 1, "W": []}],
      "num_metrics": 0,
      "flow_costs": {"shared": true, "c": [0]},
      "weights": {"shared": true, "w": [[]]}
    })");
    CHECK(inst.num_metrics == 0);
    CHECK(validate_instance(inst).ok());
}

TEST_CASE("save/load round trip is byte identical") {
    for (const Instance& inst : {fixtures::figure1(), fixtures::figure2(),
                                 oracles::make_random_toy(7), oracles::make_random_toy(123)}) {
        std::string bytes = save_instance(inst);
        Instance reloaded = parse(bytes);
        CHECK(instances_equal(inst, reloaded));
        CHECK(save_instance(reloaded) == bytes);
    }
}

TEST_CASE("empty commodity list serializes to a valid document") {
    Instance inst = fixtures::figure1();
    inst.commodities.clear();
    inst.flow_cost.clear();
    inst.weight_data.clear();
    std::string bytes = save_instance(inst);
    Instance reloaded = parse(bytes);
    CHECK(reloaded.num_commodities() == 0);
    CHECK(reloaded.num_arcs() == 3);
}

TEST_CASE("expanded (non-shared) blocks round trip") {
    Instance inst = oracles::make_random_toy(42);
    inst.shared_costs = false;
    inst.shared_weights = false;
    Instance reloaded = parse(save_instance(inst));
    CHECK(instances_equal(inst, reloaded));
}

TEST_CASE("load rejects malformed documents") {
    CHECK_THROWS_AS(parse("{"), InstanceFormatError);
    // dimension mismatch: W has no entry for the declared metric
    CHECK_THROWS_AS(parse(R"({
      "name": "x", "num_nodes": 2,
      "arcs": [{"tail": 0, "head": 1, "F": 0}],
      "commodities": [{"source": 0, "sink": 1, "W": []}],
      "num_metrics": 1,
      "flow_costs": {"shared": true, "c": [0]},
      "weights": {"shared": true, "w": [[1]]}
    })"),
                    InstanceFormatError);
    // negative activation cost
    CHECK_THROWS_AS(parse(R"({
      "name": "x", "num_nodes": 2,
      "arcs": [{"tail": 0, "head": 1, "F": -1}],
      "commodities": [],
      "num_metrics": 0,
      "flow_costs": {"shared": true, "c": [0]},
      "weights": {"shared": true, "w": [[]]}
    })"),
                    InstanceFormatError);
    // duplicate arc
    CHECK_THROWS_AS(parse(R"({
      "name": "x", "num_nodes": 2,
      "arcs": [{"tail": 0, "head": 1, "F": 0}, {"tail": 0, "head": 1, "F": 2}],
      "commodities": [],
      "num_metrics": 0,
      "flow_costs": {"shared": true, "c": [0, 0]},
      "weights": {"shared": true, "w": [[], []]}
    })"),
                    InstanceFormatError);
}

TEST_CASE("path_metrics sums costs and weights") {
    Instance inst = fixtures::figure1();
    SUBCASE("direct arc is feasible") {
        std::vector<int> arcs{1};
        PathMetrics pm = path_metrics(inst, 0, arcs);
        CHECK(pm.cost == 0.0);
        CHECK(pm.weights == std::vector<double>{1.0});
        CHECK(pm.feasible);
    }
    SUBCASE("detour exceeds the limit") {
        std::vector<int> arcs{0, 2};
        PathMetrics pm = path_metrics(inst, 0, arcs);
        CHECK(pm.weights == std::vector<double>{3.0});
        CHECK_FALSE(pm.feasible);
    }
    SUBCASE("broken chains throw") {
        std::vector<int> arcs{2};
        CHECK_THROWS_AS(path_metrics(inst, 0, arcs), BrokenChainError);
    }
    SUBCASE("no metrics means vacuous limits") {
        Instance nm = inst;
        nm.num_metrics = 0;
        nm.weight_data.clear();
        nm.commodities[0].limit.clear();
        PathMetrics pm = path_metrics(nm, 0, std::vector<int>{0, 2});
        CHECK(pm.feasible);
    }
}

TEST_CASE("path_metrics agrees with a naive per-arc loop on random toys") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        Instance inst = oracles::make_random_toy(seed);
        for (int k = 0; k < inst.num_commodities(); ++k) {
            for (const Path& p : oracles::dfs_enumerate(inst, k)) {
                PathMetrics pm = path_metrics(inst, k, p.arcs);
                double c = 0.0;
                std::vector<double> w(inst.num_metrics, 0.0);
                for (int a : p.arcs) {
                    c += inst.cost(k, a);
                    for (int m = 0; m < inst.num_metrics; ++m) w[m] += inst.weight(k, a, m);
                }
                CHECK(pm.cost == doctest::Approx(c));
                for (int m = 0; m < inst.num_metrics; ++m)
                    CHECK(pm.weights[m] == doctest::Approx(w[m]));
                CHECK(pm.feasible);
            }
        }
    }
}

TEST_CASE("validate_instance on the worked examples") {
    SUBCASE("figure 1 is feasible") {
        ValidationReport r = validate_instance(fixtures::figure1());
        CHECK(r.ok());
        CHECK(r.commodity_feasible == std::vector<char>{1});
    }
    SUBCASE("zero limit makes the commodity infeasible") {
        Instance inst = fixtures::figure1();
        inst.commodities[0].limit[0] = 0.0;
        ValidationReport r = validate_instance(inst);
        CHECK(r.structural_issues.empty());
        CHECK(r.commodity_feasible == std::vector<char>{0});
        CHECK_FALSE(r.ok());
    }
    SUBCASE("unreachable sink is flagged") {
        Instance inst = oracles::make_random_toy(9, {.max_nodes = 8, .force_feasible = true});
        // cut every arc into the first commodity's sink
        int sink = inst.commodities[0].sink;
        for (int a = inst.num_arcs() - 1; a >= 0; --a) {
            if (inst.arcs[a].head != sink) continue;
            inst.arcs.erase(inst.arcs.begin() + a);
            for (auto& row : inst.flow_cost) row.erase(row.begin() + a);
            const int nm = inst.num_metrics;
            if (nm > 0) {
                std::vector<double> nw;
                const int na_old = static_cast<int>(inst.weight_data.size()) /
                                   (nm * inst.num_commodities());
                for (int k = 0; k < inst.num_commodities(); ++k)
                    for (int aa = 0; aa < na_old; ++aa)
                        if (aa != a)
                            for (int m = 0; m < nm; ++m)
                                nw.push_back(
                                    inst.weight_data[(static_cast<std::size_t>(k) * na_old + aa) *
                                                         nm + m]);
                inst.weight_data = std::move(nw);
            }
        }
        ValidationReport r = validate_instance(inst);
        CHECK_FALSE(static_cast<bool>(r.commodity_feasible[0]));
    }
    SUBCASE("structural violations are reported, not thrown") {
        Instance inst = fixtures::figure1();
        inst.arcs.push_back({1, 1, 0.0});
        inst.flow_cost[0].push_back(0.0);
        inst.weight_data = {2.0, 1.0, 1.0, 1.0};
        ValidationReport r = validate_instance(inst);
        CHECK_FALSE(r.structural_issues.empty());
    }
}

TEST_CASE("validation feasibility agrees with DFS enumeration on toys") {
    for (std::uint64_t seed = 30; seed < 60; ++seed) {
        Instance inst = oracles::make_random_toy(seed);
        ValidationReport r = validate_instance(inst);
        REQUIRE(r.structural_issues.empty());
        for (int k = 0; k < inst.num_commodities(); ++k) {
            bool oracle = !oracles::dfs_enumerate(inst, k).empty();
            CHECK(static_cast<bool>(r.commodity_feasible[k]) == oracle);
        }
    }
}
