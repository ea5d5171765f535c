// Command-line front end: generate benchmark instances, enumerate feasible
// paths, solve instances in three modes, compare relaxations, and emit JSON
// reports plus aggregate CSVs for batch runs.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

#include <CLI11.hpp>
#include <json.hpp>

#include "ndsr/arcflow.hpp"
#include "ndsr/bnp.hpp"
#include "ndsr/enumerate.hpp"
#include "ndsr/generator.hpp"
#include "ndsr/graph.hpp"
#include "ndsr/instance_io.hpp"
#include "ndsr/master.hpp"
#include "ndsr/validate.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace ndsr;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitSpecError = 2;
constexpr int kExitTimeLimit = 3;
constexpr int kExitInfeasible = 4;

struct SolveFlags {
    std::string mode = "bnp";
    double time_limit_s = 3600.0;
    double gap_limit = 0.0;
    double alpha = 1.0;
    std::int64_t max_labels = 50'000'000;
    int threads = 0;
    std::string output;
};

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

json config_echo(const std::string& command, const std::string& instance_path,
                 const SolveFlags& flags) {
    json cfg;
    cfg["command"] = command;
    cfg["instance"] = instance_path;
    cfg["mode"] = flags.mode;
    cfg["time_limit_s"] = flags.time_limit_s;
    cfg["gap_limit"] = flags.gap_limit;
    cfg["alpha"] = flags.alpha;
    cfg["max_labels"] = flags.max_labels;
    cfg["threads"] = flags.threads;
    cfg["output"] = flags.output;
    return cfg;
}

Instance load_with_alpha(const std::string& path, double alpha) {
    Instance inst = load_instance_file(path);
    if (alpha != 1.0) inst = gen::scale_limits(inst, alpha);
    return inst;
}

json solve_report(const Instance& inst, const std::string& path, const SolveFlags& flags,
                  const bnp::SolveResult& r) {
    json report;
    report["config"] = config_echo("solve", path, flags);
    json res;
    res["status"] = bnp::status_name(r.status);
    res["optimal"] = r.status == bnp::SolveStatusKind::Optimal;
    res["value"] = r.upper;
    res["bound"] = r.lower;
    res["gap_pct"] = r.gap_pct;
    report["result"] = res;
    json stats;
    stats["nodes"] = r.stats.nodes;
    stats["columns"] = r.stats.columns_generated;
    stats["colgen_rounds"] = r.stats.colgen_rounds;
    stats["cuts"] = r.stats.cuts_added;
    stats["paths"] = r.stats.path_count;
    stats["root_lp"] = r.stats.root_lp;
    stats["root_lp_after_cuts"] = r.stats.root_lp_after_cuts;
    stats["x_integrality_anomalies"] = r.stats.x_integrality_anomalies;
    report["stats"] = stats;
    if (!r.cuts.empty()) {
        json log = json::array();
        for (const auto& cut : r.cuts) {
            json jc;
            jc["family"] = cut.family;
            jc["arcs"] = cut.z_arcs;
            jc["q"] = cut.rhs;
            jc["violation"] = cut.violation;
            log.push_back(jc);
        }
        report["cut_log"] = log;
    }
    if (r.incumbent) {
        json sol;
        json arcs = json::array();
        for (int a = 0; a < inst.num_arcs(); ++a)
            if (r.incumbent->open_arcs[a]) arcs.push_back(a);
        sol["open_arcs"] = arcs;
        json paths = json::array();
        for (const Path& p : r.incumbent->paths) {
            json jp;
            jp["commodity"] = p.commodity;
            jp["arcs"] = p.arcs;
            jp["cost"] = p.cost;
            paths.push_back(jp);
        }
        sol["paths"] = paths;
        report["solution"] = sol;
    }
    json timing;  // excluded from determinism comparisons
    timing["wall_s"] = r.stats.wall_time_s;
    timing["lp_s"] = r.stats.lp_time_s;
    timing["pricing_s"] = r.stats.pricing_time_s;
    report["timing"] = timing;
    return report;
}

std::string summary_line(const bnp::SolveResult& r) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%s %.6g %.6g %.2f %.2f %lld %lld %d %lld",
                  bnp::status_name(r.status).c_str(), r.upper, r.lower, r.gap_pct,
                  r.stats.wall_time_s, static_cast<long long>(r.stats.nodes),
                  static_cast<long long>(r.stats.columns_generated), r.stats.cuts_added,
                  static_cast<long long>(r.stats.path_count));
    return buf;
}

int status_exit_code(bnp::SolveStatusKind s) {
    switch (s) {
        case bnp::SolveStatusKind::Optimal:
        case bnp::SolveStatusKind::Feasible: return kExitOk;
        case bnp::SolveStatusKind::TimeLimit: return kExitTimeLimit;
        case bnp::SolveStatusKind::Infeasible: return kExitInfeasible;
    }
    return kExitSpecError;
}

bnp::SolveResult run_solver(const Instance& inst, const SolveFlags& flags) {
    bnp::SolveParams params;
    auto mode = bnp::parse_mode(flags.mode);
    if (!mode) throw CLI::ValidationError("--mode", "expected allpath, bnp or bcp");
    params.mode = *mode;
    params.time_limit_s = flags.time_limit_s;
    params.gap_limit_pct = flags.gap_limit;
    params.max_enum_labels = flags.max_labels;
    params.parallel = flags.threads != 1;
    return bnp::solve(inst, params);
}

// scenario key for grouping: the instance name up to the '#seed' suffix
std::string scenario_of(const std::string& name) {
    auto pos = name.find('#');
    return pos == std::string::npos ? name : name.substr(0, pos);
}

int cmd_solve_batch(const std::string& dir, const SolveFlags& flags) {
    struct Row {
        int count = 0, optimal = 0;
        double gap_sum = 0.0, time_sum = 0.0;
        std::int64_t path_sum = 0;
        bool paths_complete = true;
    };
    std::map<std::string, Row> rows;
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    if (files.empty()) {
        std::cerr << "no .json instances in " << dir << "\n";
        return kExitSpecError;
    }
    int worst = kExitOk;
    for (const fs::path& f : files) {
        Instance inst = load_with_alpha(f.string(), flags.alpha);
        bnp::SolveResult r = run_solver(inst, flags);
        std::cout << f.filename().string() << ": " << summary_line(r) << "\n";
        worst = std::max(worst, status_exit_code(r.status));
        Row& row = rows[scenario_of(inst.name)];
        ++row.count;
        if (r.status == bnp::SolveStatusKind::Optimal) {
            ++row.optimal;
            row.time_sum += r.stats.wall_time_s;
        }
        row.gap_sum += r.gap_pct;
        row.path_sum += r.stats.path_count;
        if (r.stats.path_count == 0) row.paths_complete = false;
    }
    std::string csv = "scenario,instances,opt,mean_gap,mean_time,mean_paths\n";
    for (const auto& [scenario, row] : rows) {
        char buf[256];
        std::snprintf(buf, sizeof(buf), "%s,%d,%d,%.2f,%.2f,%.1f\n", scenario.c_str(), row.count,
                      row.optimal, row.gap_sum / row.count,
                      row.optimal ? row.time_sum / row.optimal : 0.0,
                      row.paths_complete ? static_cast<double>(row.path_sum) / row.count : 0.0);
        csv += buf;
    }
    if (!flags.output.empty()) {
        write_text_file(flags.output, csv);
    } else {
        std::cout << csv;
    }
    return worst;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"network design with service requirements: generator and exact solvers"};
    app.require_subcommand(1);

    // ---- generate -------------------------------------------------------
    auto* cgen = app.add_subcommand("generate", "write a random benchmark instance");
    int g_nodes = 30, g_arcs = 120, g_commodities = 90;
    std::string g_levels = "MMMM", g_output;
    std::uint64_t g_seed = 1;
    cgen->add_option("--nodes", g_nodes, "node count")->required();
    cgen->add_option("--arcs", g_arcs, "arc count")->required();
    cgen->add_option("--commodities", g_commodities, "commodity count")->required();
    cgen->add_option("--levels", g_levels, "beta/gamma/q_avg/delta_q levels, e.g. MMMM");
    cgen->add_option("--seed", g_seed, "random seed");
    cgen->add_option("-o,--output", g_output, "output instance file")->required();

    // ---- enumerate ------------------------------------------------------
    auto* cenum = app.add_subcommand("enumerate", "count feasible paths per commodity");
    std::string e_instance, e_output;
    double e_alpha = 1.0;
    std::int64_t e_max_labels = 50'000'000;
    cenum->add_option("instance", e_instance, "instance file")->required();
    cenum->add_option("--alpha", e_alpha, "scale every service limit");
    cenum->add_option("--max-labels", e_max_labels, "per-commodity label cap");
    cenum->add_option("-o,--output", e_output, "JSON report path");

    // ---- solve ----------------------------------------------------------
    auto* csolve = app.add_subcommand("solve", "solve an instance (or directory of instances)");
    std::string s_instance;
    SolveFlags sf;
    csolve->add_option("instance", s_instance, "instance file or directory")->required();
    csolve->add_option("--mode", sf.mode, "allpath, bnp or bcp");
    csolve->add_option("--time-limit", sf.time_limit_s, "seconds per instance");
    csolve->add_option("--gap-limit", sf.gap_limit, "stop at this percentage gap");
    csolve->add_option("--alpha", sf.alpha, "scale every service limit");
    csolve->add_option("--max-labels", sf.max_labels, "per-commodity label cap (allpath)");
    csolve->add_option("--threads", sf.threads, "1 disables parallel pricing");
    csolve->add_option("-o,--output", sf.output, "JSON report (or CSV for a directory)");

    // ---- compare --------------------------------------------------------
    auto* ccomp = app.add_subcommand("compare", "arc-flow LP vs path LP vs integer optimum");
    std::string c_instance, c_output;
    double c_alpha = 1.0;
    ccomp->add_option("instance", c_instance, "instance file")->required();
    ccomp->add_option("--alpha", c_alpha, "scale every service limit");
    ccomp->add_option("-o,--output", c_output, "JSON report path");

    // ---- oracle (hidden debugging aid) -----------------------------------
    auto* coracle = app.add_subcommand("oracle", "reference implementations");
    coracle->group("");  // hidden
    std::string o_what, o_instance;
    coracle->add_option("what", o_what, "dfs or exact")->required();
    coracle->add_option("instance", o_instance, "instance file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);  // prints message and usage
        return code == 0 ? kExitOk : kExitSpecError;
    }

    try {
        if (*cgen) {
            gen::ScenarioSpec spec =
                gen::ScenarioSpec::from_levels(g_nodes, g_arcs, g_commodities, g_levels, g_seed);
            Instance inst = gen::generate(spec);
            save_instance_file(inst, g_output);
            std::cout << "wrote " << g_output << " (" << inst.name << ")\n";
            return kExitOk;
        }

        if (*cenum) {
            Instance inst = load_with_alpha(e_instance, e_alpha);
            EnumerateOptions opts;
            opts.max_labels = e_max_labels;
            PathCounts counts = count_all_paths(inst, opts);
            json report;
            report["config"]["command"] = "enumerate";
            report["config"]["instance"] = e_instance;
            report["config"]["alpha"] = e_alpha;
            report["per_commodity"] = counts.per_commodity;
            report["total"] = counts.total;
            if (!e_output.empty()) write_text_file(e_output, report.dump(2) + "\n");
            std::cout << "total paths: " << counts.total << "\n";
            return kExitOk;
        }

        if (*csolve) {
            if (fs::is_directory(s_instance)) return cmd_solve_batch(s_instance, sf);
            Instance inst = load_with_alpha(s_instance, sf.alpha);
            ValidationReport v = validate_instance(inst);
            if (!v.ok()) {
                std::cerr << "instance invalid or infeasible\n";
                for (const std::string& s : v.structural_issues) std::cerr << "  " << s << "\n";
                return kExitInfeasible;
            }
            bnp::SolveResult r = run_solver(inst, sf);
            if (!sf.output.empty())
                write_text_file(sf.output, solve_report(inst, s_instance, sf, r).dump(2) + "\n");
            std::cout << summary_line(r) << "\n";
            return status_exit_code(r.status);
        }

        if (*ccomp) {
            Instance inst = load_with_alpha(c_instance, c_alpha);
            arcflow::ArcFlowResult af = arcflow::build_and_solve(inst);

            colgen::ColgenOptions mopts;
            colgen::MasterModel master(inst, mopts);
            lp::LpSolution sol;
            colgen::ColgenOutcome path_lp = master.solve_by_colgen({}, sol);

            bnp::SolveParams params;
            params.mode = bnp::Mode::BranchAndPrice;
            bnp::SolveResult ilp = bnp::solve(inst, params);

            char buf[160];
            std::snprintf(buf, sizeof(buf), "arcflow-lp %.6f path-lp %.6f ilp %.6f",
                          af.objective, path_lp.value, ilp.upper);
            std::cout << buf << "\n";
            if (!c_output.empty()) {
                json report;
                report["config"]["command"] = "compare";
                report["config"]["instance"] = c_instance;
                report["config"]["alpha"] = c_alpha;
                report["arcflow_lp"] = af.objective;
                report["path_lp"] = path_lp.value;
                report["ilp"] = ilp.upper;
                write_text_file(c_output, report.dump(2) + "\n");
            }
            return kExitOk;
        }

        if (*coracle) {
            Instance inst = load_instance_file(o_instance);
            if (o_what == "dfs") {
                std::int64_t total = 0;
                for (int k = 0; k < inst.num_commodities(); ++k) {
                    auto paths = oracles::dfs_enumerate(inst, k);
                    std::cout << "commodity " << k << ": " << paths.size() << "\n";
                    total += static_cast<std::int64_t>(paths.size());
                }
                std::cout << "total " << total << "\n";
            } else if (o_what == "exact") {
                std::cout << "optimum " << oracles::exact_toy_solver(inst) << "\n";
            } else {
                std::cerr << "unknown oracle '" << o_what << "'\n";
                return kExitSpecError;
            }
            return kExitOk;
        }
    } catch (const gen::SpecError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSpecError;
    } catch (const InstanceFormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSpecError;
    } catch (const colgen::InfeasibleCommodityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitSpecError;
}
