#include <omp.h>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dvd/errors.hpp"
#include "dvd/gen.hpp"
#include "dvd/io.hpp"
#include "dvd/modular.hpp"
#include "dvd/reduction.hpp"
#include "dvd/solve.hpp"
#include "dvd/treedec.hpp"
#include "json.hpp"

namespace {

using nlohmann::json;

struct SolveArgs {
    std::string instance;
    std::string algorithm;
    std::string td;
    int budget = -1;
    bool use_json = false;
    int width_cap = 20;
    int size_cap = -1;
    bool memo = false;
};

struct VerifyArgs {
    std::string instance;
    std::string solution;
};

struct GenerateArgs {
    std::string family;
    std::string out;
    std::string labels;
    int n = 0;
    int rows = 0, cols = 0;
    double p = 0.5;
    int q = 0, r = 0, s = 0;
    int t = 1, d = 1;
    uint64_t seed = 0;
    bool planted = false;
};

struct BenchArgs {
    std::string suite;
    std::string csv;
};

struct DecomposeArgs {
    std::string instance;
    std::string kind = "parse";
    std::string out;
};

json solution_record(const dvd::SolveReport& report) {
    const dvd::Solution& sol = *report.solution;
    json set = json::array();
    for (int v : sol.selected) set.push_back(v + 1);
    json j;
    j["algorithm"] = sol.algorithm;
    j["size"] = sol.selected.size();
    j["set"] = set;
    j["valid"] = report.valid;
    j["wall_ms"] = report.wall_ms;
    if (sol.width_used)
        j["width_used"] = *sol.width_used;
    else
        j["width_used"] = nullptr;
    return j;
}

int cmd_solve(const SolveArgs& args) {
    dvd::DvdInstance inst = dvd::load_instance(args.instance);
    dvd::SolveRequest req;
    req.algorithm = args.algorithm;
    req.width_cap = args.width_cap;
    req.memo = args.memo;
    if (!args.td.empty()) req.td = dvd::load_td(args.td);
    if (args.size_cap >= 0) req.size_cap = args.size_cap;

    if (args.budget >= 0) {
        if (args.algorithm == "brute" &&
            (!req.size_cap || *req.size_cap > args.budget))
            req.size_cap = args.budget;
        dvd::SolveReport report = dvd::run_solver(inst, req);
        bool yes = report.solution &&
                   static_cast<int>(report.solution->selected.size()) <= args.budget;
        if (args.use_json) {
            json j;
            j["algorithm"] = args.algorithm;
            j["budget"] = args.budget;
            j["decision"] = yes;
            j["wall_ms"] = report.wall_ms;
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << (yes ? "YES" : "NO") << "\n";
        }
        return 0;
    }

    dvd::SolveReport report = dvd::run_solver(inst, req);
    if (!report.solution) throw dvd::RefusalError("no solution within the size cap");
    if (args.use_json) {
        std::cout << solution_record(report).dump(2) << "\n";
    } else {
        dvd::write_solution(std::cout, report.solution->selected);
    }
    return 0;
}

int cmd_verify(const VerifyArgs& args) {
    dvd::DvdInstance inst = dvd::load_instance(args.instance);
    std::ifstream in(args.solution);
    if (!in) throw dvd::ParseError(args.solution + ": cannot open");
    std::vector<int> set = dvd::read_solution(in, args.solution);
    dvd::CheckResult check = dvd::is_dvd_set(inst, set);
    if (check.ok) {
        std::cout << "VALID\n";
        return 0;
    }
    std::cout << "INVALID\n";
    for (const dvd::Deficiency& def : check.deficiencies)
        std::cout << "vertex " << def.vertex + 1 << ": needs " << def.required
                  << " within distance " << inst.d(def.vertex) << ", sees " << def.got
                  << "\n";
    return 4;
}

int cmd_generate(const GenerateArgs& args) {
    if (args.family == "mq-vd") {
        if (args.out.empty())
            throw dvd::ParseError("family mq-vd needs --out for the sidecar file");
        dvd::MqInstance mq =
            dvd::mq_random_instance(args.q, args.r, args.s, args.seed, args.planted);
        dvd::VdReduction red = dvd::mq_to_vd(mq);
        dvd::save_instance(args.out, red.instance);
        std::string labels = args.labels.empty() ? args.out + ".labels" : args.labels;
        std::ofstream lab(labels);
        if (!lab) throw dvd::ParseError(labels + ": cannot open for writing");
        for (int v = 0; v < red.instance.num_vertices(); ++v)
            lab << "v " << v + 1 << " " << red.part(v).name << "\n";
        std::cout << "k=" << red.budget << "\n";
        return 0;
    }

    dvd::Graph g;
    if (args.family == "path") {
        g = dvd::path_graph(args.n);
    } else if (args.family == "cycle") {
        g = dvd::cycle_graph(args.n);
    } else if (args.family == "grid") {
        g = dvd::grid_graph(args.rows, args.cols);
    } else if (args.family == "star") {
        g = dvd::star_graph(args.n);
    } else if (args.family == "gnp") {
        g = dvd::gnp_graph(args.n, args.p, args.seed);
    } else {
        throw dvd::ParseError("unknown family: " + args.family);
    }
    dvd::DvdInstance inst = dvd::uniform_instance(std::move(g), args.t, args.d);
    if (args.out.empty()) {
        dvd::write_instance(std::cout, inst);
    } else {
        dvd::save_instance(args.out, inst);
    }
    return 0;
}

struct BenchRow {
    std::string instance;
    std::string algorithm;
    std::string td;
};

int cmd_bench(const BenchArgs& args) {
    std::ifstream in(args.suite);
    if (!in) throw dvd::ParseError(args.suite + ": cannot open");
    std::vector<BenchRow> rows;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ss(line);
        BenchRow row;
        if (!(ss >> row.instance)) continue;
        if (row.instance[0] == '#') continue;
        if (!(ss >> row.algorithm))
            throw dvd::ParseError(args.suite + ":" + std::to_string(lineno) +
                                  ": row needs an instance and an algorithm");
        ss >> row.td;
        rows.push_back(std::move(row));
    }

    std::vector<std::string> missing;
    for (const BenchRow& row : rows) {
        if (!std::ifstream(row.instance)) missing.push_back(row.instance);
        if (!row.td.empty() && !std::ifstream(row.td)) missing.push_back(row.td);
    }
    if (!missing.empty()) {
        std::sort(missing.begin(), missing.end());
        missing.erase(std::unique(missing.begin(), missing.end()), missing.end());
        std::cerr << "missing files:\n";
        for (const std::string& path : missing) std::cerr << "  " << path << "\n";
        return 1;
    }

    struct Outcome {
        size_t size = 0;
        bool valid = false;
        double wall_ms = 0.0;
        std::optional<int> width_used;
    };
    std::vector<Outcome> outcomes(rows.size());
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (size_t i = 0; i < rows.size(); ++i) {
        try {
            dvd::DvdInstance inst = dvd::load_instance(rows[i].instance);
            dvd::SolveRequest req;
            req.algorithm = rows[i].algorithm;
            req.parallel = false;
            if (!rows[i].td.empty()) req.td = dvd::load_td(rows[i].td);
            dvd::SolveReport report = dvd::run_solver(inst, req);
            outcomes[i].size = report.solution->selected.size();
            outcomes[i].valid = report.valid;
            outcomes[i].wall_ms = report.wall_ms;
            outcomes[i].width_used = report.solution->width_used;
        } catch (...) {
#pragma omp critical
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);

    std::ostringstream csv;
    csv << "instance,algorithm,size,valid,wall_ms,width_used\n";
    for (size_t i = 0; i < rows.size(); ++i) {
        const Outcome& oc = outcomes[i];
        csv << rows[i].instance << "," << rows[i].algorithm << "," << oc.size << ","
            << (oc.valid ? "true" : "false") << "," << oc.wall_ms << ",";
        if (oc.width_used) csv << *oc.width_used;
        csv << "\n";
    }
    struct Agg {
        size_t runs = 0;
        size_t size = 0;
        bool valid = true;
        double wall_ms = 0.0;
        std::optional<int> width_used;
    };
    std::vector<std::string> order;
    std::map<std::string, Agg> by_alg;
    for (size_t i = 0; i < rows.size(); ++i) {
        if (!by_alg.count(rows[i].algorithm)) order.push_back(rows[i].algorithm);
        Agg& agg = by_alg[rows[i].algorithm];
        ++agg.runs;
        agg.size += outcomes[i].size;
        agg.valid = agg.valid && outcomes[i].valid;
        agg.wall_ms += outcomes[i].wall_ms;
        if (outcomes[i].width_used &&
            (!agg.width_used || *outcomes[i].width_used > *agg.width_used))
            agg.width_used = outcomes[i].width_used;
    }
    for (const std::string& alg : order) {
        const Agg& agg = by_alg[alg];
        csv << "summary," << alg << "," << agg.size << ","
            << (agg.valid ? "true" : "false") << "," << agg.wall_ms << ",";
        if (agg.width_used) csv << *agg.width_used;
        csv << "\n";
    }

    std::cout << csv.str();
    if (!args.csv.empty()) {
        std::ofstream out(args.csv);
        if (!out) throw dvd::ParseError(args.csv + ": cannot open for writing");
        out << csv.str();
    }
    return 0;
}

int cmd_decompose(const DecomposeArgs& args) {
    dvd::DvdInstance inst = dvd::load_instance(args.instance);
    std::ostringstream out;
    if (args.kind == "parse") {
        dvd::write_parse_tree(out, dvd::compute_modular_parse(inst.graph()));
    } else if (args.kind == "td") {
        dvd::write_td(out, dvd::min_degree_td(inst.graph()));
    } else {
        throw dvd::ParseError("unknown decomposition kind: " + args.kind);
    }
    if (args.out.empty()) {
        std::cout << out.str();
    } else {
        std::ofstream file(args.out);
        if (!file) throw dvd::ParseError(args.out + ": cannot open for writing");
        file << out.str();
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"distance vector domination toolkit"};
    app.require_subcommand(1);
    int jobs = 0;
    app.add_option("--jobs", jobs, "worker threads (0 = library default)");

    SolveArgs solve_args;
    CLI::App* solve = app.add_subcommand("solve", "run a solver on an instance");
    solve->add_option("--instance", solve_args.instance, "instance file")->required();
    solve->add_option("--algorithm", solve_args.algorithm,
                      "brute, greedy, rd-mw, vd-mw, dvd-mw, vd-tw, rd-tw")
        ->required();
    solve->add_option("--td", solve_args.td, "tree decomposition file");
    solve->add_option("--budget", solve_args.budget, "decide size <= budget instead");
    solve->add_flag("--json", solve_args.use_json, "machine-readable output");
    solve->add_option("--width-cap", solve_args.width_cap,
                      "largest accepted module fanout");
    solve->add_option("--size-cap", solve_args.size_cap, "brute-force set size cap");
    solve->add_flag("--memo", solve_args.memo, "cache failed decision states");

    VerifyArgs verify_args;
    CLI::App* verify = app.add_subcommand("verify", "check a solution file");
    verify->add_option("--instance", verify_args.instance, "instance file")->required();
    verify->add_option("--solution", verify_args.solution, "solution file")->required();

    GenerateArgs gen_args;
    CLI::App* generate = app.add_subcommand("generate", "write an instance file");
    generate->add_option("--family", gen_args.family,
                         "path, cycle, grid, gnp, star, mq-vd")
        ->required();
    generate->add_option("--n", gen_args.n, "vertex count (leaves for star)");
    generate->add_option("--rows", gen_args.rows, "grid rows");
    generate->add_option("--cols", gen_args.cols, "grid columns");
    generate->add_option("--p", gen_args.p, "gnp edge probability");
    generate->add_option("--q", gen_args.q, "mq-vd colors");
    generate->add_option("--r", gen_args.r, "mq-vd class size minus one");
    generate->add_option("--s", gen_args.s, "mq-vd pair edge count minus one");
    generate->add_option("--t", gen_args.t, "uniform demand");
    generate->add_option("--d", gen_args.d, "uniform radius");
    generate->add_option("--seed", gen_args.seed, "random seed");
    generate->add_flag("--planted", gen_args.planted, "embed a multicolored clique");
    generate->add_option("--out", gen_args.out, "output file (default stdout)");
    generate->add_option("--labels", gen_args.labels, "mq-vd sidecar file");

    BenchArgs bench_args;
    CLI::App* bench = app.add_subcommand("bench", "run a suite and emit CSV");
    bench->add_option("--suite", bench_args.suite, "suite file")->required();
    bench->add_option("--csv", bench_args.csv, "also write the CSV here");

    DecomposeArgs dec_args;
    CLI::App* decompose = app.add_subcommand("decompose", "print a decomposition");
    decompose->add_option("--instance", dec_args.instance, "instance file")->required();
    decompose->add_option("--kind", dec_args.kind, "parse or td");
    decompose->add_option("--out", dec_args.out, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (jobs > 0) omp_set_num_threads(jobs);

    try {
        if (solve->parsed()) return cmd_solve(solve_args);
        if (verify->parsed()) return cmd_verify(verify_args);
        if (generate->parsed()) return cmd_generate(gen_args);
        if (bench->parsed()) return cmd_bench(bench_args);
        if (decompose->parsed()) return cmd_decompose(dec_args);
    } catch (const dvd::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const dvd::InapplicableError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const dvd::RefusalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 5;
    }
    return 0;
}
