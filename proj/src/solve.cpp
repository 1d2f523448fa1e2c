#include "dvd/solve.hpp"

#include <algorithm>
#include <chrono>
#include <functional>

#include "dvd/brute.hpp"
#include "dvd/errors.hpp"
#include "dvd/greedy.hpp"
#include "dvd/mw.hpp"
#include "dvd/tw.hpp"

namespace dvd {

namespace {

Solution solve_per_component(const DvdInstance& inst,
                             const std::function<Solution(const DvdInstance&)>& solve_one) {
    std::vector<ComponentInstance> comps = split_components(inst);
    if (comps.size() == 1) return solve_one(comps[0].instance);
    Solution total;
    total.proven_optimal = true;
    for (const ComponentInstance& comp : comps) {
        Solution part = solve_one(comp.instance);
        total.algorithm = part.algorithm;
        total.proven_optimal = total.proven_optimal && part.proven_optimal;
        if (part.width_used &&
            (!total.width_used || *part.width_used > *total.width_used))
            total.width_used = part.width_used;
        for (int v : part.selected) total.selected.push_back(comp.to_parent[v]);
    }
    std::sort(total.selected.begin(), total.selected.end());
    return total;
}

std::optional<Solution> dispatch(const DvdInstance& inst, const SolveRequest& req) {
    MwOptions mw;
    mw.width_cap = req.width_cap;
    mw.memo = req.memo;
    mw.parallel = req.parallel;

    if (req.algorithm == "brute") {
        BruteOptions opts;
        opts.parallel = req.parallel;
        if (req.size_cap) {
            opts.size_cap = req.size_cap;
            return brute_force_min_dvd(inst, opts);
        }
        return solve_per_component(inst, [&](const DvdInstance& comp) {
            return *brute_force_min_dvd(comp, opts);
        });
    }
    if (req.algorithm == "greedy") return greedy_dvd(inst);
    if (req.algorithm == "rd-mw")
        return solve_per_component(
            inst, [&](const DvdInstance& comp) { return rd_mw_solve(comp, mw); });
    if (req.algorithm == "vd-mw")
        return solve_per_component(
            inst, [&](const DvdInstance& comp) { return vd_mw_solve(comp, mw); });
    if (req.algorithm == "dvd-mw")
        return solve_per_component(
            inst, [&](const DvdInstance& comp) { return dvd_mw_solve(comp, mw); });
    if (req.algorithm == "vd-tw" || req.algorithm == "rd-tw") {
        TreeDecomposition td = req.td ? *req.td : min_degree_td(inst.graph());
        return req.algorithm == "vd-tw" ? vd_tw_solve(inst, td) : rd_tw_solve(inst, td);
    }
    throw ParseError("unknown algorithm: " + req.algorithm);
}

}  // namespace

SolveReport run_solver(const DvdInstance& inst, const SolveRequest& req) {
    SolveReport report;
    auto start = std::chrono::steady_clock::now();
    report.solution = dispatch(inst, req);
    auto stop = std::chrono::steady_clock::now();
    report.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
    if (report.solution) {
        CheckResult check = is_dvd_set(inst, report.solution->selected);
        if (!check.ok)
            throw SelfCheckError("algorithm " + req.algorithm +
                                 " produced a set that fails verification");
        report.valid = true;
    }
    return report;
}

}  // namespace dvd
