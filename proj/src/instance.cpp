#include "dvd/instance.hpp"

#include <algorithm>
#include <string>

#include "dvd/errors.hpp"

namespace dvd {

DvdInstance::DvdInstance(Graph g, std::vector<int> t, std::vector<int> d)
    : g_(std::move(g)), t_(std::move(t)), d_(std::move(d)) {
    int n = g_.num_vertices();
    if (static_cast<int>(t_.size()) != n || static_cast<int>(d_.size()) != n)
        throw ParseError("instance: threshold/radius vectors must have one entry per vertex");
    for (int v = 0; v < n; ++v) {
        if (d_[v] < 1)
            throw ParseError("instance: radius of vertex " + std::to_string(v + 1) +
                             " must be >= 1");
        if (t_[v] < 0)
            throw ParseError("instance: threshold of vertex " + std::to_string(v + 1) +
                             " must be >= 0");
    }
    for (int v = 0; v < n; ++v) {
        int reach = static_cast<int>(ball(g_, v, d_[v]).size());
        if (t_[v] > reach)
            throw ParseError("instance: vertex " + std::to_string(v + 1) + " demands " +
                             std::to_string(t_[v]) + " but only " + std::to_string(reach) +
                             " vertices lie within distance " + std::to_string(d_[v]));
    }
}

bool DvdInstance::uniform_radius_one() const {
    return std::all_of(d_.begin(), d_.end(), [](int x) { return x == 1; });
}

bool DvdInstance::uniform_threshold_one() const {
    return std::all_of(t_.begin(), t_.end(), [](int x) { return x == 1; });
}

int DvdInstance::max_threshold() const {
    return t_.empty() ? 0 : *std::max_element(t_.begin(), t_.end());
}

int DvdInstance::max_radius() const {
    return d_.empty() ? 1 : *std::max_element(d_.begin(), d_.end());
}

CheckResult is_dvd_set(const DvdInstance& inst, const std::vector<int>& set) {
    int n = inst.num_vertices();
    std::vector<char> in_set(n, 0);
    for (int v : set) {
        if (v < 0 || v >= n) throw ParseError("set: vertex out of range");
        if (in_set[v]) throw ParseError("set: duplicate vertex " + std::to_string(v + 1));
        in_set[v] = 1;
    }
    CheckResult res;
    res.ok = true;
    for (int v = 0; v < n; ++v) {
        if (in_set[v] || inst.t(v) == 0) continue;
        int got = 0;
        for (int u : ball(inst.graph(), v, inst.d(v)))
            if (in_set[u]) ++got;
        if (got < inst.t(v)) {
            res.ok = false;
            res.deficiencies.push_back({v, inst.t(v), got});
        }
    }
    return res;
}

std::vector<ComponentInstance> split_components(const DvdInstance& inst) {
    auto comps = connected_components(inst.graph());
    std::vector<std::vector<int>> members(comps.count);
    for (int v = 0; v < inst.num_vertices(); ++v) members[comps.comp[v]].push_back(v);
    std::vector<ComponentInstance> out;
    out.reserve(comps.count);
    for (auto& verts : members) {
        auto sub = induced_subgraph(inst.graph(), verts);
        std::vector<int> t(verts.size()), d(verts.size());
        for (size_t i = 0; i < verts.size(); ++i) {
            t[i] = inst.t(verts[i]);
            d[i] = inst.d(verts[i]);
        }
        out.push_back({DvdInstance(std::move(sub.graph), std::move(t), std::move(d)),
                       std::move(sub.to_parent)});
    }
    return out;
}

}  // namespace dvd
