#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dvd/graph.hpp"

namespace dvd {

// A domination instance: every vertex v outside the chosen set must see
// at least t[v] chosen vertices within distance d[v]. Construction
// enforces d[v] >= 1, t[v] >= 0 and t[v] <= |ball(v, d[v])| so that
// selecting everything is always a solution.
class DvdInstance {
  public:
    DvdInstance(Graph g, std::vector<int> t, std::vector<int> d);

    const Graph& graph() const { return g_; }
    int num_vertices() const { return g_.num_vertices(); }
    int t(int v) const { return t_[v]; }
    int d(int v) const { return d_[v]; }
    const std::vector<int>& thresholds() const { return t_; }
    const std::vector<int>& radii() const { return d_; }

    bool uniform_radius_one() const;    // vector domination shape
    bool uniform_threshold_one() const; // distance-r domination shape
    int max_threshold() const;
    int max_radius() const;

  private:
    Graph g_;
    std::vector<int> t_;
    std::vector<int> d_;
};

struct Deficiency {
    int vertex;
    int required;
    int got;
};

struct CheckResult {
    bool ok = false;
    std::vector<Deficiency> deficiencies;
};

// Verifies a candidate set. Throws ParseError if the set itself is
// malformed (out of range or duplicated vertices).
CheckResult is_dvd_set(const DvdInstance& inst, const std::vector<int>& set);

struct Solution {
    std::vector<int> selected;  // sorted ascending
    std::string algorithm;
    bool proven_optimal = false;
    std::optional<int> width_used;
};

// One connected component of an instance, with ids remapped to 0..k-1.
struct ComponentInstance {
    DvdInstance instance;
    std::vector<int> to_parent;
};
std::vector<ComponentInstance> split_components(const DvdInstance& inst);

}  // namespace dvd
