#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dvd/instance.hpp"

namespace dvd {

// Multicolored clique input: q color classes of r+1 vertices each, and
// exactly s+1 crossing edges between every pair of classes. Vertex i of
// color c has the global id c*(r+1)+i. Crossing edges are stored per
// color pair, sorted by (left endpoint index, right endpoint index).
struct MqInstance {
    int q = 0;
    int r = 0;
    int s = 0;
    // indexed by pair_index(c, d) for c < d; entries are (i, j) with i
    // the index within the lower color and j within the higher one
    std::vector<std::vector<std::pair<int, int>>> crossing;

    int num_vertices() const { return q * (r + 1); }
    int num_crossing_edges() const;
    int pair_index(int c, int d) const;
    int vertex_id(int c, int i) const { return c * (r + 1) + i; }
};

// Deterministic random instance. Each pair of classes gets s+1 distinct
// crossing edges; when s >= r the edges are repaired so every vertex
// keeps a neighbor in every other class. With planted=true a
// multicolored clique (one random vertex per color) is embedded first.
MqInstance mq_random_instance(int q, int r, int s, uint64_t seed, bool planted = false);

// True when some choice of one vertex per color is pairwise adjacent.
bool mq_has_multicolored_clique(const MqInstance& mq);

// One structural piece of the gadget graph: a contiguous id range that
// is either an independent set (bag) or a clique, with every member
// sharing the same neighbors outside the part.
struct GadgetPart {
    std::string name;
    bool clique = false;
    bool guard = false;
    int begin = 0;
    int end = 0;

    int size() const { return end - begin; }
};

// Output of the hardness construction: a domination instance with all
// radii one whose solutions of size budget correspond to multicolored
// cliques in the source instance.
struct VdReduction {
    DvdInstance instance;
    int budget = 0;
    std::vector<GadgetPart> parts;
    std::vector<int> part_of;
    int q = 0;
    int r = 0;
    int s = 0;
    MqInstance source;

    const GadgetPart& part(int v) const { return parts[part_of[v]]; }
};

// Build the gadget graph. Ids are laid out in a fixed order: selection
// gadgets by color, then one multiple gadget per color pair in
// lexicographic order, then the two incidence gadgets per pair.
VdReduction mq_to_vd(const MqInstance& mq);

struct AuditReport {
    bool ok = true;
    std::vector<std::string> failures;
};

// Re-derives every structural rule of the construction from (q, r, s)
// and checks the graph against it: part sizes, bag independence, clique
// completeness, the exact inter-part links, all demand values, demand
// distinctness inside incidence parts, and the type-class count
// 3q + 12*C(q,2).
AuditReport gadget_audit(const VdReduction& red);

// Decision oracle for reduced instances. Searches selections that stay
// outside guard parts, described by one count per part; within a part
// the highest demands are taken first, which is optimal because part
// members are interchangeable. Returns a concrete set of at most
// budget vertices satisfying every demand, or nullopt when no such
// guard-free selection exists.
std::optional<std::vector<int>> pooled_count_decide(const VdReduction& red, int budget);

}  // namespace dvd
