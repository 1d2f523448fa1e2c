#include "dvd/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "dvd/errors.hpp"

namespace dvd {

namespace {

ParseError at(const std::string& name, int line, const std::string& msg) {
    return ParseError(name + ":" + std::to_string(line) + ": " + msg);
}

// Splits a line into whitespace-separated tokens, dropping a trailing CR.
std::vector<std::string> tokenize(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ss(line);
    std::vector<std::string> tokens;
    std::string tok;
    while (ss >> tok) tokens.push_back(tok);
    return tokens;
}

int parse_int(const std::string& tok, const std::string& name, int line,
              const std::string& what) {
    size_t pos = 0;
    long val = 0;
    try {
        val = std::stol(tok, &pos);
    } catch (const std::exception&) {
        throw at(name, line, "expected integer for " + what + ", got '" + tok + "'");
    }
    if (pos != tok.size())
        throw at(name, line, "expected integer for " + what + ", got '" + tok + "'");
    if (val < -1000000000L || val > 1000000000L)
        throw at(name, line, what + " out of supported range");
    return static_cast<int>(val);
}

}  // namespace

DvdInstance read_instance(std::istream& in, const std::string& name) {
    enum Section { kNone, kEdges, kThresholds, kRadii };
    Section section = kNone;
    int n = -1, m = -1;
    std::vector<std::pair<int, int>> edges;
    std::set<std::pair<int, int>> edge_seen;
    std::vector<int> t, d;
    std::vector<char> t_set, d_set;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto tok = tokenize(line);
        if (tok.empty() || tok[0] == "c") continue;
        if (tok[0] == "p") {
            if (n != -1) throw at(name, lineno, "duplicate problem line");
            if (tok.size() != 4 || tok[1] != "dvd")
                throw at(name, lineno, "problem line must be 'p dvd <n> <m>'");
            n = parse_int(tok[2], name, lineno, "vertex count");
            m = parse_int(tok[3], name, lineno, "edge count");
            if (n < 0 || m < 0) throw at(name, lineno, "counts must be non-negative");
            t.assign(n, 1);
            d.assign(n, 1);
            t_set.assign(n, 0);
            d_set.assign(n, 0);
            section = kEdges;
            continue;
        }
        if (n == -1) throw at(name, lineno, "problem line must come first");
        if (tok[0] == "e") {
            if (section > kEdges) throw at(name, lineno, "edge line after t/d section");
            if (tok.size() != 3) throw at(name, lineno, "edge line must be 'e <u> <v>'");
            int u = parse_int(tok[1], name, lineno, "edge endpoint");
            int v = parse_int(tok[2], name, lineno, "edge endpoint");
            if (u < 1 || u > n || v < 1 || v > n)
                throw at(name, lineno, "edge endpoint out of range 1.." + std::to_string(n));
            if (u >= v) throw at(name, lineno, "edge endpoints must satisfy u < v");
            if (!edge_seen.insert({u, v}).second)
                throw at(name, lineno, "duplicate edge");
            if (static_cast<int>(edges.size()) == m)
                throw at(name, lineno, "more edge lines than declared");
            edges.emplace_back(u - 1, v - 1);
        } else if (tok[0] == "t" || tok[0] == "d") {
            bool is_t = tok[0] == "t";
            Section want = is_t ? kThresholds : kRadii;
            if (section > want)
                throw at(name, lineno, "threshold line after radius section");
            if (section < want && static_cast<int>(edges.size()) != m)
                throw at(name, lineno, "expected " + std::to_string(m) + " edges, got " +
                                           std::to_string(edges.size()));
            section = want;
            if (tok.size() != 3)
                throw at(name, lineno, std::string("line must be '") + tok[0] +
                                           " <vertex> <value>'");
            int v = parse_int(tok[1], name, lineno, "vertex");
            int val = parse_int(tok[2], name, lineno, "value");
            if (v < 1 || v > n)
                throw at(name, lineno, "vertex out of range 1.." + std::to_string(n));
            auto& seen = is_t ? t_set : d_set;
            if (seen[v - 1])
                throw at(name, lineno, std::string("duplicate ") +
                                           (is_t ? "threshold" : "radius") + " for vertex " +
                                           tok[1]);
            seen[v - 1] = 1;
            (is_t ? t : d)[v - 1] = val;
        } else {
            throw at(name, lineno, "unknown line type '" + tok[0] + "'");
        }
    }
    if (n == -1) throw ParseError(name + ": missing problem line");
    if (static_cast<int>(edges.size()) != m)
        throw ParseError(name + ": expected " + std::to_string(m) + " edges, got " +
                         std::to_string(edges.size()));
    return DvdInstance(Graph(n, std::move(edges)), std::move(t), std::move(d));
}

DvdInstance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open");
    return read_instance(in, path);
}

void write_instance(std::ostream& out, const DvdInstance& inst) {
    const Graph& g = inst.graph();
    out << "p dvd " << g.num_vertices() << " " << g.num_edges() << "\n";
    for (auto [u, v] : g.edges()) out << "e " << u + 1 << " " << v + 1 << "\n";
    for (int v = 0; v < g.num_vertices(); ++v)
        if (inst.t(v) != 1) out << "t " << v + 1 << " " << inst.t(v) << "\n";
    for (int v = 0; v < g.num_vertices(); ++v)
        if (inst.d(v) != 1) out << "d " << v + 1 << " " << inst.d(v) << "\n";
}

void save_instance(const std::string& path, const DvdInstance& inst) {
    std::ofstream out(path);
    if (!out) throw ParseError(path + ": cannot open for writing");
    write_instance(out, inst);
    if (!out) throw ParseError(path + ": write failed");
}

void write_solution(std::ostream& out, const std::vector<int>& selected) {
    out << "SIZE " << selected.size() << "\n";
    out << "S";
    for (int v : selected) out << " " << v + 1;
    out << "\n";
}

std::vector<int> read_solution(std::istream& in, const std::string& name) {
    std::string line;
    int lineno = 0;
    long size = -1;
    std::vector<int> selected;
    bool have_set = false;
    while (std::getline(in, line)) {
        ++lineno;
        auto tok = tokenize(line);
        if (tok.empty() || tok[0] == "c") continue;
        if (tok[0] == "SIZE") {
            if (size != -1 || tok.size() != 2)
                throw at(name, lineno, "malformed SIZE line");
            size = parse_int(tok[1], name, lineno, "set size");
        } else if (tok[0] == "S") {
            if (have_set) throw at(name, lineno, "duplicate S line");
            have_set = true;
            for (size_t i = 1; i < tok.size(); ++i)
                selected.push_back(parse_int(tok[i], name, lineno, "vertex") - 1);
        } else {
            throw at(name, lineno, "unknown line type '" + tok[0] + "'");
        }
    }
    if (size == -1 || !have_set) throw ParseError(name + ": missing SIZE or S line");
    if (size != static_cast<long>(selected.size()))
        throw ParseError(name + ": SIZE disagrees with S line");
    return selected;
}

}  // namespace dvd
