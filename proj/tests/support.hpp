#pragma once

// Reference implementations the engine is checked against. Everything here
// is deliberately naive — per-node state arrays, full configuration history,
// textbook BFS on adjacency lists built straight from the edge pairs — so
// the two sides share no code beyond the rule definition.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <queue>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "factin/automaton.hpp"
#include "factin/rng.hpp"

namespace support {

using factin::ExcitationRule;
using factin::NodeState;

using EdgeList = std::vector<std::pair<uint32_t, uint32_t>>;

inline std::vector<std::vector<uint32_t>> adjacency(uint32_t n, const EdgeList& edges) {
    std::set<std::pair<uint32_t, uint32_t>> seen;
    std::vector<std::vector<uint32_t>> adj(n);
    for (auto [u, v] : edges) {
        if (u > v) std::swap(u, v);
        if (u == v || !seen.insert({u, v}).second) continue;
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    return adj;
}

inline std::vector<NodeState> naive_step(const std::vector<std::vector<uint32_t>>& adj,
                                         const ExcitationRule& rule,
                                         const std::vector<NodeState>& in) {
    std::vector<NodeState> out(in.size());
    for (uint32_t i = 0; i < in.size(); ++i) {
        switch (in[i]) {
        case NodeState::Excited:
            out[i] = NodeState::Refractory;
            break;
        case NodeState::Refractory:
            out[i] = NodeState::Resting;
            break;
        case NodeState::Resting: {
            uint32_t sigma = 0;
            for (uint32_t nb : adj[i])
                if (in[nb] == NodeState::Excited) ++sigma;
            out[i] = rule.excites(sigma) ? NodeState::Excited : NodeState::Resting;
            break;
        }
        }
    }
    return out;
}

inline uint32_t naive_excited(const std::vector<NodeState>& s) {
    uint32_t n = 0;
    for (NodeState st : s)
        if (st == NodeState::Excited) ++n;
    return n;
}

inline std::string encode(const std::vector<NodeState>& s) {
    std::string out;
    out.reserve(s.size());
    for (NodeState st : s) out.push_back(factin::to_char(st));
    return out;
}

struct NaiveAttractor {
    uint64_t p = 0;
    uint64_t c = 0;
    uint64_t e = 0;
    bool terminated = false;
};

// Full-history first-repeat search: p is the earliest step whose
// configuration recurs, c the gap, e the rounded mean excited count over
// one cycle period.
inline NaiveAttractor naive_attractor(const std::vector<std::vector<uint32_t>>& adj,
                                      const ExcitationRule& rule,
                                      std::vector<NodeState> cur, uint64_t max_steps) {
    NaiveAttractor r;
    std::map<std::string, uint64_t> first_seen;
    std::vector<uint32_t> excited_at;
    for (uint64_t t = 0; t <= max_steps; ++t) {
        auto [it, fresh] = first_seen.emplace(encode(cur), t);
        if (!fresh) {
            r.p = it->second;
            r.c = t - it->second;
            uint64_t sum = 0;
            for (uint64_t k = r.p; k < t; ++k) sum += excited_at[k];
            r.e = static_cast<uint64_t>(
                std::llround(static_cast<double>(sum) / static_cast<double>(r.c)));
            r.terminated = true;
            return r;
        }
        excited_at.push_back(naive_excited(cur));
        cur = naive_step(adj, rule, cur);
    }
    return r;
}

struct NaiveDistances {
    uint64_t pair_count = 0;
    double mean = 0.0;
    double median = 0.0;
    uint32_t diameter_edges = 0;
    std::pair<uint32_t, uint32_t> endpoints{0, 0}; // smallest (s, t) at the diameter
};

// All-pairs BFS over the largest connected component (ties on component
// size go to the one containing the smallest node id).
inline NaiveDistances naive_distances(uint32_t n, const EdgeList& edges) {
    auto adj = adjacency(n, edges);
    std::vector<int> comp(n, -1);
    int comps = 0;
    for (uint32_t s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        std::queue<uint32_t> q;
        q.push(s);
        comp[s] = comps;
        while (!q.empty()) {
            uint32_t u = q.front();
            q.pop();
            for (uint32_t v : adj[u])
                if (comp[v] < 0) {
                    comp[v] = comps;
                    q.push(v);
                }
        }
        ++comps;
    }
    std::vector<uint32_t> size(comps, 0);
    for (uint32_t i = 0; i < n; ++i) ++size[static_cast<uint32_t>(comp[i])];
    int largest = 0;
    for (int cidx = 1; cidx < comps; ++cidx)
        if (size[static_cast<uint32_t>(cidx)] > size[static_cast<uint32_t>(largest)]) largest = cidx;

    NaiveDistances r;
    std::vector<uint32_t> dists;
    for (uint32_t s = 0; s < n; ++s) {
        if (comp[s] != largest) continue;
        std::vector<int64_t> d(n, -1);
        std::queue<uint32_t> q;
        d[s] = 0;
        q.push(s);
        while (!q.empty()) {
            uint32_t u = q.front();
            q.pop();
            for (uint32_t v : adj[u])
                if (d[v] < 0) {
                    d[v] = d[u] + 1;
                    q.push(v);
                }
        }
        for (uint32_t t = s + 1; t < n; ++t) {
            if (comp[t] != largest) continue;
            uint32_t dist = static_cast<uint32_t>(d[t]);
            dists.push_back(dist);
            if (dist > r.diameter_edges) {
                r.diameter_edges = dist;
                r.endpoints = {s, t};
            }
        }
    }
    r.pair_count = dists.size();
    if (!dists.empty()) {
        uint64_t sum = 0;
        for (uint32_t d : dists) sum += d;
        r.mean = static_cast<double>(sum) / static_cast<double>(dists.size());
        std::sort(dists.begin(), dists.end());
        size_t m = dists.size();
        r.median = (m % 2 == 1) ? dists[m / 2]
                                : (static_cast<double>(dists[m / 2 - 1]) + dists[m / 2]) / 2.0;
    }
    return r;
}

// --- random instance generators -----------------------------------------

struct RandomTriple {
    uint32_t n = 0;
    EdgeList edges;
    ExcitationRule rule;
    std::vector<NodeState> init;
};

inline ExcitationRule random_rule(factin::Rng& rng) {
    switch (rng.bounded(4)) {
    case 0: return ExcitationRule::a0();
    case 1: return ExcitationRule::a1();
    case 2: {
        uint32_t lo = 1 + static_cast<uint32_t>(rng.bounded(3));
        return {lo, lo + static_cast<uint32_t>(rng.bounded(3))};
    }
    default: {
        uint32_t lo = 1 + static_cast<uint32_t>(rng.bounded(3));
        return {lo, ExcitationRule::kUnbounded};
    }
    }
}

inline std::vector<NodeState> random_states(factin::Rng& rng, uint32_t n) {
    std::vector<NodeState> s(n);
    for (uint32_t i = 0; i < n; ++i) {
        // biased toward resting so waves have room to travel
        uint64_t r = rng.bounded(4);
        s[i] = r < 2 ? NodeState::Resting
                     : (r == 2 ? NodeState::Excited : NodeState::Refractory);
    }
    return s;
}

// Graph on 1..max_nodes nodes with random edge density; isolated nodes and
// disconnected pieces are part of the test surface.
inline RandomTriple random_triple(factin::Rng& rng, uint32_t max_nodes = 12) {
    RandomTriple t;
    t.n = 1 + static_cast<uint32_t>(rng.bounded(max_nodes));
    uint64_t percent = 15 + rng.bounded(50); // edge probability in percent
    for (uint32_t u = 0; u < t.n; ++u)
        for (uint32_t v = u + 1; v < t.n; ++v)
            if (rng.bounded(100) < percent) t.edges.emplace_back(u, v);
    t.rule = random_rule(rng);
    t.init = random_states(rng, t.n);
    return t;
}

inline factin::Configuration to_config(const std::vector<NodeState>& s) {
    factin::Configuration cfg(static_cast<uint32_t>(s.size()));
    for (uint32_t i = 0; i < s.size(); ++i) cfg.set(i, s[i]);
    return cfg;
}

inline std::vector<NodeState> from_config(const factin::Configuration& cfg) {
    std::vector<NodeState> s(cfg.size());
    for (uint32_t i = 0; i < cfg.size(); ++i) s[i] = cfg.get(i);
    return s;
}

// --- structure-file fixtures --------------------------------------------

// Fixed-column ATOM/HETATM line. A 1-3 character name lands at column 14
// (the convention for single-letter elements); pass a 4-character name to
// control column 13 directly.
inline std::string pdb_atom(int serial, const std::string& name, const std::string& res,
                            char chain, int seq, double x, double y, double z,
                            const std::string& element = "", char altloc = ' ',
                            char icode = ' ') {
    std::string name4 = name.size() >= 4 ? name.substr(0, 4) : " " + name;
    name4.resize(4, ' ');
    char buf[96];
    std::snprintf(buf, sizeof(buf), "ATOM  %5d %s%c%-3s %c%4d%c   %8.3f%8.3f%8.3f  1.00  0.00          %2s",
                  serial, name4.c_str(), altloc, res.c_str(), chain, seq, icode, x, y, z,
                  element.c_str());
    return std::string(buf) + "\n";
}

inline std::string pdb_conect(const std::vector<int>& serials) {
    std::string line = "CONECT";
    char buf[8];
    for (int s : serials) {
        std::snprintf(buf, sizeof(buf), "%5d", s);
        line += buf;
    }
    return line + "\n";
}

// One phenylalanine-like fragment: aromatic ring CG..CZ (serials base+1 ..
// base+6) in a regular hexagon with a CB attached to CG. Bond distances
// ~1.4 A sit inside the carbon inference cutoff.
inline std::string phe_fragment(int base_serial, char chain, int seq, double ox, double oy) {
    static const char* names[6] = {"CG", "CD1", "CE1", "CZ", "CE2", "CD2"};
    std::string text;
    double r = 1.4;
    for (int k = 0; k < 6; ++k) {
        double ang = 3.14159265358979323846 * (60.0 * k) / 180.0;
        text += pdb_atom(base_serial + 1 + k, names[k], "PHE", chain, seq,
                         ox + r * std::cos(ang), oy + r * std::sin(ang), 0.0, "C");
    }
    // CB 1.5 A outward from CG
    text += pdb_atom(base_serial + 7, "CB", "PHE", chain, seq, ox + 2.9, oy, 0.0, "C");
    return text;
}

} // namespace support
