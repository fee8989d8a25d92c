#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace factin {

// Per-node structure-file annotation. Empty/default for edge-list input.
struct AtomRecord {
    uint32_t id = 0;              // dense node index
    std::string element = "X";    // element symbol, "X" if unknown
    std::string atom_name;
    std::string residue_name;
    int residue_seq = 0;
    char chain = ' ';
    char icode = ' ';
    std::array<double, 3> position{0.0, 0.0, 0.0}; // Angstrom
};

// Immutable undirected simple graph (CSR adjacency, neighbour lists sorted).
// Safe to share across threads after construction.
class MolecularGraph {
public:
    MolecularGraph() = default;

    // Edges are normalized (u<v), de-duplicated. Self-loops are rejected.
    // atoms must be empty or have node_count entries.
    MolecularGraph(uint32_t node_count,
                   std::vector<std::pair<uint32_t, uint32_t>> edges,
                   std::vector<AtomRecord> atoms = {});

    uint32_t node_count() const { return node_count_; }
    uint64_t edge_count() const { return targets_.size() / 2; }

    std::span<const uint32_t> neighbors(uint32_t u) const {
        return {targets_.data() + offsets_[u], targets_.data() + offsets_[u + 1]};
    }
    uint32_t degree(uint32_t u) const { return offsets_[u + 1] - offsets_[u]; }
    bool has_edge(uint32_t u, uint32_t v) const;

    bool has_atoms() const { return !atoms_.empty(); }
    const std::vector<AtomRecord>& atoms() const { return atoms_; }

    // Sorted (u<v) edge list, e.g. for canonical serialization.
    std::vector<std::pair<uint32_t, uint32_t>> edges() const;

    std::span<const uint32_t> csr_offsets() const { return offsets_; }
    std::span<const uint32_t> csr_targets() const { return targets_; }

private:
    uint32_t node_count_ = 0;
    std::vector<uint32_t> offsets_{0};
    std::vector<uint32_t> targets_;
    std::vector<AtomRecord> atoms_;
};

// Plain text edge list: one "u v" pair per line, '#' starts a comment.
// Nodes are 0..max-id; duplicate edges collapse.
MolecularGraph load_edge_list(const std::string& path);
MolecularGraph parse_edge_list(const std::string& text, const std::string& origin = "<memory>");

// Canonical serialization: "nodes N edges M" header then the sorted edge
// list, one pair per line. Stable byte-for-byte for a given graph.
std::string write_graph(const MolecularGraph& g);
void write_graph_file(const MolecularGraph& g, const std::string& path);
MolecularGraph parse_graph(const std::string& text, const std::string& origin = "<memory>");

// Sniffs structure file vs canonical vs edge list; structure files honour
// the options declared in structure.hpp (forward-declared there).
struct StructureOptions;
MolecularGraph load_graph_auto(const std::string& path, const StructureOptions& opts);

// Convenience builders used all over the tests.
MolecularGraph make_path_graph(uint32_t n);
MolecularGraph make_cycle_graph(uint32_t n);

} // namespace factin
