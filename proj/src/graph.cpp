#include "factin/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "factin/manifest.hpp"
#include "factin/structure.hpp"

namespace factin {

MolecularGraph::MolecularGraph(uint32_t node_count,
                               std::vector<std::pair<uint32_t, uint32_t>> edges,
                               std::vector<AtomRecord> atoms)
    : node_count_(node_count), atoms_(std::move(atoms)) {
    if (!atoms_.empty() && atoms_.size() != node_count_)
        throw std::invalid_argument("atom annotation count does not match node count");

    for (auto& [u, v] : edges) {
        if (u == v) throw std::invalid_argument("self-loop on node " + std::to_string(u));
        if (u >= node_count_ || v >= node_count_)
            throw std::invalid_argument("edge endpoint out of range");
        if (u > v) std::swap(u, v);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    offsets_.assign(node_count_ + 1, 0);
    for (auto [u, v] : edges) {
        ++offsets_[u + 1];
        ++offsets_[v + 1];
    }
    for (uint32_t i = 0; i < node_count_; ++i) offsets_[i + 1] += offsets_[i];

    targets_.resize(edges.size() * 2);
    std::vector<uint32_t> cursor(offsets_.begin(), offsets_.end() - 1);
    for (auto [u, v] : edges) {
        targets_[cursor[u]++] = v;
        targets_[cursor[v]++] = u;
    }
    // Inserting sorted (u,v) pairs in order leaves every neighbour list sorted.
}

bool MolecularGraph::has_edge(uint32_t u, uint32_t v) const {
    auto n = neighbors(u);
    return std::binary_search(n.begin(), n.end(), v);
}

std::vector<std::pair<uint32_t, uint32_t>> MolecularGraph::edges() const {
    std::vector<std::pair<uint32_t, uint32_t>> out;
    out.reserve(edge_count());
    for (uint32_t u = 0; u < node_count_; ++u)
        for (uint32_t v : neighbors(u))
            if (u < v) out.emplace_back(u, v);
    return out;
}

namespace {

bool parse_u32(std::string_view tok, uint32_t& out) {
    if (tok.empty()) return false;
    if (tok.front() == '-') throw std::invalid_argument("negative node id '" + std::string(tok) + "'");
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
    return ec == std::errc{} && p == tok.data() + tok.size();
}

} // namespace

MolecularGraph parse_edge_list(const std::string& text, const std::string& origin) {
    std::vector<std::pair<uint32_t, uint32_t>> edges;
    uint32_t max_id = 0;
    bool any = false;

    std::istringstream in(text);
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
        std::istringstream ls(line);
        std::string a, b, extra;
        if (!(ls >> a)) continue; // blank or comment-only
        auto fail = [&](const std::string& why) {
            throw std::runtime_error(origin + ":" + std::to_string(lineno) + ": " + why);
        };
        if (!(ls >> b)) fail("expected two node ids");
        if (ls >> extra) fail("trailing token '" + extra + "'");
        uint32_t u, v;
        try {
            if (!parse_u32(a, u) || !parse_u32(b, v)) fail("malformed node id");
        } catch (const std::invalid_argument& e) {
            fail(e.what());
        }
        if (u == v) fail("self-loop " + a + " " + b);
        edges.emplace_back(u, v);
        max_id = std::max({max_id, u, v});
        any = true;
    }
    if (!any) throw std::runtime_error(origin + ": no edges found");
    return MolecularGraph(max_id + 1, std::move(edges));
}

MolecularGraph load_edge_list(const std::string& path) {
    return parse_edge_list(read_file(path), path);
}

std::string write_graph(const MolecularGraph& g) {
    std::string out = "nodes " + std::to_string(g.node_count()) +
                      " edges " + std::to_string(g.edge_count()) + "\n";
    for (auto [u, v] : g.edges())
        out += std::to_string(u) + " " + std::to_string(v) + "\n";
    return out;
}

void write_graph_file(const MolecularGraph& g, const std::string& path) {
    atomic_write_file(path, write_graph(g));
}

MolecularGraph parse_graph(const std::string& text, const std::string& origin) {
    std::istringstream in(text);
    std::string nodes_kw, edges_kw;
    uint64_t n = 0, m = 0;
    if (!(in >> nodes_kw >> n >> edges_kw >> m) || nodes_kw != "nodes" || edges_kw != "edges")
        throw std::runtime_error(origin + ": bad graph header (expected 'nodes N edges M')");
    std::vector<std::pair<uint32_t, uint32_t>> edges;
    edges.reserve(m);
    uint32_t u, v;
    while (in >> u >> v) edges.emplace_back(u, v);
    if (edges.size() != m)
        throw std::runtime_error(origin + ": header promises " + std::to_string(m) +
                                 " edges, found " + std::to_string(edges.size()));
    try {
        return MolecularGraph(static_cast<uint32_t>(n), std::move(edges));
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(origin + ": " + e.what());
    }
}

MolecularGraph load_graph_auto(const std::string& path, const StructureOptions& opts) {
    std::string text = read_file(path);

    // Structure files announce themselves by record names in column 1.
    for (const char* tag : {"ATOM  ", "HETATM", "HEADER", "CRYST1", "MODEL "}) {
        if (text.rfind(tag, 0) == 0 || text.find(std::string("\n") + tag) != std::string::npos)
            return parse_structure(text, opts, path);
    }
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (line.compare(first, 6, "nodes ") == 0) return parse_graph(text, path);
        break;
    }
    return parse_edge_list(text, path);
}

MolecularGraph make_path_graph(uint32_t n) {
    std::vector<std::pair<uint32_t, uint32_t>> edges;
    for (uint32_t i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    return MolecularGraph(n, std::move(edges));
}

MolecularGraph make_cycle_graph(uint32_t n) {
    std::vector<std::pair<uint32_t, uint32_t>> edges;
    for (uint32_t i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    if (n >= 3) edges.emplace_back(n - 1, 0u);
    return MolecularGraph(n, std::move(edges));
}

} // namespace factin
