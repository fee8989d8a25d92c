#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "factin/graph.hpp"

namespace factin {

struct ComponentCensus {
    uint32_t count = 0;
    std::vector<uint32_t> component_of; // per node
    std::vector<uint32_t> sizes;        // per component
    uint32_t largest = 0;               // component id; ties -> smallest member id
};

ComponentCensus components(const MolecularGraph& g);

// Graph statistics as reported by the `stats` subcommand. Distance fields
// are computed over unweighted shortest paths; on a disconnected graph they
// cover the largest connected component only (degree fields cover all nodes).
struct GraphStats {
    uint32_t node_count = 0;
    uint64_t edge_count = 0;
    uint32_t degree_min = 0;
    uint32_t degree_max = 0;
    double degree_mean = 0.0;
    double degree_stddev = 0.0; // population
    double degree_median = 0.0;
    std::map<uint32_t, uint32_t> degree_histogram;
    uint32_t diameter_nodes = 0; // path length counted in nodes (edges + 1)
    double mean_distance = 0.0;
    double median_distance = 0.0;
    std::pair<uint32_t, uint32_t> diameter_endpoints{0, 0};
    std::vector<uint32_t> diameter_path;
    uint32_t component_count = 0;
    uint32_t largest_component_size = 0;
};

// All-pairs BFS over the largest component, parallel across source nodes.
// Output is independent of the thread count. Diameter ties break on the
// smallest (source, target) id pair.
GraphStats compute_stats(const MolecularGraph& g, bool parallel = true);

// One concrete longest shortest path (same tie-breaking as compute_stats).
std::vector<uint32_t> longest_path(const MolecularGraph& g);

// Flat key,value CSV rendering used by the CLI and golden tests.
std::string stats_csv(const GraphStats& s);

} // namespace factin
