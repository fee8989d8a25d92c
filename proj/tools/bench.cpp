// Times the serial automaton kernel and distance pass against their
// OpenMP counterparts on a random graph, verifying that both produce
// identical results before reporting speedups.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "factin/automaton.hpp"
#include "factin/graph.hpp"
#include "factin/rng.hpp"
#include "factin/stats.hpp"
#include "factin/stimulate.hpp"

using namespace factin;

namespace {

double now_seconds() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

// Connected random graph: a scrambled spanning path plus extra random edges,
// like a filament with cross-links.
MolecularGraph random_graph(uint32_t nodes, uint32_t extra_edges, uint64_t seed) {
    Rng rng(seed);
    std::vector<uint32_t> order(nodes);
    for (uint32_t i = 0; i < nodes; ++i) order[i] = i;
    for (uint32_t i = nodes - 1; i > 0; --i) {
        uint32_t j = static_cast<uint32_t>(rng.bounded(i + 1));
        std::swap(order[i], order[j]);
    }
    std::vector<std::pair<uint32_t, uint32_t>> edges;
    for (uint32_t i = 0; i + 1 < nodes; ++i) edges.emplace_back(order[i], order[i + 1]);
    for (uint32_t k = 0; k < extra_edges; ++k) {
        uint32_t u = static_cast<uint32_t>(rng.bounded(nodes));
        uint32_t v = static_cast<uint32_t>(rng.bounded(nodes));
        if (u != v) edges.emplace_back(u, v);
    }
    return MolecularGraph(nodes, edges);
}

} // namespace

int main(int argc, char** argv) {
    uint32_t nodes = 200000;
    uint32_t steps = 200;
    uint32_t stat_nodes = 4000;
    uint64_t seed = 42;
    for (int i = 1; i + 1 < argc; i += 2) {
        std::string key = argv[i];
        if (key == "--nodes") nodes = static_cast<uint32_t>(std::strtoul(argv[i + 1], nullptr, 10));
        else if (key == "--steps") steps = static_cast<uint32_t>(std::strtoul(argv[i + 1], nullptr, 10));
        else if (key == "--stat-nodes") stat_nodes = static_cast<uint32_t>(std::strtoul(argv[i + 1], nullptr, 10));
        else if (key == "--seed") seed = std::strtoull(argv[i + 1], nullptr, 10);
        else {
            std::fprintf(stderr, "usage: bench [--nodes N] [--steps K] [--stat-nodes N] [--seed S]\n");
            return 1;
        }
    }

#ifdef _OPENMP
    std::printf("threads available: %d\n", omp_get_max_threads());
#else
    std::printf("threads available: 1 (OpenMP disabled)\n");
#endif

    // --- automaton stepping ---
    MolecularGraph g = random_graph(nodes, nodes / 2, seed);
    ExcitationRule rule = ExcitationRule::a0();
    Rng rng(seed);
    Configuration init = stimulate(Configuration(g.node_count()), StimAction::plus(0.3), rng);

    Configuration serial_cfg = init, serial_buf = init;
    double t0 = now_seconds();
    for (uint32_t s = 0; s < steps; ++s) {
        step_into_serial(g, rule, serial_cfg, serial_buf);
        std::swap(serial_cfg, serial_buf);
    }
    double serial_step = now_seconds() - t0;

    Configuration par_cfg = init, par_buf = init;
    t0 = now_seconds();
    for (uint32_t s = 0; s < steps; ++s) {
        step_into_parallel(g, rule, par_cfg, par_buf);
        std::swap(par_cfg, par_buf);
    }
    double parallel_step = now_seconds() - t0;

    bool step_match = serial_cfg.states_equal(par_cfg);
    std::printf("step kernel  : %u nodes x %u steps\n", nodes, steps);
    std::printf("  serial     : %8.3f s  (%.1f Mnode-steps/s)\n", serial_step,
                nodes * static_cast<double>(steps) / serial_step / 1e6);
    std::printf("  parallel   : %8.3f s  (%.1f Mnode-steps/s)\n", parallel_step,
                nodes * static_cast<double>(steps) / parallel_step / 1e6);
    std::printf("  speedup    : %8.2fx   results %s\n", serial_step / parallel_step,
                step_match ? "identical" : "DIFFER");

    // --- distance statistics ---
    MolecularGraph gs = random_graph(stat_nodes, stat_nodes / 2, seed + 1);
    t0 = now_seconds();
    GraphStats st_serial = compute_stats(gs, /*parallel=*/false);
    double serial_stats = now_seconds() - t0;
    t0 = now_seconds();
    GraphStats st_par = compute_stats(gs, /*parallel=*/true);
    double parallel_stats = now_seconds() - t0;

    bool stats_match = st_serial.diameter_nodes == st_par.diameter_nodes &&
                       st_serial.mean_distance == st_par.mean_distance &&
                       st_serial.median_distance == st_par.median_distance &&
                       st_serial.diameter_path == st_par.diameter_path;
    std::printf("distance pass: %u nodes all-pairs\n", stat_nodes);
    std::printf("  serial     : %8.3f s\n", serial_stats);
    std::printf("  parallel   : %8.3f s\n", parallel_stats);
    std::printf("  speedup    : %8.2fx   results %s\n", serial_stats / parallel_stats,
                stats_match ? "identical" : "DIFFER");

    return (step_match && stats_match) ? 0 : 1;
}
