#include "factin/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace factin {

namespace {

constexpr uint32_t kUnreached = std::numeric_limits<uint32_t>::max();

// One BFS from `source`, writing distances for its component into `dist`
// (pre-filled with kUnreached by the caller, restored here before returning
// is the caller's business -- we leave touched entries dirty and return the
// visit list so the caller can reset exactly what was written).
void bfs(const MolecularGraph& g, uint32_t source, std::vector<uint32_t>& dist,
         std::vector<uint32_t>& queue) {
    queue.clear();
    queue.push_back(source);
    dist[source] = 0;
    for (size_t head = 0; head < queue.size(); ++head) {
        uint32_t u = queue[head];
        uint32_t du = dist[u];
        for (uint32_t v : g.neighbors(u)) {
            if (dist[v] == kUnreached) {
                dist[v] = du + 1;
                queue.push_back(v);
            }
        }
    }
}

struct DistanceAccum {
    uint64_t pair_sum = 0;
    std::vector<uint64_t> histogram; // histogram[d] = #unordered pairs at distance d
    uint32_t best_d = 0;
    uint32_t best_s = 0;
    uint32_t best_t = 0;
    bool have_best = false;

    void offer(uint32_t d, uint32_t s, uint32_t t) {
        if (!have_best || d > best_d || (d == best_d && std::make_pair(s, t) < std::make_pair(best_s, best_t))) {
            best_d = d;
            best_s = s;
            best_t = t;
            have_best = true;
        }
    }

    void merge(const DistanceAccum& o) {
        pair_sum += o.pair_sum;
        if (histogram.size() < o.histogram.size()) histogram.resize(o.histogram.size(), 0);
        for (size_t i = 0; i < o.histogram.size(); ++i) histogram[i] += o.histogram[i];
        if (o.have_best) offer(o.best_d, o.best_s, o.best_t);
    }
};

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

// Exact median of the multiset encoded by `histogram` (value i with
// multiplicity histogram[i]).
double histogram_median(const std::vector<uint64_t>& histogram, uint64_t total) {
    if (total == 0) return 0.0;
    auto value_at = [&](uint64_t rank) -> uint64_t {
        uint64_t seen = 0;
        for (size_t i = 0; i < histogram.size(); ++i) {
            seen += histogram[i];
            if (seen > rank) return i;
        }
        return histogram.empty() ? 0 : histogram.size() - 1;
    };
    if (total % 2 == 1) return static_cast<double>(value_at(total / 2));
    return (static_cast<double>(value_at(total / 2 - 1)) + static_cast<double>(value_at(total / 2))) / 2.0;
}

} // namespace

ComponentCensus components(const MolecularGraph& g) {
    ComponentCensus c;
    uint32_t n = g.node_count();
    c.component_of.assign(n, kUnreached);
    std::vector<uint32_t> queue;
    for (uint32_t s = 0; s < n; ++s) {
        if (c.component_of[s] != kUnreached) continue;
        uint32_t id = c.count++;
        c.sizes.push_back(0);
        queue.clear();
        queue.push_back(s);
        c.component_of[s] = id;
        for (size_t head = 0; head < queue.size(); ++head) {
            uint32_t u = queue[head];
            ++c.sizes[id];
            for (uint32_t v : g.neighbors(u)) {
                if (c.component_of[v] == kUnreached) {
                    c.component_of[v] = id;
                    queue.push_back(v);
                }
            }
        }
    }
    // Components are discovered in order of their smallest member, so the
    // first component of maximal size is the tie-break winner.
    for (uint32_t id = 0; id < c.count; ++id)
        if (c.sizes[id] > c.sizes[c.largest]) c.largest = id;
    return c;
}

GraphStats compute_stats(const MolecularGraph& g, bool parallel) {
    GraphStats s;
    uint32_t n = g.node_count();
    s.node_count = n;
    s.edge_count = g.edge_count();

    std::vector<uint64_t> degree_hist;
    uint64_t deg_sum = 0, deg_sq_sum = 0;
    s.degree_min = n ? kUnreached : 0;
    for (uint32_t u = 0; u < n; ++u) {
        uint32_t d = g.degree(u);
        s.degree_min = std::min(s.degree_min, d);
        s.degree_max = std::max(s.degree_max, d);
        deg_sum += d;
        deg_sq_sum += uint64_t(d) * d;
        if (degree_hist.size() <= d) degree_hist.resize(d + 1, 0);
        ++degree_hist[d];
        ++s.degree_histogram[d];
    }
    if (n) {
        s.degree_mean = static_cast<double>(deg_sum) / n;
        double ex2 = static_cast<double>(deg_sq_sum) / n;
        s.degree_stddev = std::sqrt(std::max(0.0, ex2 - s.degree_mean * s.degree_mean));
        s.degree_median = histogram_median(degree_hist, n);
    }

    ComponentCensus cc = components(g);
    s.component_count = cc.count;
    s.largest_component_size = cc.count ? cc.sizes[cc.largest] : 0;

    if (s.largest_component_size <= 1) {
        s.diameter_nodes = s.largest_component_size;
        return s;
    }

    // Source list: every node of the largest component, ascending.
    std::vector<uint32_t> sources;
    sources.reserve(s.largest_component_size);
    for (uint32_t u = 0; u < n; ++u)
        if (cc.component_of[u] == cc.largest) sources.push_back(u);

    int max_threads = 1;
#ifdef _OPENMP
    if (parallel) max_threads = omp_get_max_threads();
#else
    (void)parallel;
#endif
    std::vector<DistanceAccum> accums(static_cast<size_t>(max_threads));

#ifdef _OPENMP
#pragma omp parallel if (parallel && sources.size() > 64) num_threads(max_threads)
#endif
    {
        int tid = 0;
#ifdef _OPENMP
        tid = omp_get_thread_num();
#endif
        DistanceAccum& acc = accums[static_cast<size_t>(tid)];
        std::vector<uint32_t> dist(n, kUnreached);
        std::vector<uint32_t> queue;
        queue.reserve(sources.size());
#ifdef _OPENMP
#pragma omp for schedule(dynamic, 16)
#endif
        for (size_t i = 0; i < sources.size(); ++i) {
            uint32_t src = sources[i];
            bfs(g, src, dist, queue);
            for (uint32_t v : queue) {
                uint32_t d = dist[v];
                if (v > src) { // each unordered pair once
                    acc.pair_sum += d;
                    if (acc.histogram.size() <= d) acc.histogram.resize(d + 1, 0);
                    ++acc.histogram[d];
                    acc.offer(d, src, v);
                }
                dist[v] = kUnreached; // restore for the next source
            }
        }
    }

    DistanceAccum total;
    for (const auto& acc : accums) total.merge(acc);

    uint64_t npairs = 0;
    for (uint64_t c : total.histogram) npairs += c;
    if (npairs) {
        s.mean_distance = static_cast<double>(total.pair_sum) / static_cast<double>(npairs);
        s.median_distance = histogram_median(total.histogram, npairs);
    }
    s.diameter_nodes = total.have_best ? total.best_d + 1 : 1;
    s.diameter_endpoints = {total.best_s, total.best_t};

    // Reconstruct one concrete diameter path (serial, deterministic: parents
    // follow first discovery with neighbors in ascending id order).
    {
        std::vector<uint32_t> parent(n, kUnreached);
        std::vector<uint32_t> dist(n, kUnreached);
        std::vector<uint32_t> queue;
        queue.push_back(total.best_s);
        dist[total.best_s] = 0;
        for (size_t head = 0; head < queue.size(); ++head) {
            uint32_t u = queue[head];
            for (uint32_t v : g.neighbors(u)) {
                if (dist[v] == kUnreached) {
                    dist[v] = dist[u] + 1;
                    parent[v] = u;
                    queue.push_back(v);
                }
            }
        }
        for (uint32_t v = total.best_t; v != kUnreached; v = parent[v]) {
            s.diameter_path.push_back(v);
            if (v == total.best_s) break;
        }
        std::reverse(s.diameter_path.begin(), s.diameter_path.end());
    }
    return s;
}

std::vector<uint32_t> longest_path(const MolecularGraph& g) {
    return compute_stats(g).diameter_path;
}

std::string stats_csv(const GraphStats& s) {
    std::ostringstream out;
    out << "metric,value\n";
    out << "nodes," << s.node_count << "\n";
    out << "edges," << s.edge_count << "\n";
    out << "components," << s.component_count << "\n";
    out << "largest_component," << s.largest_component_size << "\n";
    out << "degree_min," << s.degree_min << "\n";
    out << "degree_max," << s.degree_max << "\n";
    out << "degree_mean," << fmt_double(s.degree_mean) << "\n";
    out << "degree_stddev," << fmt_double(s.degree_stddev) << "\n";
    out << "degree_median," << fmt_double(s.degree_median) << "\n";
    for (const auto& [deg, count] : s.degree_histogram)
        out << "degree_count_" << deg << "," << count << "\n";
    out << "diameter_nodes," << s.diameter_nodes << "\n";
    out << "diameter_source," << s.diameter_endpoints.first << "\n";
    out << "diameter_target," << s.diameter_endpoints.second << "\n";
    out << "mean_distance," << fmt_double(s.mean_distance) << "\n";
    out << "median_distance," << fmt_double(s.median_distance) << "\n";
    return out.str();
}

} // namespace factin
