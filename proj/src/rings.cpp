#include "factin/rings.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace factin {

namespace {

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

// Canonical aromatic ring atom names per residue type.
const std::set<std::string> kHis5 = {"CG", "ND1", "CD2", "CE1", "NE2"};
const std::set<std::string> kPheTyr6 = {"CG", "CD1", "CD2", "CE1", "CE2", "CZ"};
const std::set<std::string> kTrp5 = {"CG", "CD1", "NE1", "CE2", "CD2"};
const std::set<std::string> kTrp6 = {"CD2", "CE2", "CZ2", "CH2", "CZ3", "CE3"};

bool matches_aromatic(const std::string& residue, uint32_t size,
                      const std::set<std::string>& names) {
    if (residue == "HIS") return size == 5 && names == kHis5;
    if (residue == "PHE" || residue == "TYR") return size == 6 && names == kPheTyr6;
    if (residue == "TRP") return (size == 5 && names == kTrp5) || (size == 6 && names == kTrp6);
    return false;
}

// Enumerates chordless cycles of 5 or 6 nodes. Each cycle is produced once:
// the DFS roots at the cycle's smallest node and the two traversal
// directions collapse via the path[1] < closing-node test.
void enumerate_rings(const MolecularGraph& g, std::vector<std::vector<uint32_t>>& out) {
    uint32_t n = g.node_count();
    std::vector<uint32_t> path;
    std::vector<char> on_path(n, 0);

    // v may extend the path iff it is adjacent to the tail only (no chords
    // into the interior); adjacency to the root closes a cycle instead.
    auto chord_free = [&](uint32_t v, size_t upto) {
        for (size_t j = 1; j + 1 < upto; ++j)
            if (g.has_edge(v, path[j])) return false;
        return true;
    };

    std::function<void(uint32_t)> extend = [&](uint32_t u) {
        for (uint32_t v : g.neighbors(u)) {
            if (v <= path[0] || on_path[v]) continue;
            size_t len = path.size();
            // At len == 1 the v-root edge is the path's first edge, not a
            // closure or chord.
            bool closes = len >= 2 && g.has_edge(v, path[0]);
            if (closes) {
                if ((len + 1 == 5 || len + 1 == 6) && path[1] < v && chord_free(v, len)) {
                    auto ring = path;
                    ring.push_back(v);
                    out.push_back(std::move(ring));
                }
                continue; // extending past v would keep the v-root chord
            }
            if (len + 1 >= 6) continue; // no room left to close a 6-cycle
            if (!chord_free(v, len)) continue;
            path.push_back(v);
            on_path[v] = 1;
            extend(v);
            on_path[v] = 0;
            path.pop_back();
        }
    };

    for (uint32_t r = 0; r + 2 < n; ++r) {
        path.assign(1, r);
        on_path[r] = 1;
        extend(r);
        on_path[r] = 0;
    }
}

} // namespace

std::vector<Ring> find_rings(const MolecularGraph& g) {
    std::vector<std::vector<uint32_t>> cycles;
    enumerate_rings(g, cycles);
    std::sort(cycles.begin(), cycles.end());

    const bool annotated = g.has_atoms();
    const auto& atoms = g.atoms();

    std::vector<Ring> rings;
    for (auto& nodes : cycles) {
        Ring ring;
        ring.nodes = std::move(nodes);
        if (annotated) {
            const AtomRecord& first = atoms[ring.nodes[0]];
            bool same_residue = true;
            std::set<std::string> names;
            for (uint32_t u : ring.nodes) {
                const AtomRecord& a = atoms[u];
                same_residue &= a.residue_name == first.residue_name &&
                                a.residue_seq == first.residue_seq && a.chain == first.chain &&
                                a.icode == first.icode;
                names.insert(a.atom_name);
            }
            if (!same_residue || !matches_aromatic(first.residue_name, ring.size(), names))
                continue;
            ring.residue_name = first.residue_name;
            ring.residue_seq = first.residue_seq;
            ring.chain = first.chain;
            ring.classified = true;
        }
        for (uint32_t u : ring.nodes) {
            for (uint32_t v : g.neighbors(u)) {
                if (std::find(ring.nodes.begin(), ring.nodes.end(), v) == ring.nodes.end()) {
                    ring.attachments.push_back(u);
                    break;
                }
            }
        }
        rings.push_back(std::move(ring));
    }
    return rings;
}

RingCensus census_rings(const std::vector<Ring>& rings, RingCountMode mode) {
    RingCensus c;
    std::set<std::pair<char, int>> trp_residues;
    for (const Ring& r : rings) {
        if (!r.classified) {
            ++c.unclassified;
        } else if (r.residue_name == "HIS") {
            ++c.his;
        } else if (r.residue_name == "PHE") {
            ++c.phe;
        } else if (r.residue_name == "TYR") {
            ++c.tyr;
        } else if (r.residue_name == "TRP") {
            if (mode == RingCountMode::PerRing)
                ++c.trp;
            else if (trp_residues.insert({r.chain, r.residue_seq}).second)
                ++c.trp;
        }
    }
    c.total = c.his + c.phe + c.trp + c.tyr + c.unclassified;
    return c;
}

std::string census_csv(const RingCensus& c) {
    std::ostringstream out;
    out << "residue,rings\n";
    out << "HIS," << c.his << "\n";
    out << "PHE," << c.phe << "\n";
    out << "TRP," << c.trp << "\n";
    out << "TYR," << c.tyr << "\n";
    if (c.unclassified) out << "unclassified," << c.unclassified << "\n";
    out << "total," << c.total << "\n";
    return out.str();
}

Configuration write_bit(const Configuration& cfg, const Ring& ring, uint32_t phase) {
    if (ring.size() < 3) throw std::invalid_argument("ring too small");
    if (phase >= ring.size()) throw std::invalid_argument("phase outside the ring");
    for (uint32_t u : ring.nodes) {
        if (u >= cfg.size()) throw std::invalid_argument("ring node outside the configuration");
        if (cfg.get(u) != NodeState::Resting)
            throw std::invalid_argument("bit slot occupied: ring node " + std::to_string(u) +
                                        " is not resting");
    }
    Configuration out = cfg;
    out.set(ring.nodes[phase], NodeState::Excited);
    out.set(ring.nodes[(phase + ring.size() - 1) % ring.size()], NodeState::Refractory);
    return out;
}

Configuration erase_bit(const Configuration& cfg, const Ring& ring, EraseMode mode) {
    uint32_t excited = 0, refractory = 0;
    for (uint32_t u : ring.nodes) {
        if (u >= cfg.size()) throw std::invalid_argument("ring node outside the configuration");
        NodeState s = cfg.get(u);
        excited += s == NodeState::Excited;
        refractory += s == NodeState::Refractory;
    }
    if (excited != 1 || refractory != 1)
        throw std::invalid_argument("erase expects the single-wave form (one excited, one "
                                    "refractory ring node)");
    Configuration out = cfg;
    NodeState fill = mode == EraseMode::ExciteAllResting ? NodeState::Excited : NodeState::Refractory;
    for (uint32_t u : ring.nodes)
        if (cfg.get(u) == NodeState::Resting) out.set(u, fill);
    return out;
}

namespace {

Ring whole_cycle_ring(uint32_t n) {
    Ring r;
    r.nodes.resize(n);
    for (uint32_t i = 0; i < n; ++i) r.nodes[i] = i;
    return r;
}

// Every 1- and 2-subset of the positions resting at this phase.
std::vector<std::vector<uint32_t>> perturbation_sets(const Ring& ring, const Configuration& base) {
    std::vector<uint32_t> resting;
    for (uint32_t i = 0; i < ring.size(); ++i)
        if (base.get(ring.nodes[i]) == NodeState::Resting) resting.push_back(i);
    std::vector<std::vector<uint32_t>> sets;
    for (size_t a = 0; a < resting.size(); ++a) {
        sets.push_back({resting[a]});
        for (size_t b = a + 1; b < resting.size(); ++b)
            sets.push_back({resting[a], resting[b]});
    }
    return sets;
}

NoiseToleranceReport noise_tolerance(const MolecularGraph& g, const Ring& ring,
                                     uint64_t max_steps) {
    NoiseToleranceReport report;
    report.ring_size = ring.size();
    ExcitationRule rule = ExcitationRule::a0();
    Configuration empty(g.node_count());

    for (uint32_t phase = 0; phase < ring.size(); ++phase) {
        Configuration base = write_bit(empty, ring, phase);
        for (const auto& set : perturbation_sets(ring, base)) {
            Configuration cfg = base;
            for (uint32_t idx : set) cfg.set(ring.nodes[idx], NodeState::Excited);
            TrajectoryOptions topts;
            topts.max_steps = max_steps;
            topts.record_series = false;
            TrajectoryResult r = run_to_attractor(g, rule, cfg, topts);
            ++report.cases_tested;
            if (r.termination == Termination::Absorbing)
                report.counterexamples.push_back({phase, set});
        }
    }

    Configuration base = write_bit(empty, ring, 0);
    for (EraseMode mode : {EraseMode::ExciteAllResting, EraseMode::InhibitAllResting}) {
        TrajectoryOptions topts;
        topts.max_steps = max_steps;
        topts.record_series = false;
        TrajectoryResult r = run_to_attractor(g, rule, erase_bit(base, ring, mode), topts);
        bool died = r.termination == Termination::Absorbing;
        (mode == EraseMode::ExciteAllResting ? report.erase_excite_all_extinguishes
                                             : report.erase_inhibit_all_extinguishes) = died;
    }
    return report;
}

} // namespace

NoiseToleranceReport check_noise_tolerance(uint32_t ring_size) {
    if (ring_size < 4 || ring_size > 12)
        throw std::invalid_argument("ring size outside [4, 12]");
    MolecularGraph g = make_cycle_graph(ring_size);
    return noise_tolerance(g, whole_cycle_ring(ring_size), 0);
}

NoiseToleranceReport check_noise_tolerance_in_situ(const MolecularGraph& g, const Ring& ring,
                                                   uint64_t max_steps) {
    return noise_tolerance(g, ring, max_steps);
}

GeneratorReport generator_demo(const MolecularGraph& g, const Ring& ring, uint64_t steps,
                               uint32_t phase) {
    GeneratorReport report;
    std::vector<char> on_ring(g.node_count(), 0);
    for (uint32_t u : ring.nodes) on_ring[u] = 1;

    Configuration cur = write_bit(Configuration(g.node_count()), ring, phase);
    Configuration buf(cur.size());
    ExcitationRule rule = ExcitationRule::a0();
    for (uint64_t t = 0;; ++t) {
        report.snapshots.push_back(cur.to_chars());
        if (!report.escaped) {
            for (uint32_t u = 0; u < g.node_count(); ++u) {
                if (!on_ring[u] && cur.get(u) == NodeState::Excited) {
                    report.escaped = true;
                    report.first_escape_step = t;
                    break;
                }
            }
        }
        if (t == steps) break;
        step_into(g, rule, cur, buf);
        std::swap(cur, buf);
    }
    return report;
}

CapacityReport memory_capacity(const RingCensus& census, const CapacityParams& params) {
    CapacityReport r;
    r.bits_per_unit = census.total;
    r.units_per_filament = params.units_per_strand * params.strands;
    r.bits_per_filament = r.bits_per_unit * r.units_per_filament;
    r.filament_length_nm = static_cast<double>(params.units_per_strand) * params.unit_size_nm;
    r.filament_area_nm2 = r.filament_length_nm * params.track_width_nm;
    if (r.filament_area_nm2 > 0.0)
        r.bits_per_nm2 = static_cast<double>(r.bits_per_filament) / r.filament_area_nm2;
    constexpr double kNmPerInch = 2.54e7;
    r.bits_per_sq_inch = r.bits_per_nm2 * kNmPerInch * kNmPerInch;
    r.petabit_per_sq_inch = r.bits_per_sq_inch / 1e15;
    return r;
}

std::string capacity_csv(const CapacityReport& r) {
    std::ostringstream out;
    out << "metric,value\n";
    out << "bits_per_unit," << r.bits_per_unit << "\n";
    out << "units_per_filament," << r.units_per_filament << "\n";
    out << "bits_per_filament," << r.bits_per_filament << "\n";
    out << "filament_length_nm," << fmt_double(r.filament_length_nm) << "\n";
    out << "filament_area_nm2," << fmt_double(r.filament_area_nm2) << "\n";
    out << "bits_per_nm2," << fmt_double(r.bits_per_nm2) << "\n";
    out << "bits_per_sq_inch," << fmt_double(r.bits_per_sq_inch) << "\n";
    out << "petabit_per_sq_inch," << fmt_double(r.petabit_per_sq_inch) << "\n";
    return out.str();
}

} // namespace factin
