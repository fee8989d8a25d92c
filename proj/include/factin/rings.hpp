#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "factin/automaton.hpp"
#include "factin/graph.hpp"
#include "factin/trajectory.hpp"

namespace factin {

// A chordless 5- or 6-cycle, nodes in cyclic order (canonical rotation:
// nodes[0] is the smallest id, nodes[1] < nodes.back()).
struct Ring {
    std::vector<uint32_t> nodes;
    std::string residue_name; // empty when unclassified
    int residue_seq = 0;
    char chain = ' ';
    bool classified = false;
    std::vector<uint32_t> attachments; // ring nodes with outside neighbours

    uint32_t size() const { return static_cast<uint32_t>(nodes.size()); }
};

// On an annotated graph: all chordless 5/6-cycles lying inside one residue
// whose atom names match the canonical aromatic sets (HIS 5-ring, PHE/TYR
// 6-ring, TRP 5- and 6-ring). Without annotations: every chordless 5/6-cycle,
// unclassified. Deterministic order (lexicographic by node sequence).
std::vector<Ring> find_rings(const MolecularGraph& g);

enum class RingCountMode {
    PerRing, // every perceived ring counts; TRP contributes 2 per residue
    Paper,   // TRP counted once per residue
};

struct RingCensus {
    uint64_t his = 0;
    uint64_t phe = 0;
    uint64_t trp = 0;
    uint64_t tyr = 0;
    uint64_t unclassified = 0;
    uint64_t total = 0;
};

RingCensus census_rings(const std::vector<Ring>& rings, RingCountMode mode = RingCountMode::PerRing);
std::string census_csv(const RingCensus& c);

// Writes one bit: ring node at `phase` becomes excited, its cyclic
// predecessor refractory. All ring nodes must be resting (occupied bit
// otherwise).
Configuration write_bit(const Configuration& cfg, const Ring& ring, uint32_t phase);

enum class EraseMode { ExciteAllResting, InhibitAllResting };

// Requires the single-wave form (exactly one excited and one refractory node
// among the ring nodes); sets every resting ring node per the mode, after
// which an isolated ring decays to all-resting.
Configuration erase_bit(const Configuration& cfg, const Ring& ring, EraseMode mode);

struct NoiseCase {
    uint32_t phase = 0;
    std::vector<uint32_t> stimulated; // ring-relative indices
};

struct NoiseToleranceReport {
    uint32_t ring_size = 0;
    uint64_t cases_tested = 0;
    std::vector<NoiseCase> counterexamples; // perturbations that extinguished the wave
    bool erase_excite_all_extinguishes = false;
    bool erase_inhibit_all_extinguishes = false;
};

// Exhaustively applies every 1- and 2-node excitation of resting nodes at
// every phase of a travelling wave on an isolated ring under A0 and runs each
// to its attractor; also verifies both erase modes extinguish. ring_size in
// [4, 12].
NoiseToleranceReport check_noise_tolerance(uint32_t ring_size);

// Same perturbation set applied to a perceived ring embedded in the full
// graph ("extinguished" = the whole automaton absorbs).
NoiseToleranceReport check_noise_tolerance_in_situ(const MolecularGraph& g, const Ring& ring,
                                                   uint64_t max_steps = 0);

struct GeneratorReport {
    std::vector<std::string> snapshots; // one {o,+,-} line per step, step 0 first
    bool escaped = false;
    uint64_t first_escape_step = 0; // first step with an excited node off the ring
};

// Writes a bit on the ring and evolves the full graph under A0.
GeneratorReport generator_demo(const MolecularGraph& g, const Ring& ring, uint64_t steps,
                               uint32_t phase = 0);

struct CapacityParams {
    // Defaults reproduce the published per-filament figure: a ~17 um
    // persistence length at an effective 4.25 nm axial footprint per unit
    // gives 4000 units per strand.
    uint64_t units_per_strand = 4000;
    uint32_t strands = 2;
    double unit_size_nm = 4.0;    // unit diameter; also sets filament length
    double track_width_nm = 0.2;  // effective track pitch for areal density
};

struct CapacityReport {
    uint64_t bits_per_unit = 0;
    uint64_t units_per_filament = 0;
    uint64_t bits_per_filament = 0;
    double filament_length_nm = 0.0;
    double filament_area_nm2 = 0.0;
    double bits_per_nm2 = 0.0;
    double bits_per_sq_inch = 0.0;
    double petabit_per_sq_inch = 0.0;
};

// bits_per_unit = census.total; bits_per_filament = bits_per_unit * units;
// areal density = bits_per_filament / (filament length * track width).
CapacityReport memory_capacity(const RingCensus& census, const CapacityParams& params = {});
std::string capacity_csv(const CapacityReport& r);

} // namespace factin
