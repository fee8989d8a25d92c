#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "factin/automaton.hpp"
#include "factin/stimulate.hpp"

namespace factin {

enum class Termination {
    Absorbing,       // all-resting fixed point reached
    LimitCycle,      // cycle of length >= 2
    BudgetExhausted, // max_steps hit before any repeat
};

std::string to_string(Termination t);

struct TrajectoryOptions {
    uint64_t max_steps = 0;              // 0 -> 100 * node_count
    uint64_t fingerprint_seed = 0x9d8f3c1b52e604a7ULL;
    // Above this the configuration history is dropped and cycle detection
    // falls back to a power-of-two restart scheme (more steps, O(1) memory).
    size_t history_cap_bytes = 256ull << 20;
    bool record_series = true;
    // Observes every configuration in step order (the initial one included,
    // post-stimulation at trigger steps). Non-null slows the hot loop down.
    std::function<void(const Configuration&)> on_step;
};

struct TrajectoryResult {
    uint64_t transient_p = 0; // step index of the first configuration of the cycle
    uint64_t cycle_c = 0;     // 1 = absorbing state
    uint64_t excitation_e = 0; // round(mean excited count over one cycle)
    std::vector<uint32_t> series; // excited count at step 0..steps_run
    Termination termination = Termination::BudgetExhausted;
    uint64_t steps_run = 0;
    std::vector<uint64_t> stimulation_steps; // run_with_restimulation markers
    std::vector<std::string> warnings;
};

// Evolves cfg0 and detects the attractor exactly: fingerprint map with
// full-state verification on every hit, plus an all-resting short-circuit.
// Before returning, the cycle is certified by replaying c steps from the
// configuration at step p and comparing full states.
TrajectoryResult run_to_attractor(const MolecularGraph& g, const ExcitationRule& rule,
                                  const Configuration& cfg0, uint64_t max_steps);
TrajectoryResult run_to_attractor(const MolecularGraph& g, const ExcitationRule& rule,
                                  const Configuration& cfg0, const TrajectoryOptions& opts);

// Same loop, applying spec.restimulation along the way. AtStep triggers fire
// after the configuration of that step is computed; OnCycleEntry fires the
// first time a cycle is certified. Every stimulation clears the fingerprint
// history, so reported p/c/e describe the final attractor with p counted in
// absolute steps from the initial configuration. Triggers past max_steps are
// ignored with a warning. The RNG stream continues across stimulations.
TrajectoryResult run_with_restimulation(const MolecularGraph& g, const ExcitationRule& rule,
                                        const Configuration& cfg0, const StimulationSpec& spec,
                                        uint64_t max_steps,
                                        const TrajectoryOptions& opts = {});

uint64_t default_max_steps(const MolecularGraph& g);

} // namespace factin
