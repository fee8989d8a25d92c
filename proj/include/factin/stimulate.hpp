#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "factin/automaton.hpp"
#include "factin/rng.hpp"

namespace factin {

enum class Scenario {
    SingleNode, // one named node set excited
    Plus,       // floor(rho*N) nodes sampled without replacement, set excited
    PlusMinus,  // same sampling, each node excited or refractory with prob 1/2
};

std::string to_string(Scenario s);

// One stimulation action; rho is used by the ratio scenarios, node by
// SingleNode. Also covers ring writes via the CLI mini-language.
struct StimAction {
    Scenario kind = Scenario::SingleNode;
    uint32_t node = 0;
    double rho = 0.0;

    static StimAction single(uint32_t node) { return {Scenario::SingleNode, node, 0.0}; }
    static StimAction plus(double rho) { return {Scenario::Plus, 0, rho}; }
    static StimAction plus_minus(double rho) { return {Scenario::PlusMinus, 0, rho}; }
};

struct RestimEvent {
    enum class Trigger { AtStep, OnCycleEntry };
    Trigger trigger = Trigger::AtStep;
    uint64_t step = 0; // for AtStep
    StimAction action;
};

// initial is applied by run_with_restimulation at step 0 (leave it empty when
// the caller pre-builds the starting configuration, e.g. a ring write); all
// sampling draws from one stream seeded with `seed`.
struct StimulationSpec {
    std::optional<StimAction> initial;
    uint64_t seed = 0;
    std::vector<RestimEvent> restimulation;
};

// Overwrites the sampled nodes whatever their current state; everything else
// is untouched, which is what makes re-stimulation of a running automaton
// well defined. Throws if floor(rho*N) == 0 or the node id is out of range.
Configuration stimulate(const Configuration& cfg, const StimAction& action, Rng& rng);

} // namespace factin
