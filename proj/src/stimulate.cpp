#include "factin/stimulate.hpp"

#include <cmath>
#include <stdexcept>

namespace factin {

std::string to_string(Scenario s) {
    switch (s) {
        case Scenario::SingleNode: return "single";
        case Scenario::Plus: return "plus";
        case Scenario::PlusMinus: return "plus-minus";
    }
    return "?";
}

Configuration stimulate(const Configuration& cfg, const StimAction& action, Rng& rng) {
    const uint32_t n = cfg.size();
    Configuration out = cfg;

    switch (action.kind) {
        case Scenario::SingleNode:
            if (action.node >= n)
                throw std::invalid_argument("stimulation node " + std::to_string(action.node) +
                                            " out of range (N=" + std::to_string(n) + ")");
            out.set(action.node, NodeState::Excited);
            return out;
        case Scenario::Plus:
        case Scenario::PlusMinus: {
            if (!(action.rho > 0.0) || action.rho > 1.0)
                throw std::invalid_argument("stimulation ratio must be in (0, 1]");
            const uint32_t k = static_cast<uint32_t>(std::floor(action.rho * n));
            if (k == 0)
                throw std::invalid_argument("empty stimulation: floor(rho*N) = 0");
            auto chosen = sample_without_replacement(n, k, rng);
            if (action.kind == Scenario::Plus) {
                for (uint32_t id : chosen) out.set(id, NodeState::Excited);
            } else {
                for (uint32_t id : chosen)
                    out.set(id, rng.coin() ? NodeState::Excited : NodeState::Refractory);
            }
            return out;
        }
    }
    throw std::logic_error("unreachable scenario");
}

} // namespace factin
