#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "factin/graph.hpp"

namespace factin {

// State values double as the serialization order: resting < excited < refractory.
enum class NodeState : uint8_t {
    Resting = 0,
    Excited = 1,
    Refractory = 2,
};

char to_char(NodeState s);               // 'o', '+', '-'
NodeState node_state_from_char(char c);

// Excitation interval [lo, hi] on the excited-neighbour count sigma.
// A resting node fires iff lo <= sigma <= hi; the excited->refractory and
// refractory->resting transitions are unconditional.
struct ExcitationRule {
    static constexpr uint32_t kUnbounded = std::numeric_limits<uint32_t>::max();

    uint32_t lo = 1;
    uint32_t hi = kUnbounded;

    static ExcitationRule a0() { return {1, kUnbounded}; }
    static ExcitationRule a1() { return {1, 1}; }

    bool excites(uint32_t sigma) const { return sigma >= lo && sigma <= hi; }
    bool operator==(const ExcitationRule&) const = default;

    std::string name() const;                        // "a0", "a1", "lo:hi", "lo:inf"
    static ExcitationRule parse(std::string_view s); // accepts the same forms
};

struct StateCensus {
    uint32_t resting = 0;
    uint32_t excited = 0;
    uint32_t refractory = 0;
};

// Full state vector at one time step, packed 2 bits per node (32 nodes per
// 64-bit word). The step index is metadata; state comparisons and
// fingerprints cover the packed words only.
class Configuration {
public:
    Configuration() = default;
    explicit Configuration(uint32_t node_count)
        : words_((node_count + 31) / 32, 0), size_(node_count) {}

    uint32_t size() const { return size_; }
    uint64_t step() const { return step_; }
    void set_step(uint64_t t) { step_ = t; }

    NodeState get(uint32_t i) const {
        return static_cast<NodeState>((words_[i >> 5] >> ((i & 31u) * 2)) & 3u);
    }
    void set(uint32_t i, NodeState s) {
        uint64_t shift = (i & 31u) * 2;
        uint64_t& w = words_[i >> 5];
        w = (w & ~(3ULL << shift)) | (static_cast<uint64_t>(s) << shift);
    }

    bool all_resting() const;
    uint32_t excited_count() const;
    StateCensus census() const;

    bool states_equal(const Configuration& other) const {
        return size_ == other.size_ && words_ == other.words_;
    }

    std::span<const uint64_t> words() const { return words_; }
    std::span<uint64_t> mutable_words() { return words_; }

    // One character per node from {o,+,-} in node-id order.
    std::string to_chars() const;
    static Configuration from_chars(std::string_view chars);

private:
    std::vector<uint64_t> words_;
    uint32_t size_ = 0;
    uint64_t step_ = 0;
};

uint32_t excited_count(const Configuration& cfg);
StateCensus state_census(const Configuration& cfg);

// Synchronous update of every node; reads `in`, writes `out` (disjoint
// buffers), bumps the step index. Bit-identical output for any thread count.
void step_into(const MolecularGraph& g, const ExcitationRule& rule,
               const Configuration& in, Configuration& out);
void step_into_serial(const MolecularGraph& g, const ExcitationRule& rule,
                      const Configuration& in, Configuration& out);
void step_into_parallel(const MolecularGraph& g, const ExcitationRule& rule,
                        const Configuration& in, Configuration& out);

Configuration step(const MolecularGraph& g, const ExcitationRule& rule,
                   const Configuration& cfg);

// 128-bit seeded fingerprint of the packed state vector (step excluded).
struct Fingerprint {
    uint64_t hi = 0;
    uint64_t lo = 0;
    bool operator==(const Fingerprint&) const = default;
};

Fingerprint fingerprint(const Configuration& cfg, uint64_t seed);

} // namespace factin
