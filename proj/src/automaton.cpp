#include "factin/automaton.hpp"

#include <bit>
#include <charconv>
#include <stdexcept>

#include <omp.h>

namespace factin {

char to_char(NodeState s) {
    switch (s) {
        case NodeState::Resting: return 'o';
        case NodeState::Excited: return '+';
        case NodeState::Refractory: return '-';
    }
    return '?';
}

NodeState node_state_from_char(char c) {
    switch (c) {
        case 'o': return NodeState::Resting;
        case '+': return NodeState::Excited;
        case '-': return NodeState::Refractory;
    }
    throw std::invalid_argument(std::string("bad state character '") + c + "'");
}

std::string ExcitationRule::name() const {
    if (lo == 1 && hi == kUnbounded) return "a0";
    if (lo == 1 && hi == 1) return "a1";
    std::string s = std::to_string(lo) + ":";
    return s + (hi == kUnbounded ? "inf" : std::to_string(hi));
}

ExcitationRule ExcitationRule::parse(std::string_view s) {
    if (s == "a0" || s == "A0") return a0();
    if (s == "a1" || s == "A1") return a1();
    auto colon = s.find(':');
    if (colon == std::string_view::npos)
        throw std::invalid_argument("bad rule '" + std::string(s) + "' (want a0, a1 or lo:hi)");
    auto lo_s = s.substr(0, colon);
    auto hi_s = s.substr(colon + 1);
    ExcitationRule r;
    auto [p1, e1] = std::from_chars(lo_s.data(), lo_s.data() + lo_s.size(), r.lo);
    if (e1 != std::errc{} || p1 != lo_s.data() + lo_s.size() || r.lo < 1)
        throw std::invalid_argument("bad rule lower bound in '" + std::string(s) + "'");
    if (hi_s.empty() || hi_s == "inf" || hi_s == "max") {
        r.hi = kUnbounded;
    } else {
        auto [p2, e2] = std::from_chars(hi_s.data(), hi_s.data() + hi_s.size(), r.hi);
        if (e2 != std::errc{} || p2 != hi_s.data() + hi_s.size())
            throw std::invalid_argument("bad rule upper bound in '" + std::string(s) + "'");
    }
    if (r.hi < r.lo)
        throw std::invalid_argument("rule upper bound below lower bound in '" + std::string(s) + "'");
    return r;
}

namespace {

// Bits 2k hold "excited" when the field value is 01.
inline uint64_t excited_mask(uint64_t w) {
    return w & ~(w >> 1) & 0x5555555555555555ULL;
}
inline uint64_t refractory_mask(uint64_t w) {
    return (w >> 1) & ~w & 0x5555555555555555ULL;
}

} // namespace

bool Configuration::all_resting() const {
    for (uint64_t w : words_)
        if (w != 0) return false;
    return true;
}

uint32_t Configuration::excited_count() const {
    uint32_t n = 0;
    for (uint64_t w : words_) n += std::popcount(excited_mask(w));
    return n;
}

StateCensus Configuration::census() const {
    StateCensus c;
    for (uint64_t w : words_) {
        c.excited += std::popcount(excited_mask(w));
        c.refractory += std::popcount(refractory_mask(w));
    }
    c.resting = size_ - c.excited - c.refractory;
    return c;
}

std::string Configuration::to_chars() const {
    std::string s(size_, 'o');
    for (uint32_t i = 0; i < size_; ++i) s[i] = to_char(get(i));
    return s;
}

Configuration Configuration::from_chars(std::string_view chars) {
    Configuration cfg(static_cast<uint32_t>(chars.size()));
    for (uint32_t i = 0; i < chars.size(); ++i) cfg.set(i, node_state_from_char(chars[i]));
    return cfg;
}

uint32_t excited_count(const Configuration& cfg) { return cfg.excited_count(); }
StateCensus state_census(const Configuration& cfg) { return cfg.census(); }

namespace {

// One packed output word (32 nodes). Parallel and serial paths share this so
// the result cannot depend on scheduling.
inline uint64_t step_word(const uint32_t* offsets, const uint32_t* targets,
                          const uint64_t* in_words, uint32_t n,
                          uint32_t lo, uint32_t hi, size_t w) {
    const uint32_t base = static_cast<uint32_t>(w) * 32u;
    const uint32_t lim = std::min(32u, n - base);
    const uint64_t old_word = in_words[w];
    uint64_t new_word = 0;
    for (uint32_t k = 0; k < lim; ++k) {
        const uint64_t state = (old_word >> (2 * k)) & 3u;
        uint64_t next;
        if (state == 0) { // resting
            const uint32_t node = base + k;
            uint32_t sigma = 0;
            for (uint32_t j = offsets[node]; j < offsets[node + 1]; ++j) {
                const uint32_t v = targets[j];
                sigma += ((in_words[v >> 5] >> ((v & 31u) * 2)) & 3u) == 1u;
            }
            next = (sigma >= lo && sigma <= hi) ? 1u : 0u;
        } else {
            next = (state == 1) ? 2u : 0u; // excited -> refractory -> resting
        }
        new_word |= next << (2 * k);
    }
    return new_word;
}

} // namespace

void step_into_serial(const MolecularGraph& g, const ExcitationRule& rule,
                      const Configuration& in, Configuration& out) {
    if (in.size() != g.node_count() || out.size() != g.node_count())
        throw std::invalid_argument("configuration length does not match graph");
    const uint32_t* offsets = g.csr_offsets().data();
    const uint32_t* targets = g.csr_targets().data();
    const uint64_t* iw = in.words().data();
    uint64_t* ow = out.mutable_words().data();
    const size_t nwords = in.words().size();
    for (size_t w = 0; w < nwords; ++w)
        ow[w] = step_word(offsets, targets, iw, in.size(), rule.lo, rule.hi, w);
    out.set_step(in.step() + 1);
}

void step_into_parallel(const MolecularGraph& g, const ExcitationRule& rule,
                        const Configuration& in, Configuration& out) {
    if (in.size() != g.node_count() || out.size() != g.node_count())
        throw std::invalid_argument("configuration length does not match graph");
    const uint32_t* offsets = g.csr_offsets().data();
    const uint32_t* targets = g.csr_targets().data();
    const uint64_t* iw = in.words().data();
    uint64_t* ow = out.mutable_words().data();
    const int64_t nwords = static_cast<int64_t>(in.words().size());
    const uint32_t n = in.size();
    const uint32_t lo = rule.lo, hi = rule.hi;
#pragma omp parallel for schedule(static)
    for (int64_t w = 0; w < nwords; ++w)
        ow[w] = step_word(offsets, targets, iw, n, lo, hi, static_cast<size_t>(w));
    out.set_step(in.step() + 1);
}

void step_into(const MolecularGraph& g, const ExcitationRule& rule,
               const Configuration& in, Configuration& out) {
    // Word-granular work items; below ~64 words the fork/join overhead wins.
    if (in.words().size() >= 64 && !omp_in_parallel())
        step_into_parallel(g, rule, in, out);
    else
        step_into_serial(g, rule, in, out);
}

Configuration step(const MolecularGraph& g, const ExcitationRule& rule,
                   const Configuration& cfg) {
    Configuration out(cfg.size());
    step_into(g, rule, cfg, out);
    return out;
}

Fingerprint fingerprint(const Configuration& cfg, uint64_t seed) {
    // Two mixed lanes over the packed words; position-dependent so permuted
    // states do not collide trivially.
    uint64_t h1 = seed ^ 0x243f6a8885a308d3ULL;
    uint64_t h2 = ~seed ^ 0x13198a2e03707344ULL;
    uint64_t pos = 1;
    for (uint64_t w : cfg.words()) {
        uint64_t x = w + pos * 0x9e3779b97f4a7c15ULL;
        x ^= x >> 29;
        x *= 0xff51afd7ed558ccdULL;
        h1 = (h1 ^ x) * 0xc6a4a7935bd1e995ULL + pos;
        h2 = (h2 + x) ^ ((h2 << 13) | (h2 >> 51));
        h2 *= 0x9e3779b97f4a7c15ULL;
        ++pos;
    }
    uint64_t n = cfg.size();
    h1 ^= n * 0xd6e8feb86659fd93ULL;
    h2 ^= (h1 >> 32) ^ n;
    h1 ^= h2 >> 17;
    return {h1, h2};
}

} // namespace factin
