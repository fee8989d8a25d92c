#include "factin/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>
#include <utility>

namespace factin {

std::string to_string(Termination t) {
    switch (t) {
        case Termination::Absorbing: return "absorbing";
        case Termination::LimitCycle: return "limit-cycle";
        case Termination::BudgetExhausted: return "budget-exhausted";
    }
    return "?";
}

uint64_t default_max_steps(const MolecularGraph& g) {
    return 100ull * std::max<uint64_t>(1, g.node_count());
}

namespace {

struct FpHash {
    size_t operator()(const Fingerprint& f) const {
        return static_cast<size_t>(f.hi ^ (f.lo * 0x9e3779b97f4a7c15ULL));
    }
};

// step index + packed words of every visited configuration, keyed by
// fingerprint. Exactness comes from the full-state compare on every hit.
using History = std::unordered_map<Fingerprint, std::vector<std::pair<uint64_t, std::vector<uint64_t>>>, FpHash>;

Configuration config_from_words(std::vector<uint64_t> words, uint32_t n, uint64_t step) {
    Configuration c(n);
    std::copy(words.begin(), words.end(), c.mutable_words().begin());
    c.set_step(step);
    return c;
}

// Replays one full cycle from `at_p`, accumulating the excitation level, and
// demands the configuration returns to itself.
uint64_t certify_cycle_and_level(const MolecularGraph& g, const ExcitationRule& rule,
                                 const Configuration& at_p, uint64_t c) {
    Configuration x = at_p;
    Configuration buf(x.size());
    uint64_t sum = 0;
    for (uint64_t i = 0; i < c; ++i) {
        sum += x.excited_count();
        step_into(g, rule, x, buf);
        std::swap(x, buf);
    }
    if (!x.states_equal(at_p))
        throw std::logic_error("cycle certification failed: replay does not close");
    return static_cast<uint64_t>(std::llround(static_cast<double>(sum) / static_cast<double>(c)));
}

struct Engine {
    const MolecularGraph& g;
    const ExcitationRule& rule;
    const TrajectoryOptions& opts;
    uint64_t max_steps;

    Configuration cur, buf;
    uint64_t t = 0;
    TrajectoryResult res;

    // Detection state. Map mode holds full history; past the memory cap it
    // flips to a power-of-two restart scheme with O(1) state.
    bool brent_mode = false;
    History history;
    size_t history_bytes = 0;
    Configuration anchor;
    uint64_t anchor_step = 0;
    uint64_t brent_power = 1;

    // Last configuration from which evolution is pure (initial configuration
    // or the most recent stimulation); transient finding restarts here.
    Configuration origin;
    uint64_t origin_step = 0;

    Engine(const MolecularGraph& g_, const ExcitationRule& rule_, const Configuration& cfg0,
           const TrajectoryOptions& opts_)
        : g(g_), rule(rule_), opts(opts_),
          max_steps(opts_.max_steps ? opts_.max_steps : default_max_steps(g_)),
          cur(cfg0), buf(cfg0.size()), origin(cfg0) {
        if (cfg0.size() != g.node_count())
            throw std::invalid_argument("configuration length does not match graph");
        cur.set_step(0);
        origin.set_step(0);
    }

    void observe() {
        if (opts.record_series) res.series.push_back(cur.excited_count());
        if (opts.on_step) opts.on_step(cur);
    }

    void remember() {
        if (brent_mode) return;
        auto fp = fingerprint(cur, opts.fingerprint_seed);
        auto words = std::vector<uint64_t>(cur.words().begin(), cur.words().end());
        history_bytes += words.size() * sizeof(uint64_t) + 64;
        history[fp].emplace_back(t, std::move(words));
        if (history_bytes > opts.history_cap_bytes) switch_to_brent();
    }

    void switch_to_brent() {
        history.clear();
        history_bytes = 0;
        brent_mode = true;
        anchor = cur;
        anchor_step = t;
        brent_power = 1;
    }

    // Called after every stimulation: the old trajectory is gone.
    void reset_detection() {
        origin = cur;
        origin_step = t;
        if (brent_mode) {
            anchor = cur;
            anchor_step = t;
            brent_power = 1;
        } else {
            history.clear();
            history_bytes = 0;
            remember();
        }
    }

    void finalize_absorbing() {
        res.transient_p = t;
        res.cycle_c = 1;
        res.excitation_e = certify_cycle_and_level(g, rule, cur, 1);
        res.termination = Termination::Absorbing;
        res.steps_run = t;
    }

    void finalize_cycle(const Configuration& at_p, uint64_t p, uint64_t c) {
        res.transient_p = p;
        res.cycle_c = c;
        res.excitation_e = certify_cycle_and_level(g, rule, at_p, c);
        res.termination = c == 1 ? Termination::Absorbing : Termination::LimitCycle;
        res.steps_run = t;
    }

    // Cycle length known; locate the transient by walking two cursors c
    // steps apart from the pure-evolution origin.
    void finalize_from_cycle_length(uint64_t c) {
        Configuration slow = origin;
        Configuration fast = origin;
        Configuration tmp(origin.size());
        for (uint64_t i = 0; i < c; ++i) {
            step_into(g, rule, fast, tmp);
            std::swap(fast, tmp);
        }
        uint64_t mu = 0;
        while (!slow.states_equal(fast)) {
            step_into(g, rule, slow, tmp);
            std::swap(slow, tmp);
            step_into(g, rule, fast, tmp);
            std::swap(fast, tmp);
            ++mu;
        }
        finalize_cycle(slow, origin_step + mu, c);
    }

    // Advances one step; true when the attractor is settled (res filled).
    bool advance() {
        step_into(g, rule, cur, buf);
        std::swap(cur, buf);
        ++t;
        return false;
    }

    // Post-step detection checks; true when finished.
    bool detect() {
        if (cur.all_resting()) {
            finalize_absorbing();
            return true;
        }
        if (brent_mode) {
            uint64_t since = t - anchor_step;
            if (cur.states_equal(anchor)) {
                finalize_from_cycle_length(since);
                return true;
            }
            if (since == brent_power) {
                anchor = cur;
                anchor_step = t;
                brent_power *= 2;
            }
            return false;
        }
        auto fp = fingerprint(cur, opts.fingerprint_seed);
        if (auto it = history.find(fp); it != history.end()) {
            for (const auto& [s0, words] : it->second) {
                if (std::equal(words.begin(), words.end(), cur.words().begin(), cur.words().end())) {
                    auto at_p = config_from_words(words, cur.size(), s0);
                    finalize_cycle(at_p, s0, t - s0);
                    return true;
                }
            }
            // fingerprint collision: fall through and keep going
        }
        remember();
        return false;
    }

    void exhaust_budget() {
        res.transient_p = 0;
        res.cycle_c = 0;
        res.excitation_e = 0;
        res.termination = Termination::BudgetExhausted;
        res.steps_run = t;
    }
};

} // namespace

TrajectoryResult run_to_attractor(const MolecularGraph& g, const ExcitationRule& rule,
                                  const Configuration& cfg0, const TrajectoryOptions& opts) {
    Engine e(g, rule, cfg0, opts);
    e.observe();
    if (e.cur.all_resting()) {
        e.finalize_absorbing();
        return std::move(e.res);
    }
    e.remember();
    while (e.t < e.max_steps) {
        e.advance();
        e.observe();
        if (e.detect()) return std::move(e.res);
    }
    e.exhaust_budget();
    return std::move(e.res);
}

TrajectoryResult run_to_attractor(const MolecularGraph& g, const ExcitationRule& rule,
                                  const Configuration& cfg0, uint64_t max_steps) {
    TrajectoryOptions opts;
    opts.max_steps = max_steps;
    return run_to_attractor(g, rule, cfg0, opts);
}

TrajectoryResult run_with_restimulation(const MolecularGraph& g, const ExcitationRule& rule,
                                        const Configuration& cfg0, const StimulationSpec& spec,
                                        uint64_t max_steps, const TrajectoryOptions& opts_in) {
    TrajectoryOptions opts = opts_in;
    opts.max_steps = max_steps;
    Engine e(g, rule, cfg0, opts);
    Rng rng(spec.seed);

    std::vector<std::pair<uint64_t, StimAction>> at_step;
    std::vector<StimAction> on_cycle;
    uint64_t prev = 0;
    bool first = true;
    for (const auto& ev : spec.restimulation) {
        if (ev.trigger == RestimEvent::Trigger::OnCycleEntry) {
            on_cycle.push_back(ev.action);
            continue;
        }
        if (!first && ev.step <= prev)
            throw std::invalid_argument("restimulation steps must be strictly increasing");
        first = false;
        prev = ev.step;
        if (ev.step > e.max_steps) {
            e.res.warnings.push_back("restimulation at step " + std::to_string(ev.step) +
                                     " is beyond max_steps and was ignored");
            continue;
        }
        at_step.emplace_back(ev.step, ev.action);
    }
    size_t next_at = 0;
    size_t next_cycle = 0;

    auto apply_stim = [&](const StimAction& a) {
        e.cur = stimulate(e.cur, a, rng);
        e.res.stimulation_steps.push_back(e.t);
        e.reset_detection();
    };

    // Step 0: initial stimulation, possibly immediately restimulated.
    if (spec.initial) {
        e.cur = stimulate(e.cur, *spec.initial, rng);
        e.res.stimulation_steps.push_back(0);
    }
    while (next_at < at_step.size() && at_step[next_at].first == 0) {
        e.cur = stimulate(e.cur, at_step[next_at].second, rng);
        e.res.stimulation_steps.push_back(0);
        ++next_at;
    }
    e.observe();
    if (e.cur.all_resting() && next_at >= at_step.size()) {
        e.finalize_absorbing();
        return std::move(e.res);
    }
    e.origin = e.cur;
    e.origin_step = 0;
    e.remember();

    while (e.t < e.max_steps) {
        e.advance();
        if (next_at < at_step.size() && at_step[next_at].first == e.t) {
            e.cur = stimulate(e.cur, at_step[next_at].second, rng);
            ++next_at;
            e.res.stimulation_steps.push_back(e.t);
            e.reset_detection();
            e.observe();
            continue;
        }
        e.observe();
        if (e.cur.all_resting()) {
            if (next_at < at_step.size()) continue; // more stimulation scheduled; idle forward
            // All-resting is the length-1 cycle; there is no activity left for
            // an on-cycle-entry perturbation to ride on, so finish here.
            e.finalize_absorbing();
            return std::move(e.res);
        }
        // While scheduled stimulations remain, any cycle found now would not
        // survive them; detection stays idle until the last one has fired
        // (its reset_detection() seeds the history that matters).
        if (next_at < at_step.size()) continue;
        if (e.brent_mode) {
            uint64_t since = e.t - e.anchor_step;
            if (e.cur.states_equal(e.anchor)) {
                // Full-state recurrence: the trajectory is on its cycle.
                if (next_cycle < on_cycle.size()) {
                    apply_stim(on_cycle[next_cycle++]);
                    continue;
                }
                e.finalize_from_cycle_length(since);
                return std::move(e.res);
            }
            if (since == e.brent_power) {
                e.anchor = e.cur;
                e.anchor_step = e.t;
                e.brent_power *= 2;
            }
            continue;
        }
        auto fp = fingerprint(e.cur, opts.fingerprint_seed);
        bool matched = false;
        if (auto it = e.history.find(fp); it != e.history.end()) {
            for (const auto& [s0, words] : it->second) {
                if (std::equal(words.begin(), words.end(), e.cur.words().begin(), e.cur.words().end())) {
                    matched = true;
                    if (next_cycle < on_cycle.size()) {
                        apply_stim(on_cycle[next_cycle++]);
                    } else {
                        auto at_p = config_from_words(words, e.cur.size(), s0);
                        e.finalize_cycle(at_p, s0, e.t - s0);
                        return std::move(e.res);
                    }
                    break;
                }
            }
        }
        if (!matched) e.remember();
    }
    e.exhaust_budget();
    return std::move(e.res);
}

} // namespace factin
