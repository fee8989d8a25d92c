#include <doctest.h>

#include <stdexcept>

#include "factin/graph.hpp"
#include "factin/stimulate.hpp"
#include "factin/trajectory.hpp"
#include "support.hpp"

using namespace factin;

namespace {

Configuration single_excited(uint32_t n, uint32_t node) {
    Configuration cfg(n);
    cfg.set(node, NodeState::Excited);
    return cfg;
}

} // namespace

// Hand-computed transients, frozen. P3 stimulated at an end:
//   +oo -> -+o -> o-+ -> oo- -> ooo, absorbing at step 4.
// Stimulated in the middle: o+o -> +-+ -> -o- -> ooo, absorbing at step 3.
TEST_CASE("three-node path transients") {
    MolecularGraph p3 = make_path_graph(3);
    TrajectoryResult end = run_to_attractor(p3, ExcitationRule::a0(), single_excited(3, 0), 100);
    CHECK(end.transient_p == 4);
    CHECK(end.cycle_c == 1);
    CHECK(end.excitation_e == 0);
    CHECK(end.termination == Termination::Absorbing);

    TrajectoryResult mid = run_to_attractor(p3, ExcitationRule::a0(), single_excited(3, 1), 100);
    CHECK(mid.transient_p == 3);
    CHECK(mid.cycle_c == 1);
    CHECK(mid.termination == Termination::Absorbing);
}

// On a 6-cycle one excited node splits into two wavefronts that annihilate
// head-on at the antipode: +ooooo absorbs at step 5.
TEST_CASE("hexagon single stimulation annihilates") {
    MolecularGraph c6 = make_cycle_graph(6);
    TrajectoryResult r = run_to_attractor(c6, ExcitationRule::a0(), single_excited(6, 0), 1000);
    CHECK(r.transient_p == 5);
    CHECK(r.cycle_c == 1);
    CHECK(r.excitation_e == 0);
    CHECK(r.termination == Termination::Absorbing);
    // series tracks the excited counts: 1, 2, 2, 1, 0, 0
    REQUIRE(r.series.size() == 6);
    CHECK(r.series[0] == 1);
    CHECK(r.series[1] == 2);
    CHECK(r.series[3] == 1);
    CHECK(r.series[5] == 0);
}

// A directed wave (excited node trailed by a refractory one) circulates
// forever: zero transient, period n, one excited node at every step.
TEST_CASE("hexagon travelling wave cycles") {
    MolecularGraph c6 = make_cycle_graph(6);
    Configuration wave = Configuration::from_chars("+oooo-");
    TrajectoryResult r = run_to_attractor(c6, ExcitationRule::a0(), wave, 1000);
    CHECK(r.transient_p == 0);
    CHECK(r.cycle_c == 6);
    CHECK(r.excitation_e == 1);
    CHECK(r.termination == Termination::LimitCycle);
}

TEST_CASE("isolated node decays in two steps") {
    MolecularGraph lone(1, {});
    TrajectoryResult r = run_to_attractor(lone, ExcitationRule::a0(), single_excited(1, 0), 100);
    CHECK(r.transient_p == 2);
    CHECK(r.cycle_c == 1);
    CHECK(r.termination == Termination::Absorbing);
}

TEST_CASE("all-resting start is already absorbed") {
    MolecularGraph c5 = make_cycle_graph(5);
    TrajectoryResult r = run_to_attractor(c5, ExcitationRule::a0(), Configuration(5), 100);
    CHECK(r.transient_p == 0);
    CHECK(r.cycle_c == 1);
    CHECK(r.steps_run == 0);
}

TEST_CASE("attractor matches the full-history reference") {
    Rng rng(2024);
    for (int trial = 0; trial < 250; ++trial) {
        support::RandomTriple t = support::random_triple(rng);
        MolecularGraph g(t.n, t.edges);
        auto adj = support::adjacency(t.n, t.edges);

        support::NaiveAttractor expect = support::naive_attractor(adj, t.rule, t.init, 600000);
        REQUIRE(expect.terminated);

        TrajectoryResult got =
            run_to_attractor(g, t.rule, support::to_config(t.init), 600000);
        REQUIRE(got.termination != Termination::BudgetExhausted);
        REQUIRE(got.transient_p == expect.p);
        REQUIRE(got.cycle_c == expect.c);
        REQUIRE(got.excitation_e == expect.e);
        CHECK((got.termination == Termination::Absorbing) == (expect.c == 1));
    }
}

TEST_CASE("constant-memory fallback finds the same attractor") {
    Rng rng(77);
    for (int trial = 0; trial < 60; ++trial) {
        support::RandomTriple t = support::random_triple(rng);
        MolecularGraph g(t.n, t.edges);
        Configuration cfg0 = support::to_config(t.init);

        TrajectoryResult exact = run_to_attractor(g, t.rule, cfg0, 600000);

        TrajectoryOptions cramped;
        cramped.max_steps = 600000;
        cramped.history_cap_bytes = 0; // force the restart scheme from step one
        cramped.record_series = false;
        TrajectoryResult fallback = run_to_attractor(g, t.rule, cfg0, cramped);

        REQUIRE(fallback.termination == exact.termination);
        REQUIRE(fallback.transient_p == exact.transient_p);
        REQUIRE(fallback.cycle_c == exact.cycle_c);
        REQUIRE(fallback.excitation_e == exact.excitation_e);
    }
}

TEST_CASE("budget exhaustion is reported, not guessed") {
    MolecularGraph c8 = make_cycle_graph(8);
    Configuration wave = Configuration::from_chars("+oooooo-");
    TrajectoryOptions opts;
    opts.max_steps = 3; // wave needs 8 steps to recur
    TrajectoryResult r = run_to_attractor(c8, ExcitationRule::a0(), wave, opts);
    CHECK(r.termination == Termination::BudgetExhausted);
    CHECK(r.steps_run == 3);
    CHECK(r.cycle_c == 0);
}

TEST_CASE("default budget scales with the graph") {
    CHECK(default_max_steps(make_cycle_graph(6)) == 600);
    CHECK(default_max_steps(make_path_graph(50)) == 5000);
}

TEST_CASE("observer sees every configuration in order") {
    MolecularGraph p3 = make_path_graph(3);
    TrajectoryOptions opts;
    opts.max_steps = 100;
    std::vector<std::string> seen;
    opts.on_step = [&seen](const Configuration& c) {
        CHECK(c.step() == seen.size());
        seen.push_back(c.to_chars());
    };
    run_to_attractor(p3, ExcitationRule::a0(), single_excited(3, 0), opts);
    REQUIRE(seen.size() == 5);
    CHECK(seen[0] == "+oo");
    CHECK(seen[1] == "-+o");
    CHECK(seen[2] == "o-+");
    CHECK(seen[3] == "oo-");
    CHECK(seen[4] == "ooo");
}

TEST_CASE("initial stimulation through the spec equals pre-stimulation") {
    MolecularGraph c6 = make_cycle_graph(6);
    StimulationSpec spec;
    spec.initial = StimAction::single(0);
    TrajectoryResult via_spec =
        run_with_restimulation(c6, ExcitationRule::a0(), Configuration(6), spec, 1000);
    CHECK(via_spec.transient_p == 5);
    CHECK(via_spec.cycle_c == 1);
    REQUIRE(via_spec.stimulation_steps.size() == 1);
    CHECK(via_spec.stimulation_steps[0] == 0);
}

TEST_CASE("scheduled restimulation wakes an absorbed automaton") {
    MolecularGraph p3 = make_path_graph(3);
    StimulationSpec spec;
    spec.initial = StimAction::single(0);
    RestimEvent again;
    again.trigger = RestimEvent::Trigger::AtStep;
    again.step = 10;
    again.action = StimAction::single(0);
    spec.restimulation.push_back(again);

    TrajectoryResult r =
        run_with_restimulation(p3, ExcitationRule::a0(), Configuration(3), spec, 1000);
    // absorbed at 4, idles to 10, runs the same 4-step transient again
    CHECK(r.transient_p == 14);
    CHECK(r.cycle_c == 1);
    CHECK(r.termination == Termination::Absorbing);
    REQUIRE(r.stimulation_steps.size() == 2);
    CHECK(r.stimulation_steps[1] == 10);
}

// Exciting the node directly behind the refractory tail launches a counter-
// wave that annihilates the circulating one; fired on cycle entry this turns
// a limit cycle into extinction.
TEST_CASE("on-cycle restimulation at the tail kills the wave") {
    MolecularGraph c6 = make_cycle_graph(6);
    Configuration wave = Configuration::from_chars("+oooo-"); // excited 0, refractory 5
    StimulationSpec spec;
    RestimEvent ev;
    ev.trigger = RestimEvent::Trigger::OnCycleEntry;
    ev.action = StimAction::single(4); // tail-adjacent position
    spec.restimulation.push_back(ev);

    TrajectoryResult r = run_with_restimulation(c6, ExcitationRule::a0(), wave, spec, 1000);
    REQUIRE(r.stimulation_steps.size() == 1);
    CHECK(r.stimulation_steps[0] == 6); // fired when the cycle first closed
    CHECK(r.termination == Termination::Absorbing);
    CHECK(r.transient_p == 10); // hand-traced: collision resolves four steps later
    CHECK(r.cycle_c == 1);
}

TEST_CASE("on-cycle restimulation elsewhere leaves a live wave") {
    MolecularGraph c6 = make_cycle_graph(6);
    Configuration wave = Configuration::from_chars("+oooo-");
    StimulationSpec spec;
    RestimEvent ev;
    ev.trigger = RestimEvent::Trigger::OnCycleEntry;
    ev.action = StimAction::single(2);
    spec.restimulation.push_back(ev);

    TrajectoryResult r = run_with_restimulation(c6, ExcitationRule::a0(), wave, spec, 1000);
    REQUIRE(r.stimulation_steps.size() == 1);

    // absolute p = trigger step + relative transient of the perturbed state
    Configuration perturbed = Configuration::from_chars("+o+oo-");
    TrajectoryResult rel = run_to_attractor(c6, ExcitationRule::a0(), perturbed, 1000);
    CHECK(r.transient_p == 6 + rel.transient_p);
    CHECK(r.cycle_c == rel.cycle_c);
    CHECK(r.excitation_e == rel.excitation_e);
}

TEST_CASE("restimulation validation") {
    MolecularGraph p3 = make_path_graph(3);
    StimulationSpec spec;
    spec.initial = StimAction::single(0);
    RestimEvent a, b;
    a.trigger = b.trigger = RestimEvent::Trigger::AtStep;
    a.step = 20;
    b.step = 10; // out of order
    a.action = b.action = StimAction::single(0);
    spec.restimulation = {a, b};
    CHECK_THROWS_AS(run_with_restimulation(p3, ExcitationRule::a0(), Configuration(3), spec, 1000),
                    std::invalid_argument);

    // beyond the budget: ignored with a warning
    StimulationSpec late;
    late.initial = StimAction::single(0);
    RestimEvent never;
    never.trigger = RestimEvent::Trigger::AtStep;
    never.step = 5000;
    never.action = StimAction::single(0);
    late.restimulation.push_back(never);
    TrajectoryResult r =
        run_with_restimulation(p3, ExcitationRule::a0(), Configuration(3), late, 100);
    CHECK(r.transient_p == 4);
    REQUIRE(r.warnings.size() == 1);
    CHECK(r.warnings[0].find("5000") != std::string::npos);
    CHECK(r.stimulation_steps.size() == 1); // only the initial one fired
}

TEST_CASE("ratio stimulation draws one deterministic stream") {
    MolecularGraph c12 = make_cycle_graph(12);
    StimulationSpec spec;
    spec.seed = 31337;
    spec.initial = StimAction::plus(0.5);
    TrajectoryResult a = run_with_restimulation(c12, ExcitationRule::a0(), Configuration(12), spec, 2000);
    TrajectoryResult b = run_with_restimulation(c12, ExcitationRule::a0(), Configuration(12), spec, 2000);
    CHECK(a.transient_p == b.transient_p);
    CHECK(a.cycle_c == b.cycle_c);
    REQUIRE(a.series.size() == b.series.size());
    CHECK(a.series == b.series);

    // and the stream really is seed-dependent
    spec.seed = 31338;
    TrajectoryResult c = run_with_restimulation(c12, ExcitationRule::a0(), Configuration(12), spec, 2000);
    bool same_series = a.series.size() == c.series.size() && a.series == c.series;
    CHECK(!same_series); // 6 of 12 nodes drawn differently with overwhelming odds
}
