#include <cmath>
#include <cstdio>
#include <ctime>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "factin/experiments.hpp"
#include "factin/graph.hpp"
#include "factin/manifest.hpp"
#include "factin/rings.hpp"
#include "factin/stats.hpp"
#include "factin/stimulate.hpp"
#include "factin/structure.hpp"
#include "factin/trajectory.hpp"

namespace {

using namespace factin;

std::string iso_now() {
    std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

// Data goes to stdout unless -o was given; files get a reproducibility
// manifest sidecar recording the exact invocation.
struct Emitter {
    std::string command;
    std::vector<std::string> argv; // program name excluded
    std::string graph_path;

    void emit(const std::string& data, const std::string& out_path) const {
        if (out_path.empty()) {
            std::cout << data;
            return;
        }
        atomic_write_file(out_path, data);
        RunManifest m;
        m.command = command;
        m.argv = argv;
        m.graph_path = graph_path;
        if (!graph_path.empty()) m.graph_checksum = file_checksum(graph_path);
        m.created = iso_now();
        m.outputs = {out_path};
        atomic_write_file(out_path + ".manifest.json", manifest_json(m));
    }
};

double parse_double(const std::string& s, const char* what) {
    try {
        size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string("bad ") + what + " '" + s + "'");
    }
}

uint64_t parse_u64(const std::string& s, const char* what) {
    try {
        size_t pos = 0;
        unsigned long long v = std::stoull(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string("bad ") + what + " '" + s + "'");
    }
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    parts.push_back(cur);
    return parts;
}

// Initial-condition mini-language: single:<id> | plus:<rho> | plusminus:<rho>
// | ring:<ring-id>:<phase>.
struct InitSpec {
    bool is_ring = false;
    StimAction action;
    uint32_t ring_id = 0;
    uint32_t phase = 0;
    double rho() const { return is_ring ? 0.0 : action.rho; }
};

InitSpec parse_init(const std::string& s) {
    auto parts = split(s, ':');
    InitSpec spec;
    const std::string& kind = parts[0];
    if (kind == "single" && parts.size() == 2) {
        spec.action = StimAction::single(static_cast<uint32_t>(parse_u64(parts[1], "node id")));
    } else if (kind == "plus" && parts.size() == 2) {
        spec.action = StimAction::plus(parse_double(parts[1], "rho"));
    } else if (kind == "plusminus" && parts.size() == 2) {
        spec.action = StimAction::plus_minus(parse_double(parts[1], "rho"));
    } else if (kind == "ring" && parts.size() == 3) {
        spec.is_ring = true;
        spec.ring_id = static_cast<uint32_t>(parse_u64(parts[1], "ring id"));
        spec.phase = static_cast<uint32_t>(parse_u64(parts[2], "phase"));
    } else {
        throw std::invalid_argument(
            "bad init '" + s +
            "' (expected single:<id> | plus:<rho> | plusminus:<rho> | ring:<id>:<phase>)");
    }
    return spec;
}

// Restimulation events: at:<step>:<init> | on-cycle:<init>; ring writes are
// initial-only (a running automaton has no guaranteed resting ring).
RestimEvent parse_restim(const std::string& s) {
    auto parts = split(s, ':');
    RestimEvent ev;
    size_t init_from;
    if (parts[0] == "at" && parts.size() >= 3) {
        ev.trigger = RestimEvent::Trigger::AtStep;
        ev.step = parse_u64(parts[1], "step");
        init_from = 2;
    } else if (parts[0] == "on-cycle" && parts.size() >= 2) {
        ev.trigger = RestimEvent::Trigger::OnCycleEntry;
        init_from = 1;
    } else {
        throw std::invalid_argument("bad restim '" + s +
                                    "' (expected at:<step>:<init> | on-cycle:<init>)");
    }
    std::string init;
    for (size_t i = init_from; i < parts.size(); ++i) {
        if (i > init_from) init += ':';
        init += parts[i];
    }
    InitSpec spec = parse_init(init);
    if (spec.is_ring)
        throw std::invalid_argument("ring writes are not restimulation actions: '" + s + "'");
    ev.action = spec.action;
    return ev;
}

// "0.1:0.9:0.1" (inclusive range) or comma list "0.1,0.25,0.5".
std::vector<double> parse_rho_list(const std::string& s) {
    std::vector<double> rhos;
    if (s.find(':') != std::string::npos) {
        auto parts = split(s, ':');
        if (parts.size() != 3) throw std::invalid_argument("bad rho range '" + s + "'");
        double a = parse_double(parts[0], "rho"), b = parse_double(parts[1], "rho"),
               st = parse_double(parts[2], "rho step");
        if (st <= 0 || b < a) throw std::invalid_argument("bad rho range '" + s + "'");
        for (int i = 0;; ++i) {
            double v = a + st * i;
            if (v > b + st * 1e-9) break;
            rhos.push_back(std::round(v * 1e9) / 1e9);
        }
    } else {
        for (const auto& tok : split(s, ','))
            if (!tok.empty()) rhos.push_back(parse_double(tok, "rho"));
    }
    if (rhos.empty()) throw std::invalid_argument("empty rho list '" + s + "'");
    return rhos;
}

void apply_threads(int threads) {
#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#else
    (void)threads;
#endif
}

// Minimal CSV reader for `fit` (no quoting in our schemas).
struct Csv {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    int col(const std::string& name) const {
        for (size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return static_cast<int>(i);
        return -1;
    }
};

Csv parse_csv(const std::string& text) {
    Csv csv;
    std::istringstream in(text);
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto cells = split(line, ',');
        if (first) {
            csv.header = cells;
            first = false;
        } else {
            csv.rows.push_back(cells);
        }
    }
    return csv;
}

int run_cli(const std::vector<std::string>& args); // for replay

struct IngestArgs {
    std::string file, out, bond_mode = "both";
    double tolerance = 0.45;
    bool strip_h = false;
};

struct RunArgs {
    std::string graph, rule = "a0", init, out, dump_states, series;
    std::vector<std::string> restim;
    uint64_t seed = 0, max_steps = 0;
    int threads = 0;
};

StructureOptions structure_options(const IngestArgs& a) {
    StructureOptions opts;
    opts.bond_mode = parse_bond_mode(a.bond_mode);
    opts.tolerance = a.tolerance;
    opts.strip_hydrogens = a.strip_h;
    return opts;
}

void cmd_ingest(const IngestArgs& a, const Emitter& em) {
    MolecularGraph g = load_structure(a.file, structure_options(a));
    em.emit(write_graph(g), a.out);
    std::cerr << "ingested " << g.node_count() << " atoms, " << g.edge_count() << " bonds\n";
}

void cmd_stats(const std::string& graph_path, bool serial, const std::string& out,
               const Emitter& em) {
    MolecularGraph g = load_graph_auto(graph_path, StructureOptions{});
    GraphStats s = compute_stats(g, !serial);
    em.emit(stats_csv(s), out);
}

void cmd_run(const RunArgs& a, const Emitter& em) {
    MolecularGraph g = load_graph_auto(a.graph, StructureOptions{});
    ExcitationRule rule = ExcitationRule::parse(a.rule);
    InitSpec init = parse_init(a.init);

    Configuration base(g.node_count());
    StimulationSpec spec;
    spec.seed = a.seed;
    if (init.is_ring) {
        auto rings = find_rings(g);
        if (init.ring_id >= rings.size())
            throw std::runtime_error("ring id " + std::to_string(init.ring_id) + " out of range (" +
                                     std::to_string(rings.size()) + " rings perceived)");
        base = write_bit(base, rings[init.ring_id], init.phase);
    } else {
        spec.initial = init.action;
    }
    for (const auto& r : a.restim) spec.restimulation.push_back(parse_restim(r));

    TrajectoryOptions topts;
    topts.max_steps = a.max_steps;
    std::string states_ndjson;
    if (!a.dump_states.empty()) {
        topts.on_step = [&states_ndjson](const Configuration& c) {
            nlohmann::json j{{"step", c.step()}, {"states", c.to_chars()}};
            states_ndjson += j.dump();
            states_ndjson += '\n';
        };
    }

    uint64_t max_steps = a.max_steps ? a.max_steps : default_max_steps(g);
    TrajectoryResult r = run_with_restimulation(g, rule, base, spec, max_steps, topts);

    for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";

    std::ostringstream csv;
    csv << "seed,scenario,rho,rule,p,c,e,termination\n";
    csv << a.seed << ',' << a.init << ',' << fmt_double(init.rho()) << ',' << rule.name() << ','
        << r.transient_p << ',' << r.cycle_c << ',' << r.excitation_e << ','
        << to_string(r.termination) << "\n";
    em.emit(csv.str(), a.out);

    if (!a.dump_states.empty()) {
        if (a.dump_states == "-") std::cout << states_ndjson;
        else em.emit(states_ndjson, a.dump_states);
    }
    if (!a.series.empty()) {
        std::ostringstream s;
        s << "step,excited,stimulated\n";
        size_t next_mark = 0;
        for (size_t t = 0; t < r.series.size(); ++t) {
            bool mark = next_mark < r.stimulation_steps.size() && r.stimulation_steps[next_mark] == t;
            if (mark) ++next_mark;
            s << t << ',' << r.series[t] << ',' << (mark ? 1 : 0) << "\n";
        }
        em.emit(s.str(), a.series);
    }
}

struct SweepArgs {
    std::string graph, rule = "a0", scenario = "plus", rho, out, summary_out;
    uint32_t trials = 10;
    uint64_t seed = 0, max_steps = 0;
    int threads = 0;
};

void cmd_sweep(const SweepArgs& a, const Emitter& em) {
    MolecularGraph g = load_graph_auto(a.graph, StructureOptions{});
    SweepConfig cfg;
    cfg.rule = ExcitationRule::parse(a.rule);
    if (a.scenario == "plus") cfg.scenario = Scenario::Plus;
    else if (a.scenario == "plus-minus" || a.scenario == "plusminus") cfg.scenario = Scenario::PlusMinus;
    else throw std::invalid_argument("bad scenario '" + a.scenario + "' (plus | plus-minus)");
    cfg.rho_list = parse_rho_list(a.rho);
    cfg.trials_per_rho = a.trials;
    cfg.base_seed = a.seed;
    cfg.max_steps = a.max_steps;

    SweepSummary s = sweep_ratio(g, cfg);
    em.emit(sweep_rows_csv(s, cfg.rule, cfg.scenario), a.out);
    if (!a.summary_out.empty()) em.emit(sweep_summary_csv(s), a.summary_out);
    if (!a.out.empty()) std::cout << sweep_table(s); // table to stdout when rows went to a file
    else std::cerr << sweep_table(s);
}

struct SingleSweepArgs {
    std::string graph, rule = "a0", band = "2:15", out;
    uint64_t max_steps = 0;
    uint32_t sample_count = 0;
    uint64_t sample_seed = 0;
    int threads = 0;
};

void cmd_single_sweep(const SingleSweepArgs& a, const Emitter& em) {
    MolecularGraph g = load_graph_auto(a.graph, StructureOptions{});
    ExcitationRule rule = ExcitationRule::parse(a.rule);
    SingleNodeOptions opts;
    opts.max_steps = a.max_steps;
    auto band = split(a.band, ':');
    if (band.size() != 2) throw std::invalid_argument("bad band '" + a.band + "' (lo:hi)");
    opts.band_lo = parse_u64(band[0], "band lo");
    opts.band_hi = parse_u64(band[1], "band hi");
    if (a.sample_count > 0) opts.sample = {a.sample_count, a.sample_seed};

    SingleNodeSweep s = sweep_single_node(g, rule, opts);
    if (!a.out.empty()) em.emit(single_node_rows_csv(s, rule), a.out);
    std::cout << single_node_summary(s);
}

struct RingsArgs {
    std::string graph, count_mode = "per-ring", demo_out;
    bool census = false, list = false, capacity = false;
    int tolerance_check = -1;
    int in_situ = -1;
    int demo = -1;
    uint64_t demo_steps = 24;
    uint32_t demo_phase = 0;
    uint64_t units_per_strand = 4000;
    uint32_t strands = 2;
    double unit_size_nm = 4.0, track_width_nm = 0.2;
    int threads = 0;
};

void print_tolerance(const NoiseToleranceReport& rep) {
    std::cout << "ring_size," << rep.ring_size << "\n";
    std::cout << "cases_tested," << rep.cases_tested << "\n";
    std::cout << "counterexamples," << rep.counterexamples.size() << "\n";
    std::cout << "erase_excite_all_extinguishes," << (rep.erase_excite_all_extinguishes ? 1 : 0)
              << "\n";
    std::cout << "erase_inhibit_all_extinguishes," << (rep.erase_inhibit_all_extinguishes ? 1 : 0)
              << "\n";
    for (const auto& ce : rep.counterexamples) {
        std::cout << "extinguished,phase=" << ce.phase << ",stimulated=";
        for (size_t i = 0; i < ce.stimulated.size(); ++i)
            std::cout << (i ? "+" : "") << ce.stimulated[i];
        std::cout << "\n";
    }
}

void cmd_rings(const RingsArgs& a, const Emitter& em) {
    if (a.tolerance_check >= 0) {
        // isolated-ring checks need no graph
        print_tolerance(check_noise_tolerance(static_cast<uint32_t>(a.tolerance_check)));
        return;
    }
    if (a.graph.empty())
        throw std::invalid_argument("rings needs --graph (only --tolerance-check runs without one)");
    MolecularGraph g = load_graph_auto(a.graph, StructureOptions{});
    auto rings = find_rings(g);
    RingCountMode mode =
        a.count_mode == "paper" ? RingCountMode::Paper : RingCountMode::PerRing;
    if (a.count_mode != "paper" && a.count_mode != "per-ring")
        throw std::invalid_argument("bad count mode '" + a.count_mode + "' (per-ring | paper)");

    bool did_something = false;
    if (a.list) {
        did_something = true;
        std::cout << "ring,size,residue,seq,chain,attachments,nodes\n";
        for (size_t i = 0; i < rings.size(); ++i) {
            const Ring& r = rings[i];
            std::cout << i << ',' << r.size() << ',' << (r.classified ? r.residue_name : "-")
                      << ',' << r.residue_seq << ',' << (r.chain == ' ' ? '.' : r.chain) << ','
                      << r.attachments.size() << ',';
            for (size_t k = 0; k < r.nodes.size(); ++k)
                std::cout << (k ? "-" : "") << r.nodes[k];
            std::cout << "\n";
        }
    }
    if (a.census) {
        did_something = true;
        em.emit(census_csv(census_rings(rings, mode)), "");
    }
    if (a.in_situ >= 0) {
        did_something = true;
        if (static_cast<size_t>(a.in_situ) >= rings.size())
            throw std::runtime_error("ring id " + std::to_string(a.in_situ) + " out of range");
        print_tolerance(check_noise_tolerance_in_situ(g, rings[static_cast<size_t>(a.in_situ)]));
    }
    if (a.demo >= 0) {
        did_something = true;
        if (static_cast<size_t>(a.demo) >= rings.size())
            throw std::runtime_error("ring id " + std::to_string(a.demo) + " out of range");
        GeneratorReport rep =
            generator_demo(g, rings[static_cast<size_t>(a.demo)], a.demo_steps, a.demo_phase);
        std::string ndjson;
        for (size_t t = 0; t < rep.snapshots.size(); ++t) {
            nlohmann::json j{{"step", t}, {"states", rep.snapshots[t]}};
            ndjson += j.dump();
            ndjson += '\n';
        }
        nlohmann::json tail{{"escaped", rep.escaped}, {"first_escape_step", rep.first_escape_step}};
        ndjson += tail.dump();
        ndjson += '\n';
        em.emit(ndjson, a.demo_out);
    }
    if (a.capacity) {
        did_something = true;
        CapacityParams params;
        params.units_per_strand = a.units_per_strand;
        params.strands = a.strands;
        params.unit_size_nm = a.unit_size_nm;
        params.track_width_nm = a.track_width_nm;
        em.emit(capacity_csv(memory_capacity(census_rings(rings, mode), params)), "");
    }
    if (!did_something) em.emit(census_csv(census_rings(rings, mode)), "");
}

void cmd_fit(const std::string& csv_path) {
    Csv csv = parse_csv(read_file(csv_path));
    std::vector<std::pair<double, double>> points;

    int rho_col = csv.col("rho");
    int meanp_col = csv.col("mean_p");
    int p_col = csv.col("p");
    int term_col = csv.col("termination");
    if (rho_col >= 0 && meanp_col >= 0) {
        for (const auto& row : csv.rows) {
            if (row[static_cast<size_t>(rho_col)] == "all") continue;
            points.emplace_back(parse_double(row[static_cast<size_t>(rho_col)], "rho"),
                                parse_double(row[static_cast<size_t>(meanp_col)], "mean_p"));
        }
    } else if (rho_col >= 0 && p_col >= 0) {
        // raw rows: average p per rho, skipping unfinished trials
        std::map<std::string, std::pair<double, uint64_t>> by_rho;
        for (const auto& row : csv.rows) {
            if (term_col >= 0 && row[static_cast<size_t>(term_col)] == "budget-exhausted") continue;
            auto& [sum, n] = by_rho[row[static_cast<size_t>(rho_col)]];
            sum += parse_double(row[static_cast<size_t>(p_col)], "p");
            ++n;
        }
        for (const auto& [rho, acc] : by_rho)
            if (acc.second)
                points.emplace_back(parse_double(rho, "rho"),
                                    acc.first / static_cast<double>(acc.second));
    } else if (csv.header.size() >= 2) {
        for (const auto& row : csv.rows)
            points.emplace_back(parse_double(row[0], "x"), parse_double(row[1], "y"));
    } else {
        throw std::runtime_error(csv_path + ": no (rho, p) columns to fit");
    }

    FitResult f = fit_power_law(points);
    std::cout << "a,b,rms_log,points\n";
    std::cout << fmt_double(f.a) << ',' << fmt_double(f.b) << ',' << fmt_double(f.rms_log) << ','
              << f.points << "\n";
}

void cmd_replay(const std::string& manifest_path) {
    RunManifest m = load_manifest(manifest_path);
    if (m.argv.empty()) throw std::runtime_error(manifest_path + ": manifest has no argv");

    std::vector<std::pair<std::string, std::string>> before;
    for (const auto& out : m.outputs) {
        std::string bytes;
        try {
            bytes = read_file(out);
        } catch (const std::exception&) {
            // absent: replay will create it
        }
        before.emplace_back(out, bytes);
    }

    int code = run_cli(m.argv);
    if (code != 0) throw std::runtime_error("replayed command exited with code " + std::to_string(code));

    bool all_ok = true;
    for (const auto& [out, old_bytes] : before) {
        std::string now = read_file(out);
        if (old_bytes.empty()) {
            std::cout << "regenerated," << out << "\n";
        } else if (now == old_bytes) {
            std::cout << "reproduced," << out << "\n";
        } else {
            std::cout << "MISMATCH," << out << "\n";
            all_ok = false;
        }
    }
    if (!all_ok) throw std::runtime_error("replay did not reproduce all outputs byte-identically");
}

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"excitable-automaton simulator for molecular graphs", "factin"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    IngestArgs ingest;
    auto* sub_ingest = app.add_subcommand("ingest", "structure file -> canonical graph");
    sub_ingest->add_option("file", ingest.file, "PDB-style structure file")->required();
    sub_ingest->add_option("-o,--out", ingest.out, "output graph file (stdout otherwise)");
    sub_ingest->add_option("--bond-mode", ingest.bond_mode, "records | infer | both");
    sub_ingest->add_option("--tolerance", ingest.tolerance, "bond inference slack in Angstrom");
    sub_ingest->add_flag("--strip-h", ingest.strip_h, "drop hydrogens before bonding");

    std::string stats_graph, stats_out;
    bool stats_serial = false;
    int stats_threads = 0;
    auto* sub_stats = app.add_subcommand("stats", "graph statistics as key,value CSV");
    sub_stats->add_option("graph,--graph", stats_graph, "graph or structure file")->required();
    sub_stats->add_option("-o,--out", stats_out, "output file (stdout otherwise)");
    sub_stats->add_flag("--serial", stats_serial, "single-threaded distance pass");
    sub_stats->add_option("--threads", stats_threads, "worker thread cap");

    RunArgs run;
    auto* sub_run = app.add_subcommand("run", "one trajectory to its attractor");
    sub_run->add_option("--graph", run.graph, "graph or structure file")->required();
    sub_run->add_option("--rule", run.rule, "a0 | a1 | lo:hi | lo:inf");
    sub_run->add_option("--init", run.init, "single:<id> | plus:<rho> | plusminus:<rho> | ring:<id>:<phase>")
        ->required();
    sub_run->add_option("--seed", run.seed, "sampling seed");
    sub_run->add_option("--max-steps", run.max_steps, "step budget (default 100*N)");
    sub_run->add_option("--restim", run.restim, "at:<step>:<init> | on-cycle:<init> (repeatable)");
    sub_run->add_option("--dump-states", run.dump_states, "NDJSON per-step states file, - for stdout");
    sub_run->add_option("--series", run.series, "excitation series CSV file");
    sub_run->add_option("-o,--out", run.out, "result CSV file (stdout otherwise)");
    sub_run->add_option("--threads", run.threads, "worker thread cap");

    SweepArgs sweep;
    auto* sub_sweep = app.add_subcommand("sweep", "seeded ratio sweep with per-rho statistics");
    sub_sweep->add_option("--graph", sweep.graph, "graph or structure file")->required();
    sub_sweep->add_option("--rule", sweep.rule, "a0 | a1 | lo:hi");
    sub_sweep->add_option("--scenario", sweep.scenario, "plus | plus-minus");
    sub_sweep->add_option("--rho", sweep.rho, "a:b:step range or comma list")->required();
    sub_sweep->add_option("--trials", sweep.trials, "trials per rho");
    sub_sweep->add_option("--seed", sweep.seed, "base seed");
    sub_sweep->add_option("--max-steps", sweep.max_steps, "per-trial step budget");
    sub_sweep->add_option("-o,--out", sweep.out, "raw rows CSV file (stdout otherwise)");
    sub_sweep->add_option("--summary-out", sweep.summary_out, "per-rho summary CSV file");
    sub_sweep->add_option("--threads", sweep.threads, "worker thread cap");

    SingleSweepArgs ssweep;
    auto* sub_ssweep = app.add_subcommand("single-sweep", "one run per stimulated node");
    sub_ssweep->add_option("--graph", ssweep.graph, "graph or structure file")->required();
    sub_ssweep->add_option("--rule", ssweep.rule, "a0 | a1 | lo:hi");
    sub_ssweep->add_option("--band", ssweep.band, "short-transient band lo:hi");
    sub_ssweep->add_option("--sample", ssweep.sample_count, "stimulate only this many sampled nodes");
    sub_ssweep->add_option("--sample-seed", ssweep.sample_seed, "sampling seed");
    sub_ssweep->add_option("--max-steps", ssweep.max_steps, "per-run step budget");
    sub_ssweep->add_option("-o,--out", ssweep.out, "per-node rows CSV file");
    sub_ssweep->add_option("--threads", ssweep.threads, "worker thread cap");

    RingsArgs rings;
    auto* sub_rings = app.add_subcommand("rings", "ring perception, memory mechanics, capacity");
    sub_rings->add_option("--graph", rings.graph, "graph or structure file");
    sub_rings->add_flag("--census", rings.census, "per-residue ring counts CSV");
    sub_rings->add_flag("--list", rings.list, "list perceived rings");
    sub_rings->add_option("--count-mode", rings.count_mode, "per-ring | paper");
    sub_rings->add_option("--tolerance-check", rings.tolerance_check,
                          "exhaustive wave-perturbation report for an isolated n-ring");
    sub_rings->add_option("--in-situ", rings.in_situ, "same report for ring <id> inside the graph");
    sub_rings->add_option("--demo", rings.demo, "write a bit on ring <id> and stream states");
    sub_rings->add_option("--steps", rings.demo_steps, "demo step count");
    sub_rings->add_option("--phase", rings.demo_phase, "demo write phase");
    sub_rings->add_option("--demo-out", rings.demo_out, "demo NDJSON file (stdout otherwise)");
    sub_rings->add_flag("--capacity", rings.capacity, "memory capacity CSV");
    sub_rings->add_option("--units-per-strand", rings.units_per_strand, "units per strand");
    sub_rings->add_option("--strands", rings.strands, "strands per filament");
    sub_rings->add_option("--unit-size-nm", rings.unit_size_nm, "unit diameter in nm");
    sub_rings->add_option("--track-width-nm", rings.track_width_nm, "areal track width in nm");
    sub_rings->add_option("--threads", rings.threads, "worker thread cap");

    std::string fit_csv;
    auto* sub_fit = app.add_subcommand("fit", "power-law fit p = a * rho^b from a sweep CSV");
    sub_fit->add_option("csv", fit_csv, "rows or summary CSV")->required();

    std::string replay_manifest;
    auto* sub_replay = app.add_subcommand("replay", "re-run a manifest and verify outputs");
    sub_replay->add_option("manifest", replay_manifest, "manifest JSON file")->required();

    // CLI11 wants argv-style input: program name first, reversed remainder.
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    Emitter em;
    em.argv = args;

    try {
        if (sub_ingest->parsed()) {
            em.command = "ingest";
            em.graph_path = ingest.file;
            cmd_ingest(ingest, em);
        } else if (sub_stats->parsed()) {
            apply_threads(stats_threads);
            em.command = "stats";
            em.graph_path = stats_graph;
            cmd_stats(stats_graph, stats_serial, stats_out, em);
        } else if (sub_run->parsed()) {
            apply_threads(run.threads);
            em.command = "run";
            em.graph_path = run.graph;
            cmd_run(run, em);
        } else if (sub_sweep->parsed()) {
            apply_threads(sweep.threads);
            em.command = "sweep";
            em.graph_path = sweep.graph;
            cmd_sweep(sweep, em);
        } else if (sub_ssweep->parsed()) {
            apply_threads(ssweep.threads);
            em.command = "single-sweep";
            em.graph_path = ssweep.graph;
            cmd_single_sweep(ssweep, em);
        } else if (sub_rings->parsed()) {
            apply_threads(rings.threads);
            em.command = "rings";
            em.graph_path = rings.graph;
            cmd_rings(rings, em);
        } else if (sub_fit->parsed()) {
            cmd_fit(fit_csv);
        } else if (sub_replay->parsed()) {
            cmd_replay(replay_manifest);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run_cli(args);
}
