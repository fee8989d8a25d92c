#include "factin/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace factin {

namespace {

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

struct Moments {
    uint64_t n = 0;
    double sum = 0, sq = 0;
    void add(double v) {
        ++n;
        sum += v;
        sq += v * v;
    }
    double mean() const { return n ? sum / static_cast<double>(n) : 0.0; }
    double sd() const {
        if (n < 2) return 0.0;
        double m = mean();
        double var = (sq - static_cast<double>(n) * m * m) / static_cast<double>(n - 1);
        return std::sqrt(std::max(0.0, var));
    }
};

SweepAggregate aggregate(double rho, const std::vector<SweepRow>& rows,
                         size_t begin, size_t end) {
    Moments p, c, e;
    for (size_t i = begin; i < end; ++i) {
        const SweepRow& r = rows[i];
        if (r.termination == Termination::BudgetExhausted) continue;
        p.add(static_cast<double>(r.p));
        c.add(static_cast<double>(r.c));
        e.add(static_cast<double>(r.e));
    }
    SweepAggregate a;
    a.rho = rho;
    a.trials = static_cast<uint32_t>(p.n);
    a.mean_p = p.mean();
    a.sd_p = p.sd();
    a.mean_c = c.mean();
    a.sd_c = c.sd();
    a.mean_e = e.mean();
    a.sd_e = e.sd();
    return a;
}

} // namespace

SweepSummary sweep_ratio(const MolecularGraph& g, const SweepConfig& cfg) {
    if (cfg.rho_list.empty()) throw std::invalid_argument("empty rho list");
    if (cfg.trials_per_rho == 0) throw std::invalid_argument("trials_per_rho must be positive");
    if (cfg.scenario == Scenario::SingleNode)
        throw std::invalid_argument("ratio sweep needs a ratio scenario");
    for (double rho : cfg.rho_list) {
        if (!(rho > 0.0) || rho > 1.0)
            throw std::invalid_argument("rho " + fmt_double(rho) + " outside (0,1]");
        if (static_cast<uint64_t>(rho * g.node_count()) == 0)
            throw std::invalid_argument("rho " + fmt_double(rho) + " stimulates zero nodes");
    }

    SweepSummary out;
    size_t tasks = cfg.rho_list.size() * cfg.trials_per_rho;
    out.rows.resize(tasks);

    TrajectoryOptions topts;
    topts.max_steps = cfg.max_steps;
    topts.record_series = false;

    // Flat deterministic task list; row i is written by exactly one task, so
    // the result is identical for any thread count.
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (size_t i = 0; i < tasks; ++i) {
        size_t rho_idx = i / cfg.trials_per_rho;
        uint32_t trial = static_cast<uint32_t>(i % cfg.trials_per_rho);
        double rho = cfg.rho_list[rho_idx];
        uint64_t seed = derive_seed(cfg.base_seed, rho_idx, trial);
        Rng rng(seed);
        StimAction action{cfg.scenario, 0, rho};
        Configuration cfg0 = stimulate(Configuration(g.node_count()), action, rng);
        TrajectoryResult r = run_to_attractor(g, cfg.rule, cfg0, topts);
        out.rows[i] = SweepRow{rho, trial, seed, r.transient_p, r.cycle_c,
                               r.excitation_e, r.termination};
    }

    for (size_t rho_idx = 0; rho_idx < cfg.rho_list.size(); ++rho_idx) {
        size_t begin = rho_idx * cfg.trials_per_rho;
        out.per_rho.push_back(
            aggregate(cfg.rho_list[rho_idx], out.rows, begin, begin + cfg.trials_per_rho));
    }
    out.grand = aggregate(0.0, out.rows, 0, out.rows.size());
    return out;
}

std::string sweep_rows_csv(const SweepSummary& s, const ExcitationRule& rule, Scenario scenario) {
    std::ostringstream out;
    out << "rule,scenario,rho,trial,seed,p,c,e,termination\n";
    for (const SweepRow& r : s.rows)
        out << rule.name() << ',' << to_string(scenario) << ',' << fmt_double(r.rho) << ','
            << r.trial << ',' << r.seed << ',' << r.p << ',' << r.c << ',' << r.e << ','
            << to_string(r.termination) << "\n";
    return out.str();
}

std::string sweep_summary_csv(const SweepSummary& s) {
    std::ostringstream out;
    out << "rho,trials,mean_p,sd_p,mean_c,sd_c,mean_e,sd_e\n";
    auto row = [&](const char* label, const SweepAggregate& a) {
        out << label << ',' << a.trials << ',' << fmt_double(a.mean_p) << ','
            << fmt_double(a.sd_p) << ',' << fmt_double(a.mean_c) << ',' << fmt_double(a.sd_c)
            << ',' << fmt_double(a.mean_e) << ',' << fmt_double(a.sd_e) << "\n";
    };
    for (const SweepAggregate& a : s.per_rho) row(fmt_double(a.rho).c_str(), a);
    row("all", s.grand);
    return out.str();
}

std::string sweep_table(const SweepSummary& s) {
    std::ostringstream out;
    char line[160];
    std::snprintf(line, sizeof(line), "%6s %10s %8s %8s %6s %10s %8s\n", "rho", "p", "sd(p)",
                  "c", "sd(c)", "e", "sd(e)");
    out << line;
    auto row = [&](const char* label, const SweepAggregate& a) {
        std::snprintf(line, sizeof(line), "%6s %10.1f %8.1f %8.1f %6.1f %10.1f %8.1f\n", label,
                      a.mean_p, a.sd_p, a.mean_c, a.sd_c, a.mean_e, a.sd_e);
        out << line;
    };
    char label[32];
    for (const SweepAggregate& a : s.per_rho) {
        std::snprintf(label, sizeof(label), "%.2f", a.rho);
        row(label, a);
    }
    row("all", s.grand);
    return out.str();
}

SingleNodeSweep sweep_single_node(const MolecularGraph& g, const ExcitationRule& rule,
                                  const SingleNodeOptions& opts) {
    if (g.node_count() == 0) throw std::invalid_argument("empty graph");
    std::vector<uint32_t> nodes;
    if (opts.sample) {
        auto [count, seed] = *opts.sample;
        if (count == 0 || count > g.node_count())
            throw std::invalid_argument("sample count outside [1, node count]");
        Rng rng(seed);
        nodes = sample_without_replacement(g.node_count(), count, rng);
        std::sort(nodes.begin(), nodes.end());
    } else {
        nodes.resize(g.node_count());
        for (uint32_t u = 0; u < g.node_count(); ++u) nodes[u] = u;
    }

    SingleNodeSweep out;
    out.band_lo = opts.band_lo;
    out.band_hi = opts.band_hi;
    out.rows.resize(nodes.size());

    TrajectoryOptions topts;
    topts.max_steps = opts.max_steps;
    topts.record_series = false;

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (size_t i = 0; i < nodes.size(); ++i) {
        Configuration cfg0(g.node_count());
        cfg0.set(nodes[i], NodeState::Excited);
        TrajectoryResult r = run_to_attractor(g, rule, cfg0, topts);
        out.rows[i] = SweepRow{static_cast<double>(nodes[i]), 0, 0, r.transient_p, r.cycle_c,
                               r.excitation_e, r.termination};
    }

    std::vector<uint64_t> ps;
    ps.reserve(out.rows.size());
    for (const SweepRow& r : out.rows) {
        if (r.termination == Termination::BudgetExhausted) continue;
        ps.push_back(r.p);
        ++out.histogram_p[r.p];
        if (r.p >= out.band_lo && r.p <= out.band_hi) ++out.band_count;
    }
    if (!ps.empty()) {
        std::sort(ps.begin(), ps.end());
        out.min_p = ps.front();
        out.max_p = ps.back();
        double sum = 0;
        for (uint64_t p : ps) sum += static_cast<double>(p);
        out.mean_p = sum / static_cast<double>(ps.size());
        size_t n = ps.size();
        out.median_p = n % 2 ? static_cast<double>(ps[n / 2])
                             : (static_cast<double>(ps[n / 2 - 1]) + static_cast<double>(ps[n / 2])) / 2.0;
    }
    return out;
}

std::string single_node_rows_csv(const SingleNodeSweep& s, const ExcitationRule& rule) {
    std::ostringstream out;
    out << "rule,node,p,c,e,termination\n";
    for (const SweepRow& r : s.rows)
        out << rule.name() << ',' << static_cast<uint64_t>(r.rho) << ',' << r.p << ',' << r.c
            << ',' << r.e << ',' << to_string(r.termination) << "\n";
    return out.str();
}

std::string single_node_summary(const SingleNodeSweep& s) {
    std::ostringstream out;
    out << "metric,value\n";
    out << "nodes," << s.rows.size() << "\n";
    out << "mean_p," << fmt_double(s.mean_p) << "\n";
    out << "median_p," << fmt_double(s.median_p) << "\n";
    out << "min_p," << s.min_p << "\n";
    out << "max_p," << s.max_p << "\n";
    out << "band_lo," << s.band_lo << "\n";
    out << "band_hi," << s.band_hi << "\n";
    out << "band_count," << s.band_count << "\n";
    return out.str();
}

FitResult fit_power_law(const std::vector<std::pair<double, double>>& points) {
    std::vector<std::pair<double, double>> logs;
    for (const auto& [x, y] : points)
        if (x > 0.0 && y > 0.0) logs.emplace_back(std::log(x), std::log(y));
    if (logs.size() < 3)
        throw std::invalid_argument("power-law fit needs at least 3 strictly positive points");

    double sx = 0, sy = 0;
    for (const auto& [lx, ly] : logs) {
        sx += lx;
        sy += ly;
    }
    double n = static_cast<double>(logs.size());
    double mx = sx / n, my = sy / n;
    double cov = 0, var = 0;
    for (const auto& [lx, ly] : logs) {
        cov += (lx - mx) * (ly - my);
        var += (lx - mx) * (lx - mx);
    }
    if (var == 0.0) throw std::invalid_argument("power-law fit is degenerate: all x equal");

    FitResult f;
    f.b = cov / var;
    double intercept = my - f.b * mx;
    f.a = std::exp(intercept);
    f.points = logs.size();
    double ss = 0;
    for (const auto& [lx, ly] : logs) {
        double r = ly - (intercept + f.b * lx);
        ss += r * r;
    }
    f.rms_log = std::sqrt(ss / n);
    return f;
}

} // namespace factin
