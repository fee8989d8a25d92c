#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "factin/stimulate.hpp"
#include "factin/trajectory.hpp"

namespace factin {

struct SweepConfig {
    ExcitationRule rule;
    Scenario scenario = Scenario::Plus;
    std::vector<double> rho_list; // e.g. 0.1 .. 0.9
    uint32_t trials_per_rho = 10;
    uint64_t base_seed = 0;
    uint64_t max_steps = 0; // 0 -> default per graph
};

struct SweepRow {
    double rho = 0.0;
    uint32_t trial = 0;
    uint64_t seed = 0;
    uint64_t p = 0;
    uint64_t c = 0;
    uint64_t e = 0;
    Termination termination = Termination::BudgetExhausted;
};

// Sample standard deviation (n-1); 0 for a single value.
struct SweepAggregate {
    double rho = 0.0;
    uint32_t trials = 0; // attractor-reaching trials aggregated
    double mean_p = 0, mean_c = 0, mean_e = 0;
    double sd_p = 0, sd_c = 0, sd_e = 0;
};

struct SweepSummary {
    std::vector<SweepRow> rows;          // sorted by (rho, trial)
    std::vector<SweepAggregate> per_rho; // one per rho_list entry
    SweepAggregate grand;                // over all attractor-reaching trials
};

// Trials run in parallel off a deterministic task list; per-trial seeds come
// from derive_seed(base_seed, rho_index, trial), so the output is identical
// for any worker count. Budget-exhausted trials keep their row but are left
// out of the aggregates.
SweepSummary sweep_ratio(const MolecularGraph& g, const SweepConfig& cfg);

std::string sweep_rows_csv(const SweepSummary& s, const ExcitationRule& rule, Scenario scenario);
std::string sweep_summary_csv(const SweepSummary& s);
// Table layout: one row per rho with p, c, e and their deviations, then the
// grand means.
std::string sweep_table(const SweepSummary& s);

struct SingleNodeSweep {
    std::vector<SweepRow> rows; // one per stimulated node; rho column holds the node id
    double mean_p = 0;
    double median_p = 0;
    uint64_t min_p = 0;
    uint64_t max_p = 0;
    std::map<uint64_t, uint32_t> histogram_p;
    uint64_t band_lo = 2, band_hi = 15;
    uint32_t band_count = 0; // nodes with p in [band_lo, band_hi]
};

struct SingleNodeOptions {
    uint64_t max_steps = 0;
    uint64_t band_lo = 2, band_hi = 15;
    // When set, stimulate only `count` nodes sampled without replacement.
    std::optional<std::pair<uint32_t, uint64_t>> sample; // (count, seed)
};

// One deterministic run per node (no RNG unless sampling).
SingleNodeSweep sweep_single_node(const MolecularGraph& g, const ExcitationRule& rule,
                                  const SingleNodeOptions& opts = {});

std::string single_node_rows_csv(const SingleNodeSweep& s, const ExcitationRule& rule);
std::string single_node_summary(const SingleNodeSweep& s);

struct FitResult {
    double a = 0.0;       // coefficient
    double b = 0.0;       // exponent
    double rms_log = 0.0; // RMS residual in log-log space
    size_t points = 0;
};

// Least-squares line on (ln rho, ln p); requires >= 3 strictly positive
// points. Fits p = a * rho^b.
FitResult fit_power_law(const std::vector<std::pair<double, double>>& points);

} // namespace factin
