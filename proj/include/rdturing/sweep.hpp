#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rdturing/analysis.hpp"
#include "rdturing/config.hpp"
#include "rdturing/linstab.hpp"
#include "rdturing/theorems.hpp"

namespace rdt {

/// A two-axis parameter grid over a base configuration.
struct SweepSpec {
    RunConfig base;       // fixed parameters, domain S and k, analysis thresholds, base seed
    SweepAxis axis1;      // outer axis
    SweepAxis axis2;      // inner axis
    bool simulate = true;
    int sim_N = 100;
    double sim_t_end = 300.0;
    double dt_max = 0.001;

    static SweepSpec from_config(const RunConfig& c, bool full_scale = false);
};

void validate(const SweepSpec& spec);

struct SweepRow {
    std::int64_t idx = 0;
    double param1 = 0.0;
    double param2 = 0.0;
    std::optional<TuringVerdict> thm;
    std::optional<ScanResult> oracle;
    std::optional<AsymptoticClass> sim;
    std::optional<int> period_count;
    std::string error;
    double wall_seconds = 0.0;
};

/// Evaluates one grid point. Never throws: failures land in `error`.
SweepRow run_sweep_point(const SweepSpec& spec, std::int64_t idx);

/// Runs every point on `workers` threads (0 = hardware concurrency). Rows are
/// handed to `on_row` in index order from the calling thread.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, unsigned workers = 0,
                                const std::function<void(const SweepRow&)>& on_row = {});

std::string sweep_csv_header();
std::string sweep_csv_line(const SweepRow& row);
std::string sweep_csv(const std::vector<SweepRow>& rows);

/// Counts of rows per (theorem outcome, simulation class) pair. A fired case
/// that is only necessary (f with witnesses) counts as Instability exactly when
/// the spectral scan confirms one. Rows without a verdict use "Error"; rows
/// without a simulation use "NotSimulated".
std::string region_outcome(const SweepRow& row);

using RegionSummary = std::map<std::pair<std::string, std::string>, int>;

RegionSummary region_summary(const std::vector<SweepRow>& rows);

}  // namespace rdt
