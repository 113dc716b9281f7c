#pragma once

#include "cmarket/harness.hpp"

#include <iosfwd>
#include <span>
#include <string>

namespace cmarket {

/// Metadata that is not part of ModelConfig but is echoed on every summary row.
struct OutputContext {
    /// "sampled" or "file:<path>"
    std::string preferences_source = "sampled";
};

/** summary.csv / grid.csv:
 *
 * gamma,sigma,topology,k,N,M,T,R,I_mean,I_std,Q_mean,Q_std,slope_mean,slope_std,
 * slope_pooled,intercept_pooled,seed,topology_model,slope_modes,resampling,preferences
 */
void write_summary_header(std::ostream& out);
void write_summary_row(std::ostream& out, const ModelConfig& config, const SweepCell& cell,
                       const OutputContext& context = {});

/// grid.csv: header plus one summary row per cell, with each cell's gamma and sigma substituted into base.
void write_grid_csv(std::ostream& out, const ModelConfig& base, std::span<const SweepCell> cells,
                    const OutputContext& context = {});

/// items.csv: run_index,item,quality,share
void write_items_csv(std::ostream& out, const ReplicatedResult& result);

/// runs.csv: per-run metrics and everything needed to re-run it alone.
/// run_index,run_seed,gamma,sigma,topology,k,N,M,T,seed,edges,I,Q,slope,intercept
void write_runs_csv(std::ostream& out, const ModelConfig& config, std::span<const RunMetrics> runs);

/// paired.csv: run_index,item,quality,share@<gamma_1>,...,share@<gamma_n>
void write_paired_csv(std::ostream& out, const PairedExperiment& experiment);

/// consumption.csv: run_index,step,agent,item (requires kept run results)
void write_consumption_csv(std::ostream& out, std::span<const RunResult> results);

/// trajectory.csv: run_index,step,item,share (requires recorded trajectories)
void write_trajectory_csv(std::ostream& out, std::span<const RunResult> results);

} // namespace cmarket
