#pragma once

#include "cmarket/engine.hpp"
#include "cmarket/metrics.hpp"
#include "cmarket/model.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

namespace cmarket {

/// A single run failed for a reason other than an invalid configuration.
class RunError : public std::runtime_error {
public:
    RunError(std::size_t run_index, const std::string& what);
    std::size_t run_index() const { return run_index_; }

private:
    std::size_t run_index_;
};

/// Mean and sample standard deviation (n - 1 denominator; 0 for a single value).
/// NaN inputs propagate to both fields.
struct Moments {
    double mean = 0.0;
    double std = 0.0;
};

Moments moments(std::span<const double> values);

struct ExecutionOptions {
    /// Worker threads; results do not depend on this.
    unsigned workers = 1;
    /// Fixed likings shared by every run (otherwise sampled per run).
    std::shared_ptr<const PreferenceMatrix> preferences;
    /// run_replicated only: keep every RunResult (consumption order, trajectories).
    bool keep_run_results = false;
    bool record_trajectory = false;
};

/// Aggregates over R runs of one (gamma, sigma) setting. Quartile and slope
/// fields are NaN when undefined for the configuration.
struct SweepCell {
    double gamma = 0.0;
    double sigma = 0.0;
    std::size_t replications = 0;
    Moments inequality;
    Moments quartile_diff;
    Moments slope; ///< per-run fits, averaged
    LinearFit pooled_fit{}; ///< one fit over every (quality, share) point of every run
};

struct RunMetrics {
    std::size_t run_index = 0;
    std::uint64_t run_seed = 0;
    std::size_t graph_edges = 0;
    MetricsReport report;
};

struct ReplicatedResult {
    ModelConfig config;
    SweepCell cell;
    std::vector<RunMetrics> runs; ///< ordered by run_index
    std::vector<RunResult> results; ///< filled only with ExecutionOptions::keep_run_results
};

/// Runs run_index 0..R-1 and aggregates their metrics.
ReplicatedResult run_replicated(const ModelConfig& config, std::size_t replications,
                                const ExecutionOptions& exec = {});

struct SweepSpec {
    std::vector<double> gamma_values;
    std::vector<double> sigma_values;
    std::size_t replications = 100;
    ModelConfig base_config;

    /// Throws ConfigError: lists non-empty and strictly increasing, gamma in
    /// [0,1], sigma positive, R >= 1, base config valid.
    void validate() const;
};

/// One cell per (sigma, gamma), sigma-major then gamma ascending.
std::vector<SweepCell> run_sweep(const SweepSpec& spec, const ExecutionOptions& exec = {});

struct PairedRun {
    std::size_t run_index = 0;
    std::uint64_t run_seed = 0;
    QualityVector qualities;
    std::vector<MetricsReport> reports; ///< one per gamma, same order as the experiment's gammas
};

struct PairedExperiment {
    ModelConfig config;
    std::vector<double> gammas;
    std::vector<PairedRun> runs;
    std::vector<SweepCell> cells; ///< one per gamma
};

/// R paired runs; within a run every gamma shares topology and likings.
PairedExperiment run_paired_experiment(const ModelConfig& config, std::span<const double> gammas,
                                       std::size_t replications, const ExecutionOptions& exec = {});

/// Calls body(i) for i in [0, count) on up to `workers` threads. The first
/// exception by index is rethrown after all workers finish.
void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& body);

} // namespace cmarket
