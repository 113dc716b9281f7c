#include "cmarket/harness.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <string>
#include <thread>

namespace cmarket {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

template <class Fn>
auto with_run_context(std::size_t run_index, Fn&& fn) {
    try {
        return fn();
    } catch (const ConfigError&) {
        throw;
    } catch (const RunError&) {
        throw;
    } catch (const std::exception& e) {
        throw RunError(run_index, e.what());
    }
}

void check_strictly_increasing(const std::vector<double>& values, const char* what) {
    if (values.empty()) throw ConfigError(std::string(what) + " list is empty");
    for (std::size_t i = 1; i < values.size(); ++i)
        if (!(values[i] > values[i - 1])) throw ConfigError(std::string(what) + " values must be strictly increasing");
}

RunMetrics measure(const RunResult& r) {
    return {r.run_index, r.run_seed, r.graph_edges,
            compute_metrics(market_shares(r.final_state), r.qualities)};
}

/// Aggregates reports (all from one setting) into a cell.
SweepCell aggregate(double gamma, double sigma, std::span<const MetricsReport* const> reports) {
    SweepCell cell;
    cell.gamma = gamma;
    cell.sigma = sigma;
    cell.replications = reports.size();
    std::vector<double> inequality, quartile, slope, pooled_q, pooled_d;
    for (const auto* r : reports) {
        inequality.push_back(r->inequality);
        quartile.push_back(r->quartile_diff.value_or(nan));
        slope.push_back(r->fit ? r->fit->slope : nan);
        pooled_q.insert(pooled_q.end(), r->qualities.begin(), r->qualities.end());
        pooled_d.insert(pooled_d.end(), r->shares.begin(), r->shares.end());
    }
    cell.inequality = moments(inequality);
    cell.quartile_diff = moments(quartile);
    cell.slope = moments(slope);
    try {
        cell.pooled_fit = share_quality_slope(pooled_d, pooled_q);
    } catch (const std::exception&) {
        cell.pooled_fit = {nan, nan};
    }
    return cell;
}

RunOptions run_options(const ExecutionOptions& exec) {
    RunOptions options;
    options.preferences = exec.preferences;
    options.record_trajectory = exec.record_trajectory;
    return options;
}

} // namespace

RunError::RunError(std::size_t run_index, const std::string& what)
    : std::runtime_error("run " + std::to_string(run_index) + ": " + what), run_index_{run_index} {}

Moments moments(std::span<const double> values) {
    if (values.empty()) return {nan, nan};
    double sum = 0.0;
    for (double v : values) sum += v;
    const double mean = sum / static_cast<double>(values.size());
    if (values.size() == 1) return {mean, std::isnan(mean) ? nan : 0.0};
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return {mean, std::sqrt(ss / static_cast<double>(values.size() - 1))};
}

void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& body) {
    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                body(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const std::size_t threads = std::min<std::size_t>(std::max(1u, workers), std::max<std::size_t>(count, 1));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

ReplicatedResult run_replicated(const ModelConfig& config, std::size_t replications, const ExecutionOptions& exec) {
    config.validate();
    if (replications < 1) throw ConfigError("replications must be at least 1");
    ReplicatedResult result{config, {}, std::vector<RunMetrics>(replications), {}};
    if (exec.keep_run_results) result.results.resize(replications);
    const RunOptions options = run_options(exec);
    parallel_for(replications, exec.workers, [&](std::size_t r) {
        with_run_context(r, [&] {
            RunResult outcome = run(config, r, options);
            result.runs[r] = measure(outcome);
            if (exec.keep_run_results) result.results[r] = std::move(outcome);
        });
    });
    std::vector<const MetricsReport*> reports;
    for (const auto& r : result.runs) reports.push_back(&r.report);
    result.cell = aggregate(config.social_pressure, config.intra_item_deviation, reports);
    return result;
}

void SweepSpec::validate() const {
    check_strictly_increasing(gamma_values, "gamma");
    check_strictly_increasing(sigma_values, "sigma");
    for (double g : gamma_values)
        if (!(g >= 0.0 && g <= 1.0)) throw ConfigError("sweep gamma values must lie in [0, 1]");
    for (double s : sigma_values)
        if (!(s > 0.0) || !std::isfinite(s)) throw ConfigError("sweep sigma values must be positive");
    if (replications < 1) throw ConfigError("replications must be at least 1");
    base_config.validate();
}

std::vector<SweepCell> run_sweep(const SweepSpec& spec, const ExecutionOptions& exec) {
    spec.validate();
    const std::size_t n_gamma = spec.gamma_values.size();
    const std::size_t n_cells = n_gamma * spec.sigma_values.size();
    const std::size_t reps = spec.replications;
    auto cell_config = [&](std::size_t cell) {
        ModelConfig c = spec.base_config;
        c.intra_item_deviation = spec.sigma_values[cell / n_gamma];
        c.social_pressure = spec.gamma_values[cell % n_gamma];
        return c;
    };

    // Results keyed by (cell, run_index); filled in any order.
    std::vector<MetricsReport> reports(n_cells * reps);
    const RunOptions options = run_options(exec);
    parallel_for(n_cells * reps, exec.workers, [&](std::size_t job) {
        const std::size_t r = job % reps;
        reports[job] = with_run_context(r, [&] { return measure(run(cell_config(job / reps), r, options)).report; });
    });

    std::vector<SweepCell> cells;
    cells.reserve(n_cells);
    for (std::size_t cell = 0; cell < n_cells; ++cell) {
        std::vector<const MetricsReport*> group;
        for (std::size_t r = 0; r < reps; ++r) group.push_back(&reports[cell * reps + r]);
        const ModelConfig c = cell_config(cell);
        cells.push_back(aggregate(c.social_pressure, c.intra_item_deviation, group));
    }
    return cells;
}

PairedExperiment run_paired_experiment(const ModelConfig& config, std::span<const double> gammas,
                                       std::size_t replications, const ExecutionOptions& exec) {
    if (gammas.empty()) throw ConfigError("paired experiment needs at least one gamma");
    for (double g : gammas) {
        ModelConfig c = config;
        c.social_pressure = g;
        c.validate();
    }
    if (replications < 1) throw ConfigError("replications must be at least 1");

    PairedExperiment experiment{config, {gammas.begin(), gammas.end()}, std::vector<PairedRun>(replications), {}};
    const RunOptions options = run_options(exec);
    parallel_for(replications, exec.workers, [&](std::size_t r) {
        experiment.runs[r] = with_run_context(r, [&] {
            const auto results = run_paired(config, gammas, r, options);
            PairedRun paired{r, results.front().run_seed, results.front().qualities, {}};
            for (const auto& result : results) paired.reports.push_back(measure(result).report);
            return paired;
        });
    });

    for (std::size_t g = 0; g < gammas.size(); ++g) {
        std::vector<const MetricsReport*> group;
        for (const auto& run : experiment.runs) group.push_back(&run.reports[g]);
        experiment.cells.push_back(aggregate(gammas[g], config.intra_item_deviation, group));
    }
    return experiment;
}

} // namespace cmarket
