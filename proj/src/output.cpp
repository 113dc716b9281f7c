#include "cmarket/output.hpp"

#include "cmarket/csv.hpp"

#include <limits>
#include <ostream>

namespace cmarket {

namespace {

std::string num(double v) { return format_number(v); }
std::string num(std::size_t v) { return format_number(static_cast<std::uint64_t>(v)); }

std::string resampling(const ModelConfig& config) {
    switch (config.topology.kind) {
    case TopologyKind::RandomUndirected:
    case TopologyKind::RandomDirected: return "graph+preferences";
    default: return "preferences";
    }
}

} // namespace

void write_summary_header(std::ostream& out) {
    out << "gamma,sigma,topology,k,N,M,T,R,I_mean,I_std,Q_mean,Q_std,slope_mean,slope_std,"
           "slope_pooled,intercept_pooled,seed,topology_model,slope_modes,resampling,preferences\n";
}

void write_summary_row(std::ostream& out, const ModelConfig& config, const SweepCell& cell,
                       const OutputContext& context) {
    out << num(cell.gamma) << ',' << num(cell.sigma) << ',' << to_string(config.topology.kind) << ','
        << num(config.topology.coordination) << ',' << num(config.n_agents) << ',' << num(config.n_items) << ','
        << num(config.horizon) << ',' << num(cell.replications) << ',' << num(cell.inequality.mean) << ','
        << num(cell.inequality.std) << ',' << num(cell.quartile_diff.mean) << ',' << num(cell.quartile_diff.std)
        << ',' << num(cell.slope.mean) << ',' << num(cell.slope.std) << ',' << num(cell.pooled_fit.slope) << ','
        << num(cell.pooled_fit.intercept) << ',' << config.master_seed << ',' << config.topology.model_description()
        << ",per-run-mean+pooled," << resampling(config) << ',' << context.preferences_source << '\n';
}

void write_grid_csv(std::ostream& out, const ModelConfig& base, std::span<const SweepCell> cells,
                    const OutputContext& context) {
    write_summary_header(out);
    for (const auto& cell : cells) {
        ModelConfig c = base;
        c.social_pressure = cell.gamma;
        c.intra_item_deviation = cell.sigma;
        write_summary_row(out, c, cell, context);
    }
}

void write_items_csv(std::ostream& out, const ReplicatedResult& result) {
    out << "run_index,item,quality,share\n";
    for (const auto& run : result.runs)
        for (std::size_t a = 0; a < run.report.shares.size(); ++a)
            out << run.run_index << ',' << a << ',' << num(run.report.qualities[a]) << ','
                << num(run.report.shares[a]) << '\n';
}

void write_runs_csv(std::ostream& out, const ModelConfig& config, std::span<const RunMetrics> runs) {
    out << "run_index,run_seed,gamma,sigma,topology,k,N,M,T,seed,edges,I,Q,slope,intercept\n";
    constexpr double missing = std::numeric_limits<double>::quiet_NaN();
    for (const auto& run : runs) {
        const auto& r = run.report;
        out << run.run_index << ',' << run.run_seed << ',' << num(config.social_pressure) << ','
            << num(config.intra_item_deviation) << ',' << to_string(config.topology.kind) << ','
            << num(config.topology.coordination) << ',' << num(config.n_agents) << ',' << num(config.n_items) << ','
            << num(config.horizon) << ',' << config.master_seed << ',' << num(run.graph_edges) << ','
            << num(r.inequality) << ',' << num(r.quartile_diff.value_or(missing)) << ','
            << num(r.fit ? r.fit->slope : missing) << ',' << num(r.fit ? r.fit->intercept : missing) << '\n';
    }
}

void write_paired_csv(std::ostream& out, const PairedExperiment& experiment) {
    out << "run_index,item,quality";
    for (double g : experiment.gammas) out << ",share@" << num(g);
    out << '\n';
    for (const auto& run : experiment.runs) {
        for (std::size_t a = 0; a < run.qualities.size(); ++a) {
            out << run.run_index << ',' << a << ',' << num(run.qualities[a]);
            for (const auto& report : run.reports) out << ',' << num(report.shares[a]);
            out << '\n';
        }
    }
}

void write_consumption_csv(std::ostream& out, std::span<const RunResult> results) {
    out << "run_index,step,agent,item\n";
    for (const auto& r : results) {
        const std::size_t n = r.config.n_agents;
        for (std::size_t k = 0; k < r.choices.size(); ++k)
            out << r.run_index << ',' << k / n << ',' << k % n << ',' << r.choices[k] << '\n';
    }
}

void write_trajectory_csv(std::ostream& out, std::span<const RunResult> results) {
    out << "run_index,step,item,share\n";
    for (const auto& r : results) {
        const std::size_t m = r.config.n_items;
        for (std::size_t k = 0; k < r.trajectory.size(); ++k)
            out << r.run_index << ',' << k / m + 1 << ',' << k % m << ',' << num(r.trajectory[k]) << '\n';
    }
}

} // namespace cmarket
