#include "cmarket/cli.hpp"

#include "cmarket/csv.hpp"
#include "cmarket/harness.hpp"
#include "cmarket/output.hpp"
#include "cmarket/topology.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

namespace cmarket {

namespace fs = std::filesystem;

std::vector<double> parse_grid_values(std::string_view text) {
    std::vector<double> values;
    if (text.find(':') != std::string_view::npos) {
        std::vector<double> parts;
        std::size_t start = 0;
        while (true) {
            const auto colon = text.find(':', start);
            parts.push_back(parse_double(text.substr(start, colon == std::string_view::npos ? colon : colon - start)));
            if (colon == std::string_view::npos) break;
            start = colon + 1;
        }
        if (parts.size() != 3) throw ConfigError("range '" + std::string(text) + "' must be start:stop:step");
        const double first = parts[0], last = parts[1], step = parts[2];
        if (!(step > 0.0)) throw ConfigError("range step must be positive in '" + std::string(text) + "'");
        if (last < first) throw ConfigError("range stop is below start in '" + std::string(text) + "'");
        for (std::size_t i = 0;; ++i) {
            const double v = first + static_cast<double>(i) * step;
            if (v > last + step / 2) break;
            values.push_back(std::round(v * 1e12) / 1e12);
        }
        return values;
    }
    std::size_t start = 0;
    while (true) {
        const auto comma = text.find(',', start);
        values.push_back(parse_double(text.substr(start, comma == std::string_view::npos ? comma : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return values;
}

namespace {

struct Options {
    std::size_t agents = 100;
    std::size_t items = 100;
    std::size_t steps = 20;
    double gamma = 0.0;
    double sigma = 1.0;
    std::string topology = "complete";
    std::size_t k = 0;
    std::uint64_t seed = 0;
    std::size_t runs = 100;
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    std::string out_dir;
    std::string preferences_file;
    bool consumption = false;
    bool trajectory = false;
    // sweep / paired
    std::string gamma_grid = "0:1:0.05";
    std::string sigma_grid = "0.25,0.5,1,2,4";
    std::string gammas = "0,0.3,0.7";
    // export-graph
    std::size_t run_index = 0;
    std::string edge_file = "-";
};

std::string default_out_dir() {
    if (const char* env = std::getenv("CMARKET_OUT_DIR"); env && *env) return env;
    return "results";
}

void add_model_options(CLI::App* cmd, Options& o, bool scalar_gamma_sigma) {
    cmd->add_option("--agents", o.agents, "number of agents N")->capture_default_str();
    cmd->add_option("--items", o.items, "number of items M")->capture_default_str();
    cmd->add_option("--steps", o.steps, "number of steps T (T <= M)")->capture_default_str();
    if (scalar_gamma_sigma) {
        cmd->add_option("--gamma", o.gamma, "social pressure parameter in [0,1]")->capture_default_str();
        cmd->add_option("--sigma", o.sigma, "intra-item liking deviation")->capture_default_str();
    }
    cmd->add_option("--topology", o.topology, "ring, complete, random, random-directed or empty")
        ->capture_default_str();
    cmd->add_option("--k", o.k, "coordination number (ring) or mean/out degree (random)")->capture_default_str();
    cmd->add_option("--seed", o.seed, "master seed")->capture_default_str();
}

void add_run_options(CLI::App* cmd, Options& o) {
    cmd->add_option("--runs", o.runs, "replications R")->capture_default_str();
    cmd->add_option("--threads", o.threads, "worker threads (results do not depend on it)");
    cmd->add_option("--out", o.out_dir, "output directory (default $CMARKET_OUT_DIR or ./results)");
    cmd->add_option("--preferences", o.preferences_file, "headerless N x M liking CSV used for every run");
}

ModelConfig make_config(const Options& o) {
    ModelConfig c;
    c.n_agents = o.agents;
    c.n_items = o.items;
    c.horizon = o.steps;
    c.social_pressure = o.gamma;
    c.intra_item_deviation = o.sigma;
    c.topology = TopologySpec{parse_topology_kind(o.topology), o.k};
    c.master_seed = o.seed;
    return c;
}

/// Reads --preferences, adopting its shape unless --agents / --items were given.
void load_preferences(const Options& o, CLI::App* cmd, ModelConfig& config, ExecutionOptions& exec,
                      OutputContext& context) {
    if (o.preferences_file.empty()) return;
    std::ifstream in(o.preferences_file);
    if (!in) throw ConfigError("cannot read preference file '" + o.preferences_file + "'");
    auto prefs = std::make_shared<const PreferenceMatrix>(read_preferences_csv(in));
    if (cmd->count("--agents") == 0) config.n_agents = prefs->n_agents();
    if (cmd->count("--items") == 0) config.n_items = prefs->n_items();
    if (prefs->n_agents() != config.n_agents || prefs->n_items() != config.n_items)
        throw ConfigError("preference file is " + std::to_string(prefs->n_agents()) + "x" +
                          std::to_string(prefs->n_items()) + " but N=" + std::to_string(config.n_agents) +
                          ", M=" + std::to_string(config.n_items) + " were requested");
    exec.preferences = std::move(prefs);
    context.preferences_source = "file:" + o.preferences_file;
}

fs::path prepare_out_dir(const Options& o) {
    const fs::path dir = o.out_dir.empty() ? default_out_dir() : o.out_dir;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir))
        throw OutputError("cannot create output directory '" + dir.string() + "': " + ec.message());
    return dir;
}

void write_file(const fs::path& path, const std::function<void(std::ostream&)>& body) {
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw OutputError("cannot write output file '" + path.string() + "'");
    body(file);
    file.close();
    if (!file) throw OutputError("failed while writing '" + path.string() + "'");
}

int do_run(const Options& o, CLI::App* cmd, std::ostream& out) {
    ModelConfig config = make_config(o);
    ExecutionOptions exec;
    exec.workers = o.threads;
    exec.keep_run_results = o.consumption || o.trajectory;
    exec.record_trajectory = o.trajectory;
    OutputContext context;
    load_preferences(o, cmd, config, exec, context);
    config.validate();
    const fs::path dir = prepare_out_dir(o);

    const auto result = run_replicated(config, o.runs, exec);
    write_file(dir / "items.csv", [&](std::ostream& f) { write_items_csv(f, result); });
    write_file(dir / "summary.csv", [&](std::ostream& f) {
        write_summary_header(f);
        write_summary_row(f, config, result.cell, context);
    });
    write_file(dir / "runs.csv", [&](std::ostream& f) { write_runs_csv(f, config, result.runs); });
    if (o.consumption)
        write_file(dir / "consumption.csv", [&](std::ostream& f) { write_consumption_csv(f, result.results); });
    if (o.trajectory)
        write_file(dir / "trajectory.csv", [&](std::ostream& f) { write_trajectory_csv(f, result.results); });
    out << "I_mean=" << format_number(result.cell.inequality.mean)
        << " Q_mean=" << format_number(result.cell.quartile_diff.mean)
        << " slope_mean=" << format_number(result.cell.slope.mean) << " -> " << dir.string() << '\n';
    return exit_ok;
}

int do_sweep(const Options& o, CLI::App* cmd, std::ostream& out) {
    SweepSpec spec;
    spec.gamma_values = parse_grid_values(o.gamma_grid);
    spec.sigma_values = parse_grid_values(o.sigma_grid);
    spec.replications = o.runs;
    spec.base_config = make_config(o);
    spec.base_config.social_pressure = spec.gamma_values.front();
    spec.base_config.intra_item_deviation = spec.sigma_values.front();
    ExecutionOptions exec;
    exec.workers = o.threads;
    OutputContext context;
    load_preferences(o, cmd, spec.base_config, exec, context);
    spec.validate();
    const fs::path dir = prepare_out_dir(o);

    const auto cells = run_sweep(spec, exec);
    write_file(dir / "grid.csv", [&](std::ostream& f) { write_grid_csv(f, spec.base_config, cells, context); });
    out << cells.size() << " cells -> " << (dir / "grid.csv").string() << '\n';
    return exit_ok;
}

int do_paired(const Options& o, CLI::App* cmd, std::ostream& out) {
    ModelConfig config = make_config(o);
    const auto gammas = parse_grid_values(o.gammas);
    config.social_pressure = gammas.front();
    ExecutionOptions exec;
    exec.workers = o.threads;
    OutputContext context;
    load_preferences(o, cmd, config, exec, context);
    config.validate();
    const fs::path dir = prepare_out_dir(o);

    const auto experiment = run_paired_experiment(config, gammas, o.runs, exec);
    write_file(dir / "paired.csv", [&](std::ostream& f) { write_paired_csv(f, experiment); });
    write_file(dir / "summary.csv", [&](std::ostream& f) { write_grid_csv(f, config, experiment.cells, context); });
    out << experiment.runs.size() << " paired runs x " << gammas.size() << " gammas -> " << dir.string() << '\n';
    return exit_ok;
}

int do_export_graph(const Options& o, std::ostream& out) {
    const ModelConfig config = make_config(o);
    config.topology.validate(config.n_agents);
    const std::uint64_t run_seed = derive_run_seed(config.master_seed, o.run_index);
    auto rng = make_substream(run_seed, Substream::Topology);
    const SocialGraph graph = build_topology(config.topology, config.n_agents, rng);
    if (o.edge_file == "-") {
        write_edge_list(out, graph);
    } else {
        const fs::path path(o.edge_file);
        if (path.has_parent_path()) {
            std::error_code ec;
            fs::create_directories(path.parent_path(), ec);
        }
        write_file(path, [&](std::ostream& f) { write_edge_list(f, graph); });
    }
    return exit_ok;
}

/// Turns "key = value" lines into "--key=value" arguments, rejecting keys the subcommand lacks.
std::vector<std::string> config_file_args(const std::string& path, CLI::App* cmd) {
    std::ifstream in(path);
    if (!in) throw CLI::FileError("cannot read config file '" + path + "'");
    std::vector<std::string> args;
    std::string line;
    std::size_t line_no = 0;
    auto trim = [](std::string s) {
        const auto first = s.find_first_not_of(" \t\r");
        if (first == std::string::npos) return std::string{};
        return s.substr(first, s.find_last_not_of(" \t\r") - first + 1);
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(line_no) + ": expected key=value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "config" || cmd->get_option_no_throw("--" + key) == nullptr)
            throw ConfigError(path + ":" + std::to_string(line_no) + ": unknown key '" + key + "' for " +
                              cmd->get_name());
        args.push_back("--" + key + "=" + value);
    }
    return args;
}

} // namespace

int cli_main(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Cultural market simulator: social influence, inequality and quality in item consumption",
                 "cmarket"};
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.require_subcommand(1);
    std::string config_path;

    auto* run_cmd = app.add_subcommand("run", "replicated runs at one (gamma, sigma); writes items.csv, summary.csv, runs.csv");
    add_model_options(run_cmd, o, true);
    add_run_options(run_cmd, o);
    run_cmd->add_flag("--consumption", o.consumption, "also write consumption.csv (every agent's choice per step)");
    run_cmd->add_flag("--trajectory", o.trajectory, "also write trajectory.csv (shares after every step)");

    auto* sweep_cmd = app.add_subcommand("sweep", "replicated runs over a (gamma, sigma) grid; writes grid.csv");
    add_model_options(sweep_cmd, o, false);
    add_run_options(sweep_cmd, o);
    sweep_cmd->add_option("--gamma", o.gamma_grid, "gamma values: start:stop:step or comma list")
        ->capture_default_str();
    sweep_cmd->add_option("--sigma", o.sigma_grid, "sigma values: start:stop:step or comma list")
        ->capture_default_str();

    auto* paired_cmd = app.add_subcommand("paired", "runs sharing topology and likings across gammas; writes paired.csv");
    add_model_options(paired_cmd, o, false);
    add_run_options(paired_cmd, o);
    paired_cmd->add_option("--gammas", o.gammas, "comma list of gamma values")->capture_default_str();
    paired_cmd->add_option("--sigma", o.sigma, "intra-item liking deviation")->capture_default_str();

    auto* graph_cmd = app.add_subcommand("export-graph", "write the social graph of one run as an edge list");
    add_model_options(graph_cmd, o, false);
    graph_cmd->add_option("--run-index", o.run_index, "run whose topology substream is used")->capture_default_str();
    graph_cmd->add_option("--out", o.edge_file, "edge list file, '-' for standard output")->capture_default_str();

    for (auto* cmd : {run_cmd, sweep_cmd, paired_cmd, graph_cmd})
        cmd->add_option("--config", config_path, "key=value file; keys are the long option names");

    try {
        // --config is expanded before parsing so explicit flags (which come later) win.
        std::vector<std::string> expanded(args.begin(), args.end());
        for (std::size_t i = 0; i < expanded.size(); ++i) {
            std::string path;
            std::size_t consumed = 0;
            if (expanded[i] == "--config" && i + 1 < expanded.size()) {
                path = expanded[i + 1];
                consumed = 2;
            } else if (expanded[i].rfind("--config=", 0) == 0) {
                path = expanded[i].substr(9);
                consumed = 1;
            } else {
                continue;
            }
            auto sub = std::find_if(expanded.begin(), expanded.end(),
                                    [&](const std::string& a) { return app.get_subcommand_no_throw(a) != nullptr; });
            if (sub == expanded.end() || sub > expanded.begin() + static_cast<std::ptrdiff_t>(i))
                throw CLI::ValidationError("--config must follow a subcommand");
            auto* cmd = app.get_subcommand(*sub);
            const auto extra = config_file_args(path, cmd);
            expanded.erase(expanded.begin() + static_cast<std::ptrdiff_t>(i),
                           expanded.begin() + static_cast<std::ptrdiff_t>(i + consumed));
            expanded.insert(sub + 1, extra.begin(), extra.end());
            break;
        }
        std::reverse(expanded.begin(), expanded.end());
        app.parse(expanded);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::FileError& e) {
        err << "error: " << e.what() << '\n';
        return exit_config_error;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return exit_config_error;
    } catch (const ConfigError& e) {
        err << "configuration error: " << e.what() << '\n';
        return exit_config_error;
    }

    for (auto* cmd : {run_cmd, sweep_cmd, paired_cmd, graph_cmd}) {
        if (!cmd->parsed()) continue;
        try {
            if (cmd == run_cmd) return do_run(o, cmd, out);
            if (cmd == sweep_cmd) return do_sweep(o, cmd, out);
            if (cmd == paired_cmd) return do_paired(o, cmd, out);
            return do_export_graph(o, out);
        } catch (const ConfigError& e) {
            err << "configuration error: " << e.what() << '\n';
            return exit_config_error;
        } catch (const OutputError& e) {
            err << "output error: " << e.what() << '\n';
            return exit_runtime_error;
        } catch (const std::exception& e) {
            err << "runtime error: " << e.what() << '\n';
            return exit_runtime_error;
        }
    }
    return exit_config_error;
}

} // namespace cmarket
