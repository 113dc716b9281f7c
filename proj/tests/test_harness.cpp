#include "cmarket/cli.hpp"
#include "cmarket/harness.hpp"

#include <doctest.h>

#include <atomic>
#include <cmath>

using namespace cmarket;

namespace {

ModelConfig small_config() {
    ModelConfig cfg;
    cfg.n_agents = 30;
    cfg.n_items = 24;
    cfg.horizon = 6;
    cfg.social_pressure = 0.5;
    cfg.topology = {TopologyKind::RandomUndirected, 4};
    cfg.master_seed = 3;
    return cfg;
}

void check_same(const SweepCell& a, const SweepCell& b) {
    CHECK(a.inequality.mean == b.inequality.mean);
    CHECK(a.inequality.std == b.inequality.std);
    CHECK(a.quartile_diff.mean == b.quartile_diff.mean);
    CHECK(a.slope.mean == b.slope.mean);
    CHECK(a.pooled_fit.slope == b.pooled_fit.slope);
}

} // namespace

TEST_CASE("moments") {
    const std::vector<double> one{2.5};
    CHECK(moments(one).mean == 2.5);
    CHECK(moments(one).std == 0.0);
    const std::vector<double> v{1, 2, 3, 4};
    CHECK(moments(v).mean == 2.5);
    CHECK(moments(v).std == doctest::Approx(std::sqrt(5.0 / 3.0)));
    const std::vector<double> with_nan{1, std::nan("")};
    CHECK(std::isnan(moments(with_nan).mean));
}

TEST_CASE("a single replication has zero spread") {
    const auto r = run_replicated(small_config(), 1);
    CHECK(r.cell.inequality.std == 0.0);
    CHECK(r.runs.size() == 1);
    CHECK(r.cell.inequality.mean == r.runs[0].report.inequality);
}

TEST_CASE("a one-cell sweep equals run_replicated") {
    SweepSpec spec;
    spec.base_config = small_config();
    spec.gamma_values = {0.5};
    spec.sigma_values = {1.0};
    spec.replications = 7;
    const auto cells = run_sweep(spec);
    REQUIRE(cells.size() == 1);
    check_same(cells[0], run_replicated(small_config(), 7).cell);
}

TEST_CASE("sweep cells are ordered sigma-major") {
    SweepSpec spec;
    spec.base_config = small_config();
    spec.gamma_values = {0.0, 0.5, 1.0};
    spec.sigma_values = {0.5, 2.0};
    spec.replications = 2;
    const auto cells = run_sweep(spec);
    REQUIRE(cells.size() == 6);
    CHECK(cells[1].sigma == 0.5);
    CHECK(cells[1].gamma == 0.5);
    CHECK(cells[3].sigma == 2.0);
    CHECK(cells[3].gamma == 0.0);
}

TEST_CASE("sweep spec validation") {
    SweepSpec spec;
    spec.base_config = small_config();
    spec.gamma_values = {0.5, 0.2};
    spec.sigma_values = {1.0};
    CHECK_THROWS_AS(spec.validate(), ConfigError);
    spec.gamma_values = {0.2, 1.2};
    CHECK_THROWS_AS(spec.validate(), ConfigError);
    spec.gamma_values = {0.2};
    spec.sigma_values = {0.0};
    CHECK_THROWS_AS(spec.validate(), ConfigError);
    spec.sigma_values = {1.0};
    spec.replications = 0;
    CHECK_THROWS_AS(spec.validate(), ConfigError);
}

TEST_CASE("a one-gamma paired experiment equals a replicated run") {
    const std::vector<double> g{0.5};
    const auto paired = run_paired_experiment(small_config(), g, 5);
    REQUIRE(paired.cells.size() == 1);
    check_same(paired.cells[0], run_replicated(small_config(), 5).cell);
}

TEST_CASE("results do not depend on the worker count") {
    ExecutionOptions seq, par;
    par.workers = 4;
    const auto a = run_replicated(small_config(), 13, seq);
    const auto b = run_replicated(small_config(), 13, par);
    check_same(a.cell, b.cell);
    for (std::size_t r = 0; r < 13; ++r) CHECK(a.runs[r].report.shares == b.runs[r].report.shares);

    SweepSpec spec;
    spec.base_config = small_config();
    spec.gamma_values = {0.0, 0.7};
    spec.sigma_values = {1.0, 3.0};
    spec.replications = 5;
    const auto s1 = run_sweep(spec, seq), s2 = run_sweep(spec, par);
    for (std::size_t c = 0; c < s1.size(); ++c) check_same(s1[c], s2[c]);
}

TEST_CASE("parallel_for visits every index once and reports the first failure") {
    std::vector<std::atomic<int>> seen(100);
    parallel_for(100, 3, [&](std::size_t i) { seen[i]++; });
    for (auto& s : seen) CHECK(s.load() == 1);
    CHECK_THROWS_WITH(parallel_for(50, 4,
                                   [](std::size_t i) {
                                       if (i == 17 || i == 40) throw std::runtime_error("boom " + std::to_string(i));
                                   }),
                      "boom 17");
}

TEST_CASE("run errors carry the failing run index") {
    const RunError e(12, "bad things");
    CHECK(e.run_index() == 12);
    CHECK(std::string(e.what()).find("bad things") != std::string::npos);
}

TEST_CASE("grid value parsing") {
    CHECK(parse_grid_values("0.1,0.5,2") == std::vector<double>{0.1, 0.5, 2.0});
    const auto r = parse_grid_values("0:1:0.05");
    REQUIRE(r.size() == 21);
    CHECK(r[0] == 0.0);
    CHECK(r[3] == 0.15);
    CHECK(r[20] == 1.0);
    CHECK(parse_grid_values("0.5") == std::vector<double>{0.5});
    CHECK_THROWS_AS(parse_grid_values("0:1:0"), ConfigError);
    CHECK_THROWS_AS(parse_grid_values("1:0:0.1"), ConfigError);
    CHECK_THROWS_AS(parse_grid_values("a,b"), ConfigError);
    CHECK_THROWS_AS(parse_grid_values(""), ConfigError);
}
