#include "cmarket/cli.hpp"

#include <doctest.h>

#include <unistd.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

struct Invocation {
    int code;
    std::string out;
    std::string err;
};

Invocation cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cmarket::cli_main(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::size_t lines(const std::string& text) {
    return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

struct TempDir {
    fs::path path;
    TempDir() {
        static int counter = 0;
        path = fs::temp_directory_path() / ("cmarket-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

} // namespace

TEST_CASE("cli: run writes its tables") {
    TempDir tmp;
    const auto r = cli({"run", "--agents", "20", "--items", "16", "--steps", "5", "--gamma", "0.4", "--runs", "3",
                        "--consumption", "--trajectory", "--out", tmp.path.string()});
    CHECK(r.code == 0);
    CHECK(r.err.empty());
    CHECK(r.out.find("I_mean=") != std::string::npos);
    const auto items = slurp(tmp.path / "items.csv");
    CHECK(items.rfind("run_index,item,quality,share\n", 0) == 0);
    CHECK(lines(items) == 1 + 3 * 16);
    CHECK(lines(slurp(tmp.path / "summary.csv")) == 2);
    CHECK(lines(slurp(tmp.path / "runs.csv")) == 1 + 3);
    CHECK(lines(slurp(tmp.path / "consumption.csv")) == 1 + 3 * 5 * 20);
    CHECK(lines(slurp(tmp.path / "trajectory.csv")) == 1 + 3 * 5 * 16);
}

TEST_CASE("cli: sweep writes one row per cell") {
    TempDir tmp;
    const auto r = cli({"sweep", "--agents", "12", "--items", "12", "--steps", "3", "--runs", "2", "--gamma",
                        "0:1:0.25", "--sigma", "0.5,2", "--out", tmp.path.string()});
    CHECK(r.code == 0);
    CHECK(lines(slurp(tmp.path / "grid.csv")) == 1 + 5 * 2);
}

TEST_CASE("cli: paired writes shares for every gamma") {
    TempDir tmp;
    const auto r = cli({"paired", "--agents", "12", "--items", "8", "--steps", "3", "--runs", "2", "--gammas",
                        "0,0.7", "--topology", "ring", "--k", "4", "--out", tmp.path.string()});
    CHECK(r.code == 0);
    const auto paired = slurp(tmp.path / "paired.csv");
    CHECK(lines(paired) == 1 + 2 * 8);
    CHECK(lines(slurp(tmp.path / "summary.csv")) == 1 + 2);
}

TEST_CASE("cli: invalid horizon is a configuration error") {
    TempDir tmp;
    const auto r = cli({"run", "--steps", "200", "--items", "100", "--out", tmp.path.string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("T <= M") != std::string::npos);
    CHECK_FALSE(fs::exists(tmp.path / "items.csv"));
}

TEST_CASE("cli: parse failures exit with 2") {
    CHECK(cli({"run", "--frobnicate"}).code == 2);
    CHECK(cli({}).code == 2);
    CHECK(cli({"run", "--agents", "many"}).code == 2);
    CHECK(cli({"run", "--topology", "hypercube"}).code == 2);
    CHECK(cli({"run", "--config", "/nonexistent/cmarket.conf"}).code == 2);
}

TEST_CASE("cli: unwritable output exits with 1") {
    TempDir tmp;
    std::ofstream(tmp.path / "blocker") << "x";
    const auto r = cli({"run", "--agents", "5", "--items", "5", "--steps", "1", "--runs", "1", "--out",
                        (tmp.path / "blocker" / "sub").string()});
    CHECK(r.code == 1);
    CHECK(r.err.find("output error") != std::string::npos);
}

TEST_CASE("cli: config file supplies options, explicit flags win") {
    TempDir tmp;
    const auto conf = tmp.path / "small.conf";
    std::ofstream(conf) << "# small market\nagents = 9\nitems=7\nsteps = 2\nruns = 2\ngamma = 0.9\n";
    const auto r = cli({"run", "--config", conf.string(), "--runs", "1", "--out", (tmp.path / "o").string()});
    REQUIRE(r.code == 0);
    CHECK(lines(slurp(tmp.path / "o" / "items.csv")) == 1 + 7);
    const auto summary = slurp(tmp.path / "o" / "summary.csv");
    CHECK(summary.find("\n0.9,1,complete,0,9,7,2,1,") != std::string::npos);

    std::ofstream(tmp.path / "bad.conf") << "colour = blue\n";
    CHECK(cli({"run", "--config", (tmp.path / "bad.conf").string()}).code == 2);
}

TEST_CASE("cli: preference file fixes the likings") {
    TempDir tmp;
    std::ofstream(tmp.path / "likes.csv") << "0,0,1\n0,1,0\n1,0,0\n";
    const auto r = cli({"run", "--preferences", (tmp.path / "likes.csv").string(), "--steps", "1", "--runs", "2",
                        "--consumption", "--out", tmp.path.string()});
    REQUIRE(r.code == 0);
    const auto consumption = slurp(tmp.path / "consumption.csv");
    CHECK(consumption.find("\n0,0,0,2\n0,0,1,1\n0,0,2,0\n") != std::string::npos);
    CHECK(cli({"run", "--preferences", (tmp.path / "likes.csv").string(), "--agents", "4", "--out",
               tmp.path.string()})
              .code == 2);
}

TEST_CASE("cli: export-graph prints an edge list") {
    const auto r = cli({"export-graph", "--agents", "5", "--topology", "ring", "--k", "2"});
    CHECK(r.code == 0);
    CHECK(r.out == "0 1\n0 4\n1 2\n2 3\n3 4\n");
    CHECK(cli({"export-graph", "--agents", "5", "--topology", "ring", "--k", "3"}).code == 2);
}

TEST_CASE("cli: repeated invocations are byte-identical") {
    TempDir a, b;
    const std::vector<std::string> common{"run", "--agents", "15", "--items", "12", "--steps", "4", "--gamma", "0.5",
                                          "--topology", "random", "--k", "4", "--seed", "9", "--runs", "4"};
    auto args_a = common, args_b = common;
    args_a.insert(args_a.end(), {"--threads", "1", "--out", a.path.string()});
    args_b.insert(args_b.end(), {"--threads", "3", "--out", b.path.string()});
    REQUIRE(cli(args_a).code == 0);
    REQUIRE(cli(args_b).code == 0);
    for (const char* f : {"items.csv", "summary.csv", "runs.csv"}) CHECK(slurp(a.path / f) == slurp(b.path / f));
}
