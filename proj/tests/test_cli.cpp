#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "frog/cli.hpp"

using namespace frog::cli;

namespace {

struct Invocation {
    int code;
    std::string out, err;
};

Invocation invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "frogsim");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    std::ostringstream out, err;
    const int code = main(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / "frogsim_tests";
    std::filesystem::create_directories(dir);
    return dir / name;
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("defaults, canonical values and overrides") {
    const auto c = parse_config("factor", "", {{"factor.p2", "0.250"}});
    CHECK(c.raw("factor.p2") == "0.25");
    CHECK(c.raw("factor.height") == "0");
    CHECK(c.values.size() == 2);
    const auto s = parse_config("simulate", "run.seed = 007  # padded\n[window]\nL = 8, 16\n", {});
    CHECK(s.raw("window.L") == "8,16");
    CHECK(s.raw("run.seed") == "7");
    CHECK(s.integers("window.L") == std::vector<long long>{8, 16});
    const auto r = parse_config("simulate", "", {{"model.residual", "+e1:0.5; 0,1 : 0.5"}});
    CHECK(r.raw("model.residual") == "+e1:0.5;0,1:0.5");
}

TEST_CASE("invalid configs name the offending key") {
    auto expect = [](const std::string& cmd, const std::string& text,
                     std::vector<std::pair<std::string, std::string>> sets, const std::string& key) {
        try {
            (void)parse_config(cmd, text, sets);
            FAIL("expected a config error for " << key);
        } catch (const CliError& e) {
            CHECK(e.code() == config_error);
            CHECK(e.key() == key);
        }
    };
    expect("simulate", "", {{"model.eps", "0.3"}}, "model.elliptic");
    expect("simulate", "", {{"model.eps", "abc"}}, "model.eps");
    expect("simulate", "", {{"nonsense.key", "1"}}, "nonsense.key");
    expect("factor", "", {{"run.seed", "1"}}, "run.seed");
    expect("simulate", "", {{"window.L", "16,8"}}, "window.L");
    expect("simulate", "", {{"counts.law", "logtail"}, {"counts.t0", "2"}}, "counts.law");
    expect("simulate", "", {{"run.mode", "sideways"}}, "run.mode");
    expect("coverage", "", {{"model.kernel", "comb"}}, "model.kernel");
    expect("series", "", {{"series.a", "1.5"}}, "series.a");
    expect("simulate", "model.d 3\n", {}, "-");
    expect("simulate", "", {{"model.residual", "+e1:0.5"}}, "model.elliptic");
    expect("simulate", "", {{"model.d", "1"}, {"model.residual", "1,0:1"}}, "model.elliptic");
}

TEST_CASE("error lines are single-line and machine readable") {
    const auto r = invoke({"simulate", "--set", "model.eps=oops"});
    CHECK(r.code == config_error);
    CHECK(r.err == "error kind=config key=model.eps message=\"expected a finite number, got 'oops'\"\n");
    const auto u = invoke({"nonsense"});
    CHECK(u.code == config_error);
    CHECK(u.err.rfind("error kind=usage", 0) == 0);
}

TEST_CASE("help lists every setting with its default") {
    const auto r = invoke({"factor", "--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("  factor.p2 = 0.25\n") != std::string::npos);
    CHECK(r.out.find("  factor.height = 0\n") != std::string::npos);
}

TEST_CASE("factor with p2 >= 1/2 exits with the domain error code") {
    const auto r = invoke({"factor", "--p2", "0.6"});
    CHECK(r.code == domain_error);
    CHECK(r.err.rfind("error kind=no-invariant-measure key=factor.p2", 0) == 0);
    const auto ok = invoke({"factor", "--p2=0.25"});
    CHECK(ok.code == 0);
    CHECK(ok.out.find("# result: mass = ") != std::string::npos);
}

TEST_CASE("drift-check on the symmetric kernel reports holds=false") {
    const auto r = invoke({"drift-check", "--set", "model.eps=0.25"});
    CHECK(r.code == 0);
    CHECK(r.out.find("# result: holds = false") != std::string::npos);
    const auto o = invoke({"drift-check", "--set", "model.kernel=outward", "--set", "model.bias=0.8"});
    CHECK(o.out.find("# result: holds = true") != std::string::npos);
}

TEST_CASE("window exhaustion has its own exit code and names the run") {
    const auto r = invoke({"simulate", "--set", "run.max_radius=5", "--set", "window.L=4,8", "--set", "run.replicas=2"});
    CHECK(r.code == window_exhausted);
    CHECK(r.err.find("L=4 replicate=0") != std::string::npos);
}

TEST_CASE("missing files are io errors") {
    CHECK(invoke({"dx", "--set", "dx.graph=/nonexistent/graph.txt"}).code == io_error);
    CHECK(invoke({"factor", "--config", "/nonexistent/cfg"}).code == io_error);
    CHECK(invoke({"factor", "--out", "/nonexistent/dir/out.csv"}).code == io_error);
}

TEST_CASE("simulate is repeatable and independent of --jobs") {
    const std::vector<std::string> base = {"simulate", "--set", "model.d=1", "--set", "model.eps=0.2",
                                           "--set", "window.L=50,100", "--set", "run.seed=7", "--set",
                                           "run.replicas=6"};
    auto with_jobs = [&](const char* jobs) {
        auto args = base;
        args.insert(args.end(), {"--jobs", jobs});
        return invoke(args);
    };
    const auto a = with_jobs("1"), b = with_jobs("1"), c = with_jobs("4");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out == c.out);
    CHECK(a.out.find("L,J,replicate,N,activated,quiescent\n50,400,0,") != std::string::npos);
}

TEST_CASE("output headers round-trip to equal configs") {
    const auto path = scratch("g.txt");
    std::ofstream(path) << "sites 3\n0 1 0.5\n1 2 1\nmarks 2\n";
    const std::vector<std::vector<std::string>> runs = {
        {"simulate", "--set", "window.L=4,8", "--set", "run.replicas=2", "--set", "model.eps=0.1"},
        {"coverage", "--set", "window.L=4", "--set", "run.replicas=3"},
        {"dx", "--set", "dx.graph=" + path.string()},
        {"series", "--set", "series.y=lognormal", "--set", "series.n_max=2000"},
        {"drift-check", "--set", "model.kernel=comb", "--set", "drift.radius=3"},
        {"factor", "--set", "factor.p2=0.1"},
        {"raabe", "--set", "raabe.r_max=1000"},
    };
    for (const auto& args : runs) {
        const auto r = invoke(args);
        REQUIRE(r.code == 0);
        const auto parsed = parse_output_header(r.out);
        CHECK(parsed.command == args[0]);
        std::vector<std::pair<std::string, std::string>> sets;
        for (std::size_t k = 1; k + 1 < args.size(); k += 2) {
            const auto eq = args[k + 1].find('=');
            sets.emplace_back(args[k + 1].substr(0, eq), args[k + 1].substr(eq + 1));
        }
        CHECK(parsed == parse_config(args[0], "", sets));
        // Replaying the parsed config reproduces the output.
        CHECK(run_experiment(parsed, 1).text == r.out);
    }
}

TEST_CASE("summary JSON and the output directory variable") {
    const auto dir = scratch("outdir");
    std::filesystem::create_directories(dir);
    setenv("FROGSIM_OUT_DIR", dir.c_str(), 1);
    const auto r = invoke({"factor"});
    unsetenv("FROGSIM_OUT_DIR");
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream csv(dir / "factor.csv"), json(dir / "factor.json");
    REQUIRE(csv.good());
    REQUIRE(json.good());
    const auto summary = nlohmann::json::parse(json);
    CHECK(summary["command"] == "factor");
    CHECK(summary["config"]["factor.p2"] == "0.25");
    CHECK(summary["results"]["mass"].get<double>() == doctest::Approx(1.0));
}

TEST_CASE("dx reports reach weights per site") {
    const auto path = scratch("dx.txt");
    std::ofstream(path) << "sites 4\n0 1 0.5\n1 2 0.5\n0 3 0.1\n2 3 1\nmarks 3\n";
    const auto r = invoke({"dx", "--graph", path.string()});
    CHECK(r.code == 0);
    CHECK(r.out.find("site,value,length,witness\n0,0.0625,3,0 1 2 3\n1,0.16666666666666666,2,1 2 3\n2,0.5,1,2 3\n3,1,0,3\n") !=
          std::string::npos);
    std::ofstream(path) << "sites 2\n0 1 2.5\nmarks 1\n";
    const auto bad = invoke({"dx", "--graph", path.string()});
    CHECK(bad.code == config_error);
    CHECK(bad.err.rfind("error kind=input key=dx.graph", 0) == 0);
}

} // TEST_SUITE
