#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "config.hpp"
#include "run.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace lmgq_cli;

namespace {

RunConfig parse(const std::vector<std::string>& args) {
    bool help = false;
    std::string text;
    RunConfig c = parse_config(args, help, text);
    REQUIRE_FALSE(help);
    return c;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() / "lmgq_cli_test";
        std::filesystem::remove_all(path);
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

} // namespace

TEST_CASE("qsl-scan flags parse into a valid config") {
    const RunConfig c = parse({"qsl-scan", "--alpha", "0.4", "--n", "1000", "--tau-e", "1",
                               "--lambda-min", "0.05", "--lambda-max", "2",
                               "--lambda-step", "0.005"});
    CHECK(c.command == "qsl-scan");
    CHECK(c.n == 1000);
    CHECK(c.alpha == 0.4);
    CHECK(c.tau_e == 1.0);
    CHECK(c.lambda_step == 0.005);
    CHECK(c.out == "qsl-scan");
    CHECK(c.format == "csv");
    CHECK(c.frame == "critical");
}

TEST_CASE("odd environment sizes are rejected with the rule named") {
    bool help = false;
    std::string text;
    try {
        parse_config({"qsl-scan", "--n", "41"}, help, text);
        FAIL("expected a config error");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("even") != std::string::npos);
        CHECK(std::string(e.what()).find("--n") != std::string::npos);
    }
}

TEST_CASE("unknown flags and commands are hard errors") {
    CHECK_THROWS_AS(parse({"qsl-scan", "--bogus", "1"}), std::invalid_argument);
    CHECK_THROWS_AS(parse({"fly"}), std::invalid_argument);
    CHECK_THROWS_AS(parse({}), std::invalid_argument);
}

TEST_CASE("command-line flags override config-file values") {
    TempDir tmp;
    const auto file = tmp.path / "run.cfg";
    {
        std::ofstream out(file);
        out << "# comment line\n";
        out << "alpha = 0.3\n";
        out << "n = 400\n";
        out << "\n";
        out << "tau-e = 2\n";
    }
    const RunConfig c =
        parse({"qsl-scan", "--config", file.string(), "--alpha", "0.4"});
    CHECK(c.alpha == 0.4);   // flag wins
    CHECK(c.n == 400);       // file value
    CHECK(c.tau_e == 2.0);   // file value
}

TEST_CASE("unknown config-file keys are rejected") {
    TempDir tmp;
    const auto file = tmp.path / "bad.cfg";
    {
        std::ofstream out(file);
        out << "alhpa = 0.3\n";
    }
    try {
        parse({"qsl-scan", "--config", file.string()});
        FAIL("expected a config error");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("alhpa") != std::string::npos);
    }
}

TEST_CASE("per-command defaults") {
    CHECK(parse({"spectrum"}).n == 40);
    CHECK(parse({"dos"}).n == 2000);
    CHECK(parse({"dos"}).alpha == 0.3);
    CHECK(parse({"nm-scan"}).tau_e == 8.0);
    CHECK(parse({"scaling"}).lambda == 0.0);
    CHECK(parse({"critical-locus"}).alpha_max == 0.72);
}

TEST_CASE("help exits cleanly") {
    bool help = false;
    std::string text;
    parse_config({"--help"}, help, text);
    CHECK(help);
    CHECK(text.find("spectrum") != std::string::npos);
}

TEST_CASE("run writes deterministic tables that round-trip") {
    TempDir tmp;
    RunConfig c = parse({"qsl-scan", "--n", "40", "--lambda-min", "0.8", "--lambda-max", "1.2",
                         "--lambda-step", "0.1", "--workers", "2", "--out",
                         (tmp.path / "scan_a").string()});
    std::vector<std::string> written;
    REQUIRE(run_command(c, &written) == 0);
    REQUIRE(written.size() == 1);
    const std::string first = slurp(written[0]);
    CHECK(first.find("lambda,tau_qsl,gamma_inf,nm") != std::string::npos);
    CHECK(first.find("# command = qsl-scan") != std::string::npos);
    CHECK(first.find("# n = 40") != std::string::npos);

    // identical configuration -> byte-identical file
    std::vector<std::string> again;
    REQUIRE(run_command(c, &again) == 0);
    CHECK(slurp(again[0]) == first);

    // a different prefix changes only the 'out' metadata line
    c.out = (tmp.path / "scan_b").string();
    std::vector<std::string> other;
    REQUIRE(run_command(c, &other) == 0);
    const std::string second = slurp(other[0]);
    CHECK(first.substr(first.find("\nlambda")) == second.substr(second.find("\nlambda")));
}

TEST_CASE("dos command emits peak profiles around the critical energy") {
    TempDir tmp;
    RunConfig c = parse({"dos", "--n", "400", "--bins", "60", "--theta-points", "600",
                         "--phi-points", "600", "--out", (tmp.path / "dos").string()});
    std::vector<std::string> written;
    REQUIRE(run_command(c, &written) == 0);
    REQUIRE(written.size() == 2);
    for (const auto& path : written) {
        const std::string text = slurp(path);
        CHECK(text.find("e_center,density") != std::string::npos);
    }
}

TEST_CASE("json output format") {
    TempDir tmp;
    RunConfig c = parse({"quench", "--n", "20", "--lambda", "1", "--tau-e", "1", "--format",
                         "json", "--out", (tmp.path / "q").string()});
    std::vector<std::string> written;
    REQUIRE(run_command(c, &written) == 0);
    REQUIRE(written.size() == 2);
    for (const auto& path : written) {
        CHECK(path.find(".json") != std::string::npos);
        const std::string text = slurp(path);
        CHECK(text.find("\"columns\"") != std::string::npos);
    }
}

TEST_CASE("io failures return exit code 4 and clean up") {
    RunConfig c = parse({"qsl-scan", "--n", "20", "--lambda-min", "0.9", "--lambda-max", "1.0",
                         "--lambda-step", "0.1", "--out", "/nonexistent-dir/prefix"});
    CHECK(run_command(c) == 4);
}

TEST_CASE("validation rejects out-of-range physics parameters") {
    CHECK_THROWS_AS(parse({"qsl-scan", "--alpha", "1.5"}), std::invalid_argument);
    CHECK_THROWS_AS(parse({"qsl-scan", "--theta", "4.0"}), std::invalid_argument);
    CHECK_THROWS_AS(parse({"qsl-scan", "--frame", "rotating"}), std::invalid_argument);
    CHECK_THROWS_AS(parse({"dos", "--bins", "5"}), std::invalid_argument);
    CHECK_THROWS_AS(parse({"heatmap", "--tau-min", "-1"}), std::invalid_argument);
    CHECK_THROWS_AS(parse({"qsl-scan", "--format", "xml"}), std::invalid_argument);
}
