#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    const std::string cmd = std::string(BREAKWATCH_CLI_PATH) + " " + args + " 2>/dev/null";
    RunResult result;
    FILE* pipe = ::popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buffer;
    std::size_t got = 0;
    while ((got = std::fread(buffer.data(), 1, buffer.size(), pipe)) > 0) {
        result.out.append(buffer.data(), got);
    }
    const int status = ::pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("breakwatch-cli-" + std::to_string(::getpid()) + "-" +
                std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    static int& counter() {
        static int c = 0;
        return c;
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    REQUIRE(out.good());
    out << content;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

// Distinct values with a step of +1 between segments: a lattice-valued step
// (all zeros then all ones) would let shuffled copies tie the observed
// median statistic exactly and wash out the permutation test.
std::string step_csv() {
    std::string body;
    char line[32];
    for (int i = 0; i < 40; ++i) {
        const double value = (i < 20 ? 0.0 : 1.0) + 0.01 * i;
        std::snprintf(line, sizeof line, "%g\n", value);
        body += line;
    }
    return body;
}

// Two flat levels; ideal for pinning the windowed detector's boundary
// estimate (every distance is exactly 0 or 1), useless for significance.
std::string lattice_step_csv() {
    std::string body;
    for (int i = 0; i < 20; ++i) body += "0\n";
    for (int i = 0; i < 20; ++i) body += "1\n";
    return body;
}

int count_lines(const std::string& text) {
    int lines = 0;
    for (char c : text)
        if (c == '\n') ++lines;
    return lines;
}

}  // namespace

TEST_CASE("detect reports the step boundary with artifacts on disk") {
    TempDir dir;
    write_file(dir.file("step.csv"), step_csv());
    const auto result = run("detect --input " + dir.file("step.csv") +
                            " --method edmx --delta 5 --permutations 99 --seed 4 --out " +
                            dir.file("out"));
    REQUIRE(result.exit_code == 0);

    const auto report = nlohmann::json::parse(result.out);
    CHECK(report.at("method") == "edmx");
    CHECK(report.at("tau_hat") == 20);
    CHECK(report.at("significant") == true);
    CHECK(report.at("p_value").get<double>() < 0.05);
    CHECK(report.at("config").at("delta") == 5);

    CHECK(fs::exists(dir.file("out/report.json")));
    CHECK(fs::exists(dir.file("out/manifest.json")));
    const auto annotated = read_file(dir.file("out/annotated.csv"));
    CHECK(count_lines(annotated) == 41);  // header + 40 rows
    CHECK(annotated.rfind("index,value,is_breakout_estimate\n", 0) == 0);
    // Rows are 1-based, so row 20 is the last point of the left segment.
    CHECK(annotated.find("\n20,0.19,1\n") != std::string::npos);

    const auto stored = nlohmann::json::parse(read_file(dir.file("out/report.json")));
    CHECK(stored.at("tau_hat") == report.at("tau_hat"));
    const auto manifest = nlohmann::json::parse(read_file(dir.file("out/manifest.json")));
    CHECK(manifest.at("command") == "detect");
    CHECK(manifest.at("config").at("permutations") == 99);
}

TEST_CASE("detect can answer in csv") {
    TempDir dir;
    write_file(dir.file("step.csv"), lattice_step_csv());
    const auto result = run("detect --input " + dir.file("step.csv") +
                            " --method edm --delta 5 --permutations 19 --format csv --out " +
                            dir.file("out"));
    REQUIRE(result.exit_code == 0);
    CHECK(result.out.rfind("method,tau_hat,kappa_hat,statistic,p_value,significant\n", 0) == 0);
    CHECK(result.out.find("edm,20,") != std::string::npos);
}

TEST_CASE("exit codes separate precondition, io, parse and usage failures") {
    TempDir dir;
    write_file(dir.file("short.csv"), "1\n2\n3\n");
    CHECK(run("detect --input " + dir.file("short.csv") + " --delta 5 --out " + dir.file("o1"))
              .exit_code == 5);

    CHECK(run("detect --input " + dir.file("missing.csv") + " --out " + dir.file("o2"))
              .exit_code == 4);

    write_file(dir.file("garbled.csv"), "1\nbad\n3\n");
    CHECK(run("detect --input " + dir.file("garbled.csv") + " --out " + dir.file("o3"))
              .exit_code == 3);

    write_file(dir.file("step.csv"), step_csv());
    CHECK(run("detect --input " + dir.file("step.csv") + " --alpha 3 --out " + dir.file("o4"))
              .exit_code == 2);
    CHECK(run("detect --input " + dir.file("step.csv") + " --delta 0 --out " + dir.file("o5"))
              .exit_code == 2);
    CHECK(run("frobnicate").exit_code == 2);
    CHECK(run("detect").exit_code == 2);  // --input is required
}

TEST_CASE("identical detect invocations produce identical bytes") {
    TempDir dir;
    write_file(dir.file("step.csv"), step_csv());
    const std::string args = "detect --input " + dir.file("step.csv") +
                             " --method edm --delta 5 --permutations 49 --seed 9 --out " +
                             dir.file("out");
    const auto first = run(args);
    REQUIRE(first.exit_code == 0);
    const auto report1 = read_file(dir.file("out/report.json"));
    const auto annotated1 = read_file(dir.file("out/annotated.csv"));
    const auto manifest1 = read_file(dir.file("out/manifest.json"));

    const auto second = run(args);
    REQUIRE(second.exit_code == 0);
    CHECK(second.out == first.out);
    CHECK(read_file(dir.file("out/report.json")) == report1);
    CHECK(read_file(dir.file("out/annotated.csv")) == annotated1);
    CHECK(read_file(dir.file("out/manifest.json")) == manifest1);
}

TEST_CASE("synth writes the series, its labels and a manifest") {
    TempDir dir;
    const auto result = run(
        "synth --lengths 30,30 --means 0,1 --sd 0.1 --anomalies 2 --magnitude 5 --seed 3 "
        "--name demo --out " +
        dir.file("data"));
    REQUIRE(result.exit_code == 0);

    const auto summary = nlohmann::json::parse(result.out);
    CHECK(summary.at("n") == 60);
    CHECK(summary.at("true_breakouts") == nlohmann::json::array({30}));
    CHECK(summary.at("anomaly_labels").size() == 2);

    const auto csv = read_file(dir.file("data/demo.csv"));
    CHECK(count_lines(csv) == 61);  // header + 60 rows
    const auto labels = nlohmann::json::parse(read_file(dir.file("data/demo.labels.json")));
    CHECK(labels.at("true_breakouts") == nlohmann::json::array({30}));
    CHECK(labels.at("anomaly_labels").size() == 2);
    CHECK(fs::exists(dir.file("data/manifest.json")));
}

TEST_CASE("synth is deterministic and validates its shape flags") {
    TempDir dir;
    const std::string args =
        "synth --lengths 25,25 --means 0,2 --sd 0.3 --seed 8 --name twin --out " +
        dir.file("data");
    REQUIRE(run(args).exit_code == 0);
    const auto first = read_file(dir.file("data/twin.csv"));
    REQUIRE(run(args).exit_code == 0);
    CHECK(read_file(dir.file("data/twin.csv")) == first);

    CHECK(run("synth --lengths 25,25 --means 0 --out " + dir.file("bad")).exit_code == 2);
}

TEST_CASE("eval scores a labeled directory end to end") {
    TempDir dir;
    REQUIRE(run("synth --lengths 40,40 --means 0,1 --sd 0.1 --seed 21 --name a --out " +
                dir.file("data"))
                .exit_code == 0);
    REQUIRE(run("synth --lengths 50,30 --means 1,3 --sd 0.2 --seed 22 --name b --out " +
                dir.file("data"))
                .exit_code == 0);

    const auto result = run("eval --data " + dir.file("data") +
                            " --methods edmx --delta 5 --permutations 49 --match-window 10 "
                            "--out " +
                            dir.file("scores"));
    REQUIRE(result.exit_code == 0);

    const auto summary = nlohmann::json::parse(result.out);
    CHECK(summary.at("series_count") == 2);
    CHECK(summary.at("match_window") == 10);
    const auto& edmx = summary.at("methods").at("edmx");
    CHECK(edmx.at("tp").get<int>() + edmx.at("fn").get<int>() == 2);
    CHECK(edmx.at("f_measure").get<double>() >= 0.0);
    CHECK(edmx.at("f_measure").get<double>() <= 1.0);

    const auto scoreboard = read_file(dir.file("scores/scoreboard.csv"));
    CHECK(scoreboard.rfind("series,method,tau_hat,p_value,ttd,tp,fp,fn\n", 0) == 0);
    CHECK(count_lines(scoreboard) == 3);  // header + 2 series x 1 method
    CHECK(fs::exists(dir.file("scores/summary.json")));
    CHECK(fs::exists(dir.file("scores/manifest.json")));
}

TEST_CASE("eval rejects unusable inputs") {
    TempDir dir;
    fs::create_directories(dir.file("empty"));
    CHECK(run("eval --data " + dir.file("empty") + " --out " + dir.file("s1")).exit_code == 3);

    REQUIRE(run("synth --lengths 30,30 --means 0,1 --name lonely --out " + dir.file("data"))
                .exit_code == 0);
    fs::remove(dir.file("data/lonely.labels.json"));
    CHECK(run("eval --data " + dir.file("data") + " --out " + dir.file("s2")).exit_code == 3);

    CHECK(run("eval --data " + dir.file("data") + " --methods bogus --out " + dir.file("s3"))
              .exit_code == 2);
}

TEST_CASE("bench emits one row per method and size") {
    TempDir dir;
    const auto result = run(
        "bench --sizes 60,80 --repeats 1 --delta 5 --permutations 5 --seed 2 --out " +
        dir.file("bench"));
    REQUIRE(result.exit_code == 0);
    CHECK(result.out.rfind(
              "method,n,wall_ms,tau_hat,kappa_hat,statistic,p_value,speedup_vs_edivisive\n",
              0) == 0);
    CHECK(count_lines(result.out) == 7);  // header + 2 sizes x 3 methods
    CHECK(read_file(dir.file("bench/bench.csv")) == result.out);
    const auto manifest = nlohmann::json::parse(read_file(dir.file("bench/manifest.json")));
    CHECK(manifest.at("command") == "bench");
    CHECK(manifest.at("sizes") == nlohmann::json::array({60, 80}));
}
