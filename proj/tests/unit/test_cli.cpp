#include "doctest.h"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "metriclust/cli.hpp"

using namespace metriclust;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        static int counter = 0;
        path = fs::temp_directory_path() /
               ("metriclust_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string operator/(const std::string& name) const { return (path / name).string(); }
};

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run(std::vector<std::string> args) {
    args.insert(args.begin(), "metriclust");
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    return {std::istreambuf_iterator<char>(in), {}};
}

cli::Json load(const std::string& path) { return cli::Json::parse(slurp(path)); }

void write_file(const std::string& path, const std::string& text) {
    std::ofstream(path, std::ios::binary) << text;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("simulate writes header plus 2000 rows, deterministically") {
    TempDir tmp;
    REQUIRE(run({"simulate", "--seed", "5", "--out", tmp / "a.csv"}).code == 0);
    REQUIRE(run({"simulate", "--seed", "5", "--out", tmp / "b.csv"}).code == 0);
    REQUIRE(run({"simulate", "--seed", "6", "--out", tmp / "c.csv"}).code == 0);
    const auto a = slurp(tmp / "a.csv");
    CHECK(std::count(a.begin(), a.end(), '\n') == 2001);
    CHECK(a.starts_with("X1,X2,label\n"));
    CHECK(a == slurp(tmp / "b.csv"));
    CHECK(a != slurp(tmp / "c.csv"));
}

TEST_CASE("seeded runs produce byte-identical outputs") {
    TempDir tmp;
    const std::vector<std::vector<std::string>> commands = {
        {"cluster", "--data", "sim", "--seed", "4", "--n-start", "10", "--metric", "manhattan"},
        {"cluster", "--data", "sim", "--seed", "4", "--mahalanobis", "--euclid-starts", "5"},
        {"scree", "--data", "sim", "--seed", "4", "--n-start", "5", "--k-max", "4"},
        {"project", "--data", "sim", "--seed", "4"},
    };
    for (std::size_t c = 0; c < commands.size(); ++c) {
        for (const char* rep : {"x", "y"}) {
            auto args = commands[c];
            args.insert(args.end(), {"--threads", rep[0] == 'x' ? "1" : "3", "--out", tmp / (std::to_string(c) + rep)});
            REQUIRE(run(args).code == 0);
        }
        for (const auto& entry : fs::directory_iterator(tmp / (std::to_string(c) + "x"))) {
            const auto name = entry.path().filename().string();
            const auto other = tmp / (std::to_string(c) + "y/" + name);
            if (name == "config.json") continue;  // records the output directory
            CAPTURE(name);
            CHECK(slurp(entry.path().string()) == slurp(other));
        }
    }
}

TEST_CASE("cluster outputs") {
    TempDir tmp;
    const auto r = run({"cluster", "--data", "sim", "--seed", "2", "--n-start", "20", "--out", tmp / "e"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("misclassified") != std::string::npos);
    const auto report = load(tmp / "e/report.json");
    CHECK(report["algorithm"] == "kmeans");
    CHECK(report["n"] == 2000);
    CHECK_FALSE(report.contains("phase1"));
    const auto& ev = report["final"]["evaluation"];
    CHECK(ev["row_totals"] == cli::Json({1000, 1000}));
    CHECK(ev["bars"].size() == 4);
    CHECK(report["final"]["restarts"].size() == 20);

    const auto scatter = load(tmp / "e/scatter.json");
    CHECK(scatter["coordinates"] == "data");
    CHECK(scatter["points"].size() == 2000);
    CHECK(scatter["points"][0].contains("true"));
    CHECK(scatter["points"][0].contains("predicted"));

    const auto cents = load(tmp / "e/centroids.json");
    CHECK(cents["true"].size() == 2);
    CHECK(cents["fitted"].size() == 2);
    CHECK(std::abs(cents["true"][0][0].get<double>() - 0.579) < 0.05);

    const auto cfg = load(tmp / "e/config.json");
    CHECK(cfg["seed"] == 2);
    CHECK(cfg["n_start"] == 20);
}

TEST_CASE("mahalanobis run reports both phases") {
    TempDir tmp;
    REQUIRE(run({"cluster", "--mahalanobis", "--euclid-starts", "5", "--out", tmp / "m"}).code == 0);
    const auto report = load(tmp / "m/report.json");
    CHECK(report.contains("phase1"));
    CHECK(report.contains("final"));
    CHECK(report.contains("phase2"));
    CHECK(report["metric"] == "mahalanobis");
    CHECK(load(tmp / "m/centroids.json").contains("phase1"));
    CHECK(load(tmp / "m/scatter.json")["points"][0].contains("phase1"));
}

TEST_CASE("k = n on a small CSV gives zero wss") {
    TempDir tmp;
    write_file(tmp / "five.csv", "u,v,w\n0,0,1\n1,0,2\n0,3,1\n4,1,0\n2,2,2\n");
    REQUIRE(run({"cluster", "--data", tmp / "five.csv", "--k", "5", "--out", tmp / "k"}).code == 0);
    const auto report = load(tmp / "k/report.json");
    CHECK(report["final"]["wss"] == 0.0);
    CHECK(report["final"]["evaluation"].is_null());
    CHECK(load(tmp / "k/scatter.json")["coordinates"] == "pca");
}

TEST_CASE("scree") {
    TempDir tmp;
    REQUIRE(run({"scree", "--n-start", "10", "--seed", "3", "--out", tmp / "s"}).code == 0);
    const auto doc = load(tmp / "s/scree.json");
    CHECK(doc["points"].size() == 10);
    CHECK(doc["largest_drop_k"] == 2);
    REQUIRE(run({"scree", "--k-min", "3", "--k-max", "3", "--out", tmp / "t"}).code == 0);
    const auto one = load(tmp / "t/scree.json");
    CHECK(one["points"].size() == 1);
    CHECK(one["largest_drop_k"].is_null());
}

TEST_CASE("project") {
    TempDir tmp;
    REQUIRE(run({"project", "--out", tmp / "p"}).code == 0);
    const auto doc = load(tmp / "p/pca.json");
    const double total = doc["explained_variance_ratio"][0].get<double>() + doc["explained_variance_ratio"][1].get<double>();
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(doc["scores"].size() == 2000);
    CHECK(doc["scores"][0].size() == 2);

    std::string line = "a,b,c\n";
    for (int i = 0; i < 10; ++i) line += std::to_string(i) + "," + std::to_string(2 * i) + "," + std::to_string(-i) + "\n";
    write_file(tmp / "rank1.csv", line);
    REQUIRE(run({"project", "--data", tmp / "rank1.csv", "--out", tmp / "r"}).code == 0);
    CHECK(load(tmp / "r/pca.json")["explained_variance_ratio"][1].get<double>() <= 1e-9);
    CHECK(run({"project", "--data", tmp / "rank1.csv", "--components", "4", "--out", tmp / "r"}).code == 2);
}

TEST_CASE("config file with command-line overrides") {
    TempDir tmp;
    write_file(tmp / "cfg.json", R"({"k": 3, "n_start": 4, "seed": 9, "metric": "maximum"})");
    REQUIRE(run({"cluster", "--config", tmp / "cfg.json", "--seed", "10", "--out", tmp / "c"}).code == 0);
    const auto cfg = load(tmp / "c/config.json");
    CHECK(cfg["k"] == 3);
    CHECK(cfg["n_start"] == 4);
    CHECK(cfg["seed"] == 10);
    CHECK(cfg["metric"] == "maximum");

    // The echoed config reproduces the run.
    REQUIRE(run({"cluster", "--config", tmp / "c/config.json", "--out", tmp / "d"}).code == 0);
    CHECK(slurp(tmp / "c/report.json") == slurp(tmp / "d/report.json"));

    write_file(tmp / "bad.json", R"({"k": "three"})");
    CHECK(run({"cluster", "--config", tmp / "bad.json", "--out", tmp / "x"}).code == 2);
    write_file(tmp / "broken.json", "{");
    CHECK(run({"cluster", "--config", tmp / "broken.json", "--out", tmp / "x"}).code == 2);
}

TEST_CASE("exit codes") {
    TempDir tmp;
    const auto many = run({"cluster", "--k", "0", "--n-start", "0", "--metric", "cosine", "--out", tmp / "x"});
    CHECK(many.code == 2);
    CHECK(many.err.find("--k") != std::string::npos);
    CHECK(many.err.find("--n-start") != std::string::npos);
    CHECK(many.err.find("cosine") != std::string::npos);

    CHECK(run({"cluster", "--features", "a", "--out", tmp / "x"}).code == 2);
    CHECK(run({"cluster", "--metric", "mahalanobis", "--out", tmp / "x"}).code == 2);
    CHECK(run({"cluster", "--k", "5000", "--out", tmp / "x"}).code == 2);
    CHECK(run({"cluster", "--bogus"}).code == 2);
    CHECK(run({}).code == 2);

    CHECK(run({"cluster", "--data", tmp / "missing.csv", "--out", tmp / "x"}).code == 3);
    write_file(tmp / "bad.csv", "a,b\n1,x\n");
    CHECK(run({"cluster", "--data", tmp / "bad.csv", "--out", tmp / "x"}).code == 3);

    write_file(tmp / "flat.csv", "a,b\n1,1\n1,1\n1,1\n1,1\n");
    CHECK(run({"project", "--data", tmp / "flat.csv", "--out", tmp / "x"}).code == 3);
    // Identical points still cluster: repair moves a zero-distance point.
    CHECK(run({"cluster", "--data", tmp / "flat.csv", "--k", "2", "--out", tmp / "x"}).code == 0);

    CHECK(cli::exit_code(ErrorKind::config) == 2);
    CHECK(cli::exit_code(ErrorKind::data) == 3);
    CHECK(cli::exit_code(ErrorKind::numerical) == 4);
}

TEST_CASE("the executable forwards exit codes") {
    const char* exe = std::getenv("METRICLUST_CLI");
    if (exe == nullptr) {
        MESSAGE("METRICLUST_CLI not set; skipping");
        return;
    }
    TempDir tmp;
    const std::string base = std::string(exe) + " ";
    CHECK(std::system((base + "simulate --out " + (tmp / "s.csv") + " > /dev/null").c_str()) == 0);
    const int code = std::system((base + "cluster --k 0 --out " + (tmp / "o") + " 2> /dev/null").c_str());
    CHECK(WEXITSTATUS(code) == 2);
}

}  // TEST_SUITE
