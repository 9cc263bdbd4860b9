#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "metriclust/types.hpp"

namespace metriclust::cli {

using Json = nlohmann::ordered_json;

enum ExitCode : int { ok = 0, config_failure = 2, data_failure = 3, numerical_failure = 4 };

ExitCode exit_code(ErrorKind kind);

/// Everything a command needs, mirrored to `config.json` in the output directory.
struct RunConfig {
    std::string data = "sim";  // "sim" or a CSV path
    std::optional<std::uint64_t> data_seed;
    std::vector<std::string> features;
    std::string label_col;
    std::vector<std::string> classes;
    std::map<std::string, std::string> rename;
    bool standardize = true;

    std::string metric = "euclidean";
    bool mahalanobis = false;
    std::size_t k = 2;
    std::size_t max_iter = 100;
    std::size_t n_start = 100;
    std::size_t euclid_iter = 50;
    std::size_t euclid_starts = 50;
    std::size_t maha_iter = 100;
    std::optional<std::size_t> min_cluster_for_cov;
    bool kmeans_pp = false;
    std::uint64_t seed = 1;
    std::size_t threads = 0;

    std::size_t k_min = 1;
    std::size_t k_max = 10;
    std::size_t components = 2;

    std::string out = "out";

    bool uses_simulation() const { return data == "sim"; }
};

Json to_json(const RunConfig& cfg);
RunConfig run_config_from_json(const Json& doc);

/// Problems that can be found before touching data, for the named command.
std::vector<std::string> validate(const RunConfig& cfg, const std::string& command);

/// Entry point shared by the executable and the tests. argv[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace metriclust::cli
