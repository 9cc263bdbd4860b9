#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "metriclust/kernels.hpp"
#include "metriclust/metrics.hpp"
#include "metriclust/types.hpp"

namespace metriclust {

struct KMeansConfig {
    std::size_t k = 2;
    std::size_t max_iter = 100;
    std::size_t n_start = 1;
    Metric metric = Metric::euclidean();
    std::uint64_t seed = 0;
    /// Opt-in k-means++ seeding; the default is uniform sampling of k distinct rows.
    bool kmeans_pp = false;
    /// 0 = METRICLUST_THREADS or hardware concurrency.
    std::size_t threads = 0;
};

/// All violations of the config against a data set of n points, one message each.
std::vector<std::string> validate(const KMeansConfig& cfg, std::size_t n);

struct RestartDiagnostics {
    std::uint64_t seed = 0;
    double wss = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
    std::size_t empty_repairs = 0;
    /// Euclidean WSS after each centroid update.
    std::vector<double> wss_trace;
};

struct ClusteringResult {
    Labels labels;
    std::vector<Vector> centroids;
    /// Total within-cluster sum of squared Euclidean distances.
    double wss = 0.0;
    std::size_t iterations_run = 0;
    std::size_t restart_index = 0;
    bool converged = false;
    std::vector<RestartDiagnostics> restarts;
};

/// Nearest centroid per point under `metric`; ties go to the lowest centroid index.
Labels assign(const DataMatrix& data, const std::vector<Vector>& centroids, const Metric& metric);
Labels assign(const kernels::ColumnStore& columns, const std::vector<Vector>& centroids,
              const Metric& metric, const kernels::KernelTable& table = kernels::active());

struct CentroidUpdate {
    std::vector<Vector> centroids;
    /// Input labels, except for points moved to re-seed empty clusters.
    Labels labels;
    std::size_t empty_repairs = 0;
};

/// Member means per cluster. An empty cluster takes over the point farthest
/// (under `metric`) from its own centroid, chosen among clusters that keep at
/// least one member; ties go to the lowest point index.
CentroidUpdate update_centroids(const DataMatrix& data, Labels labels, std::size_t k,
                                const Metric& metric = Metric::euclidean());

/// Sum over points of the squared Euclidean distance to the assigned centroid.
double within_cluster_ss(const DataMatrix& data, const Labels& labels,
                         const std::vector<Vector>& centroids);

/// Lloyd iterations from n_start random starts; keeps the lowest-WSS start
/// (ties: lowest restart index). Deterministic for a fixed seed regardless
/// of the thread count.
ClusteringResult kmeans(const DataMatrix& data, const KMeansConfig& cfg);

struct ScreePoint {
    std::size_t k = 0;
    double wss = 0.0;
};

/// One kmeans run per k; run for k uses derive_seed(cfg.seed, k).
std::vector<ScreePoint> scree(const DataMatrix& data, const std::vector<std::size_t>& k_values,
                              const KMeansConfig& cfg);

/// k at which (wss[i-1] - wss[i]) / wss[i-1] is largest; nullopt for fewer than two points.
std::optional<std::size_t> largest_relative_drop(const std::vector<ScreePoint>& curve);

/// Worker count for restart parallelism: explicit request, else METRICLUST_THREADS,
/// else hardware concurrency; at least 1.
std::size_t resolve_thread_count(std::size_t requested);

}  // namespace metriclust
