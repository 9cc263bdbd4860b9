#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "metriclust/kmeans.hpp"
#include "metriclust/metrics.hpp"

namespace metriclust {

/// Two-phase clustering: Euclidean k-means, then repeated reassignment by
/// squared Mahalanobis distance to per-cluster mean and covariance.
struct MahaConfig {
    std::size_t k = 2;
    std::size_t euclid_iter = 50;
    std::size_t euclid_starts = 50;
    std::size_t maha_iter = 100;
    std::uint64_t seed = 0;
    /// Clusters smaller than this use the pseudo-inverse. Defaults to d + 2.
    std::optional<std::size_t> min_cluster_for_cov;
    std::size_t threads = 0;
};

std::vector<std::string> validate(const MahaConfig& cfg, std::size_t n);

/// Mean, sample covariance and (pseudo-)inverse per cluster. The inverse comes
/// from invert_spd unless the cluster has fewer than `min_cluster_for_cov`
/// members or inversion fails; then the pseudo-inverse is stored and
/// rank_deficient is set. A singleton has a zero covariance.
std::vector<ClusterStats> cluster_stats(const DataMatrix& data, const Labels& labels, std::size_t k,
                                        std::size_t min_cluster_for_cov);

/// argmin_c mahalanobis_sq(x, stats[c]); ties go to the lowest index.
Labels assign_mahalanobis(const kernels::ColumnStore& columns, const std::vector<ClusterStats>& stats,
                          const kernels::KernelTable& table = kernels::active());

struct MahaResult {
    ClusteringResult phase1;
    /// Final labels; centroids are member means and wss is Euclidean.
    ClusteringResult final;
    std::size_t maha_iterations = 0;
    bool converged = false;
    std::size_t empty_repairs = 0;
    /// Points whose label changed in each phase-2 pass.
    std::vector<std::size_t> label_changes;
    std::vector<ClusterStats> final_stats;
};

MahaResult mahalanobis_kmeans(const DataMatrix& data, const MahaConfig& cfg);

}  // namespace metriclust
