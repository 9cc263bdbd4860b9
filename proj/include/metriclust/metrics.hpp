#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>

#include "metriclust/kernels.hpp"
#include "metriclust/types.hpp"

namespace metriclust {

enum class MetricKind { euclidean, manhattan, maximum, minkowski, mahalanobis };

struct Metric {
    MetricKind kind = MetricKind::euclidean;
    double p = 2.0;  // Minkowski order, ignored otherwise

    static Metric euclidean() { return {MetricKind::euclidean, 2.0}; }
    static Metric manhattan() { return {MetricKind::manhattan, 1.0}; }
    static Metric maximum() { return {MetricKind::maximum, 0.0}; }
    static Metric mahalanobis() { return {MetricKind::mahalanobis, 0.0}; }
    /// Throws config error unless p is finite and >= 1.
    static Metric minkowski(double p);

    friend bool operator==(const Metric&, const Metric&) = default;
};

/// CLI spelling: euclidean | manhattan | maximum | minkowski:<p> | mahalanobis.
std::string to_string(const Metric& metric);
/// Accepts the spellings above plus `chebyshev` as an alias of `maximum`.
Metric parse_metric(std::string_view text);

/// Per-cluster summary for the Mahalanobis distance.
struct ClusterStats {
    Vector mean;
    Matrix cov;
    Matrix cov_inv;  // inverse, or pseudo-inverse when rank_deficient
    bool rank_deficient = false;
    std::size_t n_members = 0;
};

/// Point-to-point distance for every metric except Mahalanobis.
double distance(std::span<const double> x, std::span<const double> y, const Metric& metric);

/// Squared Mahalanobis distance against stored cluster statistics.
double mahalanobis_sq(std::span<const double> x, const ClusterStats& stats);

/// Tolerated negative round-off in a quadratic form.
inline constexpr double kQuadFormNegativeSlack = 1e-10;

/// Clamps tiny negative round-off to zero; anything below -1e-10 is an
/// internal-consistency failure and throws a numerical error.
double clamp_quadratic(double q);

/// Distances from every point of the block to `center` under `metric`
/// (Mahalanobis excluded), using the given kernel table.
void batch_distance(const kernels::KernelTable& table, kernels::Columns pts,
                    std::span<const double> center, const Metric& metric, std::span<double> out);

/// Squared Mahalanobis distances from every point of the block, clamped.
void batch_mahalanobis_sq(const kernels::KernelTable& table, kernels::Columns pts,
                          const ClusterStats& stats, std::span<double> out);

}  // namespace metriclust
