#include "metriclust/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <system_error>

namespace metriclust {

namespace {

void check_dims(std::size_t a, std::size_t b) {
    if (a != b) {
        throw data_error("dimension mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
    }
}

}  // namespace

Metric Metric::minkowski(double p) {
    if (!std::isfinite(p) || p < 1.0) {
        throw config_error("minkowski order must be a finite number >= 1");
    }
    return {MetricKind::minkowski, p};
}

std::string to_string(const Metric& metric) {
    switch (metric.kind) {
        case MetricKind::euclidean: return "euclidean";
        case MetricKind::manhattan: return "manhattan";
        case MetricKind::maximum: return "maximum";
        case MetricKind::mahalanobis: return "mahalanobis";
        case MetricKind::minkowski: {
            char buf[64];
            const auto res = std::to_chars(buf, buf + sizeof buf, metric.p);
            return "minkowski:" + std::string(buf, res.ptr);
        }
    }
    return "unknown";
}

Metric parse_metric(std::string_view text) {
    if (text == "euclidean") return Metric::euclidean();
    if (text == "manhattan") return Metric::manhattan();
    if (text == "maximum" || text == "chebyshev") return Metric::maximum();
    if (text == "mahalanobis") return Metric::mahalanobis();
    constexpr std::string_view prefix = "minkowski:";
    if (text.starts_with(prefix)) {
        const auto arg = text.substr(prefix.size());
        double p = 0.0;
        const auto res = std::from_chars(arg.data(), arg.data() + arg.size(), p);
        if (res.ec != std::errc{} || res.ptr != arg.data() + arg.size()) {
            throw config_error("invalid minkowski order '" + std::string(arg) + "'");
        }
        return Metric::minkowski(p);
    }
    throw config_error("unknown metric '" + std::string(text) +
                       "' (expected euclidean | manhattan | maximum | minkowski:<p> | mahalanobis)");
}

double distance(std::span<const double> x, std::span<const double> y, const Metric& metric) {
    check_dims(x.size(), y.size());
    double acc = 0.0;
    switch (metric.kind) {
        case MetricKind::euclidean:
            for (std::size_t j = 0; j < x.size(); ++j) {
                const double diff = x[j] - y[j];
                acc += diff * diff;
            }
            return std::sqrt(acc);
        case MetricKind::manhattan:
            for (std::size_t j = 0; j < x.size(); ++j) acc += std::fabs(x[j] - y[j]);
            return acc;
        case MetricKind::maximum:
            for (std::size_t j = 0; j < x.size(); ++j) acc = std::max(acc, std::fabs(x[j] - y[j]));
            return acc;
        case MetricKind::minkowski:
            if (!(metric.p >= 1.0)) throw config_error("minkowski order must be >= 1");
            for (std::size_t j = 0; j < x.size(); ++j) acc += std::pow(std::fabs(x[j] - y[j]), metric.p);
            return std::pow(acc, 1.0 / metric.p);
        case MetricKind::mahalanobis:
            break;
    }
    throw config_error("mahalanobis distance needs cluster statistics; use mahalanobis_sq");
}

double clamp_quadratic(double q) {
    if (q >= 0.0) return q;
    if (q >= -kQuadFormNegativeSlack) return 0.0;
    throw numerical_error("negative quadratic form " + std::to_string(q) +
                          " from a positive semi-definite inverse");
}

double mahalanobis_sq(std::span<const double> x, const ClusterStats& stats) {
    const std::size_t d = x.size();
    check_dims(d, stats.mean.size());
    check_dims(d, stats.cov_inv.rows());
    Vector diff(d);
    for (std::size_t j = 0; j < d; ++j) diff[j] = x[j] - stats.mean[j];
    double acc = 0.0;
    for (std::size_t a = 0; a < d; ++a) {
        double t = 0.0;
        for (std::size_t b = 0; b < d; ++b) t += stats.cov_inv(a, b) * diff[b];
        acc += diff[a] * t;
    }
    return clamp_quadratic(acc);
}

void batch_distance(const kernels::KernelTable& table, kernels::Columns pts,
                    std::span<const double> center, const Metric& metric, std::span<double> out) {
    check_dims(pts.d, center.size());
    if (out.size() < pts.n) throw std::invalid_argument("batch_distance: output too small");
    switch (metric.kind) {
        case MetricKind::euclidean: table.euclidean(pts, center.data(), out.data()); return;
        case MetricKind::manhattan: table.manhattan(pts, center.data(), out.data()); return;
        case MetricKind::maximum: table.chebyshev(pts, center.data(), out.data()); return;
        case MetricKind::minkowski:
            table.minkowski(pts, center.data(), metric.p, out.data());
            return;
        case MetricKind::mahalanobis: break;
    }
    throw config_error("mahalanobis distance needs cluster statistics");
}

void batch_mahalanobis_sq(const kernels::KernelTable& table, kernels::Columns pts,
                          const ClusterStats& stats, std::span<double> out) {
    check_dims(pts.d, stats.mean.size());
    check_dims(pts.d, stats.cov_inv.rows());
    if (out.size() < pts.n) throw std::invalid_argument("batch_mahalanobis_sq: output too small");
    table.mahalanobis_sq(pts, stats.mean.data(), stats.cov_inv.values().data(), out.data());
    for (std::size_t i = 0; i < pts.n; ++i) out[i] = clamp_quadratic(out[i]);
}

}  // namespace metriclust
