#include "metriclust/maha.hpp"

#include <algorithm>

#include "empty_repair.hpp"
#include "metriclust/linalg.hpp"

namespace metriclust {

namespace {

constexpr std::size_t kAssignBlock = 512;

std::size_t count_changes(const Labels& a, const Labels& b) {
    std::size_t changes = 0;
    for (std::size_t i = 0; i < a.size(); ++i) changes += a[i] != b[i] ? 1 : 0;
    return changes;
}

}  // namespace

std::vector<std::string> validate(const MahaConfig& cfg, std::size_t n) {
    std::vector<std::string> problems;
    if (cfg.k < 1) problems.emplace_back("k must be >= 1");
    if (cfg.k * 2 > n) problems.emplace_back("two-phase clustering needs at least 2k points");
    if (cfg.euclid_iter < 1) problems.emplace_back("euclid_iter must be >= 1");
    if (cfg.euclid_starts < 1) problems.emplace_back("euclid_starts must be >= 1");
    if (cfg.maha_iter < 1) problems.emplace_back("maha_iter must be >= 1");
    if (cfg.min_cluster_for_cov && *cfg.min_cluster_for_cov < 1) {
        problems.emplace_back("min_cluster_for_cov must be >= 1");
    }
    return problems;
}

std::vector<ClusterStats> cluster_stats(const DataMatrix& data, const Labels& labels, std::size_t k,
                                        std::size_t min_cluster_for_cov) {
    if (labels.size() != data.rows()) throw data_error("label count does not match point count");
    const std::size_t d = data.cols();
    std::vector<std::vector<std::size_t>> members(k);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const int label = labels[i];
        if (label < 0 || static_cast<std::size_t>(label) >= k) throw data_error("label out of range");
        members[static_cast<std::size_t>(label)].push_back(i);
    }

    std::vector<ClusterStats> stats(k);
    for (std::size_t c = 0; c < k; ++c) {
        const auto& idx = members[c];
        if (idx.empty()) throw data_error("cannot compute stats for empty cluster");
        DataMatrix subset(idx.size(), d);
        for (std::size_t r = 0; r < idx.size(); ++r) {
            std::copy_n(data.row(idx[r]).begin(), d, subset.row(r).begin());
        }
        auto& s = stats[c];
        s.n_members = idx.size();
        s.mean = linalg::mean(subset);
        s.cov = idx.size() >= 2 ? linalg::covariance(subset) : Matrix(d, d);
        s.rank_deficient = idx.size() < min_cluster_for_cov;
        if (!s.rank_deficient) {
            try {
                s.cov_inv = linalg::invert_spd(s.cov);
            } catch (const Error&) {
                s.rank_deficient = true;
            }
        }
        if (s.rank_deficient) s.cov_inv = linalg::pseudo_inverse(s.cov);
    }
    return stats;
}

Labels assign_mahalanobis(const kernels::ColumnStore& columns, const std::vector<ClusterStats>& stats,
                          const kernels::KernelTable& table) {
    if (stats.empty()) throw config_error("assign_mahalanobis: no clusters");
    const std::size_t n = columns.rows();
    Labels labels(n, 0);
    std::vector<double> best(kAssignBlock);
    std::vector<double> dist(kAssignBlock);
    for (std::size_t begin = 0; begin < n; begin += kAssignBlock) {
        const std::size_t count = std::min(kAssignBlock, n - begin);
        const auto block = columns.block(begin, count);
        batch_mahalanobis_sq(table, block, stats[0], best);
        for (std::size_t c = 1; c < stats.size(); ++c) {
            batch_mahalanobis_sq(table, block, stats[c], dist);
            for (std::size_t i = 0; i < count; ++i) {
                if (dist[i] < best[i]) {
                    best[i] = dist[i];
                    labels[begin + i] = static_cast<int>(c);
                }
            }
        }
    }
    return labels;
}

MahaResult mahalanobis_kmeans(const DataMatrix& data, const MahaConfig& cfg) {
    if (const auto problems = validate(cfg, data.rows()); !problems.empty()) {
        std::string msg = problems.front();
        for (std::size_t i = 1; i < problems.size(); ++i) msg += "; " + problems[i];
        throw config_error(msg);
    }
    const std::size_t min_cov = cfg.min_cluster_for_cov.value_or(data.cols() + 2);

    KMeansConfig euclid;
    euclid.k = cfg.k;
    euclid.max_iter = cfg.euclid_iter;
    euclid.n_start = cfg.euclid_starts;
    euclid.metric = Metric::euclidean();
    euclid.seed = cfg.seed;
    euclid.threads = cfg.threads;

    MahaResult out;
    out.phase1 = kmeans(data, euclid);

    const kernels::ColumnStore columns(data);
    const auto& table = kernels::active();
    Labels labels = out.phase1.labels;
    for (std::size_t pass = 1; pass <= cfg.maha_iter; ++pass) {
        const auto stats = cluster_stats(data, labels, cfg.k, min_cov);
        Labels next = assign_mahalanobis(columns, stats, table);

        std::vector<std::size_t> counts(cfg.k, 0);
        for (int label : next) ++counts[static_cast<std::size_t>(label)];
        out.empty_repairs += detail::repair_empty_clusters(
            next, counts,
            [&](std::size_t i) { return mahalanobis_sq(data.row(i), stats[static_cast<std::size_t>(next[i])]); },
            [](std::size_t, std::size_t, std::size_t) {});

        out.maha_iterations = pass;
        const std::size_t changes = count_changes(labels, next);
        out.label_changes.push_back(changes);
        if (changes == 0) {
            out.converged = true;
            break;
        }
        labels = std::move(next);
    }

    out.final_stats = cluster_stats(data, labels, cfg.k, min_cov);
    out.final.centroids.reserve(cfg.k);
    for (const auto& s : out.final_stats) out.final.centroids.push_back(s.mean);
    out.final.wss = within_cluster_ss(data, labels, out.final.centroids);
    out.final.labels = std::move(labels);
    out.final.iterations_run = out.maha_iterations;
    out.final.restart_index = out.phase1.restart_index;
    out.final.converged = out.converged;
    return out;
}

}  // namespace metriclust
