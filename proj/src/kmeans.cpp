#include "metriclust/kmeans.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <limits>
#include <numeric>
#include <string>
#include <thread>

#include "empty_repair.hpp"
#include "metriclust/rng.hpp"

namespace metriclust {

namespace {

constexpr std::size_t kAssignBlock = 512;

Vector member_mean(const DataMatrix& data, const Labels& labels, int cluster) {
    Vector mu(data.cols(), 0.0);
    std::size_t count = 0;
    for (std::size_t i = 0; i < data.rows(); ++i) {
        if (labels[i] != cluster) continue;
        const auto row = data.row(i);
        for (std::size_t j = 0; j < mu.size(); ++j) mu[j] += row[j];
        ++count;
    }
    if (count > 0)
        for (double& v : mu) v /= static_cast<double>(count);
    return mu;
}

std::vector<std::size_t> sample_distinct_rows(Rng& rng, std::size_t n, std::size_t k) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
        std::swap(idx[i], idx[j]);
    }
    idx.resize(k);
    return idx;
}

std::vector<std::size_t> kmeanspp_rows(Rng& rng, const DataMatrix& data, std::size_t k,
                                       const Metric& metric) {
    const std::size_t n = data.rows();
    std::vector<std::size_t> chosen{static_cast<std::size_t>(rng.below(n))};
    std::vector<double> weight(n, std::numeric_limits<double>::infinity());
    while (chosen.size() < k) {
        const auto last = data.row(chosen.back());
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double dist = distance(data.row(i), last, metric);
            weight[i] = std::min(weight[i], dist * dist);
            total += weight[i];
        }
        std::size_t pick = 0;
        if (total > 0.0) {
            double target = rng.uniform() * total;
            for (pick = 0; pick + 1 < n; ++pick) {
                target -= weight[pick];
                if (target < 0.0) break;
            }
        } else {
            // All remaining points coincide with a chosen center.
            pick = static_cast<std::size_t>(rng.below(n));
        }
        chosen.push_back(pick);
    }
    return chosen;
}

RestartDiagnostics run_restart(const DataMatrix& data, const kernels::ColumnStore& columns,
                               const KMeansConfig& cfg, std::uint64_t seed,
                               ClusteringResult& out) {
    Rng rng(seed);
    const auto rows = cfg.kmeans_pp ? kmeanspp_rows(rng, data, cfg.k, cfg.metric)
                                    : sample_distinct_rows(rng, data.rows(), cfg.k);
    std::vector<Vector> centroids;
    centroids.reserve(cfg.k);
    for (std::size_t r : rows) centroids.emplace_back(data.row(r).begin(), data.row(r).end());

    RestartDiagnostics diag;
    diag.seed = seed;
    Labels labels;
    const auto& table = kernels::active();
    for (std::size_t it = 1; it <= cfg.max_iter; ++it) {
        Labels next = assign(columns, centroids, cfg.metric, table);
        if (it > 1 && next == labels) {
            diag.converged = true;
            break;
        }
        auto update = update_centroids(data, std::move(next), cfg.k, cfg.metric);
        labels = std::move(update.labels);
        centroids = std::move(update.centroids);
        diag.empty_repairs += update.empty_repairs;
        diag.wss_trace.push_back(within_cluster_ss(data, labels, centroids));
        diag.iterations = it;
    }
    diag.wss = diag.wss_trace.back();
    out.labels = std::move(labels);
    out.centroids = std::move(centroids);
    out.wss = diag.wss;
    out.iterations_run = diag.iterations;
    out.converged = diag.converged;
    return diag;
}

}  // namespace

std::vector<std::string> validate(const KMeansConfig& cfg, std::size_t n) {
    std::vector<std::string> problems;
    if (cfg.k < 1) problems.emplace_back("k must be >= 1");
    if (cfg.k > n) problems.emplace_back("more clusters than points");
    if (cfg.max_iter < 1) problems.emplace_back("max_iter must be >= 1");
    if (cfg.n_start < 1) problems.emplace_back("n_start must be >= 1");
    if (cfg.metric.kind == MetricKind::mahalanobis) {
        problems.emplace_back("kmeans does not take the mahalanobis metric; use the two-phase procedure");
    }
    if (cfg.metric.kind == MetricKind::minkowski && !(cfg.metric.p >= 1.0)) {
        problems.emplace_back("minkowski order must be >= 1");
    }
    return problems;
}

Labels assign(const DataMatrix& data, const std::vector<Vector>& centroids, const Metric& metric) {
    return assign(kernels::ColumnStore(data), centroids, metric);
}

Labels assign(const kernels::ColumnStore& columns, const std::vector<Vector>& centroids,
              const Metric& metric, const kernels::KernelTable& table) {
    if (centroids.empty()) throw config_error("assign: no centroids");
    const std::size_t n = columns.rows();
    Labels labels(n, 0);
    std::vector<double> best(kAssignBlock);
    std::vector<double> dist(kAssignBlock);
    for (std::size_t begin = 0; begin < n; begin += kAssignBlock) {
        const std::size_t count = std::min(kAssignBlock, n - begin);
        const auto block = columns.block(begin, count);
        batch_distance(table, block, centroids[0], metric, best);
        for (std::size_t c = 1; c < centroids.size(); ++c) {
            batch_distance(table, block, centroids[c], metric, dist);
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

CentroidUpdate update_centroids(const DataMatrix& data, Labels labels, std::size_t k,
                                const Metric& metric) {
    if (labels.size() != data.rows()) throw data_error("label count does not match point count");
    std::vector<std::size_t> counts(k, 0);
    std::vector<Vector> centroids(k, Vector(data.cols(), 0.0));
    for (std::size_t i = 0; i < data.rows(); ++i) {
        const int label = labels[i];
        if (label < 0 || static_cast<std::size_t>(label) >= k) {
            throw data_error("label " + std::to_string(label) + " out of range for k=" + std::to_string(k));
        }
        ++counts[static_cast<std::size_t>(label)];
        const auto row = data.row(i);
        auto& c = centroids[static_cast<std::size_t>(label)];
        for (std::size_t j = 0; j < c.size(); ++j) c[j] += row[j];
    }
    for (std::size_t c = 0; c < k; ++c)
        if (counts[c] > 0)
            for (double& v : centroids[c]) v /= static_cast<double>(counts[c]);

    const std::size_t repairs = detail::repair_empty_clusters(
        labels, counts,
        [&](std::size_t i) {
            return distance(data.row(i), centroids[static_cast<std::size_t>(labels[i])], metric);
        },
        [&](std::size_t i, std::size_t from, std::size_t to) {
            centroids[to].assign(data.row(i).begin(), data.row(i).end());
            centroids[from] = member_mean(data, labels, static_cast<int>(from));
        });
    return {std::move(centroids), std::move(labels), repairs};
}

double within_cluster_ss(const DataMatrix& data, const Labels& labels,
                         const std::vector<Vector>& centroids) {
    double total = 0.0;
    for (std::size_t i = 0; i < data.rows(); ++i) {
        const auto row = data.row(i);
        const auto& c = centroids[static_cast<std::size_t>(labels[i])];
        for (std::size_t j = 0; j < row.size(); ++j) {
            const double diff = row[j] - c[j];
            total += diff * diff;
        }
    }
    return total;
}

std::size_t resolve_thread_count(std::size_t requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("METRICLUST_THREADS"); env != nullptr && *env != '\0') {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

ClusteringResult kmeans(const DataMatrix& data, const KMeansConfig& cfg) {
    if (const auto problems = validate(cfg, data.rows()); !problems.empty()) {
        std::string msg = problems.front();
        for (std::size_t i = 1; i < problems.size(); ++i) msg += "; " + problems[i];
        throw config_error(msg);
    }
    const kernels::ColumnStore columns(data);
    std::vector<ClusteringResult> runs(cfg.n_start);
    std::vector<RestartDiagnostics> diags(cfg.n_start);

    const std::size_t workers = std::min(resolve_thread_count(cfg.threads), cfg.n_start);
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(workers);
    auto work = [&](std::size_t w) {
        try {
            for (std::size_t r = next++; r < cfg.n_start; r = next++) {
                diags[r] = run_restart(data, columns, cfg, derive_seed(cfg.seed, r), runs[r]);
            }
        } catch (...) {
            errors[w] = std::current_exception();
        }
    };
    if (workers <= 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
        for (auto& t : pool) t.join();
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    std::size_t winner = 0;
    for (std::size_t r = 1; r < cfg.n_start; ++r)
        if (runs[r].wss < runs[winner].wss) winner = r;

    ClusteringResult result = std::move(runs[winner]);
    result.restart_index = winner;
    result.restarts = std::move(diags);
    return result;
}

std::vector<ScreePoint> scree(const DataMatrix& data, const std::vector<std::size_t>& k_values,
                              const KMeansConfig& cfg) {
    std::vector<ScreePoint> curve;
    curve.reserve(k_values.size());
    for (std::size_t k : k_values) {
        KMeansConfig run = cfg;
        run.k = k;
        run.seed = derive_seed(cfg.seed, k);
        curve.push_back({k, kmeans(data, run).wss});
    }
    return curve;
}

std::optional<std::size_t> largest_relative_drop(const std::vector<ScreePoint>& curve) {
    if (curve.size() < 2) return std::nullopt;
    std::size_t best = 1;
    double best_drop = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < curve.size(); ++i) {
        const double prev = curve[i - 1].wss;
        const double drop = prev > 0.0 ? (prev - curve[i].wss) / prev : 0.0;
        if (drop > best_drop) {
            best_drop = drop;
            best = i;
        }
    }
    return curve[best].k;
}

}  // namespace metriclust
