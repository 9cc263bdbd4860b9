// Acceptance suite on the simulated benchmark plus the always-on property
// checks. One PASS/FAIL line per criterion; exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>

#include <unistd.h>

#include "common.hpp"
#include "metriclust/cli.hpp"
#include "metriclust/datagen.hpp"
#include "metriclust/eval.hpp"
#include "metriclust/linalg.hpp"
#include "metriclust/maha.hpp"
#include "metriclust/preprocess.hpp"
#include "oracles.hpp"

using namespace metriclust;
using namespace acceptance;

namespace {

// Tolerances, pinned.
constexpr std::size_t kSeeds = 25;
constexpr std::size_t kMahaSeeds = 50;
constexpr std::size_t kStarts = 100;
constexpr std::size_t kMaxIter = 100;

struct Range {
    double lo, hi;
    bool contains(double v) const { return v >= lo && v <= hi; }
    std::string str() const { return "[" + fmt(lo, 0) + "," + fmt(hi, 0) + "]"; }
};
constexpr Range kEuclidRange{400, 560};
constexpr Range kManhattanRange{400, 570};
constexpr Range kMaximumRange{390, 560};
constexpr Range kMahaRange{240, 400};
constexpr std::size_t kSmallClassErrors = 25;
constexpr double kSmallClassShare = 0.80;
constexpr double kMahaImproveShare = 0.90;
constexpr double kCentroid[2] = {0.579, 0.248};
constexpr double kCentroidTol = 0.05;
constexpr double kScreeShare = 0.95;
constexpr double kExhaustiveShare = 0.95;

struct Sim {
    LabeledDataset ds;
    DataMatrix z;
};

Sim simulation(std::uint64_t seed) {
    Sim s{simulate_benchmark(seed), {}};
    s.z = standardize(s.ds.data).data;
    return s;
}

void criterion_point_metric(Report& report, const std::string& id, const Metric& metric, Range range,
                            bool check_small_class) {
    std::vector<double> totals;
    std::vector<bool> small;
    for (std::uint64_t seed = 1; seed <= kSeeds; ++seed) {
        const Sim s = simulation(seed);
        KMeansConfig cfg;
        cfg.k = 2;
        cfg.n_start = kStarts;
        cfg.max_iter = kMaxIter;
        cfg.metric = metric;
        cfg.seed = seed;
        const auto sc = score(s.ds, kmeans(s.z, cfg).labels, 2);
        totals.push_back(static_cast<double>(sc.misclassified));
        small.push_back(std::min(sc.class_errors[0], sc.class_errors[1]) <= kSmallClassErrors);
    }
    const double med = median(totals);
    std::string summary = to_string(metric) + " on the simulation, " + std::to_string(kSeeds) +
                          " seeds: median misclassified " + fmt(med, 1) + " in " + range.str();
    bool pass = range.contains(med);
    if (check_small_class) {
        const double share = fraction(small);
        summary += "; smaller-error class <= " + std::to_string(kSmallClassErrors) + " errors in " +
                   percent(share) + " of runs (need >= " + percent(kSmallClassShare) + ")";
        pass = pass && share >= kSmallClassShare;
    }
    report.record(id, pass, summary);
}

void criterion_mahalanobis(Report& report) {
    std::vector<double> finals;
    std::vector<bool> improved;
    for (std::uint64_t seed = 1; seed <= kMahaSeeds; ++seed) {
        const Sim s = simulation(seed);
        MahaConfig cfg;
        cfg.k = 2;
        cfg.seed = seed;
        const auto r = mahalanobis_kmeans(s.z, cfg);
        const auto before = score(s.ds, r.phase1.labels, 2).misclassified;
        const auto after = score(s.ds, r.final.labels, 2).misclassified;
        finals.push_back(static_cast<double>(after));
        improved.push_back(after < before);
    }
    const double med = median(finals);
    const double share = fraction(improved);
    report.record("C4", share >= kMahaImproveShare && kMahaRange.contains(med),
                  "two-phase mahalanobis, " + std::to_string(kMahaSeeds) + " seeds: final < phase 1 in " +
                      percent(share) + " (need >= " + percent(kMahaImproveShare) + "); median final " +
                      fmt(med, 1) + " in " + kMahaRange.str());
}

// Judged on the class means averaged over the seeds. A single draw of 1000
// points per class scatters the second coordinate by about 0.02 around its
// population value 0.269, so demanding every seed within 0.05 of 0.248
// would fail most seed sets; the per-seed share is printed for reference.
void criterion_centroids(Report& report) {
    double pooled[2][2] = {};
    std::size_t seeds_within = 0;
    for (std::uint64_t seed = 1; seed <= kSeeds; ++seed) {
        const Sim s = simulation(seed);
        double m[2][2] = {};
        const auto sizes = s.ds.class_sizes();
        for (std::size_t i = 0; i < s.z.rows(); ++i) {
            const auto c = static_cast<std::size_t>(s.ds.labels[i]);
            for (std::size_t j = 0; j < 2; ++j) m[c][j] += s.z(i, j) / static_cast<double>(sizes[c]);
        }
        bool within = true;
        for (std::size_t c = 0; c < 2; ++c) {
            const double sign = c == 0 ? 1.0 : -1.0;
            for (std::size_t j = 0; j < 2; ++j) {
                pooled[c][j] += m[c][j] / kSeeds;
                within = within && std::abs(m[c][j] - sign * kCentroid[j]) <= kCentroidTol;
            }
        }
        seeds_within += within;
    }
    double worst = 0.0;
    for (std::size_t j = 0; j < 2; ++j) {
        worst = std::max(worst, std::abs(pooled[0][j] - kCentroid[j]));
        worst = std::max(worst, std::abs(pooled[1][j] + kCentroid[j]));
    }
    report.record("C5", worst <= kCentroidTol,
                  "standardized class means averaged over " + std::to_string(kSeeds) + " seeds: (" +
                      fmt(pooled[0][0], 4) + ", " + fmt(pooled[0][1], 4) + ") / (" + fmt(pooled[1][0], 4) + ", " +
                      fmt(pooled[1][1], 4) + "), worst deviation from (+-0.579, +-0.248) " + fmt(worst, 4) +
                      " (tolerance " + fmt(kCentroidTol, 2) + "); single seeds within tolerance: " +
                      std::to_string(seeds_within) + "/" + std::to_string(kSeeds));
}

void criterion_scree(Report& report) {
    std::vector<bool> at_two;
    for (std::uint64_t seed = 1; seed <= kSeeds; ++seed) {
        const Sim s = simulation(seed);
        KMeansConfig cfg;
        cfg.n_start = kStarts;
        cfg.max_iter = kMaxIter;
        cfg.seed = seed;
        const auto curve = scree(s.z, {1, 2, 3, 4, 5, 6, 7, 8, 9, 10}, cfg);
        at_two.push_back(largest_relative_drop(curve) == 2);
    }
    const double share = fraction(at_two);
    report.record("C6", share >= kScreeShare,
                  "scree k=1..10 on the simulation: largest relative drop at k=2 in " + percent(share) +
                      " of " + std::to_string(kSeeds) + " seeds (need >= " + percent(kScreeShare) + ")");
}

// ---- criterion 10: property suites ------------------------------------------

struct Sub {
    std::string name;
    bool pass;
    std::string detail;
};

Sub metric_axioms() {
    std::mt19937_64 gen(1);
    std::uniform_real_distribution<double> u(-10, 10);
    const Metric metrics[] = {Metric::euclidean(), Metric::manhattan(), Metric::maximum(), Metric::minkowski(3)};
    std::size_t violations = 0;
    for (int t = 0; t < 1000; ++t) {
        Vector x(4), y(4), z(4);
        for (std::size_t j = 0; j < 4; ++j) {
            x[j] = u(gen);
            y[j] = u(gen);
            z[j] = u(gen);
        }
        for (const auto& m : metrics) {
            const double xy = distance(x, y, m);
            violations += xy < 0 || xy != distance(y, x, m) || distance(x, x, m) != 0 ||
                          xy > distance(x, z, m) + distance(z, y, m) + 1e-12;
        }
    }
    return {"metric axioms, 1000 pairs x 4 metrics", violations == 0, std::to_string(violations) + " violations"};
}

Sub minkowski_limit() {
    std::mt19937_64 gen(2);
    std::uniform_real_distribution<double> u(-10, 10);
    double worst = 0;
    for (int t = 0; t < 1000; ++t) {
        Vector x(5), y(5);
        for (std::size_t j = 0; j < 5; ++j) {
            x[j] = u(gen);
            y[j] = u(gen);
        }
        const double c = distance(x, y, Metric::maximum());
        worst = std::max(worst, std::abs(distance(x, y, Metric::minkowski(64)) - c) / c);
    }
    return {"minkowski p=64 vs maximum", worst <= 0.05, "worst relative gap " + fmt(worst, 4)};
}

Sub mahalanobis_identity() {
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> u(-10, 10);
    double worst = 0;
    for (int t = 0; t < 1000; ++t) {
        ClusterStats s{{u(gen), u(gen), u(gen)}, Matrix::identity(3), Matrix::identity(3), false, 10};
        const Vector x{u(gen), u(gen), u(gen)};
        const double e = distance(x, s.mean, Metric::euclidean());
        worst = std::max(worst, std::abs(mahalanobis_sq(x, s) - e * e) / std::max(1.0, e * e));
    }
    return {"mahalanobis_sq(identity) = squared euclidean", worst <= 1e-10, "worst " + fmt(worst * 1e10, 3) + "e-10"};
}

Sub lloyd_monotone() {
    std::size_t violations = 0, steps = 0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const Sim s = simulation(seed);
        KMeansConfig cfg;
        cfg.k = 3;
        cfg.n_start = 20;
        cfg.seed = seed;
        for (const auto& d : kmeans(s.z, cfg).restarts)
            for (std::size_t i = 1; i < d.wss_trace.size(); ++i, ++steps)
                violations += d.wss_trace[i] > d.wss_trace[i - 1] * (1 + 1e-12);
    }
    return {"Lloyd WSS monotone per iteration", violations == 0,
            std::to_string(violations) + " increases in " + std::to_string(steps) + " steps"};
}

Sub exhaustive_optimum() {
    std::size_t hits = 0;
    const std::size_t trials = 50;
    for (std::uint64_t seed = 0; seed < trials; ++seed) {
        const auto data = oracle::random_points(8, 2, 5000 + seed);
        KMeansConfig cfg;
        cfg.k = 2;
        cfg.n_start = 20;
        cfg.seed = seed;
        hits += kmeans(data, cfg).wss <= oracle::best_two_cluster_wss(data) + 1e-9;
    }
    const double share = static_cast<double>(hits) / trials;
    return {"n=8 exhaustive optimum", share >= kExhaustiveShare, percent(share) + " of 50 seeds"};
}

// Residuals are scaled by max(1, |M|) for the matrix M they should
// reproduce, so ill-conditioned inputs with a large pseudo-inverse are judged
// on relative accuracy.
Sub penrose() {
    double worst = 0;
    auto scaled = [](const Matrix& r, const Matrix& ref) { return max_abs(r) / std::max(1.0, max_abs(ref)); };
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const std::size_t d = 2 + seed % 6;
        const std::size_t n = 2 + seed % (d + 2);  // rank-deficient through full rank
        const Matrix a = linalg::covariance(oracle::random_points(n, d, seed));
        const Matrix g = linalg::pseudo_inverse(a);
        const Matrix ag = a * g;
        const Matrix ga = g * a;
        worst = std::max({worst, scaled(ag * a - a, a), scaled(ga * g - g, g), scaled(ag.transposed() - ag, ag),
                          scaled(ga.transposed() - ga, ga)});
    }
    return {"Penrose conditions", worst <= 1e-8, "worst scaled residual " + fmt(worst * 1e12, 3) + "e-12"};
}

Sub pca_round_trip() {
    double worst = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto data = oracle::random_points(100, 6, seed);
        const auto m = pca_fit(data);
        const Matrix back = pca_project(m, data, 6) * m.components.transposed();
        for (std::size_t i = 0; i < data.rows(); ++i)
            for (std::size_t j = 0; j < 6; ++j) worst = std::max(worst, std::abs(back(i, j) + m.center[j] - data(i, j)));
    }
    return {"PCA round trip", worst <= 1e-8, "worst " + fmt(worst * 1e12, 3) + "e-12"};
}

Sub alignment_invariance() {
    std::mt19937 gen(4);
    std::size_t violations = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const int k = 2 + trial % 5;
        Labels t(80), p(80), pp(80);
        for (int i = 0; i < 80; ++i) {
            t[i] = static_cast<int>(gen() % k);
            p[i] = gen() % 4 == 0 ? static_cast<int>(gen() % k) : t[i];
        }
        std::vector<int> pi(k);
        std::iota(pi.begin(), pi.end(), 0);
        std::shuffle(pi.begin(), pi.end(), gen);
        Labels perm_t(80);
        for (int i = 0; i < 80; ++i) {
            pp[i] = pi[p[i]];
            perm_t[i] = pi[t[i]];
        }
        const auto base = align_and_score(confusion(t, p, k, k)).misclassified;
        violations += align_and_score(confusion(t, pp, k, k)).misclassified != base;
        violations += align_and_score(confusion(t, perm_t, k, k)).misclassified != 0;
    }
    return {"alignment invariant under relabelling", violations == 0, std::to_string(violations) + " violations"};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

Sub cli_byte_identical() {
    namespace fs = std::filesystem;
    const fs::path root = fs::temp_directory_path() / ("metriclust_accept_" + std::to_string(::getpid()));
    fs::remove_all(root);
    std::size_t mismatches = 0, files = 0;
    bool ran = true;
    const std::vector<std::vector<std::string>> commands = {
        {"cluster", "--seed", "7", "--n-start", "20"},
        {"cluster", "--seed", "7", "--metric", "maximum", "--n-start", "20"},
        {"cluster", "--seed", "7", "--mahalanobis", "--euclid-starts", "10"},
        {"scree", "--seed", "7", "--n-start", "5"},
        {"project", "--seed", "7"},
    };
    for (std::size_t c = 0; c < commands.size(); ++c) {
        for (const char* rep : {"a", "b"}) {
            auto args = commands[c];
            args.insert(args.begin(), "metriclust");
            args.insert(args.end(), {"--threads", rep[0] == 'a' ? "1" : "4", "--out", (root / rep).string()});
            std::ostringstream out, err;
            ran = ran && cli::run(args, out, err) == 0;
        }
        for (const auto& e : fs::directory_iterator(root / "a")) {
            ++files;
            if (e.path().filename() == "config.json") continue;
            mismatches += slurp(e.path()) != slurp(root / "b" / e.path().filename());
        }
        fs::remove_all(root);
    }
    return {"seeded CLI outputs byte-identical", ran && mismatches == 0,
            std::to_string(mismatches) + " differing files of " + std::to_string(files)};
}

void criterion_properties(Report& report) {
    const std::vector<Sub> subs = {metric_axioms(),    minkowski_limit(),   mahalanobis_identity(),
                                   lloyd_monotone(),   exhaustive_optimum(), penrose(),
                                   pca_round_trip(),   alignment_invariance(), cli_byte_identical()};
    std::size_t passed = 0;
    std::string failed;
    for (const auto& s : subs) {
        std::cout << "      " << (s.pass ? "ok  " : "FAIL") << "  " << s.name << ": " << s.detail << '\n';
        if (s.pass) {
            ++passed;
        } else {
            failed += (failed.empty() ? "" : ", ") + s.name;
        }
    }
    report.record("C10", passed == subs.size(),
                  "property suites: " + std::to_string(passed) + "/" + std::to_string(subs.size()) + " pass" +
                      (failed.empty() ? "" : " (failed: " + failed + ")"));
}

}  // namespace

int main() {
    const auto start = std::chrono::steady_clock::now();
    Report report;
    criterion_point_metric(report, "C1", Metric::euclidean(), kEuclidRange, true);
    criterion_point_metric(report, "C2", Metric::manhattan(), kManhattanRange, false);
    criterion_point_metric(report, "C3", Metric::maximum(), kMaximumRange, false);
    criterion_mahalanobis(report);
    criterion_centroids(report);
    criterion_scree(report);
    std::cout << "SKIP  C7-C9  bean-data criteria run in the acceptance_drybean test" << std::endl;
    criterion_properties(report);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << report.failures() << " failing criteria; " << fmt(secs, 1) << " s" << std::endl;
    return report.exit_code();
}
