#include "metriclust/datagen.hpp"

#include <algorithm>
#include <cmath>

#include "metriclust/linalg.hpp"

namespace metriclust {

std::size_t LabeledDataset::class_count() const {
    if (!class_names.empty()) return class_names.size();
    int top = -1;
    for (int l : labels) top = std::max(top, l);
    return static_cast<std::size_t>(top + 1);
}

std::vector<std::size_t> LabeledDataset::class_sizes() const {
    std::vector<std::size_t> sizes(class_count(), 0);
    for (int l : labels) ++sizes[static_cast<std::size_t>(l)];
    return sizes;
}

namespace benchmark {
Vector mean_a() { return {1.0, 1.0}; }
Matrix cov_a() { return {{1.5, 1.0}, {1.0, 1.0}}; }
Vector mean_b() { return {-0.5, 0.5}; }
Matrix cov_b() { return {{0.8, -0.5}, {-0.5, 0.6}}; }
}  // namespace benchmark

Matrix sampling_factor(const Matrix& sigma) {
    if (sigma.rows() != sigma.cols() || !linalg::is_symmetric(sigma)) {
        throw data_error("covariance must be a symmetric square matrix");
    }
    try {
        return linalg::cholesky(sigma);
    } catch (const Error&) {
        // Singular or indefinite; the eigen route decides which.
    }
    const auto eig = linalg::symmetric_eigen(sigma);
    const std::size_t d = sigma.rows();
    Matrix factor(d, d);
    for (std::size_t k = 0; k < d; ++k) {
        const double lambda = eig.values[k];
        if (lambda < -1e-10) throw data_error("covariance has a negative eigenvalue");
        const double root = std::sqrt(std::max(lambda, 0.0));
        for (std::size_t i = 0; i < d; ++i) factor(i, k) = eig.vectors(i, k) * root;
    }
    return factor;
}

DataMatrix sample_mvn(const MvnSpec& spec, Rng& rng) {
    const std::size_t d = spec.mu.size();
    if (spec.sigma.rows() != d) throw data_error("mean and covariance dimensions differ");
    const Matrix factor = sampling_factor(spec.sigma);
    DataMatrix out(spec.n, d);
    Vector z(d);
    for (std::size_t i = 0; i < spec.n; ++i) {
        for (double& v : z) v = rng.normal();
        auto row = out.row(i);
        for (std::size_t a = 0; a < d; ++a) {
            double s = spec.mu[a];
            for (std::size_t b = 0; b < d; ++b) s += factor(a, b) * z[b];
            row[a] = s;
        }
    }
    return out;
}

LabeledDataset simulate_benchmark(std::uint64_t seed) {
    using namespace benchmark;
    Rng rng(seed);
    const DataMatrix first = sample_mvn({mean_a(), cov_a(), kPointsPerClass}, rng);
    const DataMatrix second = sample_mvn({mean_b(), cov_b(), kPointsPerClass}, rng);

    LabeledDataset ds;
    ds.data = DataMatrix(2 * kPointsPerClass, 2);
    ds.labels.assign(2 * kPointsPerClass, 0);
    for (std::size_t i = 0; i < kPointsPerClass; ++i) {
        std::copy_n(first.row(i).begin(), 2, ds.data.row(i).begin());
        std::copy_n(second.row(i).begin(), 2, ds.data.row(kPointsPerClass + i).begin());
        ds.labels[kPointsPerClass + i] = 1;
    }
    ds.class_names = {"0", "1"};
    ds.feature_names = {"X1", "X2"};
    return ds;
}

}  // namespace metriclust
