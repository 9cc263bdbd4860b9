#pragma once

#include <cstddef>
#include <cstdint>

#include "metriclust/dataset.hpp"
#include "metriclust/rng.hpp"
#include "metriclust/types.hpp"

namespace metriclust {

struct MvnSpec {
    Vector mu;
    Matrix sigma;  // symmetric positive semi-definite
    std::size_t n = 0;
};

/// Matrix L with L * L^T = sigma: the Cholesky factor when sigma is positive
/// definite, otherwise V * sqrt(max(lambda, 0)) from its eigendecomposition.
/// Throws a data error for asymmetric sigma or eigenvalues below -1e-10.
Matrix sampling_factor(const Matrix& sigma);

/// Rows mu + L z with z standard normal, drawn from `rng` in row order.
DataMatrix sample_mvn(const MvnSpec& spec, Rng& rng);

/// Two crossing elongated Gaussians in the plane: 1000 draws from
/// N((1, 1), [[1.5, 1], [1, 1]]) labelled 0, then 1000 from
/// N((-0.5, 0.5), [[0.8, -0.5], [-0.5, 0.6]]) labelled 1. One RNG stream.
LabeledDataset simulate_benchmark(std::uint64_t seed);

namespace benchmark {
inline constexpr std::size_t kPointsPerClass = 1000;
Vector mean_a();
Matrix cov_a();
Vector mean_b();
Matrix cov_b();
}  // namespace benchmark

}  // namespace metriclust
