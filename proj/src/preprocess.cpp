#include "metriclust/preprocess.hpp"

#include <algorithm>
#include <cmath>

#include "metriclust/linalg.hpp"

namespace metriclust {

bool StandardizationParams::any_zero_variance() const {
    return std::any_of(zero_variance.begin(), zero_variance.end(), [](bool z) { return z; });
}

Standardized standardize(const DataMatrix& data) {
    if (data.rows() < 2) throw data_error("standardize needs at least two rows");
    const std::size_t n = data.rows();
    const std::size_t d = data.cols();

    StandardizationParams params;
    params.mean = linalg::mean(data);
    params.sd.assign(d, 0.0);
    params.zero_variance.assign(d, false);
    for (std::size_t i = 0; i < n; ++i) {
        const auto row = data.row(i);
        for (std::size_t j = 0; j < d; ++j) {
            const double diff = row[j] - params.mean[j];
            params.sd[j] += diff * diff;
        }
    }
    for (std::size_t j = 0; j < d; ++j) {
        params.sd[j] = std::sqrt(params.sd[j] / static_cast<double>(n - 1));
        params.zero_variance[j] = !(params.sd[j] > 0.0);
    }

    DataMatrix out(n, d);
    for (std::size_t i = 0; i < n; ++i) {
        const auto src = data.row(i);
        auto dst = out.row(i);
        for (std::size_t j = 0; j < d; ++j) {
            const double centered = src[j] - params.mean[j];
            dst[j] = params.zero_variance[j] ? centered : centered / params.sd[j];
        }
    }
    return {std::move(out), std::move(params)};
}

PcaModel pca_fit(const DataMatrix& data) {
    const Matrix cov = linalg::covariance(data);
    auto eig = linalg::symmetric_eigen(cov);

    PcaModel model;
    model.center = linalg::mean(data);
    model.components = std::move(eig.vectors);
    model.eigenvalues = std::move(eig.values);

    double total = 0.0;
    for (double& l : model.eigenvalues) {
        if (l < 0.0 && l >= -1e-10) l = 0.0;
        total += l;
    }
    if (!(total > 0.0)) throw data_error("pca: data has zero total variance");
    model.explained_variance_ratio.reserve(model.eigenvalues.size());
    for (double l : model.eigenvalues) model.explained_variance_ratio.push_back(l / total);
    return model;
}

DataMatrix pca_project(const PcaModel& model, const DataMatrix& data, std::size_t n_components) {
    const std::size_t d = model.center.size();
    if (n_components > d) {
        throw config_error("pca: requested " + std::to_string(n_components) + " components but data has " +
                           std::to_string(d) + " dimensions");
    }
    if (data.cols() != d) throw data_error("pca: dimension mismatch");
    DataMatrix scores(data.rows(), n_components);
    for (std::size_t i = 0; i < data.rows(); ++i) {
        const auto row = data.row(i);
        for (std::size_t k = 0; k < n_components; ++k) {
            double s = 0.0;
            for (std::size_t j = 0; j < d; ++j) s += (row[j] - model.center[j]) * model.components(j, k);
            scores(i, k) = s;
        }
    }
    return scores;
}

}  // namespace metriclust
