#pragma once

#include <cstddef>
#include <vector>

#include "metriclust/types.hpp"

namespace metriclust {

struct StandardizationParams {
    Vector mean;
    Vector sd;  // divisor n - 1
    /// Columns with zero spread; they are centered but not scaled.
    std::vector<bool> zero_variance;

    bool any_zero_variance() const;
};

struct Standardized {
    DataMatrix data;
    StandardizationParams params;
};

/// Per-column z-scores. Throws a data error for fewer than two rows.
Standardized standardize(const DataMatrix& data);

struct PcaModel {
    Vector center;
    Matrix components;  // d x d, column k is the k-th principal axis
    Vector eigenvalues;  // descending
    Vector explained_variance_ratio;
};

/// Principal axes of the sample covariance. Callers standardize first when
/// units differ; the pipeline here always does.
PcaModel pca_fit(const DataMatrix& data);

/// Scores on the leading `n_components` axes.
DataMatrix pca_project(const PcaModel& model, const DataMatrix& data, std::size_t n_components);

}  // namespace metriclust
