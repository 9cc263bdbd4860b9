#pragma once

#include <cstddef>
#include <vector>

#include "metriclust/types.hpp"

namespace metriclust {

/// Counts of true class (rows) against predicted cluster (columns).
class ConfusionMatrix {
public:
    ConfusionMatrix(std::size_t true_classes, std::size_t predicted_clusters)
        : rows_(true_classes), cols_(predicted_clusters), counts_(true_classes * predicted_clusters, 0) {}

    std::size_t true_classes() const noexcept { return rows_; }
    std::size_t predicted_clusters() const noexcept { return cols_; }
    std::size_t& at(std::size_t t, std::size_t p) { return counts_[t * cols_ + p]; }
    std::size_t at(std::size_t t, std::size_t p) const { return counts_[t * cols_ + p]; }

    std::vector<std::size_t> row_totals() const;
    std::vector<std::size_t> col_totals() const;
    std::size_t total() const;

    static ConfusionMatrix from_rows(const std::vector<std::vector<std::size_t>>& rows);

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<std::size_t> counts_;
};

/// Cross-tabulation. Grid size is the largest label + 1 on each side unless
/// explicit minimum sizes are given.
ConfusionMatrix confusion(const Labels& truth, const Labels& predicted, std::size_t min_true = 0,
                          std::size_t min_pred = 0);

struct AlignedEvaluation {
    /// permutation[p] is the true class matched to predicted cluster p.
    std::vector<int> permutation;
    std::size_t misclassified = 0;
    /// Correctly placed points per true class.
    std::vector<std::size_t> per_cluster_correct;
};

inline constexpr std::size_t kMaxAlignClusters = 8;

/// Exhaustive search over bijections for the largest matched total; ties go
/// to the lexicographically smallest permutation. A non-square grid is padded
/// with empty rows or columns. More than 8 classes is a config error.
AlignedEvaluation align_and_score(const ConfusionMatrix& cm);

}  // namespace metriclust
