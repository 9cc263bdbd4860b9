#include "metriclust/eval.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace metriclust {

std::vector<std::size_t> ConfusionMatrix::row_totals() const {
    std::vector<std::size_t> totals(rows_, 0);
    for (std::size_t t = 0; t < rows_; ++t)
        for (std::size_t p = 0; p < cols_; ++p) totals[t] += at(t, p);
    return totals;
}

std::vector<std::size_t> ConfusionMatrix::col_totals() const {
    std::vector<std::size_t> totals(cols_, 0);
    for (std::size_t t = 0; t < rows_; ++t)
        for (std::size_t p = 0; p < cols_; ++p) totals[p] += at(t, p);
    return totals;
}

std::size_t ConfusionMatrix::total() const {
    return std::accumulate(counts_.begin(), counts_.end(), std::size_t{0});
}

ConfusionMatrix ConfusionMatrix::from_rows(const std::vector<std::vector<std::size_t>>& rows) {
    ConfusionMatrix cm(rows.size(), rows.empty() ? 0 : rows.front().size());
    for (std::size_t t = 0; t < rows.size(); ++t) {
        if (rows[t].size() != cm.cols_) throw data_error("ragged confusion matrix");
        for (std::size_t p = 0; p < cm.cols_; ++p) cm.at(t, p) = rows[t][p];
    }
    return cm;
}

ConfusionMatrix confusion(const Labels& truth, const Labels& predicted, std::size_t min_true,
                          std::size_t min_pred) {
    if (truth.size() != predicted.size()) {
        throw data_error("label length mismatch: " + std::to_string(truth.size()) + " true vs " +
                         std::to_string(predicted.size()) + " predicted");
    }
    std::size_t rows = min_true;
    std::size_t cols = min_pred;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        if (truth[i] < 0 || predicted[i] < 0) throw data_error("negative label");
        rows = std::max(rows, static_cast<std::size_t>(truth[i]) + 1);
        cols = std::max(cols, static_cast<std::size_t>(predicted[i]) + 1);
    }
    ConfusionMatrix cm(rows, cols);
    for (std::size_t i = 0; i < truth.size(); ++i) {
        ++cm.at(static_cast<std::size_t>(truth[i]), static_cast<std::size_t>(predicted[i]));
    }
    return cm;
}

AlignedEvaluation align_and_score(const ConfusionMatrix& cm) {
    const std::size_t m = std::max(cm.true_classes(), cm.predicted_clusters());
    if (m > kMaxAlignClusters) {
        throw config_error("too many clusters to align exhaustively (" + std::to_string(m) +
                           " > 8); use explicit mapping");
    }
    auto cell = [&](std::size_t t, std::size_t p) -> std::size_t {
        return t < cm.true_classes() && p < cm.predicted_clusters() ? cm.at(t, p) : 0;
    };

    std::vector<int> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<int> best = perm;
    std::size_t best_trace = 0;
    bool first = true;
    do {
        std::size_t trace = 0;
        for (std::size_t p = 0; p < m; ++p) trace += cell(static_cast<std::size_t>(perm[p]), p);
        if (first || trace > best_trace) {
            best_trace = trace;
            best = perm;
            first = false;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));

    AlignedEvaluation eval;
    eval.permutation = best;
    eval.misclassified = cm.total() - best_trace;
    eval.per_cluster_correct.assign(cm.true_classes(), 0);
    for (std::size_t p = 0; p < m; ++p) {
        const auto t = static_cast<std::size_t>(best[p]);
        if (t < cm.true_classes()) eval.per_cluster_correct[t] = cell(t, p);
    }
    return eval;
}

}  // namespace metriclust
