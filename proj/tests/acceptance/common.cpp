#include "common.hpp"

#include <algorithm>
#include <cstdio>
#include <iostream>

#include "metriclust/eval.hpp"

namespace acceptance {

void Report::record(const std::string& id, bool pass, const std::string& summary) {
    if (!pass) ++failures_;
    std::cout << (pass ? "PASS" : "FAIL") << "  " << id << "  " << summary << std::endl;
}

double median(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

double fraction(const std::vector<bool>& flags) {
    return static_cast<double>(std::count(flags.begin(), flags.end(), true)) / static_cast<double>(flags.size());
}

std::string fmt(double v, int precision) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", precision, v);
    return buf;
}

std::string percent(double f) { return fmt(100.0 * f, 0) + "%"; }

Scored score(const metriclust::LabeledDataset& ds, const metriclust::Labels& predicted, std::size_t k) {
    const auto cm = metriclust::confusion(ds.labels, predicted, ds.class_count(), k);
    const auto aligned = metriclust::align_and_score(cm);
    Scored s;
    s.misclassified = aligned.misclassified;
    const auto sizes = cm.row_totals();
    for (std::size_t t = 0; t < sizes.size(); ++t) s.class_errors.push_back(sizes[t] - aligned.per_cluster_correct[t]);
    return s;
}

}  // namespace acceptance
