#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "metriclust/dataset.hpp"
#include "metriclust/kmeans.hpp"

namespace acceptance {

/// Collects one verdict per criterion and prints it as a single line.
class Report {
public:
    void record(const std::string& id, bool pass, const std::string& summary);
    int exit_code() const { return failures_ == 0 ? 0 : 1; }
    std::size_t failures() const { return failures_; }

private:
    std::size_t failures_ = 0;
};

double median(std::vector<double> values);
double fraction(const std::vector<bool>& flags);
std::string fmt(double v, int precision = 3);
std::string percent(double f);

struct Scored {
    std::size_t misclassified = 0;
    /// Errors per true class after alignment.
    std::vector<std::size_t> class_errors;
};

Scored score(const metriclust::LabeledDataset& ds, const metriclust::Labels& predicted, std::size_t k);

}  // namespace acceptance
