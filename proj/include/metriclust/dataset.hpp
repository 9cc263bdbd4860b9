#pragma once

#include <string>
#include <vector>

#include "metriclust/types.hpp"

namespace metriclust {

/// Observations with known class membership. Labels are contiguous from 0 and
/// index into class_names when it is non-empty.
struct LabeledDataset {
    DataMatrix data;
    Labels labels;
    std::vector<std::string> class_names;
    std::vector<std::string> feature_names;

    std::size_t class_count() const;
    std::vector<std::size_t> class_sizes() const;
};

}  // namespace metriclust
