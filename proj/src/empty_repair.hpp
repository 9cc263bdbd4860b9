#pragma once

#include <cstddef>
#include <vector>

#include "metriclust/types.hpp"

namespace metriclust::detail {

/// Gives every empty cluster a singleton member: the point farthest from its
/// own cluster (per `dist_to_own(i)`), taken only from clusters that keep at
/// least one member. Empty clusters are filled in index order; ties pick the
/// lowest point index. `on_move(i, from, to)` runs after each relabel so the
/// caller can refresh whatever `dist_to_own` reads. Returns the move count.
template <class DistToOwn, class OnMove>
std::size_t repair_empty_clusters(Labels& labels, std::vector<std::size_t>& counts,
                                  DistToOwn&& dist_to_own, OnMove&& on_move) {
    std::size_t moves = 0;
    for (std::size_t c = 0; c < counts.size(); ++c) {
        if (counts[c] != 0) continue;
        std::size_t best = labels.size();
        double best_dist = -1.0;
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (counts[static_cast<std::size_t>(labels[i])] < 2) continue;
            const double dist = dist_to_own(i);
            if (dist > best_dist) {
                best_dist = dist;
                best = i;
            }
        }
        if (best == labels.size()) {
            throw numerical_error("cannot repair empty cluster: no cluster has a spare point");
        }
        const auto from = static_cast<std::size_t>(labels[best]);
        --counts[from];
        ++counts[c];
        labels[best] = static_cast<int>(c);
        ++moves;
        on_move(best, from, c);
    }
    return moves;
}

}  // namespace metriclust::detail
