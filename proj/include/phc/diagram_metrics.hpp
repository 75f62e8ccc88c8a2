#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "phc/cubical.hpp"

namespace phc {

// An optimal transport plan between two diagrams. A std::nullopt side marks
// a diagonal match, which costs (death - birth) / 2 under the L-infinity
// ground metric. Every off-diagonal point appears in exactly one pair.
struct Matching {
    std::vector<std::pair<std::optional<PersistencePoint>, std::optional<PersistencePoint>>> pairs;
    double total_cost = 0.0;
};

// 1-Wasserstein distance: minimal total L-infinity matching cost with
// diagonal projections allowed, solved exactly per homology dimension and
// summed over dimensions 0 and 1. Infinite deaths are replaced by the cap.
double wasserstein1(const PersistenceDiagram& a, const PersistenceDiagram& b);

// Same optimum along with one realizing matching.
Matching wasserstein1_matching(const PersistenceDiagram& a, const PersistenceDiagram& b);

// Bottleneck distance: minimal over matchings of the largest single-pair
// cost, per dimension, maximized over dimensions. Exact, via binary search
// over candidate costs with bipartite feasibility checks.
double bottleneck(const PersistenceDiagram& a, const PersistenceDiagram& b);

// L_p norm of the difference of Betti curves, integrated exactly over the
// merged breakpoint partition on [min birth, cap], per dimension and summed
// over dimensions 0 and 1. p >= 1, default 1.
double betti_distance(const PersistenceDiagram& a, const PersistenceDiagram& b, double p = 1.0);

}  // namespace phc
