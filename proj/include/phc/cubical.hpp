#pragma once

#include <string>
#include <utility>
#include <vector>

#include "phc/image.hpp"

namespace phc {

struct PersistencePoint {
    double birth = 0.0;
    double death = 0.0;  // +infinity for essential classes
    int dim = 0;         // 0 or 1
    friend bool operator==(const PersistencePoint&, const PersistencePoint&) = default;
};

// Birth/death pairs of the sublevel filtration, H0 and H1, with
// zero-persistence pairs dropped. Points are sorted by (dim, birth, death).
// `cap` is the finite stand-in substituted for +infinity inside distance
// computations; it is fixed at 255 so distances stay comparable across images.
struct PersistenceDiagram {
    std::vector<PersistencePoint> points;
    double cap = 255.0;
};

// Persistence of the sublevel sets {I <= alpha} of the cubical complex with
// pixels as top cells (lower cells take the min over incident pixels).
// Pixel components are 8-connected under this construction.
PersistenceDiagram sublevel_diagram(const GrayImage& img);

// Right-continuous step function beta_dim(alpha) as (threshold, count)
// breakpoints; counts points with birth <= alpha < death, infinite deaths
// never expiring.
std::vector<std::pair<double, int>> betti_curve(const PersistenceDiagram& d, int dim);

// Evaluate a betti_curve at a threshold.
int betti_at(const std::vector<std::pair<double, int>>& curve, double alpha);

// CSV rows "dim,birth,death" with a "+inf" literal for essential classes.
std::string diagram_to_csv(const PersistenceDiagram& d);

}  // namespace phc
