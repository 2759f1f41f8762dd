#pragma once

#include <vector>

namespace jumplab {

/// Uniform mesh of (0,1): interior nodes x_i = i*h, i = 1..n_interior,
/// h = 1/(n_interior+1). Boundary points 0 and 1 are not stored in `nodes`
/// but participate in full-index addressing (0 and n_interior+1).
struct Grid {
    int n_interior = 0;
    double h = 0.0;
    std::vector<double> nodes;  // interior coordinates, strictly increasing

    /// Build a uniform grid. Requires n_interior >= 3.
    static Grid uniform(int n_interior);

    /// Coordinate by full index 0..n_interior+1 (0 -> 0.0, n+1 -> 1.0 exactly).
    double x(int full_index) const {
        if (full_index == 0) return 0.0;
        if (full_index == n_interior + 1) return 1.0;
        return nodes[static_cast<size_t>(full_index) - 1];
    }

    int n_full() const { return n_interior + 2; }
};

Grid build_grid(int n_interior);

}  // namespace jumplab
