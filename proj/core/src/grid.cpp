#include "jumplab/grid.hpp"

#include "jumplab/errors.hpp"

namespace jumplab {

Grid Grid::uniform(int n_interior) {
    if (n_interior < 3) {
        throw InvalidArgument("grid needs at least 3 interior nodes, got " +
                              std::to_string(n_interior));
    }
    Grid g;
    g.n_interior = n_interior;
    g.h = 1.0 / (n_interior + 1);
    g.nodes.resize(static_cast<size_t>(n_interior));
    for (int i = 1; i <= n_interior; ++i) {
        g.nodes[static_cast<size_t>(i) - 1] = i * g.h;
    }
    return g;
}

Grid build_grid(int n_interior) { return Grid::uniform(n_interior); }

}  // namespace jumplab
