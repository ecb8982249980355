#pragma once

#include <cstdint>

#include "epochbc/graph.hpp"

namespace epochbc {

struct RmatParams {
    int scale = 10;      // 2^scale vertices
    int edge_factor = 30; // generated edge samples per vertex
    double a = 0.57, b = 0.19, c = 0.19, d = 0.05;
    std::uint64_t seed = 1;
};

// Recursive-quadrant R-MAT generator. Returns the graph on all 2^scale
// vertices (isolated vertices included) after symmetrization and
// deduplication; run largest_connected_component separately if needed.
// Deterministic for a fixed seed. Requires a+b+c+d = 1 (1e-9) and scale <= 30.
Graph gen_rmat(const RmatParams &params);

} // namespace epochbc
