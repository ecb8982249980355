#pragma once

#include <cstdint>
#include <vector>

#include "epochbc/graph.hpp"
#include "epochbc/types.hpp"

namespace epochbc {

struct BfsResult {
    std::vector<std::uint32_t> dist; // kUnreached where not reached
    Vertex farthest = 0;             // max-distance vertex, lowest ID on ties
    std::uint32_t eccentricity = 0;  // distance of `farthest`
    Count reached = 0;
};

BfsResult bfs(const Graph &g, Vertex source);

struct GraphStats {
    Vertex n = 0;
    Count m = 0;
    std::uint64_t diameter_upper_bound = 0;
    std::uint64_t diameter_lower_bound = 0; // max eccentricity observed
    std::uint64_t vertex_diameter_bound = 0;
};

// Certified diameter upper bound via double-sweep BFS: the first sweep starts
// at the max-degree vertex, each following sweep at the previous farthest
// vertex (random restart when the endpoint repeats). Upper bound is
// min over sweeps of 2*ecc(v_i); lower bound is the max eccentricity seen.
// The vertex diameter bound is upper + 1 (hop count to path vertex count).
// Requires a connected graph.
GraphStats diameter_upper_bound(const Graph &g, int sweeps = 4, std::uint64_t seed = 0);

} // namespace epochbc
