#pragma once

#include <cstdint>
#include <vector>

#include "epochbc/graph.hpp"

namespace epochbc {

// Per-vertex normalized betweenness: b(x) = 1/(n(n-1)) * sum over ordered
// pairs s != t of sigma_st(x)/sigma_st, endpoints excluded.
using ExactScores = std::vector<double>;

// Exact betweenness via dependency accumulation over |V| augmented BFS
// searches. Deterministic regardless of the worker count: per-source
// contributions are merged in fixed source-block order. Dependency sums use
// compensated accumulation so small contributions are not lost on large n.
ExactScores brandes_exact(const Graph &g, int num_workers = 0);

// Independent oracle: all-pairs BFS with explicit sigma counting, no
// dependency recursion. Guarded to n <= 200.
ExactScores brute_force_betweenness(const Graph &g);

// All distinct shortest s-t paths as vertex sequences (including endpoints).
// Guards: n <= 50 and at most `max_paths` paths.
std::vector<std::vector<Vertex>> enumerate_shortest_paths(const Graph &g, Vertex s, Vertex t,
                                                          std::size_t max_paths = 10000);

} // namespace epochbc
