#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "epochbc/graph.hpp"
#include "epochbc/rng.hpp"
#include "epochbc/state_frame.hpp"
#include "epochbc/types.hpp"

namespace epochbc {

/// One sampled shortest-path observation. `internal` holds the vertices
/// strictly between source and target, in path order; it is empty when the
/// endpoints are adjacent or disconnected (the sample still counts toward
/// tau in both cases).
struct PathSample {
    Vertex source = 0;
    Vertex target = 0;
    std::vector<Vertex> internal;
};

/// Reusable per-worker buffers for the bidirectional search. Visitation
/// stamps give O(1) reset between samples.
class SearchScratch {
public:
    explicit SearchScratch(Vertex num_vertices);

    SearchScratch(const SearchScratch &) = delete;
    SearchScratch &operator=(const SearchScratch &) = delete;
    SearchScratch(SearchScratch &&) = default;
    SearchScratch &operator=(SearchScratch &&) = default;

private:
    friend void sample_shortest_path(const Graph &, Vertex, Vertex, SearchScratch &, Rng &,
                                     PathSample &);

    struct Side {
        std::vector<std::uint32_t> dist;
        std::vector<std::uint64_t> sigma;
        std::vector<std::uint32_t> stamp;
        std::vector<Vertex> frontier;
        std::vector<Vertex> next;
        Count pending_edges = 0;
        std::uint32_t depth = 0;

        bool visited(Vertex v, std::uint32_t cur) const { return stamp[v] == cur; }
        void settle(Vertex v, std::uint32_t d, std::uint32_t cur) {
            stamp[v] = cur;
            dist[v] = d;
            sigma[v] = 0;
        }
    };

    Side fwd_;
    Side bwd_;
    std::vector<Vertex> meet_;
    std::uint32_t round_ = 0;
};

// Uniform over ordered pairs (s, t) with s != t. Requires n >= 2.
std::pair<Vertex, Vertex> sample_pair(Vertex n, Rng &rng);

// Draws one shortest s-t path uniformly at random among all shortest s-t
// paths via bidirectional BFS: a meeting vertex is picked with probability
// proportional to sigma_s(v) * sigma_t(v), then the walk to each endpoint
// picks predecessors proportional to their sigma counts. Unreachable t
// yields an empty internal set.
void sample_shortest_path(const Graph &g, Vertex s, Vertex t, SearchScratch &scratch, Rng &rng,
                          PathSample &out);

// frame.tau += 1; frame.c[v] += 1 for each internal vertex.
inline void apply_sample(StateFrame &frame, const PathSample &sample) {
    frame.record_sample_start();
    for (Vertex v : sample.internal)
        frame.record_occurrence(v);
}

} // namespace epochbc
