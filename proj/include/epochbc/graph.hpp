#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "epochbc/types.hpp"

namespace epochbc {

/// Immutable undirected unweighted graph in CSR form. Neighbor lists are
/// sorted; both edge orientations are stored, so for undirected graphs the
/// structure is symmetric. Vertex IDs are dense in [0, n); `original_ids`
/// maps them back to the IDs seen in the input.
///
/// Safe for unrestricted concurrent read access; construction is
/// single-threaded.
class Graph {
public:
    Graph() = default;

    // Canonicalizes: drops self-loops, deduplicates, symmetrizes, sorts rows.
    // `n` fixes the vertex-ID range; endpoints must be < n.
    static Graph from_edges(Vertex n, std::vector<std::pair<Vertex, Vertex>> edges);

    Vertex num_vertices() const { return n_; }
    Count num_edges() const { return m_; } // undirected edge count

    std::span<const Vertex> neighbors(Vertex v) const {
        return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
    }
    Count degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }
    bool has_edge(Vertex u, Vertex v) const;

    // Dense ID -> ID in the originally ingested input. Identity after
    // from_edges/gen; composed through remappings (load, LCC).
    const std::vector<std::uint64_t> &original_ids() const { return original_ids_; }
    void set_original_ids(std::vector<std::uint64_t> ids);

    const std::vector<Count> &offsets() const { return offsets_; }
    const std::vector<Vertex> &targets() const { return targets_; }

private:
    Vertex n_ = 0;
    Count m_ = 0;
    std::vector<Count> offsets_;  // size n+1
    std::vector<Vertex> targets_; // size 2m
    std::vector<std::uint64_t> original_ids_;
};

struct LoadOptions {
    bool keep_comments = false; // unused hook; comments always skipped
};

// Whitespace-separated integer pairs, one edge per line; '#'/'%' start
// comment lines; an optional third column (weight) is ignored. IDs are
// remapped densely in sorted order of the original IDs.
Graph load_edge_list(std::istream &in, const LoadOptions &opts = {});

// Same text format the loader reads, one undirected edge per line with
// original IDs, endpoints in sorted order.
void write_edge_list(const Graph &g, std::ostream &out);

// Binary cache: magic + version + little-endian arrays. Much faster to
// reload than the text format on large instances.
void write_binary(const Graph &g, std::ostream &out);
Graph load_binary(std::istream &in);

// Sniffs the binary magic, falls back to text.
Graph load_graph_file(const std::string &path);
void save_graph_file(const Graph &g, const std::string &path, bool binary = false);

// Induced subgraph on the largest connected component, IDs remapped densely
// (relative order preserved); ties broken toward the component containing
// the smallest original vertex ID.
Graph largest_connected_component(const Graph &g);

} // namespace epochbc
