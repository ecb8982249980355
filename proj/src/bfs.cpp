#include "epochbc/bfs.hpp"

#include <algorithm>

#include "epochbc/rng.hpp"

namespace epochbc {

BfsResult bfs(const Graph &g, Vertex source) {
    require(source < g.num_vertices(), "bfs: source out of range");
    BfsResult r;
    r.dist.assign(g.num_vertices(), kUnreached);
    std::vector<Vertex> queue;
    queue.reserve(g.num_vertices());
    queue.push_back(source);
    r.dist[source] = 0;
    r.farthest = source;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        Vertex u = queue[head];
        std::uint32_t du = r.dist[u];
        if (du > r.eccentricity || (du == r.eccentricity && u < r.farthest)) {
            r.eccentricity = du;
            r.farthest = u;
        }
        for (Vertex v : g.neighbors(u)) {
            if (r.dist[v] == kUnreached) {
                r.dist[v] = du + 1;
                queue.push_back(v);
            }
        }
    }
    r.reached = queue.size();
    return r;
}

GraphStats diameter_upper_bound(const Graph &g, int sweeps, std::uint64_t seed) {
    const Vertex n = g.num_vertices();
    require(n >= 1, "diameter_upper_bound: empty graph");
    require(sweeps >= 1, "diameter_upper_bound: need at least one sweep");

    Vertex start = 0;
    for (Vertex v = 1; v < n; ++v)
        if (g.degree(v) > g.degree(start))
            start = v;

    Rng rng = Rng::stream(seed, /*rank=*/0, /*thread=*/0x00d1a0ULL);
    std::uint64_t upper = UINT64_MAX;
    std::uint64_t lower = 0;
    std::vector<char> used(n, 0);
    Vertex v = start;
    for (int i = 0; i < sweeps; ++i) {
        BfsResult r = bfs(g, v);
        if (r.reached != n)
            throw ConfigError("diameter_upper_bound: graph is disconnected");
        upper = std::min<std::uint64_t>(upper, 2ULL * r.eccentricity);
        lower = std::max<std::uint64_t>(lower, r.eccentricity);
        used[v] = 1;
        if (n == 1)
            break;
        // Next sweep from the farthest vertex; random restart if it repeats.
        v = r.farthest;
        for (int tries = 0; used[v] && tries < 16; ++tries)
            v = static_cast<Vertex>(rng.next_below(n));
        if (used[v])
            break;
    }
    require(lower <= upper, "diameter bound: lower exceeds upper");

    GraphStats st;
    st.n = n;
    st.m = g.num_edges();
    st.diameter_upper_bound = upper;
    st.diameter_lower_bound = lower;
    st.vertex_diameter_bound = upper + 1;
    return st;
}

} // namespace epochbc
