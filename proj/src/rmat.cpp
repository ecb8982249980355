#include "epochbc/rmat.hpp"

#include <cmath>

#include "epochbc/rng.hpp"

namespace epochbc {

Graph gen_rmat(const RmatParams &p) {
    if (p.scale < 1 || p.scale > 30)
        throw ConfigError("gen_rmat: scale must be in [1, 30]");
    if (p.edge_factor < 1)
        throw ConfigError("gen_rmat: edge_factor must be positive");
    if (p.a < 0 || p.b < 0 || p.c < 0 || p.d < 0 ||
        std::abs(p.a + p.b + p.c + p.d - 1.0) > 1e-9)
        throw ConfigError("gen_rmat: quadrant probabilities must be nonnegative and sum to 1");

    const Vertex n = Vertex{1} << p.scale;
    const Count samples = static_cast<Count>(p.edge_factor) * n;
    Rng rng = Rng::stream(p.seed, 0, 0x00a3a7ULL);

    std::vector<std::pair<Vertex, Vertex>> edges;
    edges.reserve(samples);
    for (Count i = 0; i < samples; ++i) {
        Vertex u = 0, v = 0;
        for (int bit = 0; bit < p.scale; ++bit) {
            double r = rng.next_double();
            u <<= 1;
            v <<= 1;
            if (r < p.a) {
                // top-left quadrant: no bits set
            } else if (r < p.a + p.b) {
                v |= 1;
            } else if (r < p.a + p.b + p.c) {
                u |= 1;
            } else {
                u |= 1;
                v |= 1;
            }
        }
        edges.emplace_back(u, v);
    }
    return Graph::from_edges(n, std::move(edges));
}

} // namespace epochbc
