#include "epochbc/sampler.hpp"

#include <algorithm>

namespace epochbc {

namespace {

using u128 = unsigned __int128;

inline std::uint64_t sat_add_u64(std::uint64_t a, std::uint64_t b) {
    return a > UINT64_MAX - b ? UINT64_MAX : a + b;
}

inline u128 sat_add_u128(u128 a, u128 b) {
    u128 s = a + b;
    return s < a ? ~u128{0} : s;
}

// Uniform in [0, bound), bound > 0, via 128-bit rejection sampling.
inline u128 uniform_below_u128(Rng &rng, u128 bound) {
    if (bound <= UINT64_MAX)
        return rng.next_below(static_cast<std::uint64_t>(bound));
    const u128 reject_from = ~u128{0} - (~u128{0} % bound); // multiple of bound
    for (;;) {
        u128 r = (u128(rng.next_u64()) << 64) | rng.next_u64();
        if (r < reject_from)
            return r % bound;
    }
}

} // namespace

SearchScratch::SearchScratch(Vertex num_vertices) {
    for (Side *side : {&fwd_, &bwd_}) {
        side->dist.assign(num_vertices, 0);
        side->sigma.assign(num_vertices, 0);
        side->stamp.assign(num_vertices, 0);
        side->frontier.reserve(64);
        side->next.reserve(64);
    }
    meet_.reserve(16);
}

std::pair<Vertex, Vertex> sample_pair(Vertex n, Rng &rng) {
    require(n >= 2, "sample_pair: need at least two vertices");
    Vertex s = rng.next_below(n);
    Vertex t = rng.next_below(n - 1);
    if (t >= s)
        ++t;
    return {s, t};
}

void sample_shortest_path(const Graph &g, Vertex s, Vertex t, SearchScratch &scratch, Rng &rng,
                          PathSample &out) {
    require(s != t, "sample_shortest_path: endpoints must differ");
    out.source = s;
    out.target = t;
    out.internal.clear();

    auto &fwd = scratch.fwd_;
    auto &bwd = scratch.bwd_;
    const std::uint32_t cur = ++scratch.round_;

    fwd.frontier.clear();
    bwd.frontier.clear();
    fwd.settle(s, 0, cur);
    fwd.sigma[s] = 1;
    fwd.frontier.push_back(s);
    fwd.pending_edges = g.degree(s);
    fwd.depth = 0;
    bwd.settle(t, 0, cur);
    bwd.sigma[t] = 1;
    bwd.frontier.push_back(t);
    bwd.pending_edges = g.degree(t);
    bwd.depth = 0;

    // Level-synchronous expansion, smaller pending-edge side first. Stops at
    // the first level whose new vertices carry both distance labels.
    bool found = false;
    while (!found) {
        if (fwd.frontier.empty() || bwd.frontier.empty())
            return; // t unreachable from s; the empty sample still counts
        auto &exp = fwd.pending_edges <= bwd.pending_edges ? fwd : bwd;
        auto &other = (&exp == &fwd) ? bwd : fwd;

        exp.next.clear();
        Count next_pending = 0;
        const std::uint32_t next_depth = exp.depth + 1;
        for (Vertex u : exp.frontier) {
            for (Vertex v : g.neighbors(u)) {
                if (!exp.visited(v, cur)) {
                    exp.settle(v, next_depth, cur);
                    exp.next.push_back(v);
                    next_pending += g.degree(v);
                }
                if (exp.dist[v] == next_depth)
                    exp.sigma[v] = sat_add_u64(exp.sigma[v], exp.sigma[u]);
            }
        }
        exp.frontier.swap(exp.next);
        exp.pending_edges = next_pending;
        exp.depth = next_depth;

        std::uint32_t best = kUnreached;
        for (Vertex v : exp.frontier)
            if (other.visited(v, cur))
                best = std::min(best, other.dist[v]);
        if (best != kUnreached) {
            scratch.meet_.clear();
            for (Vertex v : exp.frontier)
                if (other.visited(v, cur) && other.dist[v] == best)
                    scratch.meet_.push_back(v);
            found = true;
        }
    }

    // Meeting vertex v with probability proportional to sigma_s(v)*sigma_t(v);
    // this plus sigma-weighted walks to both endpoints yields an exactly
    // uniform draw over all shortest s-t paths.
    u128 total_weight = 0;
    for (Vertex v : scratch.meet_)
        total_weight = sat_add_u128(total_weight, u128(fwd.sigma[v]) * bwd.sigma[v]);
    u128 pick = uniform_below_u128(rng, total_weight);
    Vertex meet = scratch.meet_.back();
    for (Vertex v : scratch.meet_) {
        u128 w = u128(fwd.sigma[v]) * bwd.sigma[v];
        if (pick < w) {
            meet = v;
            break;
        }
        pick -= w;
    }

    auto walk = [&](const SearchScratch::Side &side, Vertex from, auto &&emit) {
        Vertex u = from;
        while (side.dist[u] > 0) {
            u128 total = 0;
            for (Vertex w : g.neighbors(u))
                if (side.visited(w, cur) && side.dist[w] + 1 == side.dist[u])
                    total += side.sigma[w];
            u128 r = uniform_below_u128(rng, total);
            for (Vertex w : g.neighbors(u)) {
                if (side.visited(w, cur) && side.dist[w] + 1 == side.dist[u]) {
                    if (r < side.sigma[w]) {
                        u = w;
                        break;
                    }
                    r -= side.sigma[w];
                }
            }
            if (side.dist[u] > 0)
                emit(u);
        }
    };

    // Path order: s .. meet .. t. The walk toward s emits in reverse.
    std::vector<Vertex> &internal = out.internal;
    walk(fwd, meet, [&](Vertex v) { internal.push_back(v); });
    std::reverse(internal.begin(), internal.end());
    if (meet != s && meet != t)
        internal.push_back(meet);
    walk(bwd, meet, [&](Vertex v) { internal.push_back(v); });
}

} // namespace epochbc
