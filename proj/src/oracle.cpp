#include "epochbc/oracle.hpp"

#include <algorithm>
#include <thread>

namespace epochbc {

namespace {

// Kahan-compensated accumulator; keeps the 1e-12 cross-check against the
// brute-force oracle honest when many tiny dependencies are summed.
struct Compensated {
    double sum = 0.0;
    double carry = 0.0;
    void add(double x) {
        double y = x - carry;
        double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

// One augmented BFS from `source`, dependencies accumulated bottom-up in
// BFS-level order.
void accumulate_source(const Graph &g, Vertex source, std::vector<std::uint32_t> &dist,
                       std::vector<double> &sigma, std::vector<double> &delta,
                       std::vector<Vertex> &order, std::vector<Compensated> &scores) {
    const Vertex n = g.num_vertices();
    dist.assign(n, kUnreached);
    sigma.assign(n, 0.0);
    delta.assign(n, 0.0);
    order.clear();

    dist[source] = 0;
    sigma[source] = 1.0;
    order.push_back(source);
    for (std::size_t head = 0; head < order.size(); ++head) {
        Vertex u = order[head];
        for (Vertex v : g.neighbors(u)) {
            if (dist[v] == kUnreached) {
                dist[v] = dist[u] + 1;
                order.push_back(v);
            }
            if (dist[v] == dist[u] + 1)
                sigma[v] += sigma[u];
        }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        Vertex w = *it;
        for (Vertex v : g.neighbors(w)) {
            if (dist[v] + 1 == dist[w])
                delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
        }
        if (w != source)
            scores[w].add(delta[w]);
    }
}

} // namespace

ExactScores brandes_exact(const Graph &g, int num_workers) {
    const Vertex n = g.num_vertices();
    if (n == 0)
        return {};
    if (num_workers <= 0)
        num_workers = static_cast<int>(std::thread::hardware_concurrency());
    num_workers = std::max(1, std::min<int>(num_workers, static_cast<int>(n)));

    // Fixed source blocks; block results merged in block order so the
    // floating-point sum is schedule-independent.
    std::vector<std::vector<Compensated>> block_scores(num_workers,
                                                       std::vector<Compensated>(n));
    auto run_block = [&](int w) {
        std::vector<std::uint32_t> dist;
        std::vector<double> sigma, delta;
        std::vector<Vertex> order;
        Vertex begin = n * static_cast<Vertex>(w) / num_workers;
        Vertex end = n * (static_cast<Vertex>(w) + 1) / num_workers;
        for (Vertex s = begin; s < end; ++s)
            accumulate_source(g, s, dist, sigma, delta, order, block_scores[w]);
    };
    if (num_workers == 1) {
        run_block(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < num_workers; ++w)
            pool.emplace_back(run_block, w);
        for (auto &t : pool)
            t.join();
    }

    const double norm = n >= 2 ? 1.0 / (static_cast<double>(n) * (static_cast<double>(n) - 1.0))
                               : 0.0;
    ExactScores out(n, 0.0);
    for (Vertex v = 0; v < n; ++v) {
        Compensated acc;
        for (int w = 0; w < num_workers; ++w)
            acc.add(block_scores[w][v].sum);
        out[v] = acc.sum * norm;
    }
    return out;
}

ExactScores brute_force_betweenness(const Graph &g) {
    const Vertex n = g.num_vertices();
    if (n > 200)
        throw ConfigError("brute_force_betweenness: guarded to n <= 200");
    if (n == 0)
        return {};

    // Full distance and sigma tables from every source.
    std::vector<std::vector<std::uint32_t>> dist(n);
    std::vector<std::vector<double>> sigma(n);
    for (Vertex s = 0; s < n; ++s) {
        dist[s].assign(n, kUnreached);
        sigma[s].assign(n, 0.0);
        dist[s][s] = 0;
        sigma[s][s] = 1.0;
        std::vector<Vertex> queue{s};
        for (std::size_t head = 0; head < queue.size(); ++head) {
            Vertex u = queue[head];
            for (Vertex v : g.neighbors(u)) {
                if (dist[s][v] == kUnreached) {
                    dist[s][v] = dist[s][u] + 1;
                    queue.push_back(v);
                }
                if (dist[s][v] == dist[s][u] + 1)
                    sigma[s][v] += sigma[s][u];
            }
        }
    }

    const double norm = n >= 2 ? 1.0 / (static_cast<double>(n) * (static_cast<double>(n) - 1.0))
                               : 0.0;
    ExactScores out(n, 0.0);
    for (Vertex x = 0; x < n; ++x) {
        double acc = 0.0;
        for (Vertex s = 0; s < n; ++s) {
            if (s == x)
                continue;
            for (Vertex t = 0; t < n; ++t) {
                if (t == s || t == x || dist[s][t] == kUnreached)
                    continue;
                if (dist[s][x] != kUnreached && dist[x][t] != kUnreached &&
                    dist[s][x] + dist[x][t] == dist[s][t])
                    acc += sigma[s][x] * sigma[x][t] / sigma[s][t];
            }
        }
        out[x] = acc * norm;
    }
    return out;
}

std::vector<std::vector<Vertex>> enumerate_shortest_paths(const Graph &g, Vertex s, Vertex t,
                                                          std::size_t max_paths) {
    require(g.num_vertices() <= 50, "enumerate_shortest_paths: guarded to n <= 50");
    require(s < g.num_vertices() && t < g.num_vertices() && s != t,
            "enumerate_shortest_paths: bad endpoints");

    std::vector<std::uint32_t> dist(g.num_vertices(), kUnreached);
    std::vector<Vertex> queue{s};
    dist[s] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        Vertex u = queue[head];
        for (Vertex v : g.neighbors(u)) {
            if (dist[v] == kUnreached) {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    std::vector<std::vector<Vertex>> paths;
    if (dist[t] == kUnreached)
        return paths;

    // Walk backward from t along strictly-decreasing distances.
    std::vector<Vertex> partial{t};
    auto extend = [&](auto &&self, Vertex u) -> void {
        if (u == s) {
            if (paths.size() >= max_paths)
                throw ConfigError("enumerate_shortest_paths: path count guard exceeded");
            paths.emplace_back(partial.rbegin(), partial.rend());
            return;
        }
        for (Vertex w : g.neighbors(u)) {
            if (dist[w] + 1 == dist[u]) {
                partial.push_back(w);
                self(self, w);
                partial.pop_back();
            }
        }
    };
    extend(extend, t);
    return paths;
}

} // namespace epochbc
