#include "epochbc/graph.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace epochbc {

Graph Graph::from_edges(Vertex n, std::vector<std::pair<Vertex, Vertex>> edges) {
    // Canonical directed pair list: both orientations, no loops.
    std::vector<std::pair<Vertex, Vertex>> dir;
    dir.reserve(edges.size() * 2);
    for (auto [u, v] : edges) {
        require(u < n && v < n, "from_edges: endpoint out of range");
        if (u == v)
            continue;
        dir.emplace_back(u, v);
        dir.emplace_back(v, u);
    }
    std::sort(dir.begin(), dir.end());
    dir.erase(std::unique(dir.begin(), dir.end()), dir.end());

    Graph g;
    g.n_ = n;
    g.m_ = dir.size() / 2;
    g.offsets_.assign(n + 1, 0);
    for (auto &[u, v] : dir)
        ++g.offsets_[u + 1];
    for (Vertex v = 0; v < n; ++v)
        g.offsets_[v + 1] += g.offsets_[v];
    g.targets_.resize(dir.size());
    {
        std::vector<Count> cur(g.offsets_.begin(), g.offsets_.end() - 1);
        for (auto &[u, v] : dir)
            g.targets_[cur[u]++] = v;
    }
    g.original_ids_.resize(n);
    for (Vertex v = 0; v < n; ++v)
        g.original_ids_[v] = v;
    return g;
}

bool Graph::has_edge(Vertex u, Vertex v) const {
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

void Graph::set_original_ids(std::vector<std::uint64_t> ids) {
    require(ids.size() == n_, "set_original_ids: size mismatch");
    original_ids_ = std::move(ids);
}

namespace {

bool is_comment_or_blank(const std::string &line) {
    for (char c : line) {
        if (c == ' ' || c == '\t' || c == '\r')
            continue;
        return c == '#' || c == '%';
    }
    return true; // blank
}

} // namespace

Graph load_edge_list(std::istream &in, const LoadOptions &) {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> raw;
    std::string line;
    std::uint64_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (is_comment_or_blank(line))
            continue;
        std::istringstream ls(line);
        std::uint64_t u, v;
        if (!(ls >> u >> v)) {
            throw ParseError("edge list: malformed line " + std::to_string(lineno) + ": '" +
                             line + "'");
        }
        // Optional third column (weight) is dropped; anything after it is an error.
        std::string rest;
        ls >> rest;
        if (!rest.empty()) {
            std::string trailing;
            if (ls >> trailing)
                throw ParseError("edge list: too many fields on line " + std::to_string(lineno));
            // rest must be numeric to count as a weight column
            for (char c : rest)
                if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '-' ||
                      c == '+' || c == 'e' || c == 'E'))
                    throw ParseError("edge list: malformed token on line " +
                                     std::to_string(lineno) + ": '" + rest + "'");
        }
        raw.emplace_back(u, v);
    }
    if (raw.empty())
        throw ParseError("edge list: no edges in input");

    // Dense remap in sorted order of original IDs.
    std::vector<std::uint64_t> ids;
    ids.reserve(raw.size() * 2);
    for (auto &[u, v] : raw) {
        ids.push_back(u);
        ids.push_back(v);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    auto dense = [&](std::uint64_t orig) {
        return static_cast<Vertex>(std::lower_bound(ids.begin(), ids.end(), orig) - ids.begin());
    };
    std::vector<std::pair<Vertex, Vertex>> edges;
    edges.reserve(raw.size());
    for (auto &[u, v] : raw)
        edges.emplace_back(dense(u), dense(v));

    Graph g = Graph::from_edges(static_cast<Vertex>(ids.size()), std::move(edges));
    if (g.num_edges() == 0)
        throw ParseError("edge list: graph has no edges after removing self-loops");
    g.set_original_ids(std::move(ids));
    return g;
}

void write_edge_list(const Graph &g, std::ostream &out) {
    const auto &ids = g.original_ids();
    for (Vertex u = 0; u < g.num_vertices(); ++u) {
        for (Vertex v : g.neighbors(u)) {
            if (u < v)
                out << ids[u] << ' ' << ids[v] << '\n';
        }
    }
}

namespace {
constexpr std::array<char, 4> kMagic = {'E', 'B', 'C', 'G'};
constexpr std::uint32_t kBinaryVersion = 1;

template <typename T> void put(std::ostream &out, const T &v) {
    out.write(reinterpret_cast<const char *>(&v), sizeof(T));
}
template <typename T> T get(std::istream &in) {
    T v{};
    in.read(reinterpret_cast<char *>(&v), sizeof(T));
    if (!in)
        throw ParseError("binary graph: truncated input");
    return v;
}
template <typename T> void put_vec(std::ostream &out, const std::vector<T> &v) {
    put<std::uint64_t>(out, v.size());
    out.write(reinterpret_cast<const char *>(v.data()), sizeof(T) * v.size());
}
template <typename T> std::vector<T> get_vec(std::istream &in) {
    auto sz = get<std::uint64_t>(in);
    std::vector<T> v(sz);
    in.read(reinterpret_cast<char *>(v.data()), sizeof(T) * sz);
    if (!in)
        throw ParseError("binary graph: truncated array");
    return v;
}
} // namespace

void write_binary(const Graph &g, std::ostream &out) {
    out.write(kMagic.data(), kMagic.size());
    put(out, kBinaryVersion);
    put<std::uint64_t>(out, g.num_vertices());
    put<std::uint64_t>(out, g.num_edges());
    put_vec(out, g.offsets());
    put_vec(out, g.targets());
    put_vec(out, g.original_ids());
}

Graph load_binary(std::istream &in) {
    std::array<char, 4> magic{};
    in.read(magic.data(), magic.size());
    if (!in || magic != kMagic)
        throw ParseError("binary graph: bad magic");
    auto version = get<std::uint32_t>(in);
    if (version != kBinaryVersion)
        throw ParseError("binary graph: unsupported version " + std::to_string(version));
    auto n = get<std::uint64_t>(in);
    auto m = get<std::uint64_t>(in);
    auto offsets = get_vec<Count>(in);
    auto targets = get_vec<Vertex>(in);
    auto ids = get_vec<std::uint64_t>(in);
    if (offsets.size() != n + 1 || targets.size() != 2 * m || ids.size() != n)
        throw ParseError("binary graph: inconsistent array sizes");

    // Rebuild through from_edges so all invariants are re-established.
    std::vector<std::pair<Vertex, Vertex>> edges;
    edges.reserve(m);
    for (Vertex u = 0; u < n; ++u)
        for (Count i = offsets[u]; i < offsets[u + 1]; ++i)
            if (u < targets[i])
                edges.emplace_back(u, targets[i]);
    Graph g = Graph::from_edges(n, std::move(edges));
    g.set_original_ids(std::move(ids));
    return g;
}

Graph load_graph_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open graph file: " + path);
    std::array<char, 4> magic{};
    in.read(magic.data(), magic.size());
    bool binary = in && magic == kMagic;
    in.seekg(0);
    if (binary)
        return load_binary(in);
    return load_edge_list(in);
}

void save_graph_file(const Graph &g, const std::string &path, bool binary) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open output file: " + path);
    if (binary)
        write_binary(g, out);
    else
        write_edge_list(g, out);
    if (!out)
        throw std::runtime_error("failed writing graph file: " + path);
}

Graph largest_connected_component(const Graph &g) {
    const Vertex n = g.num_vertices();
    std::vector<std::uint32_t> comp(n, kUnreached);
    std::vector<Vertex> queue;
    std::uint32_t num_comps = 0;

    struct CompInfo {
        Count size = 0;
        std::uint64_t min_orig = UINT64_MAX;
    };
    std::vector<CompInfo> info;

    for (Vertex s = 0; s < n; ++s) {
        if (comp[s] != kUnreached)
            continue;
        std::uint32_t c = num_comps++;
        info.push_back({});
        queue.clear();
        queue.push_back(s);
        comp[s] = c;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            Vertex u = queue[head];
            info[c].size++;
            info[c].min_orig = std::min(info[c].min_orig, g.original_ids()[u]);
            for (Vertex v : g.neighbors(u)) {
                if (comp[v] == kUnreached) {
                    comp[v] = c;
                    queue.push_back(v);
                }
            }
        }
    }

    std::uint32_t best = 0;
    for (std::uint32_t c = 1; c < num_comps; ++c) {
        if (info[c].size > info[best].size ||
            (info[c].size == info[best].size && info[c].min_orig < info[best].min_orig))
            best = c;
    }

    std::vector<Vertex> dense(n, 0);
    std::vector<std::uint64_t> kept_ids;
    Vertex next = 0;
    for (Vertex v = 0; v < n; ++v) {
        if (comp[v] == best) {
            dense[v] = next++;
            kept_ids.push_back(g.original_ids()[v]);
        }
    }
    std::vector<std::pair<Vertex, Vertex>> edges;
    edges.reserve(g.num_edges());
    for (Vertex u = 0; u < n; ++u) {
        if (comp[u] != best)
            continue;
        for (Vertex v : g.neighbors(u))
            if (u < v)
                edges.emplace_back(dense[u], dense[v]);
    }
    Graph out = Graph::from_edges(next, std::move(edges));
    out.set_original_ids(std::move(kept_ids));
    return out;
}

} // namespace epochbc
