#include "epochbc/score_io.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace epochbc {

void write_scores(std::ostream &out, const ScoreFile &file) {
    for (const auto &[key, value] : file.meta)
        out << "# " << key << "=" << value << "\n";
    char buf[64];
    for (std::size_t i = 0; i < file.vertex_ids.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%" PRIu64 "\t%.12g", file.vertex_ids[i],
                      file.scores[i]);
        out << buf << "\n";
    }
}

ScoreFile read_scores(std::istream &in) {
    ScoreFile f;
    std::string line;
    std::uint64_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty())
            continue;
        if (line[0] == '#') {
            std::string body = line.substr(1);
            auto eq = body.find('=');
            if (eq != std::string::npos) {
                std::string key = body.substr(0, eq);
                std::string value = body.substr(eq + 1);
                key.erase(0, key.find_first_not_of(" \t"));
                key.erase(key.find_last_not_of(" \t") + 1);
                f.meta[key] = value;
            }
            continue;
        }
        std::istringstream ls(line);
        std::uint64_t id;
        double score;
        if (!(ls >> id >> score))
            throw ParseError("score file: malformed line " + std::to_string(lineno));
        f.vertex_ids.push_back(id);
        f.scores.push_back(score);
    }
    return f;
}

ScoreFile scores_from_result(const ApproxResult &result,
                             std::map<std::string, std::string> meta) {
    ScoreFile f;
    f.meta = std::move(meta);
    f.vertex_ids = result.original_ids;
    f.scores = result.scores;
    return f;
}

namespace {

// Top-k by (score desc, id asc); deterministic under ties.
std::vector<std::uint64_t> top_k_ids(const ScoreFile &f, std::size_t k) {
    std::vector<std::size_t> idx(f.vertex_ids.size());
    for (std::size_t i = 0; i < idx.size(); ++i)
        idx[i] = i;
    k = std::min(k, idx.size());
    std::partial_sort(idx.begin(), idx.begin() + k, idx.end(), [&](std::size_t a, std::size_t b) {
        if (f.scores[a] != f.scores[b])
            return f.scores[a] > f.scores[b];
        return f.vertex_ids[a] < f.vertex_ids[b];
    });
    std::vector<std::uint64_t> ids;
    ids.reserve(k);
    for (std::size_t i = 0; i < k; ++i)
        ids.push_back(f.vertex_ids[idx[i]]);
    return ids;
}

double overlap_fraction(const ScoreFile &a, const ScoreFile &b, std::size_t k) {
    auto ta = top_k_ids(a, k);
    auto tb = top_k_ids(b, k);
    std::sort(ta.begin(), ta.end());
    std::sort(tb.begin(), tb.end());
    std::vector<std::uint64_t> common;
    std::set_intersection(ta.begin(), ta.end(), tb.begin(), tb.end(),
                          std::back_inserter(common));
    if (ta.empty())
        return 1.0;
    return static_cast<double>(common.size()) / static_cast<double>(ta.size());
}

} // namespace

CompareReport compare_scores(const ScoreFile &approx, const ScoreFile &exact, double eps) {
    auto sorted_ids = [](const ScoreFile &f) {
        auto ids = f.vertex_ids;
        std::sort(ids.begin(), ids.end());
        return ids;
    };
    if (sorted_ids(approx) != sorted_ids(exact))
        throw ConfigError("compare: vertex sets differ");

    std::map<std::uint64_t, double> exact_by_id;
    for (std::size_t i = 0; i < exact.vertex_ids.size(); ++i)
        exact_by_id[exact.vertex_ids[i]] = exact.scores[i];

    CompareReport r;
    r.vertices = approx.vertex_ids.size();
    for (std::size_t i = 0; i < approx.vertex_ids.size(); ++i) {
        double err = std::abs(approx.scores[i] - exact_by_id[approx.vertex_ids[i]]);
        r.max_abs_error = std::max(r.max_abs_error, err);
        if (err > eps)
            ++r.vertices_above_eps;
    }
    r.top10_overlap = overlap_fraction(approx, exact, 10);
    r.top100_overlap = overlap_fraction(approx, exact, 100);
    return r;
}

} // namespace epochbc
