#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "epochbc/engine.hpp"
#include "epochbc/types.hpp"

namespace epochbc {

/// Score file: '#' header lines carrying run metadata as key=value pairs,
/// then one "original_vertex_id<TAB>score" line per vertex. Scores are
/// printed with 12 significant digits, enough to round-trip exact c/tau
/// ratios for tau up to 1e10.
struct ScoreFile {
    std::map<std::string, std::string> meta;
    std::vector<std::uint64_t> vertex_ids;
    std::vector<double> scores;
};

void write_scores(std::ostream &out, const ScoreFile &file);
ScoreFile read_scores(std::istream &in);

ScoreFile scores_from_result(const ApproxResult &result,
                             std::map<std::string, std::string> meta);

struct CompareReport {
    double max_abs_error = 0.0;
    std::uint64_t vertices_above_eps = 0;
    double top10_overlap = 0.0;  // fraction of top-10 sets shared
    double top100_overlap = 0.0; // fraction of top-100 sets shared
    std::size_t vertices = 0;
};

// Requires matching vertex-ID sets; throws ConfigError otherwise.
CompareReport compare_scores(const ScoreFile &approx, const ScoreFile &exact, double eps);

} // namespace epochbc
