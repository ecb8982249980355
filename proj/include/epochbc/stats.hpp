#pragma once

#include <string>

#include "epochbc/engine.hpp"

namespace epochbc {

// Stats JSON with the per-run statistics schema fields (epochs, samples,
// barrier_s, comm_mib_per_epoch, adaptive_s, plus the phase breakdown); see
// docs/stats_schema.json.
std::string stats_to_json(const RunStats &stats, const RunConfig &cfg);

} // namespace epochbc
