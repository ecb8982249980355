#include "epochbc/stats.hpp"

#include <json.hpp>

namespace epochbc {

std::string stats_to_json(const RunStats &s, const RunConfig &cfg) {
    nlohmann::ordered_json j;
    j["schema_version"] = 1;
    j["epochs"] = s.epochs;
    j["samples"] = s.samples;
    j["barrier_s"] = s.barrier_s;
    j["comm_mib_per_epoch"] = s.comm_mib_per_epoch;
    j["adaptive_s"] = s.adaptive_s;
    j["diameter_s"] = s.diameter_s;
    j["calibration_s"] = s.calibration_s;
    j["transition_s"] = s.transition_s;
    j["reduce_s"] = s.reduce_s;
    j["check_s"] = s.check_s;
    j["bcast_s"] = s.bcast_s;
    j["wall_s"] = s.wall_s;
    j["tau"] = s.tau;
    j["omega"] = s.omega;
    j["calibration_samples"] = s.calibration_samples;
    j["discarded_samples"] = s.discarded_samples;
    j["n0"] = s.n0;
    j["n"] = s.n;
    j["m"] = s.m;
    j["diameter_upper_bound"] = s.diameter_upper_bound;
    j["vertex_diameter_bound"] = s.vertex_diameter_bound;
    j["eps"] = cfg.eps;
    j["delta"] = cfg.delta;
    j["ranks"] = cfg.ranks;
    j["threads"] = cfg.threads;
    j["seed"] = cfg.seed;
    j["algo"] = static_cast<int>(cfg.algo);
    j["bound"] = to_string(cfg.bound);
    j["allocator"] = to_string(cfg.allocator);
    return j.dump(2) + "\n";
}

} // namespace epochbc
