#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>

#include "epochbc/comm.hpp"
#include "epochbc/exec.hpp"
#include "epochbc/types.hpp"

namespace epochbc {

/// Network model for the simulated cluster. All delays are deterministic
/// given the seed (jitter is hashed from the collective's identity, not from
/// arrival order).
struct SimNetConfig {
    double latency_ms = 0.0;        // fixed per-collective latency
    double jitter_ms = 0.0;         // extra uniform [0, jitter) latency, seeded
    double bandwidth_mbps = 0.0;    // volume-proportional delay; 0 disables
    std::uint64_t seed = 0;
    // Models the observed pathology of non-blocking-reduce implementations
    // progressing far slower than their blocking counterparts: multiplies the
    // delay of ireduce_sum only. 1.0 = well-behaved.
    double slow_ireduce_factor = 1.0;
    bool freeze_checks = true; // hash contribution buffers to catch in-flight writers
};

enum class SimClockMode {
    kVirtual, // deterministic: cooperative tasks, per-task virtual clocks
    kReal,    // concurrent OS threads, injected real delays
};

struct SimOptions {
    SimNetConfig net;
    SimClockMode clock_mode = SimClockMode::kVirtual;
};

class SimHost;

/// In-process cluster: P ranks as concurrent workers connected through a
/// message router. In virtual-clock mode the ranks (and any workers they
/// spawn) are cooperatively scheduled, lowest-local-time first, so runs are
/// bit-reproducible and modeled wall time is independent of host load; in
/// real-clock mode they are plain OS threads with injected delays.
class SimCluster {
public:
    SimCluster(int ranks, SimOptions opts = {});
    ~SimCluster();

    SimCluster(const SimCluster &) = delete;
    SimCluster &operator=(const SimCluster &) = delete;

    // Runs rank_main once per rank (as its thread 0) to completion.
    // Rethrows the first failure. One-shot.
    void run(const std::function<void(ExecContext &, Communicator &)> &rank_main);

    int ranks() const;
    // Virtual mode: max final task clock. Real mode: measured wall time.
    double wall_time_ms() const;
    std::uint64_t bytes_routed() const;

private:
    std::unique_ptr<SimHost> host_;
};

} // namespace epochbc
