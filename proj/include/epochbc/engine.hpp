#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <vector>

#include "epochbc/comm.hpp"
#include "epochbc/exec.hpp"
#include "epochbc/graph.hpp"
#include "epochbc/sim_comm.hpp"
#include "epochbc/stopping.hpp"
#include "epochbc/types.hpp"

namespace epochbc {

enum class Algo {
    kRankOnly = 1,   // rank-level parallelism, no multithreading
    kEpochBased = 2, // epoch-based multithreaded driver
};

enum class AggPattern {
    kDefault,        // per-algorithm default (see below)
    kIreduce,        // overlapped non-blocking reduction
    kIbarrierReduce, // non-blocking barrier followed by a blocking reduction
};

// Observes per-rank epoch numbers during a run; the engine reports every
// transition when a monitor is attached. Inter-rank skew above one is a
// protocol violation.
class EpochSkewMonitor {
public:
    explicit EpochSkewMonitor(int ranks) : epochs_(ranks, 0) {}

    void on_epoch(int rank, std::uint64_t epoch) {
        std::lock_guard lk(m_);
        epochs_[rank] = epoch;
        std::uint64_t lo = UINT64_MAX, hi = 0;
        for (std::uint64_t e : epochs_) {
            lo = std::min(lo, e);
            hi = std::max(hi, e);
        }
        if (hi - lo > 1)
            ++violations_;
    }
    std::uint64_t violations() const {
        std::lock_guard lk(m_);
        return violations_;
    }

private:
    mutable std::mutex m_;
    std::vector<std::uint64_t> epochs_;
    std::uint64_t violations_ = 0;
};

struct RunConfig {
    double eps = 0.001;
    double delta = 0.1;
    int ranks = 1;
    int threads = 1;
    std::uint64_t seed = 1;
    Algo algo = Algo::kEpochBased;
    BoundKind bound = BoundKind::kHoeffding;
    AllocatorKind allocator = AllocatorKind::kUniform;
    AggPattern agg = AggPattern::kDefault;
    double epoch_base = 1000.0;
    double epoch_exponent = 1.33;
    std::vector<int> node_of_rank; // empty: one rank per node
    std::uint64_t omega_override = 0; // 0: compute from the formula
    std::uint64_t calib_samples_per_worker = 100;
    int diameter_sweeps = 4;
    // Modeled compute cost charged per sample (drives virtual time in the
    // simulated cluster; real clocks ignore sub-0.05ms ticks).
    double sample_cost_ms = 0.001;
    EpochSkewMonitor *skew_monitor = nullptr; // test instrumentation

    void validate() const;
};

struct ApproxResult {
    std::vector<double> scores; // c(v) / tau, in [0,1]
    std::uint64_t tau_total = 0;
    std::vector<std::uint64_t> original_ids;
};

struct RunStats {
    std::uint64_t epochs = 0;
    std::uint64_t samples = 0; // cluster-wide: calibration + adaptive
    std::uint64_t tau = 0;     // tau of the final aggregated state
    std::uint64_t omega = 0;
    std::uint64_t calibration_samples = 0;
    std::uint64_t discarded_samples = 0;
    std::uint64_t n0 = 0;
    double comm_mib_per_epoch = 0.0;
    double barrier_s = 0.0;    // non-blocking collective in flight (overlapped)
    double adaptive_s = 0.0;
    double diameter_s = 0.0;
    double calibration_s = 0.0;
    double transition_s = 0.0; // epoch transition in flight (overlapped)
    double reduce_s = 0.0;     // blocking reductions
    double check_s = 0.0;      // stopping-condition checks
    double bcast_s = 0.0;      // termination broadcast in flight (overlapped)
    double wall_s = 0.0;
    std::uint64_t n = 0, m = 0;
    std::uint64_t diameter_upper_bound = 0;
    std::uint64_t vertex_diameter_bound = 0;
};

struct DebugCounters {
    std::uint64_t applied_adaptive = 0;
    std::uint64_t applied_calibration = 0;
    std::uint64_t discarded = 0;
};

struct RankOutput {
    std::optional<ApproxResult> result; // present at world rank 0
    RunStats stats;
    DebugCounters debug;
};

// n0 = max(1, round(base / (P*T)^exponent)).
std::uint64_t epoch_length(int ranks, int threads, double base = 1000.0,
                           double exponent = 1.33);

struct HierComms {
    std::unique_ptr<Communicator> local;  // ranks sharing a node
    std::unique_ptr<Communicator> global; // node leaders; inert group elsewhere
    bool leader = false;
};

// Splits world into per-node local communicators plus a leaders-only global
// communicator (non-leaders receive an inert communicator they never use).
// Aggregation runs local-first, then global among leaders.
HierComms hierarchical_topology(Communicator &world, std::span<const int> node_of_rank);

// Per-rank drivers; run_pipeline performs the full phase sequence
// (diameter -> omega -> calibration -> adaptive driver) and is the entry
// point each rank executes.
RankOutput run_pipeline(const Graph &g, const RunConfig &cfg, ExecContext &ctx,
                        Communicator &world);

struct SimRunOutcome {
    ApproxResult result;
    RunStats stats;
    std::vector<DebugCounters> debug; // per rank
    double wall_ms = 0.0;
    std::uint64_t bytes_routed = 0;
};

// Hosts the run on the simulated cluster and verifies sample conservation:
// the final tau must equal the cluster-wide applied count minus discards,
// exactly.
SimRunOutcome run_simulated(const Graph &g, const RunConfig &cfg, const SimOptions &opts);

} // namespace epochbc
