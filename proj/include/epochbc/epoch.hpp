#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <vector>

#include "epochbc/sampler.hpp"
#include "epochbc/state_frame.hpp"
#include "epochbc/types.hpp"

namespace epochbc {

struct TransitionHandle {
    std::uint64_t epoch = 0;
};

/// Asymmetric non-blocking barrier over double-buffered per-thread state
/// frames. Thread 0 (the coordinator) initiates transitions with
/// force_transition and advances immediately; sampling threads acknowledge
/// with check_transition, which is wait-free (one acquire load, at most one
/// release store, no retry loops, no read-modify-write instructions).
///
/// Frame discipline: a thread in epoch e writes only its frame e mod 2.
/// collect_epoch(e) may run only after poll_transition reported completion,
/// at which point every thread has advanced past e and the epoch-e frames
/// are quiescent; it sums them and zeroes them for reuse in epoch e+2. The
/// release store in check_transition paired with the acquire load in
/// poll_transition makes all frame writes from epoch e visible to the
/// coordinator.
///
/// Thread identity is logical: callers pass their thread index and must
/// honor the single-writer role discipline. Violations of the call
/// contracts throw ContractViolation.
class EpochClock {
public:
    EpochClock(int num_threads, Vertex num_vertices);

    int num_threads() const { return static_cast<int>(slots_.size()); }

    // Sampling-thread side -------------------------------------------------

    // Applies one sample to thread t's current-epoch frame, bumping the
    // frame's writer-generation stamp (seqlock style: odd while mid-write).
    void apply(int thread, const PathSample &sample);

    // Returns true (and advances t to e+1) iff a transition out of epoch e
    // was initiated; calls before the corresponding force_transition have
    // no effect. O(1).
    bool check_transition(int thread, std::uint64_t epoch);

    // Coordinator side -----------------------------------------------------

    // Initiates a transition out of epoch e and advances thread 0 to e+1.
    // O(1); requires thread 0 in epoch e and no transition in progress.
    TransitionHandle force_transition(std::uint64_t epoch);

    // True once every thread advanced past handle.epoch; O(T) per call.
    // Completion is permanent. After true, the epoch's frames are frozen.
    bool poll_transition(const TransitionHandle &handle);

    // Sums all threads' epoch-e frames into `out` (which must match the
    // vertex count; it is overwritten), then zeroes them for reuse in epoch
    // e+2. Requires poll_transition(e) == true.
    void collect_epoch(std::uint64_t epoch, StateFrame &out);

    // Shutdown: sum of tau still sitting in any frame (samples that were
    // applied but never collected). Call after sampling threads joined.
    std::uint64_t drain_uncollected();

    std::uint64_t epoch_of(int thread) const {
        return slots_[thread]->current_epoch.load(std::memory_order_acquire);
    }

    // Validation counters (expected to stay zero under the protocol).
    std::uint64_t stamp_violations() const { return stamp_violations_; }
    std::uint64_t skew_violations() const { return skew_violations_; }

private:
    struct alignas(64) ThreadSlot {
        std::atomic<std::uint64_t> current_epoch{0};
        std::atomic<std::uint64_t> generation[2]{{0}, {0}}; // per frame; even = quiescent
        StateFrame frames[2];
    };

    StateFrame &frame_for(int thread, std::uint64_t epoch) {
        return slots_[thread]->frames[epoch & 1];
    }

    std::vector<std::unique_ptr<ThreadSlot>> slots_;
    // Written only by thread 0; sampling threads read with acquire loads.
    std::atomic<std::uint64_t> target_epoch_{0};
    bool transition_in_progress_ = false; // coordinator-local
    std::uint64_t stamp_violations_ = 0;
    std::uint64_t skew_violations_ = 0;
};

} // namespace epochbc
