#include "epochbc/epoch.hpp"

namespace epochbc {

EpochClock::EpochClock(int num_threads, Vertex num_vertices) {
    require(num_threads >= 1, "EpochClock: need at least one thread");
    slots_.reserve(num_threads);
    for (int t = 0; t < num_threads; ++t) {
        auto slot = std::make_unique<ThreadSlot>();
        slot->frames[0] = StateFrame(num_vertices);
        slot->frames[1] = StateFrame(num_vertices);
        slots_.push_back(std::move(slot));
    }
}

void EpochClock::apply(int thread, const PathSample &sample) {
    ThreadSlot &slot = *slots_[thread];
    std::uint64_t e = slot.current_epoch.load(std::memory_order_relaxed);
    slot.generation[e & 1].fetch_add(1, std::memory_order_acq_rel);
    apply_sample(slot.frames[e & 1], sample);
    slot.generation[e & 1].fetch_add(1, std::memory_order_release);
}

bool EpochClock::check_transition(int thread, std::uint64_t epoch) {
    require(thread != 0, "check_transition: reserved for sampling threads");
    ThreadSlot &slot = *slots_[thread];
    require(slot.current_epoch.load(std::memory_order_relaxed) == epoch,
            "check_transition: caller epoch out of sync");
    if (target_epoch_.load(std::memory_order_acquire) <= epoch)
        return false;
    // Release pairs with the coordinator's acquire in poll_transition so the
    // epoch's frame writes become visible once the advance is observed.
    slot.current_epoch.store(epoch + 1, std::memory_order_release);
    return true;
}

TransitionHandle EpochClock::force_transition(std::uint64_t epoch) {
    ThreadSlot &slot = *slots_[0];
    require(slot.current_epoch.load(std::memory_order_relaxed) == epoch,
            "force_transition: thread 0 not in the epoch being closed");
    require(!transition_in_progress_, "force_transition: transition already in progress");
    transition_in_progress_ = true;
    target_epoch_.store(epoch + 1, std::memory_order_release);
    slot.current_epoch.store(epoch + 1, std::memory_order_release);
    return TransitionHandle{epoch};
}

bool EpochClock::poll_transition(const TransitionHandle &handle) {
    std::uint64_t min_epoch = UINT64_MAX;
    std::uint64_t max_epoch = 0;
    bool all_advanced = true;
    for (auto &slot : slots_) {
        std::uint64_t e = slot->current_epoch.load(std::memory_order_acquire);
        min_epoch = std::min(min_epoch, e);
        max_epoch = std::max(max_epoch, e);
        if (e <= handle.epoch)
            all_advanced = false;
    }
    if (max_epoch - min_epoch > 1)
        ++skew_violations_;
    if (all_advanced)
        transition_in_progress_ = false;
    return all_advanced;
}

void EpochClock::collect_epoch(std::uint64_t epoch, StateFrame &out) {
    require(!transition_in_progress_, "collect_epoch: transition still in progress");
    for (auto &slot : slots_)
        require(slot->current_epoch.load(std::memory_order_acquire) > epoch,
                "collect_epoch: a thread still owns this epoch");
    out.clear();
    for (auto &slot : slots_) {
        StateFrame &f = slot->frames[epoch & 1];
        std::uint64_t g0 = slot->generation[epoch & 1].load(std::memory_order_acquire);
        out.add(f);
        f.clear();
        std::uint64_t g1 = slot->generation[epoch & 1].load(std::memory_order_acquire);
        if (g0 != g1 || (g0 & 1))
            ++stamp_violations_;
    }
}

std::uint64_t EpochClock::drain_uncollected() {
    std::uint64_t total = 0;
    for (auto &slot : slots_) {
        for (StateFrame &f : slot->frames) {
            total += f.tau();
            f.clear();
        }
    }
    return total;
}

} // namespace epochbc
