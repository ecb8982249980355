#pragma once

#include <cstdint>
#include <memory>
#include <span>

#include "epochbc/state_frame.hpp"
#include "epochbc/types.hpp"

namespace epochbc {

/// Handle for an in-flight collective. Completes exactly once; polling after
/// completion is idempotent.
class AsyncOp {
public:
    virtual ~AsyncOp() = default;
    virtual bool done() = 0; // non-blocking poll
    virtual void wait() = 0; // block until complete
};
using AsyncHandle = std::unique_ptr<AsyncOp>;

/// Rank/size abstraction over non-blocking collectives. Collective calls
/// must be made by all members of the communicator, in the same order, with
/// matching kinds and buffer lengths; violations are a backend fault.
/// Only thread 0 of a rank may touch its communicator (funneled threading;
/// asserted by the backends). Contribution buffers must stay unmodified and
/// alive from initiation to completion.
class Communicator {
public:
    virtual ~Communicator() = default;

    virtual int rank() const = 0;
    virtual int size() const = 0;

    // Elementwise u64 sum into `root_out` (root's buffer, same length as
    // contrib; pass an empty span elsewhere), written on completion.
    virtual AsyncHandle ireduce_sum(std::span<const std::uint64_t> contrib,
                                    std::span<std::uint64_t> root_out, int root) = 0;

    // As ireduce_sum but synchronous. Backends model this as a distinct
    // collective (a well-progressing blocking reduction, as opposed to the
    // non-blocking one whose progress behavior is implementation-defined).
    virtual void reduce_sum_blocking(std::span<const std::uint64_t> contrib,
                                     std::span<std::uint64_t> root_out, int root) = 0;

    virtual AsyncHandle ibarrier() = 0;

    // On completion every rank's *value holds the root's value (snapshotted
    // at the root's initiation).
    virtual AsyncHandle ibroadcast(std::uint64_t *value, int root) = 0;

    // Collective; ranks sharing a color form a new communicator with rank
    // order preserved. Blocking.
    virtual std::unique_ptr<Communicator> split(int color) = 0;
};

// StateFrame conveniences; the root's frame must be pre-sized to match.
inline AsyncHandle ireduce_frame(Communicator &comm, const StateFrame &contrib,
                                 StateFrame *root_out, int root) {
    std::span<std::uint64_t> out;
    if (comm.rank() == root && root_out)
        out = root_out->words();
    return comm.ireduce_sum(contrib.words(), out, root);
}

inline void reduce_frame_blocking(Communicator &comm, const StateFrame &contrib,
                                  StateFrame *root_out, int root) {
    std::span<std::uint64_t> out;
    if (comm.rank() == root && root_out)
        out = root_out->words();
    comm.reduce_sum_blocking(contrib.words(), out, root);
}

} // namespace epochbc
