#pragma once

#include <functional>
#include <memory>

namespace epochbc {

class ExecContext;

class Joinable {
public:
    virtual ~Joinable() = default;
    virtual void join() = 0;
};

/// Per-worker execution handle: compute-cost accounting, clock access and
/// worker spawning. Under the deterministic simulated cluster, tick() is
/// also the cooperative yield point and now_ms() reads the worker's virtual
/// clock; under real threads tick() optionally sleeps (modeled workloads)
/// and now_ms() reads the monotonic clock.
class ExecContext {
public:
    virtual ~ExecContext() = default;

    virtual int rank() const = 0;
    virtual int thread() const = 0;

    // Account `cost_ms` of local compute (one sample, one BFS sweep, ...).
    virtual void tick(double cost_ms) = 0;

    virtual double now_ms() = 0;

    // Spawn a sibling worker on the same rank; thread indices are assigned
    // sequentially starting at 1.
    virtual std::unique_ptr<Joinable> spawn(std::function<void(ExecContext &)> fn) = 0;
};

} // namespace epochbc
