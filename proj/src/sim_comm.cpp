#include "epochbc/sim_comm.hpp"

#include <algorithm>
#include <chrono>
#include <condition_variable>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>
#include <vector>

#include "epochbc/rng.hpp"

namespace epochbc {

namespace {

// Internal signal used to unwind tasks when the host aborts a run.
struct SimAborted {};

std::uint64_t hash_words(std::span<const std::uint64_t> words) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::uint64_t w : words) {
        h ^= w;
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace

// ---------------------------------------------------------------------------
// Host internals
// ---------------------------------------------------------------------------

class SimHost {
public:
    enum class OpKind { kReduceNB, kReduceBlocking, kBarrier, kBcast, kSplit };

    struct SplitOut {
        int comm_id = -1;
        int rank_in_comm = -1;
        int size = 0;
    };

    struct Task;

    struct Op {
        OpKind kind{};
        int comm_id = 0;
        std::uint64_t seq = 0;
        int root = 0;
        std::size_t words = 0;
        int size = 0;
        int entered = 0;
        bool complete = false;
        std::vector<char> has_entered;
        std::vector<double> entry_clock;
        std::vector<std::span<const std::uint64_t>> contribs;
        std::vector<std::uint64_t> entry_hashes;
        std::span<std::uint64_t> root_out;
        std::vector<std::uint64_t *> value_ptrs; // bcast
        std::uint64_t root_value = 0;            // bcast payload snapshot
        std::vector<int> colors;                 // split
        std::vector<SplitOut> split_out;
        std::vector<double> completion; // per member
        std::vector<Task *> waiters;
    };

    struct Task {
        int id = 0;
        int rank = 0;
        int thread_idx = 0;
        double clock = 0.0;
        double final_clock = 0.0;
        enum class St { kReady, kRunning, kBlocked, kJoinBlocked, kFinished } st = St::kReady;
        bool abort_pending = false;
        std::shared_ptr<Op> blocked_op;
        int blocked_member = -1;
        int join_child = -1;
        std::thread os;
    };

    struct CommInfo {
        std::vector<int> world_ranks; // member index -> world rank
    };

    SimHost(int ranks, SimOptions opts) : ranks_(ranks), opts_(opts) {
        require(ranks >= 1, "SimCluster: need at least one rank");
        CommInfo world;
        for (int r = 0; r < ranks; ++r)
            world.world_ranks.push_back(r);
        comms_.push_back(world);
        rank_thread_counter_.assign(ranks, 0);
    }

    int ranks() const { return ranks_; }
    bool virtual_mode() const { return opts_.clock_mode == SimClockMode::kVirtual; }

    void run(const std::function<void(ExecContext &, Communicator &)> &rank_main);

    double wall_time_ms() const { return wall_ms_; }
    std::uint64_t bytes_routed() const { return bytes_routed_; }
    const SimOptions &options() const { return opts_; }

    // -- collective entry points (called by SimComm) ------------------------
    std::shared_ptr<Op> enter(int comm_id, std::uint64_t seq, OpKind kind, int root,
                              std::span<const std::uint64_t> contrib,
                              std::span<std::uint64_t> root_out, std::uint64_t *value_ptr,
                              int color, int member_idx);
    bool op_done(const std::shared_ptr<Op> &op, int member_idx);
    void op_wait(const std::shared_ptr<Op> &op, int member_idx);

    void check_owner(int owner_task, const char *what);
    int current_task_id();

    // -- worker context operations ------------------------------------------
    void tick(Task *t, double cost_ms);
    double now_ms(Task *t);
    Task *spawn(Task *parent, std::function<void(ExecContext &)> fn);
    void join_task(Task *parent, int child_id);

private:
    friend class SimExecContext;

    double clock_of(Task *t) {
        return virtual_mode() ? t->clock : real_now_ms();
    }
    double real_now_ms() const {
        using namespace std::chrono;
        return duration<double, std::milli>(steady_clock::now() - start_).count();
    }

    double delay_for(const Op &op) const;
    void complete_op(const std::shared_ptr<Op> &op) /* m_ held */;
    void yield(Task *t, std::unique_lock<std::mutex> &lk);
    void scheduler_loop(std::unique_lock<std::mutex> &lk);
    void task_body(Task *t, std::function<void(ExecContext &)> fn);

    // Records the first failure and unwinds every other task: spinning poll
    // loops see abort_pending at their next yield/collective call, blocked
    // tasks are woken by the scheduler (virtual) or the predicate (real).
    void record_error_and_abort(std::exception_ptr e) /* m_ held */ {
        if (!first_error_)
            first_error_ = e;
        aborting_.store(true, std::memory_order_relaxed);
        for (auto &t : tasks_)
            if (t->st != Task::St::kFinished)
                t->abort_pending = true;
        cv_.notify_all();
    }
    void throw_if_aborting() {
        if (aborting_.load(std::memory_order_relaxed))
            throw SimAborted{};
    }

    int ranks_;
    SimOptions opts_;
    std::mutex m_;
    std::condition_variable cv_;
    int current_ = -1; // task id allowed to run; -1 = scheduler's turn
    std::atomic<bool> aborting_{false};
    bool started_ = false;
    std::vector<std::unique_ptr<Task>> tasks_;
    std::vector<int> rank_thread_counter_;
    std::vector<CommInfo> comms_;
    std::map<std::pair<int, std::uint64_t>, std::shared_ptr<Op>> pending_;
    std::exception_ptr first_error_;
    std::uint64_t bytes_routed_ = 0;
    double wall_ms_ = 0.0;
    std::chrono::steady_clock::time_point start_{};

    class SimCommImpl;
};

namespace {
thread_local SimHost::Task *tls_task = nullptr;
}

// ---------------------------------------------------------------------------
// ExecContext implementation
// ---------------------------------------------------------------------------

class SimExecContext : public ExecContext {
public:
    SimExecContext(SimHost *host, SimHost::Task *task) : host_(host), task_(task) {}

    int rank() const override { return task_->rank; }
    int thread() const override { return task_->thread_idx; }
    void tick(double cost_ms) override { host_->tick(task_, cost_ms); }
    double now_ms() override { return host_->now_ms(task_); }

    std::unique_ptr<Joinable> spawn(std::function<void(ExecContext &)> fn) override {
        SimHost::Task *child = host_->spawn(task_, std::move(fn));
        class J : public Joinable {
        public:
            J(SimHost *h, SimHost::Task *parent, int child_id)
                : h_(h), parent_(parent), child_id_(child_id) {}
            void join() override { h_->join_task(parent_, child_id_); }

        private:
            SimHost *h_;
            SimHost::Task *parent_;
            int child_id_;
        };
        return std::make_unique<J>(host_, task_, child->id);
    }

private:
    SimHost *host_;
    SimHost::Task *task_;
};

// ---------------------------------------------------------------------------
// Communicator implementation
// ---------------------------------------------------------------------------

class SimHost::SimCommImpl : public Communicator {
public:
    SimCommImpl(SimHost *host, int comm_id, int rank_in_comm, int size, int owner_task)
        : host_(host), comm_id_(comm_id), rank_(rank_in_comm), size_(size),
          owner_task_(owner_task) {}

    int rank() const override { return rank_; }
    int size() const override { return size_; }

    AsyncHandle ireduce_sum(std::span<const std::uint64_t> contrib,
                            std::span<std::uint64_t> root_out, int root) override {
        host_->check_owner(owner_task_, "ireduce_sum");
        return make_handle(
            host_->enter(comm_id_, seq_++, OpKind::kReduceNB, root, contrib, root_out,
                         nullptr, 0, rank_));
    }

    void reduce_sum_blocking(std::span<const std::uint64_t> contrib,
                             std::span<std::uint64_t> root_out, int root) override {
        host_->check_owner(owner_task_, "reduce_sum_blocking");
        auto op = host_->enter(comm_id_, seq_++, OpKind::kReduceBlocking, root, contrib,
                               root_out, nullptr, 0, rank_);
        host_->op_wait(op, rank_);
    }

    AsyncHandle ibarrier() override {
        host_->check_owner(owner_task_, "ibarrier");
        return make_handle(
            host_->enter(comm_id_, seq_++, OpKind::kBarrier, 0, {}, {}, nullptr, 0, rank_));
    }

    AsyncHandle ibroadcast(std::uint64_t *value, int root) override {
        host_->check_owner(owner_task_, "ibroadcast");
        return make_handle(
            host_->enter(comm_id_, seq_++, OpKind::kBcast, root, {}, {}, value, 0, rank_));
    }

    std::unique_ptr<Communicator> split(int color) override {
        host_->check_owner(owner_task_, "split");
        auto op = host_->enter(comm_id_, seq_++, OpKind::kSplit, 0, {}, {}, nullptr, color,
                               rank_);
        host_->op_wait(op, rank_);
        const SplitOut &out = op->split_out[rank_];
        return std::make_unique<SimCommImpl>(host_, out.comm_id, out.rank_in_comm, out.size,
                                             host_->current_task_id());
    }

    int owner_task() const { return owner_task_; }

private:
    class Handle : public AsyncOp {
    public:
        Handle(SimHost *host, std::shared_ptr<Op> op, int member) // NOLINT
            : host_(host), op_(std::move(op)), member_(member) {}
        bool done() override { return host_->op_done(op_, member_); }
        void wait() override { host_->op_wait(op_, member_); }

    private:
        SimHost *host_;
        std::shared_ptr<Op> op_;
        int member_;
    };

    AsyncHandle make_handle(std::shared_ptr<Op> op) {
        return std::make_unique<Handle>(host_, std::move(op), rank_);
    }

    SimHost *host_;
    int comm_id_;
    int rank_;
    int size_;
    int owner_task_;
    std::uint64_t seq_ = 0;
};

// ---------------------------------------------------------------------------
// Scheduling (virtual mode) and thread management
// ---------------------------------------------------------------------------

void SimHost::yield(Task *t, std::unique_lock<std::mutex> &lk) {
    // Caller holds lk and owns current_. Hand control back to the scheduler
    // and wait until we are scheduled again.
    current_ = -1;
    cv_.notify_all();
    cv_.wait(lk, [&] { return current_ == t->id; });
    t->st = Task::St::kRunning;
    if (t->abort_pending)
        throw SimAborted{};
}

void SimHost::tick(Task *t, double cost_ms) {
    if (!virtual_mode()) {
        throw_if_aborting();
        if (cost_ms >= 0.05)
            std::this_thread::sleep_for(std::chrono::duration<double, std::milli>(cost_ms));
        return;
    }
    std::unique_lock lk(m_);
    t->clock += cost_ms;
    t->st = Task::St::kReady;
    yield(t, lk);
}

double SimHost::now_ms(Task *t) {
    if (!virtual_mode())
        return real_now_ms();
    return t->clock;
}

SimHost::Task *SimHost::spawn(Task *parent, std::function<void(ExecContext &)> fn) {
    std::unique_lock lk(m_);
    auto task = std::make_unique<Task>();
    Task *t = task.get();
    t->id = static_cast<int>(tasks_.size());
    t->rank = parent->rank;
    t->thread_idx = ++rank_thread_counter_[parent->rank];
    t->clock = virtual_mode() ? parent->clock : 0.0;
    t->st = Task::St::kReady;
    tasks_.push_back(std::move(task));
    auto body = [this, t, fn = std::move(fn)]() mutable { task_body(t, std::move(fn)); };
    t->os = std::thread(std::move(body));
    return t;
}

void SimHost::join_task(Task *parent, int child_id) {
    if (!virtual_mode()) {
        Task *child = nullptr;
        {
            std::unique_lock lk(m_);
            child = tasks_[child_id].get();
        }
        if (child->os.joinable())
            child->os.join();
        return;
    }
    std::unique_lock lk(m_);
    Task *child = tasks_[child_id].get();
    if (child->st != Task::St::kFinished) {
        parent->st = Task::St::kJoinBlocked;
        parent->join_child = child_id;
        yield(parent, lk);
    }
    parent->clock = std::max(parent->clock, child->final_clock);
}

void SimHost::task_body(Task *t, std::function<void(ExecContext &)> fn) {
    tls_task = t;
    if (virtual_mode()) {
        std::unique_lock lk(m_);
        cv_.wait(lk, [&] { return current_ == t->id; });
        t->st = Task::St::kRunning;
        lk.unlock();
    }
    SimExecContext ctx(this, t);
    try {
        if (t->abort_pending)
            throw SimAborted{};
        fn(ctx);
    } catch (const SimAborted &) {
        // unwound by host abort; first_error_ already holds the cause
    } catch (...) {
        std::unique_lock lk(m_);
        record_error_and_abort(std::current_exception());
    }
    std::unique_lock lk(m_);
    t->st = Task::St::kFinished;
    t->final_clock = t->clock;
    for (auto &other : tasks_) {
        if (other->st == Task::St::kJoinBlocked && other->join_child == t->id) {
            other->st = Task::St::kReady;
            other->join_child = -1;
        }
    }
    if (virtual_mode()) {
        current_ = -1;
        cv_.notify_all();
    } else {
        cv_.notify_all();
    }
    tls_task = nullptr;
}

void SimHost::scheduler_loop(std::unique_lock<std::mutex> &lk) {
    for (;;) {
        cv_.wait(lk, [&] { return current_ == -1; });
        Task *next = nullptr;
        bool all_finished = true;
        bool any_blocked = false;
        for (auto &t : tasks_) {
            if (t->st != Task::St::kFinished)
                all_finished = false;
            if (t->st == Task::St::kBlocked || t->st == Task::St::kJoinBlocked)
                any_blocked = true;
            if (t->st == Task::St::kReady &&
                (!next || t->clock < next->clock ||
                 (t->clock == next->clock && t->id < next->id)))
                next = t.get();
        }
        if (!next) {
            if (all_finished)
                return;
            if (any_blocked) {
                if (!aborting_.load(std::memory_order_relaxed)) {
                    std::ostringstream what;
                    what << "simulated cluster deadlock:";
                    for (auto &t : tasks_)
                        if (t->st == Task::St::kBlocked || t->st == Task::St::kJoinBlocked)
                            what << " task(rank=" << t->rank << ",thread=" << t->thread_idx
                                 << ") blocked;";
                    record_error_and_abort(std::make_exception_ptr(BackendFault(what.str())));
                }
                // Unwind blocked tasks through their yield points.
                for (auto &t : tasks_) {
                    if (t->st == Task::St::kBlocked || t->st == Task::St::kJoinBlocked)
                        t->st = Task::St::kReady;
                }
                continue;
            }
            // Tasks still starting up; let them reach their wait.
            cv_.wait_for(lk, std::chrono::milliseconds(1));
            continue;
        }
        current_ = next->id;
        cv_.notify_all();
    }
}

void SimHost::run(const std::function<void(ExecContext &, Communicator &)> &rank_main) {
    require(!started_, "SimCluster::run is one-shot");
    started_ = true;
    start_ = std::chrono::steady_clock::now();

    std::vector<std::unique_ptr<Communicator>> worlds;
    {
        std::unique_lock lk(m_);
        for (int r = 0; r < ranks_; ++r) {
            auto task = std::make_unique<Task>();
            task->id = r;
            task->rank = r;
            task->thread_idx = 0;
            tasks_.push_back(std::move(task));
        }
        for (int r = 0; r < ranks_; ++r)
            worlds.push_back(
                std::make_unique<SimCommImpl>(this, /*comm_id=*/0, r, ranks_, /*owner=*/r));
        for (int r = 0; r < ranks_; ++r) {
            Task *t = tasks_[r].get();
            Communicator *world = worlds[r].get();
            t->os = std::thread([this, t, world, &rank_main] {
                task_body(t, [world, &rank_main](ExecContext &ctx) { rank_main(ctx, *world); });
            });
        }
    }

    if (virtual_mode()) {
        std::unique_lock lk(m_);
        scheduler_loop(lk);
    }
    for (auto &t : tasks_) {
        if (t->os.joinable())
            t->os.join();
    }
    {
        std::unique_lock lk(m_);
        if (virtual_mode()) {
            for (auto &t : tasks_)
                wall_ms_ = std::max(wall_ms_, t->final_clock);
        } else {
            wall_ms_ = real_now_ms();
        }
        if (first_error_)
            std::rethrow_exception(first_error_);
    }
}

// ---------------------------------------------------------------------------
// Collective routing
// ---------------------------------------------------------------------------

double SimHost::delay_for(const Op &op) const {
    if (op.size <= 1)
        return 0.0;
    double d = opts_.net.latency_ms;
    if (opts_.net.jitter_ms > 0) {
        std::uint64_t h = opts_.net.seed;
        h ^= static_cast<std::uint64_t>(op.comm_id) * 0x9e3779b97f4a7c15ULL;
        h ^= op.seq * 0xbf58476d1ce4e5b9ULL;
        std::uint64_t bits = splitmix64(h);
        d += opts_.net.jitter_ms * (static_cast<double>(bits >> 11) * 0x1.0p-53);
    }
    if (opts_.net.bandwidth_mbps > 0) {
        double bytes = 0;
        if (op.kind == OpKind::kReduceNB || op.kind == OpKind::kReduceBlocking)
            bytes = static_cast<double>(op.words) * 8.0;
        else if (op.kind == OpKind::kBcast)
            bytes = 8.0;
        d += bytes / (opts_.net.bandwidth_mbps * 1e6) * 1e3;
    }
    if (op.kind == OpKind::kReduceNB)
        d *= opts_.net.slow_ireduce_factor;
    return d;
}

std::shared_ptr<SimHost::Op> SimHost::enter(int comm_id, std::uint64_t seq, OpKind kind,
                                            int root, std::span<const std::uint64_t> contrib,
                                            std::span<std::uint64_t> root_out,
                                            std::uint64_t *value_ptr, int color,
                                            int member_idx) {
    std::unique_lock lk(m_);
    throw_if_aborting();
    Task *t = tls_task;
    require(t != nullptr, "collective call outside a cluster worker");
    const int size = static_cast<int>(comms_[comm_id].world_ranks.size());

    auto key = std::make_pair(comm_id, seq);
    std::shared_ptr<Op> op;
    if (auto it = pending_.find(key); it != pending_.end()) {
        op = it->second;
        if (op->kind != kind || op->root != root)
            throw BackendFault("collective mismatch: ranks disagree on operation kind/root");
    } else {
        op = std::make_shared<Op>();
        op->kind = kind;
        op->comm_id = comm_id;
        op->seq = seq;
        op->root = root;
        op->size = size;
        op->words = contrib.size();
        op->has_entered.assign(size, 0);
        op->entry_clock.assign(size, 0.0);
        op->contribs.assign(size, {});
        op->entry_hashes.assign(size, 0);
        op->value_ptrs.assign(size, nullptr);
        op->colors.assign(size, 0);
        op->split_out.assign(size, {});
        op->completion.assign(size, 0.0);
        pending_.emplace(key, op);
    }
    require(!op->has_entered[member_idx], "collective entered twice by one rank");
    if (kind == OpKind::kReduceNB || kind == OpKind::kReduceBlocking) {
        if (op->entered > 0 && contrib.size() != op->words)
            throw BackendFault("collective mismatch: reduce buffer lengths differ");
        op->words = contrib.size();
        op->contribs[member_idx] = contrib;
        if (opts_.net.freeze_checks)
            op->entry_hashes[member_idx] = hash_words(contrib);
        if (member_idx == root) {
            if (root_out.size() != contrib.size())
                throw BackendFault("collective mismatch: root output length differs");
            op->root_out = root_out;
        }
    } else if (kind == OpKind::kBcast) {
        op->value_ptrs[member_idx] = value_ptr;
        if (member_idx == root)
            op->root_value = *value_ptr;
    } else if (kind == OpKind::kSplit) {
        op->colors[member_idx] = color;
    }
    op->has_entered[member_idx] = 1;
    op->entry_clock[member_idx] = clock_of(t);
    if (++op->entered == size) {
        pending_.erase(key);
        complete_op(op);
    }
    return op;
}

void SimHost::complete_op(const std::shared_ptr<Op> &op) {
    double max_entry = 0.0;
    for (double e : op->entry_clock)
        max_entry = std::max(max_entry, e);
    const double delay = delay_for(*op);

    if (op->kind == OpKind::kBcast) {
        // Delivery depends on the root having sent, not on stragglers'
        // compute; a member never completes before its own entry.
        double sent = op->entry_clock[op->root] + delay;
        for (int i = 0; i < op->size; ++i)
            op->completion[i] = std::max(op->entry_clock[i], sent);
    } else {
        for (int i = 0; i < op->size; ++i)
            op->completion[i] = max_entry + delay;
    }

    switch (op->kind) {
    case OpKind::kReduceNB:
    case OpKind::kReduceBlocking: {
        if (opts_.net.freeze_checks) {
            for (int i = 0; i < op->size; ++i)
                if (hash_words(op->contribs[i]) != op->entry_hashes[i])
                    throw BackendFault("contribution buffer was modified while the "
                                       "reduction was in flight");
        }
        std::vector<std::uint64_t> sum(op->words, 0);
        for (int i = 0; i < op->size; ++i)
            for (std::size_t w = 0; w < op->words; ++w)
                sum[w] += op->contribs[i][w];
        std::copy(sum.begin(), sum.end(), op->root_out.begin());
        bytes_routed_ += static_cast<std::uint64_t>(op->size - 1) * op->words * 8;
        break;
    }
    case OpKind::kBcast:
        for (int i = 0; i < op->size; ++i)
            *op->value_ptrs[i] = op->root_value;
        bytes_routed_ += static_cast<std::uint64_t>(op->size - 1) * 8;
        break;
    case OpKind::kBarrier:
        break;
    case OpKind::kSplit: {
        std::vector<int> distinct(op->colors.begin(), op->colors.end());
        std::sort(distinct.begin(), distinct.end());
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        const std::vector<int> parent_ranks = comms_[op->comm_id].world_ranks;
        for (int color : distinct) {
            CommInfo child;
            for (int i = 0; i < op->size; ++i)
                if (op->colors[i] == color)
                    child.world_ranks.push_back(parent_ranks[i]);
            int new_id = static_cast<int>(comms_.size());
            int child_size = static_cast<int>(child.world_ranks.size());
            for (int i = 0, j = 0; i < op->size; ++i) {
                if (op->colors[i] == color)
                    op->split_out[i] = SplitOut{new_id, j++, child_size};
            }
            comms_.push_back(std::move(child));
        }
        break;
    }
    }

    op->complete = true;
    // Wake members blocked on this op; in virtual mode their clocks jump to
    // the completion time.
    for (Task *w : op->waiters) {
        if (virtual_mode())
            w->clock = std::max(w->clock, op->completion[w->blocked_member]);
        w->st = Task::St::kReady;
        w->blocked_op.reset();
        w->blocked_member = -1;
    }
    op->waiters.clear();
    if (!virtual_mode())
        cv_.notify_all();
}

bool SimHost::op_done(const std::shared_ptr<Op> &op, int member_idx) {
    std::unique_lock lk(m_);
    throw_if_aborting();
    if (!op->complete)
        return false;
    Task *t = tls_task;
    double now = virtual_mode() ? t->clock : real_now_ms();
    return now >= op->completion[member_idx];
}

void SimHost::op_wait(const std::shared_ptr<Op> &op, int member_idx) {
    std::unique_lock lk(m_);
    throw_if_aborting();
    Task *t = tls_task;
    if (virtual_mode()) {
        if (!op->complete) {
            t->st = Task::St::kBlocked;
            t->blocked_op = op;
            t->blocked_member = member_idx;
            op->waiters.push_back(t);
            yield(t, lk);
            if (!op->complete)
                throw SimAborted{}; // woken by abort, not completion
        }
        t->clock = std::max(t->clock, op->completion[member_idx]);
        return;
    }
    cv_.wait(lk, [&] {
        return op->complete || aborting_.load(std::memory_order_relaxed);
    });
    if (!op->complete)
        throw SimAborted{};
    double deadline = op->completion[member_idx];
    lk.unlock();
    double now = real_now_ms();
    if (now < deadline)
        std::this_thread::sleep_for(
            std::chrono::duration<double, std::milli>(deadline - now));
}

void SimHost::check_owner(int owner_task, const char *what) {
    Task *t = tls_task;
    require(t != nullptr && t->id == owner_task,
            "communicator touched from a worker other than its owning thread 0");
    (void)what;
}

int SimHost::current_task_id() {
    Task *t = tls_task;
    require(t != nullptr, "no current cluster worker");
    return t->id;
}

// ---------------------------------------------------------------------------
// Public wrapper
// ---------------------------------------------------------------------------

SimCluster::SimCluster(int ranks, SimOptions opts)
    : host_(std::make_unique<SimHost>(ranks, opts)) {}

SimCluster::~SimCluster() = default;

void SimCluster::run(const std::function<void(ExecContext &, Communicator &)> &rank_main) {
    host_->run(rank_main);
}

int SimCluster::ranks() const { return host_->ranks(); }
double SimCluster::wall_time_ms() const { return host_->wall_time_ms(); }
std::uint64_t SimCluster::bytes_routed() const { return host_->bytes_routed(); }

} // namespace epochbc
