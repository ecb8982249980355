#ifdef EPOCHBC_ENABLE_MPI

#include "epochbc/mpi_comm.hpp"

#include <chrono>
#include <thread>
#include <vector>

#include <mpi.h>

namespace epochbc {

namespace {

void mpi_check(int rc, const char *what) {
    if (rc != MPI_SUCCESS)
        throw BackendFault(std::string("MPI failure in ") + what);
}

class MpiAsyncOp : public AsyncOp {
public:
    explicit MpiAsyncOp(MPI_Request request) : request_(request) {}

    bool done() override {
        if (complete_)
            return true;
        int flag = 0;
        mpi_check(MPI_Test(&request_, &flag, MPI_STATUS_IGNORE), "MPI_Test");
        complete_ = flag != 0;
        return complete_;
    }

    void wait() override {
        if (complete_)
            return;
        mpi_check(MPI_Wait(&request_, MPI_STATUS_IGNORE), "MPI_Wait");
        complete_ = true;
    }

private:
    MPI_Request request_;
    bool complete_ = false;
};

class MpiComm : public Communicator {
public:
    MpiComm(MPI_Comm comm, bool owned) : comm_(comm), owned_(owned) {
        MPI_Comm_rank(comm_, &rank_);
        MPI_Comm_size(comm_, &size_);
        owner_ = std::this_thread::get_id();
    }
    ~MpiComm() override {
        if (owned_)
            MPI_Comm_free(&comm_);
    }

    int rank() const override { return rank_; }
    int size() const override { return size_; }

    AsyncHandle ireduce_sum(std::span<const std::uint64_t> contrib,
                            std::span<std::uint64_t> root_out, int root) override {
        check_owner();
        MPI_Request req;
        void *recv = rank_ == root ? root_out.data() : nullptr;
        mpi_check(MPI_Ireduce(contrib.data(), recv, static_cast<int>(contrib.size()),
                              MPI_UINT64_T, MPI_SUM, root, comm_, &req),
                  "MPI_Ireduce");
        return std::make_unique<MpiAsyncOp>(req);
    }

    void reduce_sum_blocking(std::span<const std::uint64_t> contrib,
                             std::span<std::uint64_t> root_out, int root) override {
        check_owner();
        void *recv = rank_ == root ? root_out.data() : nullptr;
        mpi_check(MPI_Reduce(contrib.data(), recv, static_cast<int>(contrib.size()),
                             MPI_UINT64_T, MPI_SUM, root, comm_),
                  "MPI_Reduce");
    }

    AsyncHandle ibarrier() override {
        check_owner();
        MPI_Request req;
        mpi_check(MPI_Ibarrier(comm_, &req), "MPI_Ibarrier");
        return std::make_unique<MpiAsyncOp>(req);
    }

    AsyncHandle ibroadcast(std::uint64_t *value, int root) override {
        check_owner();
        MPI_Request req;
        mpi_check(MPI_Ibcast(value, 1, MPI_UINT64_T, root, comm_, &req), "MPI_Ibcast");
        return std::make_unique<MpiAsyncOp>(req);
    }

    std::unique_ptr<Communicator> split(int color) override {
        check_owner();
        MPI_Comm out;
        mpi_check(MPI_Comm_split(comm_, color, rank_, &out), "MPI_Comm_split");
        return std::make_unique<MpiComm>(out, /*owned=*/true);
    }

private:
    void check_owner() const {
        require(std::this_thread::get_id() == owner_,
                "communicator touched from a thread other than its owner (funneled mode)");
    }

    MPI_Comm comm_;
    bool owned_;
    int rank_ = 0;
    int size_ = 0;
    std::thread::id owner_;
};

class MpiExecContext : public ExecContext {
public:
    MpiExecContext(int rank, int thread_idx) : rank_(rank), thread_idx_(thread_idx) {}

    int rank() const override { return rank_; }
    int thread() const override { return thread_idx_; }

    void tick(double cost_ms) override {
        if (cost_ms >= 0.05)
            std::this_thread::sleep_for(std::chrono::duration<double, std::milli>(cost_ms));
    }

    double now_ms() override {
        using namespace std::chrono;
        return duration<double, std::milli>(steady_clock::now() - start_).count();
    }

    std::unique_ptr<Joinable> spawn(std::function<void(ExecContext &)> fn) override {
        int idx = ++spawned_;
        auto child = std::make_unique<MpiExecContext>(rank_, idx);
        child->start_ = start_;
        class J : public Joinable {
        public:
            J(std::unique_ptr<MpiExecContext> ctx, std::function<void(ExecContext &)> fn)
                : ctx_(std::move(ctx)), thread_([this, fn = std::move(fn)] { fn(*ctx_); }) {}
            void join() override {
                if (thread_.joinable())
                    thread_.join();
            }
            ~J() override { join(); }

        private:
            std::unique_ptr<MpiExecContext> ctx_;
            std::thread thread_;
        };
        return std::make_unique<J>(std::move(child), std::move(fn));
    }

private:
    int rank_;
    int thread_idx_;
    int spawned_ = 0;
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

} // namespace

MpiRuntime::MpiRuntime(int *argc, char ***argv) {
    int provided = 0;
    mpi_check(MPI_Init_thread(argc, argv, MPI_THREAD_FUNNELED, &provided), "MPI_Init_thread");
    if (provided < MPI_THREAD_FUNNELED)
        throw BackendFault("MPI library does not provide funneled threading");
}

MpiRuntime::~MpiRuntime() { MPI_Finalize(); }

std::unique_ptr<Communicator> MpiRuntime::world() const {
    return std::make_unique<MpiComm>(MPI_COMM_WORLD, /*owned=*/false);
}

std::unique_ptr<ExecContext> make_mpi_exec_context(int rank) {
    return std::make_unique<MpiExecContext>(rank, 0);
}

} // namespace epochbc

#endif // EPOCHBC_ENABLE_MPI
