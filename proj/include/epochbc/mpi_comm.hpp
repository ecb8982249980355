#pragma once

// Adapter contract for a real message-passing backend. Any standard MPI-like
// library can sit behind the Communicator interface; the engine requires:
//   - ireduce_sum    -> MPI_Ireduce(..., MPI_UINT64_T, MPI_SUM, root, ...)
//   - reduce_sum     -> MPI_Reduce (blocking, distinct from the above)
//   - ibarrier       -> MPI_Ibarrier
//   - ibroadcast     -> MPI_Ibcast of one MPI_UINT64_T
//   - split          -> MPI_Comm_split (rank order preserved via key = rank)
// The engine funnels all communication through thread 0 of each process, so
// MPI_THREAD_FUNNELED initialization suffices. Built only when
// EPOCHBC_ENABLE_MPI is set; the simulated backend is the default and the
// only backend exercised by the test suites.

#ifdef EPOCHBC_ENABLE_MPI

#include <memory>

#include "epochbc/comm.hpp"
#include "epochbc/exec.hpp"

namespace epochbc {

// Initializes MPI (funneled) on construction, finalizes on destruction.
class MpiRuntime {
public:
    MpiRuntime(int *argc, char ***argv);
    ~MpiRuntime();
    MpiRuntime(const MpiRuntime &) = delete;
    MpiRuntime &operator=(const MpiRuntime &) = delete;

    std::unique_ptr<Communicator> world() const;
};

// Real-clock ExecContext for MPI processes: tick() sleeps for modeled
// workloads, spawn() starts plain threads.
std::unique_ptr<ExecContext> make_mpi_exec_context(int rank);

} // namespace epochbc

#endif // EPOCHBC_ENABLE_MPI
