#include "epochbc/engine.hpp"

#include <atomic>
#include <cmath>

#include "epochbc/bfs.hpp"
#include "epochbc/epoch.hpp"
#include "epochbc/rng.hpp"
#include "epochbc/sampler.hpp"

namespace epochbc {

void RunConfig::validate() const {
    if (ranks < 1 || threads < 1)
        throw ConfigError("run config: ranks and threads must be at least 1");
    if (!(eps > 0 && eps < 1) || !(delta > 0 && delta < 1))
        throw ConfigError("run config: eps and delta must lie in (0,1)");
    if (epoch_base <= 0 || epoch_exponent < 0)
        throw ConfigError("run config: bad epoch length parameters");
    if (algo == Algo::kRankOnly && threads != 1)
        throw ConfigError("run config: the rank-only driver requires threads = 1");
    if (!node_of_rank.empty() && static_cast<int>(node_of_rank.size()) != ranks)
        throw ConfigError("run config: topology map must list one node per rank");
}

std::uint64_t epoch_length(int ranks, int threads, double base, double exponent) {
    require(ranks >= 1 && threads >= 1, "epoch_length: bad worker counts");
    double workers = static_cast<double>(ranks) * threads;
    auto n0 = std::llround(base / std::pow(workers, exponent));
    return n0 < 1 ? 1 : static_cast<std::uint64_t>(n0);
}

HierComms hierarchical_topology(Communicator &world, std::span<const int> node_of_rank) {
    HierComms h;
    int color = node_of_rank.empty() ? world.rank()
                                     : node_of_rank[static_cast<std::size_t>(world.rank())];
    h.local = world.split(color);
    h.leader = h.local->rank() == 0;
    h.global = world.split(h.leader ? 0 : 1);
    return h;
}

namespace {

// Phase salt keeps calibration streams independent of adaptive streams.
constexpr std::uint64_t kCalibrationSalt = std::uint64_t{1} << 48;

struct WorkerState {
    WorkerState(const Graph &g, std::uint64_t master, int rank, std::uint64_t thread_tag)
        : rng(Rng::stream(master, static_cast<std::uint64_t>(rank), thread_tag)),
          scratch(g.num_vertices()) {}
    Rng rng;
    SearchScratch scratch;
    PathSample sample;
};

void take_sample(const Graph &g, WorkerState &w) {
    auto [s, t] = sample_pair(g.num_vertices(), w.rng);
    sample_shortest_path(g, s, t, w.scratch, w.rng, w.sample);
}

struct PhaseTimer {
    ExecContext &ctx;
    double &sink_s;
    double t0;
    PhaseTimer(ExecContext &ctx, double &sink_s) : ctx(ctx), sink_s(sink_s), t0(ctx.now_ms()) {}
    ~PhaseTimer() { sink_s += (ctx.now_ms() - t0) / 1e3; }
};

double modeled_comm_bytes_per_epoch(const RunConfig &cfg, Vertex n) {
    const double frame_bytes = static_cast<double>(n + 1) * 8.0;
    double bytes = 0.0;
    if (cfg.algo == Algo::kRankOnly) {
        bytes += (cfg.ranks - 1) * frame_bytes;
    } else {
        std::vector<int> nodes = cfg.node_of_rank;
        if (nodes.empty())
            for (int r = 0; r < cfg.ranks; ++r)
                nodes.push_back(r);
        std::vector<int> distinct(nodes.begin(), nodes.end());
        std::sort(distinct.begin(), distinct.end());
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        for (int node : distinct) {
            int local = static_cast<int>(std::count(nodes.begin(), nodes.end(), node));
            bytes += (local - 1) * frame_bytes;
        }
        bytes += (static_cast<double>(distinct.size()) - 1) * frame_bytes;
    }
    bytes += (cfg.ranks - 1) * 8.0; // termination broadcast
    return bytes;
}

// Per-sample virtual cost; under real clocks ticks are cheap no-ops unless a
// modeled workload is configured.
struct CostModel {
    double sample_ms = 0.0;
};

class AdaptiveDriver {
public:
    AdaptiveDriver(const Graph &g, const RunConfig &cfg, ExecContext &ctx, Communicator &world,
                   const StoppingParams &params, CostModel cost, RunStats &stats,
                   DebugCounters &debug)
        : g_(g), cfg_(cfg), ctx_(ctx), world_(world), params_(params), cost_(cost),
          stats_(stats), debug_(debug) {}

    void run_algorithm1();
    void run_algorithm2();

    StateFrame &final_state() { return S_; }

private:
    const Graph &g_;
    const RunConfig &cfg_;
    ExecContext &ctx_;
    Communicator &world_;
    const StoppingParams &params_;
    CostModel cost_;
    RunStats &stats_;
    DebugCounters &debug_;
    StateFrame S_; // global aggregate, meaningful at world rank 0
};

void AdaptiveDriver::run_algorithm1() {
    const Vertex n = g_.num_vertices();
    const std::uint64_t n0 = stats_.n0;
    const bool root = world_.rank() == 0;

    S_ = StateFrame(n);
    StateFrame S_loc(n), snapshot(n), S_epoch(n);
    WorkerState w(g_, cfg_.seed, world_.rank(), 0);
    std::uint64_t done_flag = 0;

    auto sample_into = [&](StateFrame &frame) {
        take_sample(g_, w);
        apply_sample(frame, w.sample);
        ++debug_.applied_adaptive;
        ctx_.tick(cost_.sample_ms);
    };

    while (done_flag == 0) {
        for (std::uint64_t i = 0; i < n0; ++i)
            sample_into(S_loc);

        snapshot = S_loc; // freeze the contribution before the reduction
        S_loc.clear();
        {
            PhaseTimer span(ctx_, stats_.barrier_s);
            AsyncHandle h = ireduce_frame(world_, snapshot, &S_epoch, 0);
            while (!h->done())
                sample_into(S_loc);
        }
        if (root) {
            S_.add(S_epoch);
            PhaseTimer span(ctx_, stats_.check_s);
            done_flag = check_stop(S_, params_, cfg_.bound) ? 1 : 0;
        }
        {
            PhaseTimer span(ctx_, stats_.bcast_s);
            AsyncHandle h = world_.ibroadcast(&done_flag, 0);
            while (!h->done())
                sample_into(S_loc);
        }
        ++stats_.epochs;
    }
    debug_.discarded += S_loc.tau();
}

void AdaptiveDriver::run_algorithm2() {
    const Vertex n = g_.num_vertices();
    const std::uint64_t n0 = stats_.n0;
    const int T = cfg_.threads;

    HierComms hier = hierarchical_topology(world_, cfg_.node_of_rank);
    const bool root = world_.rank() == 0;

    S_ = StateFrame(n);
    StateFrame local_sum(n), node_sum(n), S_epoch(n);

    EpochClock clock(T, n);
    std::atomic<std::uint64_t> term{0};
    std::vector<std::uint64_t> applied_by_thread(T, 0);

    // Sampling threads: take samples, acknowledge transitions, stop on the
    // termination flag. Never blocks, never communicates.
    std::vector<std::unique_ptr<Joinable>> workers;
    for (int t = 1; t < T; ++t) {
        workers.push_back(ctx_.spawn([&, t](ExecContext &wctx) {
            WorkerState w(g_, cfg_.seed, world_.rank(), static_cast<std::uint64_t>(t));
            std::uint64_t e = 0;
            std::uint64_t applied = 0;
            while (term.load(std::memory_order_acquire) == 0) {
                take_sample(g_, w);
                clock.apply(t, w.sample);
                ++applied;
                wctx.tick(cost_.sample_ms);
                if (clock.check_transition(t, e))
                    ++e;
            }
            applied_by_thread[t] = applied;
        }));
    }

    WorkerState w(g_, cfg_.seed, world_.rank(), 0);
    auto sample_current = [&] {
        take_sample(g_, w);
        clock.apply(0, w.sample);
        ++applied_by_thread[0];
        ctx_.tick(cost_.sample_ms);
    };

    std::uint64_t e = 0;
    std::uint64_t done_flag = 0;
    for (;;) {
        for (std::uint64_t i = 0; i < n0; ++i)
            sample_current();

        // Close epoch e; overlap the transition with next-epoch sampling.
        {
            PhaseTimer span(ctx_, stats_.transition_s);
            TransitionHandle h = clock.force_transition(e);
            while (!clock.poll_transition(h))
                sample_current();
        }
        if (cfg_.skew_monitor)
            cfg_.skew_monitor->on_epoch(world_.rank(), e + 1);
        clock.collect_epoch(e, local_sum);

        // Node-local aggregation is a blocking shared-memory-style reduce.
        {
            PhaseTimer span(ctx_, stats_.reduce_s);
            reduce_frame_blocking(*hier.local, local_sum, &node_sum, 0);
        }
        if (hier.leader) {
            AggPattern pattern = cfg_.agg == AggPattern::kDefault ? AggPattern::kIbarrierReduce
                                                                  : cfg_.agg;
            if (pattern == AggPattern::kIreduce) {
                PhaseTimer span(ctx_, stats_.barrier_s);
                AsyncHandle h = ireduce_frame(*hier.global, node_sum, &S_epoch, 0);
                while (!h->done())
                    sample_current();
            } else {
                {
                    PhaseTimer span(ctx_, stats_.barrier_s);
                    AsyncHandle h = hier.global->ibarrier();
                    while (!h->done())
                        sample_current();
                }
                PhaseTimer span(ctx_, stats_.reduce_s);
                reduce_frame_blocking(*hier.global, node_sum, &S_epoch, 0);
            }
        }
        if (root) {
            S_.add(S_epoch);
            PhaseTimer span(ctx_, stats_.check_s);
            done_flag = check_stop(S_, params_, cfg_.bound) ? 1 : 0;
        }
        {
            PhaseTimer span(ctx_, stats_.bcast_s);
            AsyncHandle h = world_.ibroadcast(&done_flag, 0);
            while (!h->done())
                sample_current();
        }
        ++stats_.epochs;
        if (done_flag != 0) {
            term.store(1, std::memory_order_release);
            break;
        }
        ++e;
    }

    for (auto &worker : workers)
        worker->join();
    for (std::uint64_t applied : applied_by_thread)
        debug_.applied_adaptive += applied;
    debug_.discarded += clock.drain_uncollected();
}

} // namespace

RankOutput run_pipeline(const Graph &g, const RunConfig &cfg, ExecContext &ctx,
                        Communicator &world) {
    cfg.validate();
    require(world.size() == cfg.ranks, "run_pipeline: communicator size != configured ranks");
    const Vertex n = g.num_vertices();
    require(n >= 2, "run_pipeline: need at least two vertices");
    const bool root = world.rank() == 0;

    RankOutput out;
    RunStats &stats = out.stats;
    stats.n = n;
    stats.m = g.num_edges();
    stats.n0 = epoch_length(cfg.ranks, cfg.threads, cfg.epoch_base, cfg.epoch_exponent);

    CostModel cost{cfg.sample_cost_ms};

    const double run_start = ctx.now_ms();

    // Phase 1: diameter bound at rank 0, result broadcast.
    std::uint64_t vd = 0;
    {
        PhaseTimer span(ctx, stats.diameter_s);
        if (root) {
            GraphStats gs = diameter_upper_bound(g, cfg.diameter_sweeps, cfg.seed);
            stats.diameter_upper_bound = gs.diameter_upper_bound;
            vd = gs.vertex_diameter_bound;
            ctx.tick(cost.sample_ms * cfg.diameter_sweeps);
        }
        world.ibroadcast(&vd, 0)->wait();
        stats.vertex_diameter_bound = vd;
    }

    // Phase 2: static sample budget.
    StoppingParams params;
    params.eps = cfg.eps;
    params.delta = cfg.delta;
    params.omega =
        cfg.omega_override != 0 ? cfg.omega_override : compute_omega(vd, cfg.eps, cfg.delta);
    stats.omega = params.omega;

    // Phase 3: calibration; pleasingly parallel sampling, then a blocking
    // aggregation and the per-vertex failure-probability allocation.
    {
        PhaseTimer span(ctx, stats.calibration_s);
        StateFrame calib_local(n);
        std::vector<StateFrame> worker_frames(cfg.threads, StateFrame(n));
        std::vector<std::unique_ptr<Joinable>> workers;
        for (int t = 1; t < cfg.threads; ++t) {
            workers.push_back(ctx.spawn([&, t](ExecContext &wctx) {
                WorkerState w(g, cfg.seed, world.rank(),
                              static_cast<std::uint64_t>(t) | kCalibrationSalt);
                for (std::uint64_t i = 0; i < cfg.calib_samples_per_worker; ++i) {
                    take_sample(g, w);
                    apply_sample(worker_frames[t], w.sample);
                    wctx.tick(cost.sample_ms);
                }
            }));
        }
        WorkerState w(g, cfg.seed, world.rank(), kCalibrationSalt);
        for (std::uint64_t i = 0; i < cfg.calib_samples_per_worker; ++i) {
            take_sample(g, w);
            apply_sample(worker_frames[0], w.sample);
            ctx.tick(cost.sample_ms);
        }
        for (auto &worker : workers)
            worker->join();
        for (auto &frame : worker_frames)
            calib_local.add(frame);
        out.debug.applied_calibration = calib_local.tau();

        StateFrame calib_agg(n);
        reduce_frame_blocking(world, calib_local, &calib_agg, 0);
        if (root) {
            calibrate(calib_agg, cfg.delta, n, cfg.allocator, params);
            stats.calibration_samples = calib_agg.tau();
        }
    }

    // Phase 4: adaptive sampling.
    StateFrame final_state;
    {
        PhaseTimer span(ctx, stats.adaptive_s);
        AdaptiveDriver driver(g, cfg, ctx, world, params, cost, stats, out.debug);
        if (cfg.algo == Algo::kRankOnly)
            driver.run_algorithm1();
        else
            driver.run_algorithm2();
        final_state = std::move(driver.final_state());
    }

    // Cluster-wide sample accounting (exact integers).
    {
        std::uint64_t counters[3] = {out.debug.applied_calibration, out.debug.applied_adaptive,
                                     out.debug.discarded};
        std::uint64_t totals[3] = {0, 0, 0};
        world.reduce_sum_blocking(std::span<const std::uint64_t>(counters, 3),
                                  root ? std::span<std::uint64_t>(totals, 3)
                                       : std::span<std::uint64_t>(),
                                  0);
        if (root) {
            stats.samples = totals[0] + totals[1];
            stats.discarded_samples = totals[2];
            stats.tau = final_state.tau();
            require(stats.tau == totals[1] - totals[2],
                    "sample conservation violated: tau != applied - discarded");
        }
    }
    stats.comm_mib_per_epoch = modeled_comm_bytes_per_epoch(cfg, n) / (1024.0 * 1024.0);
    stats.wall_s = (ctx.now_ms() - run_start) / 1e3;

    if (root) {
        ApproxResult res;
        res.tau_total = final_state.tau();
        res.original_ids = g.original_ids();
        res.scores.assign(n, 0.0);
        if (res.tau_total > 0)
            for (Vertex v = 0; v < n; ++v)
                res.scores[v] = static_cast<double>(final_state.count(v)) /
                                static_cast<double>(res.tau_total);
        out.result = std::move(res);
    }
    return out;
}

SimRunOutcome run_simulated(const Graph &g, const RunConfig &cfg, const SimOptions &opts) {
    cfg.validate();
    bool has_delay =
        opts.net.latency_ms > 0 || opts.net.jitter_ms > 0 || opts.net.bandwidth_mbps > 0;
    if (opts.clock_mode == SimClockMode::kVirtual && has_delay && cfg.sample_cost_ms <= 0)
        throw ConfigError("virtual clock with network delays needs a positive sample cost, "
                          "otherwise local clocks cannot advance past collective completions");
    SimCluster cluster(cfg.ranks, opts);
    std::vector<RankOutput> outputs(cfg.ranks);
    cluster.run([&](ExecContext &ctx, Communicator &world) {
        outputs[ctx.rank()] = run_pipeline(g, cfg, ctx, world);
    });

    SimRunOutcome outcome;
    require(outputs[0].result.has_value(), "rank 0 produced no result");
    outcome.result = std::move(*outputs[0].result);
    outcome.stats = outputs[0].stats;
    outcome.wall_ms = cluster.wall_time_ms();
    outcome.bytes_routed = cluster.bytes_routed();
    std::uint64_t applied = 0, discarded = 0;
    for (auto &o : outputs) {
        outcome.debug.push_back(o.debug);
        applied += o.debug.applied_adaptive;
        discarded += o.debug.discarded;
    }
    // Host-side conservation cross-check, independent of the in-run reduce.
    require(outcome.result.tau_total == applied - discarded,
            "sample conservation violated across the simulated cluster");
    return outcome;
}

} // namespace epochbc
