#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "epochbc/bfs.hpp"
#include "epochbc/engine.hpp"
#include "epochbc/graph.hpp"
#include "epochbc/oracle.hpp"
#include "epochbc/rmat.hpp"
#include "epochbc/score_io.hpp"
#include "epochbc/stats.hpp"

#ifdef EPOCHBC_ENABLE_MPI
#include "epochbc/mpi_comm.hpp"
#endif

namespace {

using namespace epochbc;

constexpr int kExitOk = 0;
constexpr int kExitCompareAboveEps = 1;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;
constexpr int kExitBackend = 4;

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

RmatParams parse_gen_spec(const std::string &spec, std::uint64_t seed) {
    if (spec.rfind("rmat:", 0) != 0)
        throw ConfigError("unsupported generator spec (expected rmat:...): " + spec);
    RmatParams p;
    p.seed = seed;
    std::stringstream ss(spec.substr(5));
    std::string kv;
    while (std::getline(ss, kv, ',')) {
        auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw ConfigError("bad generator option: " + kv);
        std::string key = kv.substr(0, eq);
        std::string value = kv.substr(eq + 1);
        try {
            if (key == "scale")
                p.scale = std::stoi(value);
            else if (key == "ef")
                p.edge_factor = std::stoi(value);
            else if (key == "a")
                p.a = std::stod(value);
            else if (key == "b")
                p.b = std::stod(value);
            else if (key == "c")
                p.c = std::stod(value);
            else if (key == "d")
                p.d = std::stod(value);
            else
                throw ConfigError("unknown generator option: " + key);
        } catch (const std::invalid_argument &) {
            throw ConfigError("bad generator value: " + kv);
        }
    }
    return p;
}

Graph obtain_graph(const std::string &graph_path, const std::string &gen_spec,
                   std::uint64_t seed) {
    if (!graph_path.empty() && !gen_spec.empty())
        throw ConfigError("--graph and --gen are mutually exclusive");
    Graph g;
    if (!graph_path.empty()) {
        std::ifstream in(graph_path, std::ios::binary);
        if (!in)
            throw IoError("cannot open graph file: " + graph_path);
        g = load_graph_file(graph_path);
    } else if (!gen_spec.empty()) {
        g = gen_rmat(parse_gen_spec(gen_spec, seed));
    } else {
        throw ConfigError("one of --graph or --gen is required");
    }
    return largest_connected_component(g);
}

std::vector<int> parse_topology(const std::string &spec) {
    std::vector<int> nodes;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ','))
        nodes.push_back(std::stoi(tok));
    return nodes;
}

void write_file(const std::string &path, const std::string &content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open output file: " + path);
    out << content;
    if (!out)
        throw IoError("failed writing: " + path);
}

struct RunFlags {
    std::string graph_path, gen_spec, out_path = "scores.tsv", stats_path = "stats.json";
    std::string backend = "sim", clock = "virtual", bound = "hoeffding", alloc = "uniform";
    std::string agg = "default", topology, config_path;
    int algo = 2;
    RunConfig cfg;
    SimOptions sim;
};

void apply_config_file(RunFlags &f, const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open config file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception &e) {
        throw ConfigError("config file: " + std::string(e.what()));
    }
    auto &c = f.cfg;
    if (j.contains("eps"))
        c.eps = j["eps"];
    if (j.contains("delta"))
        c.delta = j["delta"];
    if (j.contains("ranks"))
        c.ranks = j["ranks"];
    if (j.contains("threads"))
        c.threads = j["threads"];
    if (j.contains("seed"))
        c.seed = j["seed"];
    if (j.contains("algo"))
        f.algo = j["algo"];
    if (j.contains("bound"))
        f.bound = j["bound"];
    if (j.contains("allocator"))
        f.alloc = j["allocator"];
    if (j.contains("agg"))
        f.agg = j["agg"];
    if (j.contains("epoch_base"))
        c.epoch_base = j["epoch_base"];
    if (j.contains("epoch_exponent"))
        c.epoch_exponent = j["epoch_exponent"];
    if (j.contains("omega_override"))
        c.omega_override = j["omega_override"];
    if (j.contains("calib_samples_per_worker"))
        c.calib_samples_per_worker = j["calib_samples_per_worker"];
    if (j.contains("diameter_sweeps"))
        c.diameter_sweeps = j["diameter_sweeps"];
    if (j.contains("sample_cost_ms"))
        c.sample_cost_ms = j["sample_cost_ms"];
    if (j.contains("node_of_rank"))
        c.node_of_rank = j["node_of_rank"].get<std::vector<int>>();
    if (j.contains("backend"))
        f.backend = j["backend"];
    if (j.contains("clock"))
        f.clock = j["clock"];
    if (j.contains("net")) {
        auto &n = j["net"];
        if (n.contains("latency_ms"))
            f.sim.net.latency_ms = n["latency_ms"];
        if (n.contains("jitter_ms"))
            f.sim.net.jitter_ms = n["jitter_ms"];
        if (n.contains("bandwidth_mbps"))
            f.sim.net.bandwidth_mbps = n["bandwidth_mbps"];
        if (n.contains("seed"))
            f.sim.net.seed = n["seed"];
        if (n.contains("slow_ireduce_factor"))
            f.sim.net.slow_ireduce_factor = n["slow_ireduce_factor"];
    }
}

std::map<std::string, std::string> run_meta(const RunConfig &cfg, std::uint64_t tau) {
    std::map<std::string, std::string> meta;
    std::ostringstream eps, delta;
    eps << cfg.eps;
    delta << cfg.delta;
    meta["eps"] = eps.str();
    meta["delta"] = delta.str();
    meta["tau"] = std::to_string(tau);
    meta["seed"] = std::to_string(cfg.seed);
    meta["algo"] = std::to_string(static_cast<int>(cfg.algo));
    return meta;
}

int cmd_run(RunFlags &f) {
    f.cfg.algo = f.algo == 1 ? Algo::kRankOnly : Algo::kEpochBased;
    f.cfg.bound = parse_bound_kind(f.bound);
    f.cfg.allocator = parse_allocator_kind(f.alloc);
    if (f.agg == "default")
        f.cfg.agg = AggPattern::kDefault;
    else if (f.agg == "ireduce")
        f.cfg.agg = AggPattern::kIreduce;
    else if (f.agg == "ibarrier-reduce")
        f.cfg.agg = AggPattern::kIbarrierReduce;
    else
        throw ConfigError("unknown aggregation pattern: " + f.agg);
    if (!f.topology.empty())
        f.cfg.node_of_rank = parse_topology(f.topology);
    if (f.algo != 1 && f.algo != 2)
        throw ConfigError("--algo must be 1 or 2");

    Graph g = obtain_graph(f.graph_path, f.gen_spec, f.cfg.seed);

    if (f.backend == "sim") {
        if (f.clock == "virtual")
            f.sim.clock_mode = SimClockMode::kVirtual;
        else if (f.clock == "real")
            f.sim.clock_mode = SimClockMode::kReal;
        else
            throw ConfigError("--clock must be virtual or real");
        SimRunOutcome outcome = run_simulated(g, f.cfg, f.sim);
        std::ostringstream scores;
        ScoreFile sf = scores_from_result(outcome.result, run_meta(f.cfg, outcome.stats.tau));
        write_scores(scores, sf);
        write_file(f.out_path, scores.str());
        write_file(f.stats_path, stats_to_json(outcome.stats, f.cfg));
        std::cout << "tau=" << outcome.stats.tau << " epochs=" << outcome.stats.epochs
                  << " wall_ms=" << outcome.wall_ms << "\n";
        return kExitOk;
    }
    if (f.backend == "mp") {
#ifdef EPOCHBC_ENABLE_MPI
        static int argc = 0;
        static char **argv = nullptr;
        MpiRuntime runtime(&argc, &argv);
        auto world = runtime.world();
        f.cfg.ranks = world->size();
        auto ctx = make_mpi_exec_context(world->rank());
        RankOutput out = run_pipeline(g, f.cfg, *ctx, *world);
        if (out.result) {
            std::ostringstream scores;
            ScoreFile sf = scores_from_result(*out.result, run_meta(f.cfg, out.stats.tau));
            write_scores(scores, sf);
            write_file(f.out_path, scores.str());
            write_file(f.stats_path, stats_to_json(out.stats, f.cfg));
        }
        return kExitOk;
#else
        throw ConfigError("backend 'mp' not built; rebuild with EPOCHBC_ENABLE_MPI=ON");
#endif
    }
    throw ConfigError("unknown backend: " + f.backend);
}

int cmd_exact(const std::string &graph_path, const std::string &gen_spec, std::uint64_t seed,
              std::uint64_t max_n, const std::string &out_path) {
    Graph g = obtain_graph(graph_path, gen_spec, seed);
    if (g.num_vertices() > max_n)
        throw ConfigError("graph exceeds the exact-oracle guard of n <= " +
                          std::to_string(max_n));
    ExactScores scores = brandes_exact(g);
    ApproxResult res;
    res.scores = scores;
    res.tau_total = 0;
    res.original_ids = g.original_ids();
    std::map<std::string, std::string> meta;
    meta["algo"] = "exact";
    meta["seed"] = std::to_string(seed);
    std::ostringstream out;
    write_scores(out, scores_from_result(res, std::move(meta)));
    write_file(out_path, out.str());
    std::cout << "exact scores for n=" << g.num_vertices() << " written to " << out_path
              << "\n";
    return kExitOk;
}

int cmd_gen(const std::string &gen_spec, std::uint64_t seed, const std::string &out_path,
            bool binary) {
    Graph g = gen_rmat(parse_gen_spec(gen_spec, seed));
    save_graph_file(g, out_path, binary);
    std::cout << "generated n=" << g.num_vertices() << " m=" << g.num_edges() << " -> "
              << out_path << "\n";
    return kExitOk;
}

int cmd_compare(const std::string &approx_path, const std::string &exact_path, double eps) {
    auto read = [](const std::string &path) {
        std::ifstream in(path);
        if (!in)
            throw IoError("cannot open score file: " + path);
        return read_scores(in);
    };
    ScoreFile approx = read(approx_path);
    ScoreFile exact = read(exact_path);
    CompareReport r = compare_scores(approx, exact, eps);
    std::cout << "vertices=" << r.vertices << "\n"
              << "max_abs_error=" << r.max_abs_error << "\n"
              << "vertices_above_eps=" << r.vertices_above_eps << "\n"
              << "top10_overlap=" << r.top10_overlap << "\n"
              << "top100_overlap=" << r.top100_overlap << "\n";
    return r.max_abs_error <= eps ? kExitOk : kExitCompareAboveEps;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Parallel betweenness-centrality approximation by epoch-based adaptive "
                 "sampling, with an exact oracle and a simulated-cluster backend"};
    app.require_subcommand(1);

    RunFlags rf;
    auto *run = app.add_subcommand("run", "Run the approximation engine");
    run->add_option("--graph", rf.graph_path, "Edge-list or binary graph file");
    run->add_option("--gen", rf.gen_spec, "Synthetic graph spec, e.g. rmat:scale=10,ef=30");
    run->add_option("--eps", rf.cfg.eps, "Additive error target");
    run->add_option("--delta", rf.cfg.delta, "Failure probability");
    run->add_option("--ranks", rf.cfg.ranks, "Number of ranks (sim backend)");
    run->add_option("--threads", rf.cfg.threads, "Threads per rank");
    run->add_option("--seed", rf.cfg.seed, "Master seed");
    run->add_option("--backend", rf.backend, "sim | mp");
    run->add_option("--clock", rf.clock, "sim clock: virtual | real");
    run->add_option("--algo", rf.algo, "1 = rank-only, 2 = epoch-based");
    run->add_option("--bound", rf.bound, "hoeffding | eb");
    run->add_option("--alloc", rf.alloc, "uniform | weighted");
    run->add_option("--agg", rf.agg, "default | ireduce | ibarrier-reduce");
    run->add_option("--topology", rf.topology, "node of each rank, e.g. 0,0,1,1");
    run->add_option("--epoch-base", rf.cfg.epoch_base, "Epoch length base constant");
    run->add_option("--epoch-exponent", rf.cfg.epoch_exponent, "Epoch length exponent");
    run->add_option("--omega-override", rf.cfg.omega_override, "Fixed sample budget (testing)");
    run->add_option("--calib-per-worker", rf.cfg.calib_samples_per_worker,
                    "Calibration samples per worker");
    run->add_option("--sweeps", rf.cfg.diameter_sweeps, "Diameter double-sweep count");
    run->add_option("--sample-cost-ms", rf.cfg.sample_cost_ms, "Modeled per-sample cost");
    run->add_option("--latency-ms", rf.sim.net.latency_ms, "Modeled collective latency");
    run->add_option("--jitter-ms", rf.sim.net.jitter_ms, "Modeled latency jitter");
    run->add_option("--bandwidth-mbps", rf.sim.net.bandwidth_mbps, "Modeled bandwidth");
    run->add_option("--net-seed", rf.sim.net.seed, "Network model seed");
    run->add_option("--slow-ireduce", rf.sim.net.slow_ireduce_factor,
                    "Pathology knob: ireduce delay multiplier");
    run->add_option("--out", rf.out_path, "Score file output path");
    run->add_option("--stats", rf.stats_path, "Stats JSON output path");
    std::string config_path;
    run->add_option("--config", config_path, "JSON config file (flags override it)");

    std::string ex_graph, ex_gen, ex_out = "exact.tsv";
    std::uint64_t ex_seed = 1, ex_max_n = 20000;
    auto *exact = app.add_subcommand("exact", "Run the exact betweenness oracle");
    exact->add_option("--graph", ex_graph, "Edge-list or binary graph file");
    exact->add_option("--gen", ex_gen, "Synthetic graph spec");
    exact->add_option("--seed", ex_seed, "Seed for --gen");
    exact->add_option("--max-n", ex_max_n, "Refuse graphs larger than this");
    exact->add_option("--out", ex_out, "Score file output path");

    std::string gen_spec_arg, gen_out = "graph.txt";
    std::uint64_t gen_seed = 1;
    bool gen_binary = false;
    auto *gen = app.add_subcommand("gen", "Generate a synthetic graph");
    gen->add_option("--gen", gen_spec_arg, "Generator spec, e.g. rmat:scale=10,ef=30")
        ->required();
    gen->add_option("--seed", gen_seed, "Generator seed");
    gen->add_option("--out", gen_out, "Output path");
    gen->add_flag("--binary", gen_binary, "Write the binary cache format");

    std::string cmp_approx, cmp_exact;
    double cmp_eps = 0.001;
    auto *cmp = app.add_subcommand("compare", "Compare approximate against exact scores");
    cmp->add_option("--approx", cmp_approx, "Approximate score file")->required();
    cmp->add_option("--exact", cmp_exact, "Exact score file")->required();
    cmp->add_option("--eps", cmp_eps, "Error threshold");

    try {
        app.parse(argc, argv);
        if (run->parsed()) {
            if (!config_path.empty()) {
                // Flags must win over the config file: re-parse on top.
                apply_config_file(rf, config_path);
                app.clear();
                app.parse(argc, argv);
            }
            return cmd_run(rf);
        }
        if (exact->parsed())
            return cmd_exact(ex_graph, ex_gen, ex_seed, ex_max_n, ex_out);
        if (gen->parsed())
            return cmd_gen(gen_spec_arg, gen_seed, gen_out, gen_binary);
        if (cmp->parsed())
            return cmd_compare(cmp_approx, cmp_exact, cmp_eps);
        return kExitConfig;
    } catch (const CLI::ParseError &e) {
        return app.exit(e);
    } catch (const IoError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const ParseError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const ConfigError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const ContractViolation &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const BackendFault &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBackend;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
}
