// Command-line front end: instance generation, solving (GA / list
// scheduling / exhaustive optimum), Gantt rendering, and the benchmark
// harness with CSV output.

#include <chrono>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <mpsched/mpsched.hpp>

namespace {

long long elapsed_ms(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - t0)
        .count();
}

struct GenArgs {
    mpsched::GenSpec spec;
    std::string out = "graph.json";
};

int run_gen(const GenArgs& args) {
    mpsched::ensure_valid(args.spec);
    const mpsched::TaskGraph g = mpsched::generate_random(args.spec);
    mpsched::save_graph(args.out, g);
    std::cout << "n=" << g.task_count() << " edges=" << g.edges().size()
              << " t_cp=" << mpsched::critical_path_length(g) << " out=" << args.out
              << "\n";
    return 0;
}

struct SolveArgs {
    std::string graph;
    std::string algo = "ga";
    int procs = 2;
    std::string out = "schedule.json";
    mpsched::GaConfig ga;
    std::string policy = "bottom_level";
    std::uint64_t seed = 0;
    std::uint64_t budget = 20'000'000;
};

int run_solve(const SolveArgs& args) {
    const mpsched::TaskGraph g = mpsched::load_graph(args.graph);
    const mpsched::HeightMap heights = mpsched::compute_heights(g);
    const mpsched::Duration lb = mpsched::makespan_lower_bound(g, args.procs);

    mpsched::Chromosome chromosome;
    mpsched::Duration makespan = 0;
    std::string policy_summary;
    int generations = 0;
    std::uint64_t nodes = 0;

    const auto t0 = std::chrono::steady_clock::now();
    if (args.algo == "ga") {
        mpsched::GaConfig cfg = args.ga;
        cfg.seed = args.seed;
        const mpsched::GaResult result = mpsched::run_ga(g, args.procs, cfg);
        chromosome = result.best;
        makespan = result.best_makespan;
        generations = result.generations_run;
        policy_summary = mpsched::ga_policy_summary(cfg);
    } else if (args.algo == "lsh") {
        mpsched::PriorityPolicy policy;
        policy.kind = mpsched::priority_kind_from_string(args.policy);
        policy.tie_break_seed = args.seed;
        const mpsched::GanttChart chart = mpsched::list_schedule(g, args.procs, policy);
        chromosome = mpsched::height_normalized(
            mpsched::to_chromosome(chart, args.procs), heights);
        makespan = mpsched::evaluate(g, heights, chromosome).makespan;
        policy_summary = mpsched::to_string(policy.kind);
    } else if (args.algo == "opt") {
        const mpsched::BruteForceResult result =
            mpsched::brute_force_optimal(g, args.procs, args.budget);
        chromosome = result.witness;
        makespan = result.makespan;
        nodes = result.nodes_explored;
        policy_summary = "exhaustive";
    } else {
        throw std::invalid_argument("unknown algorithm: " + args.algo);
    }
    const long long wall = elapsed_ms(t0);

    mpsched::save_chromosome(args.out, chromosome);
    std::cout << "algo=" << args.algo << " policy=" << policy_summary
              << " makespan=" << makespan << " lower_bound=" << lb;
    if (args.algo == "ga") std::cout << " generations=" << generations;
    if (args.algo == "opt") std::cout << " nodes=" << nodes;
    std::cout << " wall_ms=" << wall << " procs=" << args.procs
              << " out=" << args.out << "\n";
    return 0;
}

struct BenchArgs {
    mpsched::BenchSpec spec;
    std::string policy = "bottom_level";
    std::string out = "bench.csv";
};

int run_bench_cmd(BenchArgs& args) {
    args.spec.lsh_policy.kind = mpsched::priority_kind_from_string(args.policy);
    const std::vector<mpsched::RunReport> rows = mpsched::run_bench(args.spec);
    mpsched::write_file(args.out, mpsched::bench_csv(rows));
    std::cout << mpsched::summary_table(rows);
    std::cout << "rows=" << rows.size() << " out=" << args.out << "\n";
    return 0;
}

struct GanttArgs {
    std::string graph;
    std::string schedule;
    bool svg = false;
    std::string out;
};

int run_gantt(const GanttArgs& args) {
    const mpsched::TaskGraph g = mpsched::load_graph(args.graph);
    const mpsched::Chromosome c = mpsched::load_chromosome(args.schedule, g);
    const mpsched::GanttChart chart = mpsched::evaluate(g, c);
    const int m = c.proc_count();
    const std::string rendered =
        args.svg ? mpsched::render_svg(chart, m) : mpsched::render_text(chart, m);
    if (args.out.empty()) {
        std::cout << rendered;
    } else {
        mpsched::write_file(args.out, rendered);
        std::cout << "out=" << args.out << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multiprocessor DAG scheduling: GA, list scheduling, exact oracle"};
    app.require_subcommand(1);

    GenArgs gen_args;
    CLI::App* gen = app.add_subcommand("gen", "Generate a random layered task graph");
    gen->add_option("--n", gen_args.spec.n, "Number of tasks")
        ->required()
        ->check(CLI::PositiveNumber);
    gen->add_option("--succ-min", gen_args.spec.succ_min, "Minimum successors per task");
    gen->add_option("--succ-max", gen_args.spec.succ_max, "Maximum successors per task");
    gen->add_option("--et-min", gen_args.spec.et_min, "Minimum execution time");
    gen->add_option("--et-max", gen_args.spec.et_max, "Maximum execution time");
    gen->add_option("--seed", gen_args.spec.seed, "Generator seed");
    gen->add_option("--out", gen_args.out, "Output graph file");

    SolveArgs solve_args;
    CLI::App* solve = app.add_subcommand("solve", "Schedule a task graph");
    solve->add_option("--graph", solve_args.graph, "Input graph file")->required();
    solve->add_option("--algo", solve_args.algo, "Algorithm: ga, lsh, or opt")
        ->check(CLI::IsMember({"ga", "lsh", "opt"}));
    solve->add_option("--procs", solve_args.procs, "Number of processors")
        ->check(CLI::PositiveNumber);
    solve->add_option("--out", solve_args.out, "Output schedule file");
    solve->add_option("--pop", solve_args.ga.population_size, "GA population size");
    solve->add_option("--iters", solve_args.ga.max_iterations, "GA iteration cap");
    solve->add_option("--cx-rate", solve_args.ga.crossover_rate, "GA crossover rate");
    solve->add_option("--mut-rate", solve_args.ga.mutation_rate, "GA mutation rate");
    solve->add_option("--window", solve_args.ga.convergence_window,
                      "GA convergence window (generations)");
    solve->add_option("--seed", solve_args.seed, "GA seed / LSH tie-break seed");
    solve->add_option("--policy", solve_args.policy,
                      "LSH priority: bottom_level, height_descending, random");
    solve->add_option("--budget", solve_args.budget, "opt: search node budget");

    BenchArgs bench_args;
    CLI::App* bench = app.add_subcommand("bench", "GA vs LSH benchmark, CSV output");
    bench->add_option("--sizes", bench_args.spec.sizes, "Task counts (comma separated)")
        ->required()
        ->delimiter(',');
    bench->add_option("--procs", bench_args.spec.procs, "Processor counts")
        ->required()
        ->delimiter(',');
    bench->add_option("--reps", bench_args.spec.reps, "Instances per (size, procs)");
    bench->add_option("--seed", bench_args.spec.master_seed, "Master seed");
    bench->add_option("--out", bench_args.out, "Output CSV file");
    bench->add_option("--pop", bench_args.spec.ga.population_size, "GA population size");
    bench->add_option("--iters", bench_args.spec.ga.max_iterations, "GA iteration cap");
    bench->add_option("--cx-rate", bench_args.spec.ga.crossover_rate, "GA crossover rate");
    bench->add_option("--mut-rate", bench_args.spec.ga.mutation_rate, "GA mutation rate");
    bench->add_option("--window", bench_args.spec.ga.convergence_window,
                      "GA convergence window");
    bench->add_option("--policy", bench_args.policy, "LSH priority policy");
    bench->add_option("--succ-min", bench_args.spec.gen.succ_min, "Generator: min successors");
    bench->add_option("--succ-max", bench_args.spec.gen.succ_max, "Generator: max successors");
    bench->add_option("--et-min", bench_args.spec.gen.et_min, "Generator: min execution time");
    bench->add_option("--et-max", bench_args.spec.gen.et_max, "Generator: max execution time");

    GanttArgs gantt_args;
    CLI::App* gantt = app.add_subcommand("gantt", "Render a schedule as a Gantt chart");
    gantt->add_option("--graph", gantt_args.graph, "Input graph file")->required();
    gantt->add_option("--schedule", gantt_args.schedule, "Input schedule file")->required();
    gantt->add_flag("--svg", gantt_args.svg, "Emit SVG instead of text");
    gantt->add_option("--out", gantt_args.out, "Output file (default: stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) return run_gen(gen_args);
        if (solve->parsed()) return run_solve(solve_args);
        if (bench->parsed()) return run_bench_cmd(bench_args);
        if (gantt->parsed()) return run_gantt(gantt_args);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
