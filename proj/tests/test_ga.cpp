#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <map>
#include <vector>

#include <mpsched/baseline.hpp>
#include <mpsched/ga.hpp>

#include "test_util.hpp"

using namespace mpsched;

TEST_CASE("fitness ledger follows the shifted transform", "[ga]") {
    FitnessLedger ledger;
    ledger.observe(11);
    REQUIRE(ledger.cmax == 11);
    REQUIRE(ledger.fitness(10) == 2);
    REQUIRE(ledger.fitness(11) == 1); // worst observed keeps selection mass
    ledger.observe(5);
    REQUIRE(ledger.cmax == 11); // running maximum never shrinks
    REQUIRE(ledger.fitness(3) > ledger.fitness(7)); // smaller ft, larger fitness
    REQUIRE_THROWS_AS(ledger.fitness(12), std::logic_error);
}

TEST_CASE("initial population uses only valid placements", "[ga]") {
    const TaskGraph g({4}, {});
    const HeightMap hm = compute_heights(g);
    Rng rng(1);
    for (const Chromosome& c : init_population(g, hm, 2, 50, rng)) {
        const bool left = c.procs[0] == std::vector<TaskId>{0} && c.procs[1].empty();
        const bool right = c.procs[0].empty() && c.procs[1] == std::vector<TaskId>{0};
        REQUIRE((left || right));
    }
}

TEST_CASE("initial population is valid on random instances", "[ga]") {
    GenSpec spec;
    spec.n = 8;
    spec.seed = 21;
    const TaskGraph g = generate_random(spec);
    const HeightMap hm = compute_heights(g);
    Rng rng(2);
    const auto pop = init_population(g, hm, 3, 20, rng);
    REQUIRE(pop.size() == 20);
    for (const Chromosome& c : pop) {
        REQUIRE(validate_chromosome(g, hm, c).empty());
    }
}

TEST_CASE("roulette selection is fitness-proportional", "[ga]") {
    const TaskGraph g = testutil::independent({1, 1});
    const HeightMap hm = compute_heights(g);
    Chromosome a, b;
    a.procs = {{0, 1}, {}};
    b.procs = {{}, {0, 1}};
    const std::vector<Chromosome> pop{a, b};

    // fitness (3,1): individual 0 must be drawn with probability 3/4.
    Rng rng(9);
    int first = 0, total = 0;
    for (int round = 0; round < 5000; ++round) {
        for (const Chromosome& pick : roulette_select(pop, {3, 1}, rng)) {
            if (pick == a) ++first;
            ++total;
        }
    }
    REQUIRE(total == 10000);
    // 3 sigma of a 0.75 Bernoulli over 10000 draws: +/- 0.013.
    const double freq = static_cast<double>(first) / total;
    REQUIRE(freq > 0.75 - 0.013);
    REQUIRE(freq < 0.75 + 0.013);
}

TEST_CASE("uniform fitness selects uniformly", "[ga]") {
    const TaskGraph g = testutil::independent({1});
    std::vector<Chromosome> pop(10);
    for (int i = 0; i < 10; ++i) {
        pop[static_cast<std::size_t>(i)].procs.assign(10, {});
        pop[static_cast<std::size_t>(i)].procs[static_cast<std::size_t>(i)] = {0};
    }
    Rng rng(31);
    std::vector<int> counts(10, 0);
    for (int round = 0; round < 1000; ++round) {
        for (const Chromosome& pick :
             roulette_select(pop, std::vector<Duration>(10, 4), rng)) {
            for (int i = 0; i < 10; ++i) {
                if (pick == pop[static_cast<std::size_t>(i)]) {
                    ++counts[static_cast<std::size_t>(i)];
                    break;
                }
            }
        }
    }
    // Chi-square with 9 degrees of freedom; 27.88 is the p=0.001 cutoff.
    double chi2 = 0.0;
    for (int c : counts) {
        const double diff = c - 1000.0;
        chi2 += diff * diff / 1000.0;
    }
    REQUIRE(chi2 < 27.88);
}

TEST_CASE("selection keeps the pool size and validates input", "[ga]") {
    const TaskGraph g = testutil::independent({1});
    Chromosome a;
    a.procs = {{0}};
    const std::vector<Chromosome> pop{a, a};
    Rng rng(4);
    REQUIRE(roulette_select(pop, {5, 5}, rng).size() == 2);
    REQUIRE_THROWS_AS(roulette_select(pop, {5}, rng), std::invalid_argument);
    REQUIRE_THROWS_AS(roulette_select(pop, {5, 0}, rng), std::invalid_argument);
}

TEST_CASE("crossover exchanges placements below and above the cut", "[ga]") {
    // Heights (0,0,1,1): ids 0,1 at height 0; 2,3 at height 1. H = 1, so the
    // only possible cut is c = 0.
    const TaskGraph g({1, 1, 1, 1}, {{0, 2}, {1, 3}});
    const HeightMap hm = compute_heights(g);
    REQUIRE(hm.max_height == 1);

    Chromosome a, b;
    a.procs = {{0, 2}, {1, 3}};
    b.procs = {{1, 3}, {0, 2}};
    Rng rng(6);
    const auto [c1, c2] = crossover(a, b, hm, rng);
    REQUIRE(c1.procs == std::vector<std::vector<TaskId>>{{0, 3}, {1, 2}});
    REQUIRE(c2.procs == std::vector<std::vector<TaskId>>{{1, 2}, {0, 3}});
    REQUIRE(validate_chromosome(g, hm, c1).empty());
    REQUIRE(validate_chromosome(g, hm, c2).empty());
}

TEST_CASE("crossover of identical parents is the identity", "[ga]") {
    GenSpec spec;
    spec.n = 10;
    spec.seed = 3;
    const TaskGraph g = generate_random(spec);
    const HeightMap hm = compute_heights(g);
    Rng rng(8);
    const Chromosome a = init_population(g, hm, 3, 1, rng).front();
    const auto [c1, c2] = crossover(a, a, hm, rng);
    REQUIRE(c1 == a);
    REQUIRE(c2 == a);
}

TEST_CASE("crossover on a flat graph returns parents without drawing", "[ga]") {
    const TaskGraph g = testutil::independent({1, 2, 3});
    const HeightMap hm = compute_heights(g);
    Chromosome a, b;
    a.procs = {{0, 1}, {2}};
    b.procs = {{2}, {0, 1}};
    Rng used(42), untouched(42);
    const auto [c1, c2] = crossover(a, b, hm, used);
    REQUIRE(c1 == a);
    REQUIRE(c2 == b);
    REQUIRE(used.next_u64() == untouched.next_u64()); // no draw consumed
}

TEST_CASE("crossover closure over random parents", "[ga]") {
    Rng rng(14);
    int children = 0;
    for (std::uint64_t s = 0; s < 500; ++s) {
        GenSpec spec;
        spec.n = 2 + static_cast<int>(s % 30);
        spec.seed = derive_seed(8, {s});
        const TaskGraph g = generate_random(spec);
        const HeightMap hm = compute_heights(g);
        const int m = 2 + static_cast<int>(s % 3);
        const auto parents = init_population(g, hm, m, 2, rng);
        const auto [c1, c2] = crossover(parents[0], parents[1], hm, rng);
        REQUIRE(validate_chromosome(g, hm, c1).empty());
        REQUIRE(validate_chromosome(g, hm, c2).empty());
        children += 2;
    }
    REQUIRE(children == 1000);
}

TEST_CASE("mutation swaps the only same-height pair", "[ga]") {
    // Heights: 0, then 1 and 2 both at height 1 — a single eligible pair, so
    // any seed must produce the same swap.
    const TaskGraph g({1, 1, 1}, {{0, 1}, {0, 2}});
    const HeightMap hm = compute_heights(g);
    Chromosome c;
    c.procs = {{0, 1}, {2}};
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Rng rng(seed);
        const Chromosome mutated = mutate(c, hm, rng);
        REQUIRE(mutated.procs == std::vector<std::vector<TaskId>>{{0, 2}, {1}});
    }
}

TEST_CASE("mutation swaps within a single processor list", "[ga]") {
    const TaskGraph g({1, 1, 1}, {{0, 1}, {0, 2}});
    const HeightMap hm = compute_heights(g);
    Chromosome c;
    c.procs = {{0, 1, 2}, {}};
    Rng rng(12);
    const Chromosome mutated = mutate(c, hm, rng);
    REQUIRE(mutated.procs == std::vector<std::vector<TaskId>>{{0, 2, 1}, {}});
}

TEST_CASE("mutation on singleton levels is the identity", "[ga]") {
    const TaskGraph g = testutil::chain({2, 3, 4});
    const HeightMap hm = compute_heights(g);
    Chromosome c;
    c.procs = {{0, 1, 2}, {}};
    Rng used(42), untouched(42);
    REQUIRE(mutate(c, hm, used) == c);
    REQUIRE(used.next_u64() == untouched.next_u64()); // no draw consumed
}

TEST_CASE("mutation closure and precedence independence", "[ga]") {
    Rng rng(15);
    int checked = 0;
    for (std::uint64_t s = 0; s < 1000; ++s) {
        GenSpec spec;
        spec.n = 2 + static_cast<int>(s % 30);
        spec.seed = derive_seed(9, {s});
        const TaskGraph g = generate_random(spec);
        const HeightMap hm = compute_heights(g);
        const int m = 2 + static_cast<int>(s % 3);
        const Chromosome before = init_population(g, hm, m, 1, rng).front();
        const Chromosome after = mutate(before, hm, rng);
        REQUIRE(validate_chromosome(g, hm, after).empty());

        // Identify the swapped pair (if any) and check neither reaches the
        // other in the precedence graph.
        std::vector<TaskId> changed;
        for (int p = 0; p < m; ++p) {
            const auto& lb = before.procs[static_cast<std::size_t>(p)];
            const auto& la = after.procs[static_cast<std::size_t>(p)];
            REQUIRE(lb.size() == la.size());
            for (std::size_t i = 0; i < lb.size(); ++i) {
                if (lb[i] != la[i]) changed.push_back(lb[i]);
            }
        }
        if (!changed.empty()) {
            REQUIRE(changed.size() == 2);
            REQUIRE_FALSE(testutil::reachable(g, changed[0], changed[1]));
            REQUIRE_FALSE(testutil::reachable(g, changed[1], changed[0]));
            ++checked;
        }
    }
    REQUIRE(checked > 500); // most instances have a non-degenerate level
}

TEST_CASE("ga on a single task", "[ga]") {
    const TaskGraph g({7}, {});
    GaConfig cfg;
    cfg.seed = 1;
    const GaResult r = run_ga(g, 2, cfg);
    REQUIRE(r.best_makespan == 7);
    REQUIRE(r.history.front().best_makespan == 7);
    REQUIRE(validate_chromosome(g, compute_heights(g), r.best).empty());
}

TEST_CASE("ga on a chain returns the serial makespan", "[ga]") {
    const TaskGraph g = testutil::chain({2, 3, 4});
    GaConfig cfg;
    cfg.seed = 2;
    for (int m : {1, 2, 3}) {
        REQUIRE(run_ga(g, m, cfg).best_makespan == 9);
    }
}

TEST_CASE("ga is deterministic", "[ga]") {
    GenSpec spec;
    spec.n = 17;
    spec.seed = 5;
    const TaskGraph g = generate_random(spec);
    GaConfig cfg;
    cfg.seed = 77;
    const GaResult a = run_ga(g, 3, cfg);
    const GaResult b = run_ga(g, 3, cfg);
    REQUIRE(a.best == b.best);
    REQUIRE(a.best_makespan == b.best_makespan);
    REQUIRE(a.generations_run == b.generations_run);
    REQUIRE(a.history.size() == b.history.size());
    for (std::size_t i = 0; i < a.history.size(); ++i) {
        REQUIRE(a.history[i].best_makespan == b.history[i].best_makespan);
        REQUIRE(a.history[i].mean_makespan == b.history[i].mean_makespan);
        REQUIRE(a.history[i].cmax == b.history[i].cmax);
    }
}

TEST_CASE("ga history is non-increasing and bounded", "[ga]") {
    for (std::uint64_t s = 0; s < 20; ++s) {
        GenSpec spec;
        spec.n = 8;
        spec.seed = derive_seed(10, {s});
        const TaskGraph g = generate_random(spec);
        GaConfig cfg;
        cfg.seed = s;
        cfg.max_iterations = 120;
        const GaResult r = run_ga(g, 2, cfg);
        REQUIRE(r.best_makespan >= makespan_lower_bound(g, 2));
        for (std::size_t i = 1; i < r.history.size(); ++i) {
            REQUIRE(r.history[i].best_makespan <= r.history[i - 1].best_makespan);
        }
        REQUIRE(r.best_makespan == r.history.back().best_makespan);
    }
}

TEST_CASE("every generation stays within the valid set", "[ga]") {
    GenSpec spec;
    spec.n = 12;
    spec.seed = 9;
    const TaskGraph g = generate_random(spec);
    const HeightMap hm = compute_heights(g);
    GaConfig cfg;
    cfg.seed = 3;
    cfg.population_size = 10;
    cfg.max_iterations = 40;
    cfg.convergence_window = 40;
    int observed = 0;
    const GaObserver observer = [&](int, const std::vector<Chromosome>& pop) {
        for (const Chromosome& c : pop) {
            REQUIRE(validate_chromosome(g, hm, c).empty());
            ++observed;
        }
    };
    run_ga(g, 2, cfg, nullptr, &observer);
    REQUIRE(observed > 0);
}

TEST_CASE("ga convergence window stops the loop", "[ga]") {
    const TaskGraph g = testutil::chain({1, 1, 1}); // cannot improve, ever
    GaConfig cfg;
    cfg.seed = 4;
    cfg.convergence_window = 10;
    const GaResult r = run_ga(g, 2, cfg);
    REQUIRE(r.generations_run == 10);
    REQUIRE(r.history.size() == 11); // initial entry plus one per generation
}

TEST_CASE("seed individual joins the initial population", "[ga]") {
    GenSpec spec;
    spec.n = 17;
    spec.seed = 31;
    const TaskGraph g = generate_random(spec);
    const HeightMap hm = compute_heights(g);
    const GanttChart lsh = list_schedule(g, 2, {});
    const Chromosome warm = height_normalized(to_chromosome(lsh, 2), hm);
    const Duration warm_ft = evaluate(g, hm, warm).makespan;

    GaConfig cfg;
    cfg.seed = 12;
    const GaResult r = run_ga(g, 2, cfg, &warm);
    REQUIRE(r.history.front().best_makespan <= warm_ft);
    REQUIRE(r.best_makespan <= warm_ft);

    Chromosome bad;
    bad.procs = {{}, {}};
    REQUIRE_THROWS_AS(run_ga(g, 2, cfg, &bad), std::invalid_argument);
}

TEST_CASE("ga config validation", "[ga]") {
    const TaskGraph g = testutil::diamond();
    GaConfig cfg;
    SECTION("population too small") {
        cfg.population_size = 1;
        REQUIRE_THROWS_AS(run_ga(g, 2, cfg), std::invalid_argument);
    }
    SECTION("rate out of range") {
        cfg.crossover_rate = 1.5;
        REQUIRE_THROWS_AS(run_ga(g, 2, cfg), std::invalid_argument);
    }
    SECTION("no iterations") {
        cfg.max_iterations = 0;
        REQUIRE_THROWS_AS(run_ga(g, 2, cfg), std::invalid_argument);
    }
    SECTION("no processors") {
        REQUIRE_THROWS_AS(run_ga(g, 0, cfg), std::invalid_argument);
    }
}

TEST_CASE("history exports as CSV", "[ga]") {
    const TaskGraph g = testutil::diamond();
    GaConfig cfg;
    cfg.seed = 5;
    const GaResult r = run_ga(g, 2, cfg);
    const std::string csv = history_csv(r);
    REQUIRE(csv.rfind("generation,best_ft,mean_ft,cmax\n", 0) == 0);
    std::size_t lines = 0;
    for (char c : csv) {
        if (c == '\n') ++lines;
    }
    REQUIRE(lines == r.history.size() + 1);
}
