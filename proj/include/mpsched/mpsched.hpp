#pragma once

// Umbrella header: multiprocessor DAG scheduling with a genetic algorithm,
// a list-scheduling baseline, an exhaustive oracle, and the surrounding
// tooling (instance generation, file formats, Gantt rendering, benchmarks).

#include "mpsched/baseline.hpp"
#include "mpsched/bench.hpp"
#include "mpsched/ga.hpp"
#include "mpsched/io.hpp"
#include "mpsched/render.hpp"
#include "mpsched/rng.hpp"
#include "mpsched/schedule.hpp"
#include "mpsched/taskgraph.hpp"
