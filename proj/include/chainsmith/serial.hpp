#pragma once

#include <cstdint>

#include "chainsmith/annealer.hpp"
#include "chainsmith/sat.hpp"

// Single-threaded reference implementations of the parallel kernels. These
// stay deliberately naive (per-assignment clause evaluation, from-scratch
// energies in plain binary order) so the tests can hold the optimized
// OpenMP paths against an independent route; the benchmark target compares
// their throughput.
namespace chainsmith::serial {

SolutionCount count_solutions(const CnfFormula& f, std::uint64_t cap);

GroundStates exact_ground_states(const PhysicalProblem& p);
GroundStates exact_ground_states(const LogicalProblem& p);

// Identical algorithm and seeding as the parallel sampler; byte-equal output.
SampleSet sample_sa(const PhysicalProblem& p, const SaSchedule& sched,
                    std::uint64_t seed, const SpinVector* init = nullptr);

}  // namespace chainsmith::serial
