#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "chainsmith/ising_terms.hpp"
#include "chainsmith/problem.hpp"

namespace chainsmith {

struct SaSchedule {
  int sweeps = 1000;
  double beta_start = 0.1;
  double beta_end = 5.0;
  int reads = 1000;
};

struct Read {
  SpinVector state;
  int multiplicity = 1;
  double energy = 0.0;
};

struct Provenance {
  std::string backend;
  std::uint64_t seed = 0;
  SaSchedule schedule;
  bool has_schedule = false;
  std::string strategy;
  double chain_coupling = 0.0;
  int srt_index = -1;
};

struct SampleSet {
  std::vector<Read> reads;
  Provenance provenance;
};

struct GroundStates {
  std::vector<SpinVector> states;  // lexicographically sorted, -1 < +1
  double energy = 0.0;
};

// All global minimizers by exhaustive enumeration (Gray-code walk, OpenMP
// over fixed chunks). Supports up to 30 programmed qubits.
GroundStates exact_ground_states(const PhysicalProblem& p);
GroundStates exact_ground_states(const LogicalProblem& p);

// Independent restarts of Metropolis single-spin-flip annealing on a
// geometric inverse-temperature ladder. Reads run in parallel with derived
// per-read seeds and are returned in read order, so the result does not
// depend on the worker count. `init`, when given, replaces the random
// initial state of every read.
SampleSet sample_sa(const PhysicalProblem& p, const SaSchedule& sched,
                    std::uint64_t seed, const SpinVector* init = nullptr);

enum class BackendKind { Exact, Sa };

std::string to_string(BackendKind k);
BackendKind backend_from_string(const std::string& name);

struct BackendConfig {
  BackendKind kind = BackendKind::Sa;
  int reads = 1000;
  SaSchedule schedule;
  std::uint64_t seed = 0;
};

// Uniform sampler entry point. The exact backend spreads the requested reads
// evenly over the ground states, remainder to the lexicographically smallest.
SampleSet sample(const PhysicalProblem& p, const BackendConfig& cfg);

namespace detail {
GroundStates exact_ground_states_terms(const IsingTerms& t);
SampleSet sample_sa_terms(const IsingTerms& t, const SaSchedule& sched,
                          std::uint64_t seed, const SpinVector* init,
                          bool parallel);
}  // namespace detail

}  // namespace chainsmith
