#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "chainsmith/problem.hpp"

namespace chainsmith {

// CNF formula with signed 1-based literals (DIMACS convention).
struct CnfFormula {
  int n_vars = 0;
  std::vector<std::vector<int>> clauses;
};

// Random mixed-SAT instance: `alpha` clauses, each with a uniform length in
// [1, max_len], variables drawn without replacement, uniform polarities.
CnfFormula generate_mixed_sat(int n, int alpha, int max_len,
                              std::uint64_t seed);

struct SolutionCount {
  std::uint64_t count = 0;
  bool capped = false;
};

// Exact satisfying-assignment count by bit-parallel exhaustive evaluation
// (64 assignments per word, OpenMP over blocks). Aborts early once the
// running count exceeds `cap` and returns {cap, true}. Requires n_vars <= 30.
SolutionCount count_solutions(const CnfFormula& f, std::uint64_t cap);

// Bookkeeping for sat_to_ising: which logical indices are ancillas and which
// clause introduced them. Logical index of variable v is v-1; ancillas are
// appended after the originals.
struct ReductionMap {
  int original_vars = 0;
  int ancilla_vars = 0;
  std::vector<std::vector<int>> clause_ancillas;  // per original clause
  std::vector<double> clause_weights;             // per original clause
  int total_vars() const { return original_vars + ancilla_vars; }
};

struct IsingReduction {
  LogicalProblem problem;
  ReductionMap map;
};

// Penalty reduction to an Ising problem: ground energy 0 iff satisfiable,
// every violated clause costs at least 1 after minimizing over ancillas.
// 1- and 2-clauses expand directly; 3-clauses use one AND-gadget ancilla;
// longer clauses are first split with chaining ancillas.
IsingReduction sat_to_ising(const CnfFormula& f);

CnfFormula parse_dimacs(const std::string& text);
std::string emit_dimacs(const CnfFormula& f);

// True iff the ±1 assignment (true <-> +1) satisfies every clause. The
// assignment may be longer than n_vars; only the first n_vars entries are
// consulted (ancillas are ignored).
bool satisfies(const CnfFormula& f, std::span<const std::int8_t> assignment);

}  // namespace chainsmith
