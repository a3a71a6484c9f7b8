#pragma once

#include <cstdint>
#include <tuple>
#include <utility>
#include <vector>

#include "chainsmith/problem.hpp"

namespace chainsmith {

// Flat view of an Ising problem over a compact support index space; the
// enumeration and annealing kernels run on this form. For logical problems
// the support is all n spins; for physical problems it is the programmed
// qubits only, with unreferenced qubits pinned to +1 on expansion.
struct IsingTerms {
  int n = 0;
  double offset = 0.0;
  std::vector<double> bias;                                 // per support idx
  std::vector<std::vector<std::pair<int, double>>> adj;     // per support idx
  std::vector<std::tuple<int, int, double>> pairs;          // i < j
  std::vector<int> support;                                 // original ids
  int full_size = 0;
};

IsingTerms flatten(const LogicalProblem& p);
IsingTerms flatten(const PhysicalProblem& p);

double terms_energy(const IsingTerms& t, const std::vector<std::int8_t>& s);

// Support spins -> full-length spin vector, +1 outside the support.
SpinVector expand(const IsingTerms& t, const std::vector<std::int8_t>& s);

}  // namespace chainsmith
