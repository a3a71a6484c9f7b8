#include "chainsmith/serial.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace chainsmith::serial {

SolutionCount count_solutions(const CnfFormula& f, std::uint64_t cap) {
  if (f.n_vars < 0 || f.n_vars > 30)
    throw std::invalid_argument("count_solutions: n_vars exceeds enumerator limit of 30");
  std::uint64_t total = 1ULL << f.n_vars;
  std::uint64_t count = 0;
  SpinVector assignment(static_cast<std::size_t>(f.n_vars));
  for (std::uint64_t m = 0; m < total; ++m) {
    for (int v = 0; v < f.n_vars; ++v)
      assignment[static_cast<std::size_t>(v)] = (m >> v) & 1u ? 1 : -1;
    if (satisfies(f, assignment)) {
      if (++count > cap) return {cap, true};
    }
  }
  return {count, false};
}

namespace {

GroundStates ground_states_naive(const IsingTerms& t) {
  if (t.n > 30)
    throw std::invalid_argument(
        "exact_ground_states: more than 30 programmed qubits");
  GroundStates out;
  if (t.n == 0) {
    out.states.push_back(expand(t, {}));
    out.energy = t.offset;
    return out;
  }
  std::uint64_t total = 1ULL << t.n;
  double best = std::numeric_limits<double>::infinity();
  std::vector<std::uint64_t> hits;
  std::vector<std::int8_t> spins(static_cast<std::size_t>(t.n));
  for (std::uint64_t m = 0; m < total; ++m) {
    for (int b = 0; b < t.n; ++b)
      spins[static_cast<std::size_t>(b)] = (m >> b) & 1u ? 1 : -1;
    double e = terms_energy(t, spins);
    if (e < best - kEnergyTol) {
      best = e;
      hits.clear();
      hits.push_back(m);
    } else if (e <= best + kEnergyTol) {
      best = std::min(best, e);
      hits.push_back(m);
    }
  }
  // second filter against the final minimum, then sort states
  for (std::uint64_t m : hits) {
    for (int b = 0; b < t.n; ++b)
      spins[static_cast<std::size_t>(b)] = (m >> b) & 1u ? 1 : -1;
    if (terms_energy(t, spins) <= best + kEnergyTol)
      out.states.push_back(expand(t, spins));
  }
  std::sort(out.states.begin(), out.states.end());
  out.energy = best;
  return out;
}

}  // namespace

GroundStates exact_ground_states(const PhysicalProblem& p) {
  return ground_states_naive(flatten(p));
}

GroundStates exact_ground_states(const LogicalProblem& p) {
  return ground_states_naive(flatten(p));
}

SampleSet sample_sa(const PhysicalProblem& p, const SaSchedule& sched,
                    std::uint64_t seed, const SpinVector* init) {
  return chainsmith::detail::sample_sa_terms(flatten(p), sched, seed, init,
                                             false);
}

}  // namespace chainsmith::serial
