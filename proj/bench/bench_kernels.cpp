// Timing comparison of the OpenMP kernels against their serial reference
// implementations. Not a correctness test; the unit suites assert equality.

#include <omp.h>

#include <cstdio>
#include <string>

#include "chainsmith/annealer.hpp"
#include "chainsmith/rng.hpp"
#include "chainsmith/sat.hpp"
#include "chainsmith/serial.hpp"

using namespace chainsmith;

namespace {

PhysicalProblem random_problem(int n, std::uint64_t seed) {
  Rng rng(seed);
  PhysicalProblem p;
  p.num_qubits = n;
  for (int q = 0; q < n; ++q) p.add_bias(q, rng.next_unit() * 2.0 - 1.0);
  for (int q = 0; q < n; ++q)
    for (int r = q + 1; r < n; ++r)
      if (rng.next_below(5) == 0)
        p.add_problem_coupling(q, r, rng.next_unit() * 2.0 - 1.0);
  return p;
}

PhysicalProblem ferro_ring(int n) {
  PhysicalProblem p;
  p.num_qubits = n;
  for (int q = 0; q < n; ++q) p.add_problem_coupling(q, (q + 1) % n, -1.0);
  return p;
}

void row(const std::string& name, double serial_s, double parallel_s) {
  std::printf("%-28s %10.3fs %10.3fs %8.2fx\n", name.c_str(), serial_s,
              parallel_s, serial_s / parallel_s);
}

}  // namespace

int main() {
  std::printf("threads: %d\n", omp_get_max_threads());
  std::printf("%-28s %11s %11s %9s\n", "kernel", "serial", "openmp", "speedup");

  {
    CnfFormula f = generate_mixed_sat(24, 40, 3, 7);
    double t0 = omp_get_wtime();
    auto a = serial::count_solutions(f, ~0ULL);
    double t1 = omp_get_wtime();
    auto b = count_solutions(f, ~0ULL);
    double t2 = omp_get_wtime();
    if (a.count != b.count) {
      std::fprintf(stderr, "count mismatch!\n");
      return 1;
    }
    row("count_solutions n=24", t1 - t0, t2 - t1);
  }

  {
    PhysicalProblem p = random_problem(22, 11);
    double t0 = omp_get_wtime();
    auto a = serial::exact_ground_states(p);
    double t1 = omp_get_wtime();
    auto b = exact_ground_states(p);
    double t2 = omp_get_wtime();
    if (a.states != b.states) {
      std::fprintf(stderr, "ground state mismatch!\n");
      return 1;
    }
    row("exact_ground_states n=22", t1 - t0, t2 - t1);
  }

  {
    PhysicalProblem p = ferro_ring(64);
    SaSchedule sched;
    sched.reads = 2000;
    sched.sweeps = 1000;
    double t0 = omp_get_wtime();
    auto a = serial::sample_sa(p, sched, 3);
    double t1 = omp_get_wtime();
    auto b = sample_sa(p, sched, 3);
    double t2 = omp_get_wtime();
    for (std::size_t i = 0; i < a.reads.size(); ++i)
      if (a.reads[i].state != b.reads[i].state) {
        std::fprintf(stderr, "sa mismatch!\n");
        return 1;
      }
    row("sample_sa ring=64 r=2000", t1 - t0, t2 - t1);
  }

  return 0;
}
