#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace chainsmith {

// Spin values are ±1 throughout; for SAT-derived problems "true" maps to +1.
using SpinVector = std::vector<std::int8_t>;

// Unordered qubit pair, stored normalized (first < second).
using Edge = std::pair<int, int>;

Edge make_edge(int a, int b);

// Absolute tolerance for energy equality comparisons.
inline constexpr double kEnergyTol = 1e-9;

// Ising problem over n logical spins: sum_i h_i s_i + sum_(i,j) J_ij s_i s_j.
// The constant offset is zero for hand-built problems; SAT reductions use it
// so that satisfiable formulas have ground energy exactly 0.
struct LogicalProblem {
  int n = 0;
  std::vector<double> h;             // size n, zero entries = no bias
  std::map<Edge, double> couplings;  // nonzero J only, keys normalized
  double offset = 0.0;

  void resize(int num_spins);
  void set_bias(int i, double v);
  void add_bias(int i, double v);
  void add_coupling(int i, int j, double v);
  double bias(int i) const { return h[static_cast<std::size_t>(i)]; }
  double coupling(int i, int j) const;
  std::vector<Edge> edges() const;  // E_l: edges with nonzero J
};

// Physical qubit/coupler graph. Edges reference active qubits only; dead
// devices stay in the index space as inactive entries.
struct HardwareGraph {
  int num_qubits = 0;
  std::vector<std::uint8_t> active;
  std::set<Edge> edges;
  // Chimera descriptor when built from a cell grid; all zero for generic
  // graphs loaded from explicit edge lists.
  int rows = 0, cols = 0, cell_half = 0;

  bool is_active(int q) const;
  bool has_edge(int a, int b) const;
  int active_count() const;
  int degree(int q) const;
  std::vector<std::vector<int>> adjacency() const;
};

// One chain of physical qubits per logical qubit.
struct Embedding {
  std::vector<std::vector<int>> chains;

  int num_logical() const { return static_cast<int>(chains.size()); }
  // physical qubit -> logical index, -1 if unused
  std::vector<int> chain_of(int num_qubits) const;
};

// Embedded Ising problem. Chain couplings are stored with their programmed
// sign (-c for a chain-coupling magnitude c); problem and chain edges are
// disjoint key sets. `scale` records the factor applied to the problem terms
// by rescale_to_hardware.
struct PhysicalProblem {
  int num_qubits = 0;
  std::map<int, double> biases;
  std::map<Edge, double> problem_couplings;
  std::map<Edge, double> chain_couplings;
  double scale = 1.0;
  bool zero_problem = false;  // rescale found nothing to scale
  std::vector<std::string> warnings;

  void add_bias(int q, double v);
  void add_problem_coupling(int a, int b, double v);
  void set_chain_coupling(int a, int b, double v);
  // Sorted qubit ids referenced by any programmed term.
  std::vector<int> support() const;
};

double energy(const LogicalProblem& p, const SpinVector& s);
double energy(const PhysicalProblem& p, const SpinVector& s);

// Multiplies problem biases and couplings (not chain couplings) by a single
// factor so the largest problem magnitude lands exactly on the hardware
// range; records the factor in `scale`. An all-zero problem is returned
// unchanged with `zero_problem` set.
PhysicalProblem rescale_to_hardware(PhysicalProblem p, double h_range = 1.0,
                                    double j_range = 1.0);

struct ValidationReport {
  std::vector<std::string> violations;
  bool valid() const { return violations.empty(); }
  std::string summary() const;
};

// Checks the embedding contract: chains disjoint, connected in hardware,
// active qubits only, and at least one physical coupler per logical edge.
ValidationReport validate_embedding(const LogicalProblem& l,
                                    const HardwareGraph& g,
                                    const Embedding& e);

// Dense symmetric coupling-matrix view with biases on the diagonal.
std::vector<std::vector<double>> to_matrix(const PhysicalProblem& p);

// Inverse of to_matrix given the chain-edge partition.
PhysicalProblem from_matrix(const std::vector<std::vector<double>>& a,
                            const std::set<Edge>& chain_edges,
                            double scale = 1.0);

}  // namespace chainsmith
