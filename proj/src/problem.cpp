#include "chainsmith/problem.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace chainsmith {

Edge make_edge(int a, int b) {
  if (a == b) throw std::invalid_argument("self-edge (" + std::to_string(a) + ")");
  return a < b ? Edge{a, b} : Edge{b, a};
}

void LogicalProblem::resize(int num_spins) {
  n = num_spins;
  h.assign(static_cast<std::size_t>(num_spins), 0.0);
}

static void check_index(int i, int n) {
  if (i < 0 || i >= n)
    throw std::out_of_range("spin index " + std::to_string(i) + " out of [0," +
                            std::to_string(n) + ")");
}

void LogicalProblem::set_bias(int i, double v) {
  check_index(i, n);
  h[static_cast<std::size_t>(i)] = v;
}

void LogicalProblem::add_bias(int i, double v) {
  check_index(i, n);
  h[static_cast<std::size_t>(i)] += v;
}

void LogicalProblem::add_coupling(int i, int j, double v) {
  check_index(i, n);
  check_index(j, n);
  couplings[make_edge(i, j)] += v;
}

double LogicalProblem::coupling(int i, int j) const {
  auto it = couplings.find(make_edge(i, j));
  return it == couplings.end() ? 0.0 : it->second;
}

std::vector<Edge> LogicalProblem::edges() const {
  std::vector<Edge> out;
  out.reserve(couplings.size());
  for (const auto& [e, v] : couplings)
    if (v != 0.0) out.push_back(e);
  return out;
}

bool HardwareGraph::is_active(int q) const {
  return q >= 0 && q < num_qubits && active[static_cast<std::size_t>(q)] != 0;
}

bool HardwareGraph::has_edge(int a, int b) const {
  if (a == b) return false;
  return edges.count(make_edge(a, b)) != 0;
}

int HardwareGraph::active_count() const {
  int c = 0;
  for (auto a : active) c += a != 0;
  return c;
}

int HardwareGraph::degree(int q) const {
  int d = 0;
  for (const auto& e : edges)
    if (e.first == q || e.second == q) ++d;
  return d;
}

std::vector<std::vector<int>> HardwareGraph::adjacency() const {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(num_qubits));
  for (const auto& [a, b] : edges) {
    adj[static_cast<std::size_t>(a)].push_back(b);
    adj[static_cast<std::size_t>(b)].push_back(a);
  }
  return adj;
}

std::vector<int> Embedding::chain_of(int num_qubits) const {
  std::vector<int> owner(static_cast<std::size_t>(num_qubits), -1);
  for (int i = 0; i < num_logical(); ++i)
    for (int q : chains[static_cast<std::size_t>(i)])
      if (q >= 0 && q < num_qubits) owner[static_cast<std::size_t>(q)] = i;
  return owner;
}

void PhysicalProblem::add_bias(int q, double v) {
  check_index(q, num_qubits);
  biases[q] += v;
}

void PhysicalProblem::add_problem_coupling(int a, int b, double v) {
  check_index(a, num_qubits);
  check_index(b, num_qubits);
  Edge e = make_edge(a, b);
  if (chain_couplings.count(e))
    throw std::invalid_argument("edge already carries a chain coupling");
  problem_couplings[e] += v;
}

void PhysicalProblem::set_chain_coupling(int a, int b, double v) {
  check_index(a, num_qubits);
  check_index(b, num_qubits);
  Edge e = make_edge(a, b);
  if (problem_couplings.count(e))
    throw std::invalid_argument("edge already carries a problem coupling");
  chain_couplings[e] = v;
}

std::vector<int> PhysicalProblem::support() const {
  std::set<int> s;
  for (const auto& [q, v] : biases)
    if (v != 0.0) s.insert(q);
  for (const auto& [e, v] : problem_couplings)
    if (v != 0.0) {
      s.insert(e.first);
      s.insert(e.second);
    }
  for (const auto& [e, v] : chain_couplings)
    if (v != 0.0) {
      s.insert(e.first);
      s.insert(e.second);
    }
  return {s.begin(), s.end()};
}

static void check_length(std::size_t got, std::size_t want) {
  if (got != want)
    throw std::invalid_argument("spin vector length " + std::to_string(got) +
                                " does not match problem size " +
                                std::to_string(want));
}

double energy(const LogicalProblem& p, const SpinVector& s) {
  check_length(s.size(), static_cast<std::size_t>(p.n));
  double e = p.offset;
  for (int i = 0; i < p.n; ++i)
    e += p.h[static_cast<std::size_t>(i)] * s[static_cast<std::size_t>(i)];
  for (const auto& [edge, j] : p.couplings)
    e += j * s[static_cast<std::size_t>(edge.first)] *
         s[static_cast<std::size_t>(edge.second)];
  return e;
}

double energy(const PhysicalProblem& p, const SpinVector& s) {
  check_length(s.size(), static_cast<std::size_t>(p.num_qubits));
  double e = 0.0;
  for (const auto& [q, hv] : p.biases) e += hv * s[static_cast<std::size_t>(q)];
  for (const auto& [edge, j] : p.problem_couplings)
    e += j * s[static_cast<std::size_t>(edge.first)] *
         s[static_cast<std::size_t>(edge.second)];
  for (const auto& [edge, j] : p.chain_couplings)
    e += j * s[static_cast<std::size_t>(edge.first)] *
         s[static_cast<std::size_t>(edge.second)];
  return e;
}

PhysicalProblem rescale_to_hardware(PhysicalProblem p, double h_range,
                                    double j_range) {
  if (h_range <= 0 || j_range <= 0)
    throw std::invalid_argument("hardware ranges must be positive");
  double worst = 0.0;
  for (const auto& [q, v] : p.biases) worst = std::max(worst, std::abs(v) / h_range);
  for (const auto& [e, v] : p.problem_couplings)
    worst = std::max(worst, std::abs(v) / j_range);
  if (worst == 0.0) {
    p.scale = 1.0;
    p.zero_problem = true;
    p.warnings.push_back("rescale: no nonzero problem terms, left unscaled");
    return p;
  }
  double factor = 1.0 / worst;
  for (auto& [q, v] : p.biases) v *= factor;
  for (auto& [e, v] : p.problem_couplings) v *= factor;
  p.scale = factor;
  return p;
}

std::string ValidationReport::summary() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < violations.size(); ++i) {
    if (i) os << "; ";
    os << violations[i];
  }
  return os.str();
}

ValidationReport validate_embedding(const LogicalProblem& l,
                                    const HardwareGraph& g,
                                    const Embedding& e) {
  ValidationReport rep;
  if (e.num_logical() != l.n) {
    rep.violations.push_back("chain count " + std::to_string(e.num_logical()) +
                             " does not match logical size " +
                             std::to_string(l.n));
    return rep;
  }
  std::vector<int> owner(static_cast<std::size_t>(g.num_qubits), -1);
  for (int i = 0; i < e.num_logical(); ++i) {
    const auto& chain = e.chains[static_cast<std::size_t>(i)];
    if (chain.empty()) {
      rep.violations.push_back("empty chain for logical qubit " +
                               std::to_string(i));
      continue;
    }
    for (int q : chain) {
      if (q < 0 || q >= g.num_qubits) {
        rep.violations.push_back("chain " + std::to_string(i) +
                                 " references qubit " + std::to_string(q) +
                                 " outside the hardware graph");
        continue;
      }
      if (!g.is_active(q))
        rep.violations.push_back("chain " + std::to_string(i) +
                                 " uses inactive qubit " + std::to_string(q));
      if (owner[static_cast<std::size_t>(q)] >= 0)
        rep.violations.push_back(
            "overlapping chains: qubit " + std::to_string(q) + " in chains " +
            std::to_string(owner[static_cast<std::size_t>(q)]) + " and " +
            std::to_string(i));
      else
        owner[static_cast<std::size_t>(q)] = i;
    }
    // connectivity of the chain-induced subgraph
    if (chain.size() > 1) {
      std::set<int> members(chain.begin(), chain.end());
      std::set<int> seen;
      std::queue<int> frontier;
      frontier.push(chain[0]);
      seen.insert(chain[0]);
      while (!frontier.empty()) {
        int q = frontier.front();
        frontier.pop();
        for (int m : members)
          if (!seen.count(m) && g.has_edge(q, m)) {
            seen.insert(m);
            frontier.push(m);
          }
      }
      if (seen.size() != members.size())
        rep.violations.push_back("disconnected chain for logical qubit " +
                                 std::to_string(i));
    }
  }
  for (const auto& [i, j] : l.edges()) {
    bool coupled = false;
    for (int a : e.chains[static_cast<std::size_t>(i)]) {
      for (int b : e.chains[static_cast<std::size_t>(j)])
        if (g.has_edge(a, b)) {
          coupled = true;
          break;
        }
      if (coupled) break;
    }
    if (!coupled)
      rep.violations.push_back("logical edge (" + std::to_string(i) + "," +
                               std::to_string(j) +
                               ") has no physical coupler");
  }
  return rep;
}

std::vector<std::vector<double>> to_matrix(const PhysicalProblem& p) {
  std::size_t n = static_cast<std::size_t>(p.num_qubits);
  std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
  for (const auto& [q, v] : p.biases) a[static_cast<std::size_t>(q)][static_cast<std::size_t>(q)] = v;
  for (const auto& [e, v] : p.problem_couplings) {
    a[static_cast<std::size_t>(e.first)][static_cast<std::size_t>(e.second)] = v;
    a[static_cast<std::size_t>(e.second)][static_cast<std::size_t>(e.first)] = v;
  }
  for (const auto& [e, v] : p.chain_couplings) {
    a[static_cast<std::size_t>(e.first)][static_cast<std::size_t>(e.second)] = v;
    a[static_cast<std::size_t>(e.second)][static_cast<std::size_t>(e.first)] = v;
  }
  return a;
}

PhysicalProblem from_matrix(const std::vector<std::vector<double>>& a,
                            const std::set<Edge>& chain_edges, double scale) {
  PhysicalProblem p;
  p.num_qubits = static_cast<int>(a.size());
  p.scale = scale;
  for (int i = 0; i < p.num_qubits; ++i) {
    if (static_cast<int>(a[static_cast<std::size_t>(i)].size()) != p.num_qubits)
      throw std::invalid_argument("coupling matrix is not square");
    double d = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
    if (d != 0.0) p.biases[i] = d;
    for (int j = i + 1; j < p.num_qubits; ++j) {
      double v = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (v != a[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)])
        throw std::invalid_argument("coupling matrix is not symmetric");
      if (v == 0.0) continue;
      Edge e{i, j};
      if (chain_edges.count(e))
        p.chain_couplings[e] = v;
      else
        p.problem_couplings[e] = v;
    }
  }
  return p;
}

}  // namespace chainsmith
