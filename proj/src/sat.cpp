#include "chainsmith/sat.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "chainsmith/rng.hpp"

namespace chainsmith {

CnfFormula generate_mixed_sat(int n, int alpha, int max_len,
                              std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("generator: n must be >= 1");
  if (alpha < 0) throw std::invalid_argument("generator: alpha must be >= 0");
  if (max_len < 1 || max_len > n)
    throw std::invalid_argument("generator: max_len must be in [1, n]");
  Rng rng(seed);
  CnfFormula f;
  f.n_vars = n;
  f.clauses.reserve(static_cast<std::size_t>(alpha));
  std::vector<int> pool(static_cast<std::size_t>(n));
  std::iota(pool.begin(), pool.end(), 1);
  for (int c = 0; c < alpha; ++c) {
    int len = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(max_len)));
    // partial Fisher-Yates draws `len` distinct variables
    for (int k = 0; k < len; ++k) {
      std::size_t j = static_cast<std::size_t>(k) +
                      rng.next_below(static_cast<std::uint64_t>(n - k));
      std::swap(pool[static_cast<std::size_t>(k)], pool[j]);
    }
    std::vector<int> clause(static_cast<std::size_t>(len));
    for (int k = 0; k < len; ++k)
      clause[static_cast<std::size_t>(k)] =
          pool[static_cast<std::size_t>(k)] * rng.next_sign();
    f.clauses.push_back(std::move(clause));
  }
  return f;
}

namespace {

// Truth pattern of variable v (0-based) across the 64 assignments of one
// block: assignment index m = 64*block + t, bit t of the word is bit v of m.
constexpr std::uint64_t kLowPatterns[6] = {
    0xaaaaaaaaaaaaaaaaULL, 0xccccccccccccccccULL, 0xf0f0f0f0f0f0f0f0ULL,
    0xff00ff00ff00ff00ULL, 0xffff0000ffff0000ULL, 0xffffffff00000000ULL,
};

std::uint64_t var_pattern(int v, std::uint64_t block) {
  if (v < 6) return kLowPatterns[v];
  return ((block << 6) >> v) & 1u ? ~0ULL : 0ULL;
}

std::uint64_t satisfied_mask(const CnfFormula& f, std::uint64_t block) {
  std::uint64_t all = ~0ULL;
  for (const auto& clause : f.clauses) {
    std::uint64_t sat = 0;
    for (int lit : clause) {
      std::uint64_t p = var_pattern(std::abs(lit) - 1, block);
      sat |= lit > 0 ? p : ~p;
    }
    all &= sat;
    if (all == 0) break;
  }
  return all;
}

void check_counter_limits(const CnfFormula& f) {
  if (f.n_vars < 0 || f.n_vars > 30)
    throw std::invalid_argument("count_solutions: n_vars exceeds enumerator limit of 30");
  for (const auto& clause : f.clauses) {
    if (clause.empty())
      throw std::invalid_argument("count_solutions: empty clause");
    for (int lit : clause)
      if (lit == 0 || std::abs(lit) > f.n_vars)
        throw std::invalid_argument("count_solutions: literal out of range");
  }
}

}  // namespace

SolutionCount count_solutions(const CnfFormula& f, std::uint64_t cap) {
  check_counter_limits(f);
  std::uint64_t total_assignments = 1ULL << f.n_vars;
  std::uint64_t num_blocks = (total_assignments + 63) / 64;
  std::uint64_t tail_mask =
      total_assignments >= 64 ? ~0ULL : ((1ULL << total_assignments) - 1);

  std::atomic<std::uint64_t> next_chunk{0};
  std::atomic<std::uint64_t> running{0};
  std::atomic<bool> over_cap{false};
  constexpr std::uint64_t kChunk = 1024;  // blocks per work unit
  std::uint64_t num_chunks = (num_blocks + kChunk - 1) / kChunk;

#pragma omp parallel
  {
    while (true) {
      if (over_cap.load(std::memory_order_relaxed)) break;
      std::uint64_t chunk = next_chunk.fetch_add(1, std::memory_order_relaxed);
      if (chunk >= num_chunks) break;
      std::uint64_t begin = chunk * kChunk;
      std::uint64_t end = std::min(begin + kChunk, num_blocks);
      std::uint64_t local = 0;
      for (std::uint64_t b = begin; b < end; ++b) {
        std::uint64_t mask = satisfied_mask(f, b);
        if (b == num_blocks - 1) mask &= tail_mask;
        local += static_cast<std::uint64_t>(std::popcount(mask));
      }
      std::uint64_t now = running.fetch_add(local, std::memory_order_relaxed) + local;
      if (now > cap) over_cap.store(true, std::memory_order_relaxed);
    }
  }

  std::uint64_t count = running.load();
  if (count > cap) return {cap, true};
  return {count, false};
}

namespace {

// Ising terms of the literal-false indicator (1 - sigma*s)/2 products.
int lit_var(int lit) { return std::abs(lit) - 1; }
double lit_sign(int lit) { return lit > 0 ? 1.0 : -1.0; }

void add_clause_penalty(LogicalProblem& p, const std::vector<int>& clause,
                        int ancilla, double weight) {
  std::size_t len = clause.size();
  if (len == 1) {
    // (1 - sigma*s)/2
    int v = lit_var(clause[0]);
    double sg = lit_sign(clause[0]);
    p.offset += 0.5 * weight;
    p.add_bias(v, -0.5 * sg * weight);
  } else if (len == 2) {
    // (1 - s1)(1 - s2)/4 with signed spins
    int v1 = lit_var(clause[0]), v2 = lit_var(clause[1]);
    double g1 = lit_sign(clause[0]), g2 = lit_sign(clause[1]);
    p.offset += 0.25 * weight;
    p.add_bias(v1, -0.25 * g1 * weight);
    p.add_bias(v2, -0.25 * g2 * weight);
    p.add_coupling(v1, v2, 0.25 * g1 * g2 * weight);
  } else if (len == 3) {
    // AND-gadget ancilla z tracks (l1 false)&(l2 false); violation then costs
    // z & (l3 false). Expanded to spins, exact 0/>=1 penalty after minimizing
    // over the ancilla.
    int v1 = lit_var(clause[0]), v2 = lit_var(clause[1]), v3 = lit_var(clause[2]);
    double g1 = lit_sign(clause[0]), g2 = lit_sign(clause[1]), g3 = lit_sign(clause[2]);
    p.offset += 1.0 * weight;
    p.add_bias(ancilla, 0.75 * weight);
    p.add_bias(v1, 0.25 * g1 * weight);
    p.add_bias(v2, 0.25 * g2 * weight);
    p.add_bias(v3, -0.25 * g3 * weight);
    p.add_coupling(v1, v2, 0.25 * g1 * g2 * weight);
    p.add_coupling(v1, ancilla, 0.5 * g1 * weight);
    p.add_coupling(v2, ancilla, 0.5 * g2 * weight);
    p.add_coupling(v3, ancilla, -0.25 * g3 * weight);
  } else {
    throw std::logic_error("clause length > 3 after splitting");
  }
}

}  // namespace

IsingReduction sat_to_ising(const CnfFormula& f) {
  for (const auto& clause : f.clauses)
    if (clause.empty())
      throw std::invalid_argument("sat_to_ising: empty clause is unsatisfiable by construction");

  IsingReduction red;
  red.map.original_vars = f.n_vars;
  red.map.clause_ancillas.resize(f.clauses.size());
  red.map.clause_weights.assign(f.clauses.size(), 1.0);

  // First split long clauses: (l1 v l2 v rest) -> (l1 v l2 v y) & (~y v rest),
  // recording the chaining ancillas against their source clause. Pieces keep
  // the source clause index so gadget ancillas land in the right bucket.
  struct Piece {
    std::vector<int> lits;
    std::size_t source;
  };
  std::vector<Piece> pieces;
  int next_var = f.n_vars + 1;  // 1-based like DIMACS literals
  for (std::size_t ci = 0; ci < f.clauses.size(); ++ci) {
    std::vector<int> rest = f.clauses[ci];
    while (rest.size() > 3) {
      int y = next_var++;
      red.map.clause_ancillas[ci].push_back(y - 1);
      pieces.push_back({{rest[0], rest[1], y}, ci});
      std::vector<int> tail;
      tail.push_back(-y);
      tail.insert(tail.end(), rest.begin() + 2, rest.end());
      rest = std::move(tail);
    }
    pieces.push_back({std::move(rest), ci});
  }
  // Gadget ancillas for every 3-literal piece.
  std::vector<int> piece_ancilla(pieces.size(), -1);
  for (std::size_t pi = 0; pi < pieces.size(); ++pi)
    if (pieces[pi].lits.size() == 3) {
      int z = next_var++;
      piece_ancilla[pi] = z - 1;
      red.map.clause_ancillas[pieces[pi].source].push_back(z - 1);
    }

  red.map.ancilla_vars = next_var - 1 - f.n_vars;
  red.problem.resize(red.map.total_vars());
  for (std::size_t pi = 0; pi < pieces.size(); ++pi)
    add_clause_penalty(red.problem, pieces[pi].lits, piece_ancilla[pi],
                       red.map.clause_weights[pieces[pi].source]);
  return red;
}

CnfFormula parse_dimacs(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  CnfFormula f;
  bool have_header = false;
  int expected_clauses = 0;
  std::vector<int> current;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == 'c') continue;
    if (line[0] == 'p') {
      std::istringstream hs(line);
      std::string p, fmt;
      hs >> p >> fmt >> f.n_vars >> expected_clauses;
      if (hs.fail() || fmt != "cnf" || f.n_vars < 0 || expected_clauses < 0)
        throw std::invalid_argument("dimacs: malformed header: " + line);
      have_header = true;
      continue;
    }
    if (!have_header)
      throw std::invalid_argument("dimacs: clause before 'p cnf' header");
    std::istringstream ls(line);
    int lit;
    while (ls >> lit) {
      if (lit == 0) {
        if (current.empty())
          throw std::invalid_argument("dimacs: empty clause");
        f.clauses.push_back(current);
        current.clear();
        continue;
      }
      if (std::abs(lit) > f.n_vars)
        throw std::invalid_argument("dimacs: literal " + std::to_string(lit) +
                                    " out of range");
      if (std::find(current.begin(), current.end(), lit) != current.end())
        throw std::invalid_argument("dimacs: duplicate literal in clause");
      current.push_back(lit);
    }
  }
  if (!have_header) throw std::invalid_argument("dimacs: missing header");
  if (!current.empty())
    throw std::invalid_argument("dimacs: unterminated clause");
  if (static_cast<int>(f.clauses.size()) != expected_clauses)
    throw std::invalid_argument("dimacs: clause count does not match header");
  return f;
}

std::string emit_dimacs(const CnfFormula& f) {
  // Frozen format: header, then one clause per line, single spaces, trailing 0.
  std::ostringstream out;
  out << "p cnf " << f.n_vars << ' ' << f.clauses.size() << '\n';
  for (const auto& clause : f.clauses) {
    for (int lit : clause) out << lit << ' ';
    out << "0\n";
  }
  return out.str();
}

bool satisfies(const CnfFormula& f, std::span<const std::int8_t> assignment) {
  if (assignment.size() < static_cast<std::size_t>(f.n_vars))
    throw std::invalid_argument("satisfies: assignment shorter than n_vars");
  for (const auto& clause : f.clauses) {
    bool sat = false;
    for (int lit : clause) {
      std::int8_t s = assignment[static_cast<std::size_t>(std::abs(lit) - 1)];
      if ((lit > 0 && s > 0) || (lit < 0 && s < 0)) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  return true;
}

}  // namespace chainsmith
