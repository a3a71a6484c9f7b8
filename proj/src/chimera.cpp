#include "chainsmith/chimera.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <queue>
#include <stdexcept>

#include "chainsmith/rng.hpp"

namespace chainsmith {

int chimera_index(const ChimeraSpec& spec, int row, int col, int side, int k) {
  if (row < 0 || row >= spec.rows || col < 0 || col >= spec.cols || side < 0 ||
      side > 1 || k < 0 || k >= spec.cell_half)
    throw std::out_of_range("chimera_index: coordinate out of range");
  return ((row * spec.cols + col) * 2 + side) * spec.cell_half + k;
}

HardwareGraph build_chimera(const ChimeraSpec& spec) {
  if (spec.rows < 1 || spec.cols < 1 || spec.cell_half < 1)
    throw std::invalid_argument("chimera spec: grid dimensions must be >= 1");
  HardwareGraph g;
  g.num_qubits = spec.designed_qubits();
  g.rows = spec.rows;
  g.cols = spec.cols;
  g.cell_half = spec.cell_half;
  g.active.assign(static_cast<std::size_t>(g.num_qubits), 1);
  for (int d : spec.dead) {
    if (d < 0 || d >= g.num_qubits)
      throw std::invalid_argument("chimera spec: dead index out of range");
    g.active[static_cast<std::size_t>(d)] = 0;
  }
  auto add = [&](int a, int b) {
    if (g.is_active(a) && g.is_active(b)) g.edges.insert(make_edge(a, b));
  };
  for (int r = 0; r < spec.rows; ++r)
    for (int c = 0; c < spec.cols; ++c) {
      for (int k0 = 0; k0 < spec.cell_half; ++k0)
        for (int k1 = 0; k1 < spec.cell_half; ++k1)
          add(chimera_index(spec, r, c, 0, k0), chimera_index(spec, r, c, 1, k1));
      for (int k = 0; k < spec.cell_half; ++k) {
        if (r + 1 < spec.rows)
          add(chimera_index(spec, r, c, 0, k), chimera_index(spec, r + 1, c, 0, k));
        if (c + 1 < spec.cols)
          add(chimera_index(spec, r, c, 1, k), chimera_index(spec, r, c + 1, 1, k));
      }
    }
  return g;
}

namespace {

constexpr int kUnreachable = std::numeric_limits<int>::max();

// BFS distances from a chain through free qubits. Chain members get 0; free
// qubits adjacent to the chain get 1, and the walk only expands through free
// qubits.
std::vector<int> bfs_from_chain(const std::vector<int>& chain,
                                const std::vector<std::vector<int>>& adj,
                                const std::vector<std::uint8_t>& used,
                                const std::vector<std::uint8_t>& active) {
  std::vector<int> dist(adj.size(), kUnreachable);
  std::queue<int> q;
  for (int m : chain) {
    dist[static_cast<std::size_t>(m)] = 0;
    q.push(m);
  }
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int v : adj[static_cast<std::size_t>(u)]) {
      if (!active[static_cast<std::size_t>(v)]) continue;
      if (dist[static_cast<std::size_t>(v)] != kUnreachable) continue;
      if (used[static_cast<std::size_t>(v)]) continue;  // other chains block
      dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
      q.push(v);
    }
  }
  return dist;
}

std::optional<Embedding> try_embed(const LogicalProblem& l,
                                   const HardwareGraph& g,
                                   const std::vector<std::vector<int>>& adj,
                                   Rng& rng) {
  std::vector<int> order(static_cast<std::size_t>(l.n));
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t i = order.size(); i > 1; --i)
    std::swap(order[i - 1], order[rng.next_below(i)]);

  // logical adjacency
  std::vector<std::vector<int>> ladj(static_cast<std::size_t>(l.n));
  for (const auto& [a, b] : l.edges()) {
    ladj[static_cast<std::size_t>(a)].push_back(b);
    ladj[static_cast<std::size_t>(b)].push_back(a);
  }

  Embedding emb;
  emb.chains.assign(static_cast<std::size_t>(l.n), {});
  std::vector<std::uint8_t> used(static_cast<std::size_t>(g.num_qubits), 0);
  std::vector<std::uint8_t> placed(static_cast<std::size_t>(l.n), 0);

  for (int li : order) {
    std::vector<int> targets;
    for (int nb : ladj[static_cast<std::size_t>(li)])
      if (placed[static_cast<std::size_t>(nb)]) targets.push_back(nb);
    std::sort(targets.begin(), targets.end());

    if (targets.empty()) {
      std::vector<int> free;
      for (int q = 0; q < g.num_qubits; ++q)
        if (g.is_active(q) && !used[static_cast<std::size_t>(q)]) free.push_back(q);
      if (free.empty()) return std::nullopt;
      int root = free[rng.next_below(free.size())];
      emb.chains[static_cast<std::size_t>(li)] = {root};
      used[static_cast<std::size_t>(root)] = 1;
      placed[static_cast<std::size_t>(li)] = 1;
      continue;
    }

    std::vector<std::vector<int>> dists;
    dists.reserve(targets.size());
    for (int t : targets)
      dists.push_back(bfs_from_chain(emb.chains[static_cast<std::size_t>(t)],
                                     adj, used, g.active));

    // root = free qubit minimizing the summed distance to all target chains
    long long best = std::numeric_limits<long long>::max();
    int root = -1;
    for (int q = 0; q < g.num_qubits; ++q) {
      if (!g.is_active(q) || used[static_cast<std::size_t>(q)]) continue;
      long long total = 0;
      bool ok = true;
      for (const auto& d : dists) {
        if (d[static_cast<std::size_t>(q)] == kUnreachable) {
          ok = false;
          break;
        }
        total += d[static_cast<std::size_t>(q)];
      }
      if (ok && total < best) {
        best = total;
        root = q;
      }
    }
    if (root < 0) return std::nullopt;

    // claim the root plus a shortest path toward each target chain, walking
    // downhill in that target's distance field
    std::vector<int> chain = {root};
    used[static_cast<std::size_t>(root)] = 1;
    for (const auto& d : dists) {
      int cur = root;
      while (d[static_cast<std::size_t>(cur)] > 1) {
        int next = -1;
        for (int v : adj[static_cast<std::size_t>(cur)]) {
          bool in_chain =
              std::find(chain.begin(), chain.end(), v) != chain.end();
          if (!g.is_active(v) || (used[static_cast<std::size_t>(v)] && !in_chain))
            continue;
          if (d[static_cast<std::size_t>(v)] ==
              d[static_cast<std::size_t>(cur)] - 1) {
            next = v;
            break;
          }
        }
        if (next < 0) return std::nullopt;
        if (std::find(chain.begin(), chain.end(), next) == chain.end()) {
          chain.push_back(next);
          used[static_cast<std::size_t>(next)] = 1;
        }
        cur = next;
      }
    }
    emb.chains[static_cast<std::size_t>(li)] = std::move(chain);
    placed[static_cast<std::size_t>(li)] = 1;
  }
  if (!validate_embedding(l, g, emb).valid()) return std::nullopt;
  return emb;
}

}  // namespace

std::optional<Embedding> greedy_embed(const LogicalProblem& l,
                                      const HardwareGraph& g,
                                      std::uint64_t seed, int max_tries) {
  if (max_tries < 1) throw std::invalid_argument("greedy_embed: max_tries must be >= 1");
  auto adj = g.adjacency();
  for (int attempt = 0; attempt < max_tries; ++attempt) {
    Rng rng(derive_seed(seed, "embed-try", static_cast<std::uint64_t>(attempt)));
    if (auto emb = try_embed(l, g, adj, rng)) return emb;
  }
  return std::nullopt;
}

}  // namespace chainsmith
