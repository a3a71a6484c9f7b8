#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "chainsmith/problem.hpp"

namespace chainsmith {

// Grid of K_{cell_half,cell_half} bipartite cells. Qubit indexing is
// row-major over cells, then side (0 = vertical, 1 = horizontal), then
// in-cell position, so embedding files are portable:
//   index = ((row*cols + col)*2 + side)*cell_half + k
struct ChimeraSpec {
  int rows = 0, cols = 0, cell_half = 0;
  std::vector<int> dead;

  int designed_qubits() const { return rows * cols * 2 * cell_half; }
};

int chimera_index(const ChimeraSpec& spec, int row, int col, int side, int k);

// Intra-cell complete bipartite edges plus inter-cell ladders (vertical side
// couples to the neighboring row, horizontal side to the neighboring column).
// Dead qubits are deactivated and their edges removed.
HardwareGraph build_chimera(const ChimeraSpec& spec);

// Best-effort embedding heuristic: logical qubits are placed in a random
// order; each new chain starts at the free qubit minimizing the summed
// BFS distance to the already-placed neighbor chains and claims the
// connecting paths. Retries with derived seeds up to max_tries; the result
// always passes validate_embedding. Returns nullopt on failure.
std::optional<Embedding> greedy_embed(const LogicalProblem& l,
                                      const HardwareGraph& g,
                                      std::uint64_t seed, int max_tries);

}  // namespace chainsmith
