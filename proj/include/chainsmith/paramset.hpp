#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chainsmith/problem.hpp"

namespace chainsmith {

enum class StrategyKind { Single, Even, Weighted, WeightedRegularized };

std::string to_string(StrategyKind s);
StrategyKind strategy_from_string(const std::string& name);
inline constexpr StrategyKind kAllStrategies[] = {
    StrategyKind::Single, StrategyKind::Even, StrategyKind::Weighted,
    StrategyKind::WeightedRegularized};

// Per-chain qubit weights w = d/D where d counts physical couplers to the
// chains of logically adjacent qubits (chain couplers excluded). Chains with
// no such couplers fall back to uniform weights.
struct WeightTable {
  std::vector<std::vector<double>> w;  // per logical qubit, per chain member
  std::vector<std::vector<int>> d;
  std::vector<int> total;              // D_i
};

WeightTable compute_weights(const LogicalProblem& l, const HardwareGraph& g,
                            const Embedding& e);

enum class SrtMode { AllTerms, ProblemTermsOnly };

std::string to_string(SrtMode m);
SrtMode srt_mode_from_string(const std::string& name);

struct ParamConfig {
  StrategyKind strategy = StrategyKind::Even;
  double chain_coupling = 1.6;  // magnitude c > 0, programmed as -c
  double h_min = 1.0 / 16;      // hardware resolution floor, in [0, 1)
  std::optional<SpinVector> srt;  // applied after parameterization if set
  SrtMode srt_mode = SrtMode::AllTerms;
};

// Distributes the logical terms over each chain per the selected strategy,
// programs every intra-chain hardware edge with -c, then rescales problem
// terms to the hardware range. Pre-rescale, the physical terms of every
// logical bias and coupling sum exactly to the logical value.
PhysicalProblem parameterize(const LogicalProblem& l, const HardwareGraph& g,
                             const Embedding& e, const ParamConfig& cfg);

// Spin reversal transformation: biases pick up r_q, couplings r_q*r_p. In
// AllTerms mode chain couplings transform too and the energy spectrum is
// preserved under s -> r∘s; ProblemTermsOnly leaves chain couplings as
// programmed.
PhysicalProblem apply_srt(const PhysicalProblem& p, const SpinVector& r,
                          SrtMode mode);

// `count` reversal vectors, the first being the identity. With
// chain_constant set, each vector is constant within every chain of `e`.
std::vector<SpinVector> srt_set(int num_qubits, int count, std::uint64_t seed,
                                bool chain_constant = false,
                                const Embedding* e = nullptr);

}  // namespace chainsmith
