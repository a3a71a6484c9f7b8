#include "chainsmith/paramset.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "chainsmith/rng.hpp"

namespace chainsmith {

std::string to_string(StrategyKind s) {
  switch (s) {
    case StrategyKind::Single: return "single";
    case StrategyKind::Even: return "even";
    case StrategyKind::Weighted: return "weighted";
    case StrategyKind::WeightedRegularized: return "weighted_regularized";
  }
  throw std::logic_error("unknown strategy");
}

StrategyKind strategy_from_string(const std::string& name) {
  for (StrategyKind s : kAllStrategies)
    if (to_string(s) == name) return s;
  throw std::invalid_argument("unknown strategy '" + name + "'");
}

std::string to_string(SrtMode m) {
  return m == SrtMode::AllTerms ? "all-terms" : "problem-terms-only";
}

SrtMode srt_mode_from_string(const std::string& name) {
  if (name == "all-terms") return SrtMode::AllTerms;
  if (name == "problem-terms-only") return SrtMode::ProblemTermsOnly;
  throw std::invalid_argument("unknown SRT mode '" + name + "'");
}

WeightTable compute_weights(const LogicalProblem& l, const HardwareGraph& g,
                            const Embedding& e) {
  WeightTable t;
  t.w.resize(static_cast<std::size_t>(l.n));
  t.d.resize(static_cast<std::size_t>(l.n));
  t.total.assign(static_cast<std::size_t>(l.n), 0);
  auto owner = e.chain_of(g.num_qubits);

  std::vector<std::vector<std::uint8_t>> adjacent(
      static_cast<std::size_t>(l.n),
      std::vector<std::uint8_t>(static_cast<std::size_t>(l.n), 0));
  for (const auto& [a, b] : l.edges()) {
    adjacent[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = 1;
    adjacent[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] = 1;
  }

  for (int i = 0; i < l.n; ++i) {
    const auto& chain = e.chains[static_cast<std::size_t>(i)];
    std::size_t k_count = chain.size();
    t.d[static_cast<std::size_t>(i)].assign(k_count, 0);
    for (std::size_t k = 0; k < k_count; ++k) {
      int q = chain[k];
      for (const auto& edge : g.edges) {
        int other;
        if (edge.first == q)
          other = edge.second;
        else if (edge.second == q)
          other = edge.first;
        else
          continue;
        int j = owner[static_cast<std::size_t>(other)];
        if (j >= 0 && j != i &&
            adjacent[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)])
          ++t.d[static_cast<std::size_t>(i)][k];
      }
      t.total[static_cast<std::size_t>(i)] += t.d[static_cast<std::size_t>(i)][k];
    }
    t.w[static_cast<std::size_t>(i)].assign(k_count, 0.0);
    if (t.total[static_cast<std::size_t>(i)] > 0) {
      for (std::size_t k = 0; k < k_count; ++k)
        t.w[static_cast<std::size_t>(i)][k] =
            static_cast<double>(t.d[static_cast<std::size_t>(i)][k]) /
            static_cast<double>(t.total[static_cast<std::size_t>(i)]);
    } else {
      for (std::size_t k = 0; k < k_count; ++k)
        t.w[static_cast<std::size_t>(i)][k] = 1.0 / static_cast<double>(k_count);
    }
  }
  return t;
}

namespace {

// Floor/remainder split used when an even share would drop below the
// hardware resolution: the first floor(|v|/h_min) ranked slots take ±h_min,
// the next takes what is left, the rest stay unprogrammed.
std::vector<double> clipped_even_split(double value, std::size_t slots,
                                       double h_min) {
  std::vector<double> out(slots, 0.0);
  if (value == 0.0 || slots == 0) return out;
  double share = value / static_cast<double>(slots);
  if (h_min <= 0.0 || std::abs(share) >= h_min) {
    std::fill(out.begin(), out.end(), share);
    return out;
  }
  double sign = value > 0 ? 1.0 : -1.0;
  std::size_t full = static_cast<std::size_t>(std::floor(std::abs(value) / h_min));
  for (std::size_t k = 0; k < full && k < slots; ++k) out[k] = sign * h_min;
  double remainder = std::abs(value) - static_cast<double>(full) * h_min;
  if (full < slots && remainder > 0.0) out[full] = sign * remainder;
  return out;
}

// Chain members ranked by decreasing problem-coupler count, position as the
// tie break.
std::vector<std::size_t> rank_by_degree(const std::vector<int>& d) {
  std::vector<std::size_t> order(d.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return d[a] > d[b]; });
  return order;
}

std::vector<double> bias_even(double h, const std::vector<int>& d,
                              double h_min) {
  auto order = rank_by_degree(d);
  auto parts = clipped_even_split(h, d.size(), h_min);
  std::vector<double> out(d.size(), 0.0);
  for (std::size_t r = 0; r < order.size(); ++r) out[order[r]] = parts[r];
  return out;
}

std::vector<double> bias_weighted(double h, const std::vector<double>& w,
                                  const std::vector<int>& d, double h_min) {
  std::size_t k_count = w.size();
  std::vector<double> out(k_count, 0.0);
  if (h == 0.0) return out;
  // survivors shrink until every surviving share clears h_min
  std::vector<std::uint8_t> alive(k_count, 1);
  while (true) {
    double wsum = 0.0;
    for (std::size_t k = 0; k < k_count; ++k)
      if (alive[k]) wsum += w[k];
    if (wsum <= 0.0) return bias_even(h, d, h_min);  // nothing survived
    bool dropped = false;
    for (std::size_t k = 0; k < k_count; ++k) {
      if (!alive[k]) continue;
      double share = h * (w[k] / wsum);
      if (h_min > 0.0 && std::abs(share) < h_min) {
        alive[k] = 0;
        dropped = true;
      }
    }
    if (!dropped) {
      for (std::size_t k = 0; k < k_count; ++k)
        out[k] = alive[k] ? h * (w[k] / wsum) : 0.0;
      return out;
    }
    if (std::none_of(alive.begin(), alive.end(), [](std::uint8_t a) { return a != 0; }))
      return bias_even(h, d, h_min);
  }
}

std::vector<double> bias_weighted_regularized(double h,
                                              const std::vector<double>& w,
                                              const std::vector<int>& d,
                                              double h_min) {
  std::size_t k_count = w.size();
  std::vector<double> out(k_count, 0.0);
  if (h == 0.0) return out;
  double sign = h > 0 ? 1.0 : -1.0;
  if (std::abs(h) < static_cast<double>(k_count) * h_min)
    return bias_even(h, d, h_min);  // base bias alone would overshoot
  double remainder = h - static_cast<double>(k_count) * h_min * sign;
  for (std::size_t k = 0; k < k_count; ++k)
    out[k] = h_min * sign + remainder * w[k];
  return out;
}

}  // namespace

PhysicalProblem parameterize(const LogicalProblem& l, const HardwareGraph& g,
                             const Embedding& e, const ParamConfig& cfg) {
  if (cfg.chain_coupling <= 0)
    throw std::invalid_argument("parameterize: chain coupling must be positive");
  if (cfg.h_min < 0 || cfg.h_min >= 1)
    throw std::invalid_argument("parameterize: h_min must be in [0, 1)");
  auto report = validate_embedding(l, g, e);
  if (!report.valid())
    throw std::invalid_argument("parameterize: invalid embedding: " +
                                report.summary());

  WeightTable wt = compute_weights(l, g, e);
  PhysicalProblem p;
  p.num_qubits = g.num_qubits;

  // biases
  for (int i = 0; i < l.n; ++i) {
    double h = l.bias(i);
    if (h == 0.0) continue;
    const auto& chain = e.chains[static_cast<std::size_t>(i)];
    const auto& d = wt.d[static_cast<std::size_t>(i)];
    std::vector<double> vals;
    switch (cfg.strategy) {
      case StrategyKind::Single: {
        std::size_t best = 0;
        for (std::size_t k = 1; k < chain.size(); ++k)
          if (d[k] > d[best]) best = k;
        if (wt.total[static_cast<std::size_t>(i)] == 0)
          p.warnings.push_back("single: logical qubit " + std::to_string(i) +
                               " has no problem couplers; bias placed on first chain member");
        vals.assign(chain.size(), 0.0);
        vals[best] = h;
        break;
      }
      case StrategyKind::Even:
        vals = bias_even(h, d, cfg.h_min);
        break;
      case StrategyKind::Weighted:
        vals = bias_weighted(h, wt.w[static_cast<std::size_t>(i)], d, cfg.h_min);
        break;
      case StrategyKind::WeightedRegularized:
        vals = bias_weighted_regularized(h, wt.w[static_cast<std::size_t>(i)],
                                         d, cfg.h_min);
        break;
    }
    for (std::size_t k = 0; k < chain.size(); ++k)
      if (vals[k] != 0.0) p.add_bias(chain[k], vals[k]);
  }

  // logical couplers over their parallel physical couplers
  for (const auto& [edge, j] : l.couplings) {
    if (j == 0.0) continue;
    auto [i1, i2] = edge;
    std::vector<Edge> couplers;
    for (int a : e.chains[static_cast<std::size_t>(i1)])
      for (int b : e.chains[static_cast<std::size_t>(i2)])
        if (g.has_edge(a, b)) couplers.push_back(make_edge(a, b));
    std::sort(couplers.begin(), couplers.end());
    std::vector<double> vals;
    if (cfg.strategy == StrategyKind::Single) {
      vals.assign(couplers.size(), 0.0);
      vals[0] = j;  // first available coupler
    } else {
      vals = clipped_even_split(j, couplers.size(), cfg.h_min);
    }
    for (std::size_t k = 0; k < couplers.size(); ++k)
      if (vals[k] != 0.0)
        p.add_problem_coupling(couplers[k].first, couplers[k].second, vals[k]);
  }

  // every intra-chain hardware edge is programmed ferromagnetically
  for (const auto& chain : e.chains)
    for (std::size_t a = 0; a < chain.size(); ++a)
      for (std::size_t b = a + 1; b < chain.size(); ++b)
        if (g.has_edge(chain[a], chain[b]))
          p.set_chain_coupling(chain[a], chain[b], -cfg.chain_coupling);

  p = rescale_to_hardware(std::move(p));
  if (cfg.srt) p = apply_srt(p, *cfg.srt, cfg.srt_mode);
  return p;
}

PhysicalProblem apply_srt(const PhysicalProblem& p, const SpinVector& r,
                          SrtMode mode) {
  if (r.size() != static_cast<std::size_t>(p.num_qubits))
    throw std::invalid_argument("apply_srt: reversal vector length mismatch");
  for (auto v : r)
    if (v != 1 && v != -1)
      throw std::invalid_argument("apply_srt: reversal entries must be ±1");
  PhysicalProblem out = p;
  for (auto& [q, v] : out.biases) v *= r[static_cast<std::size_t>(q)];
  for (auto& [e, v] : out.problem_couplings)
    v *= r[static_cast<std::size_t>(e.first)] * r[static_cast<std::size_t>(e.second)];
  if (mode == SrtMode::AllTerms)
    for (auto& [e, v] : out.chain_couplings)
      v *= r[static_cast<std::size_t>(e.first)] * r[static_cast<std::size_t>(e.second)];
  return out;
}

std::vector<SpinVector> srt_set(int num_qubits, int count, std::uint64_t seed,
                                bool chain_constant, const Embedding* e) {
  if (count < 1) throw std::invalid_argument("srt_set: count must be >= 1");
  if (chain_constant && e == nullptr)
    throw std::invalid_argument("srt_set: chain-constant vectors need an embedding");
  std::vector<SpinVector> out;
  out.reserve(static_cast<std::size_t>(count));
  out.emplace_back(static_cast<std::size_t>(num_qubits), 1);  // identity
  for (int t = 1; t < count; ++t) {
    Rng rng(derive_seed(seed, "srt", static_cast<std::uint64_t>(t)));
    SpinVector r(static_cast<std::size_t>(num_qubits), 1);
    if (chain_constant) {
      std::vector<std::uint8_t> in_chain(static_cast<std::size_t>(num_qubits), 0);
      for (const auto& chain : e->chains) {
        int sign = rng.next_sign();
        for (int q : chain) {
          r[static_cast<std::size_t>(q)] = static_cast<std::int8_t>(sign);
          in_chain[static_cast<std::size_t>(q)] = 1;
        }
      }
      for (int q = 0; q < num_qubits; ++q)
        if (!in_chain[static_cast<std::size_t>(q)])
          r[static_cast<std::size_t>(q)] = static_cast<std::int8_t>(rng.next_sign());
    } else {
      for (int q = 0; q < num_qubits; ++q)
        r[static_cast<std::size_t>(q)] = static_cast<std::int8_t>(rng.next_sign());
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace chainsmith
